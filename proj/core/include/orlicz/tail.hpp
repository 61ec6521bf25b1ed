#pragma once

// Closed-form tails of functions on countable atomic spaces.
//
// A tail term lives on a lattice of atoms n = scale * k^degree + offset
// (k >= first) and takes the value
//
//     coef * ratio^k * prod_i (k + beta_i)^{s_i}
//
// at the atom indexed by k.  Weight laws, Radon-Nikodym densities of the
// supported map laws, their compositions and powers all stay inside this
// family, and series of such terms can be summed with a certified remainder.

#include <optional>
#include <string>
#include <vector>

namespace orlicz {

/// k |-> scale * k^degree + offset.
struct IndexMap {
  long long scale = 1;
  int degree = 1;
  long long offset = 0;

  long long at(long long k) const;
  /// Inverse on the image; nullopt when n is not hit by any k >= 1.
  std::optional<long long> index_of(long long n) const;
  bool is_identity() const { return scale == 1 && degree == 1 && offset == 0; }
  bool operator==(const IndexMap&) const = default;
};

struct Lattice {
  IndexMap map;
  long long first = 1;

  long long at(long long k) const { return map.at(k); }
  std::optional<long long> index_of(long long n) const;
  /// Smallest k >= first with at(k) > bound.
  long long first_index_above(long long bound) const;
  bool is_all() const { return map.is_identity(); }
  bool same_points(const Lattice& o) const { return map == o.map; }
  /// True only when disjointness is provable (residue classes).
  bool disjoint_from(const Lattice& o) const;

  static Lattice all(long long first = 1) { return Lattice{IndexMap{}, first}; }
};

/// (k + beta)^s
struct Factor {
  double beta = 0.0;
  double s = 0.0;
  bool operator==(const Factor&) const = default;
};

enum class Trend { Constant, Increasing, Decreasing };

struct TailTerm {
  Lattice support = Lattice::all();
  double coef = 0.0;
  double ratio = 1.0;
  std::vector<Factor> factors;

  double value(long long k) const;
  double exponent_sum() const;
  /// Limit of value(k) as k -> infinity (0, +-inf or a constant).
  double limit() const;
  bool is_constant() const { return ratio == 1.0 && factors.empty(); }

  /// Merge equal bases, drop zero exponents.
  TailTerm& normalize();

  /// Index k* and direction such that value is monotone on k >= k*.
  struct Monotone {
    long long from;
    Trend trend;
  };
  std::optional<Monotone> monotone_from(long long k_start) const;

  bool same_shape(const TailTerm& o) const;
};

TailTerm make_term(Lattice support, double coef, double ratio = 1.0,
                   std::vector<Factor> factors = {});
TailTerm scaled(TailTerm t, double c);
TailTerm times(TailTerm a, const TailTerm& b);
/// |t|^p; support unchanged.
TailTerm abs_pow(TailTerm t, double p);
/// 1 / t on the same support; requires coef != 0.
TailTerm reciprocal(TailTerm t);
/// Re-express t in a new variable j with k = m(j).  The support of the result
/// is left as Lattice::all(); callers attach the right one.
std::optional<TailTerm> substitute(const TailTerm& t, const IndexMap& m);

/// A finite sum of tail terms, or an explicit "unresolved" marker.
struct TailLaw {
  std::vector<TailTerm> terms;
  bool resolved = true;

  static TailLaw zero() { return {}; }
  static TailLaw unresolved() { return TailLaw{{}, false}; }
  static TailLaw constant(double c);

  bool is_zero() const { return resolved && terms.empty(); }
  double eval(long long n) const;
  bool pairwise_disjoint() const;
  TailLaw& add(const TailTerm& t);
  TailLaw& add(const TailLaw& o);
  TailLaw scaled(double c) const;
};

/// Result of summing a series.
struct SeriesSum {
  enum class Kind { Finite, PlusInfinity, MinusInfinity, Unresolved };
  Kind kind = Kind::Finite;
  double value = 0.0;
  double error = 0.0;  // certified (or asymptotically certified) remainder error

  bool finite() const { return kind == Kind::Finite; }
  double as_double() const;  // +-inf for divergent, NaN when unresolved

  static SeriesSum of(double v, double err = 0.0) { return {Kind::Finite, v, err}; }
  static SeriesSum unresolved() { return {Kind::Unresolved, 0.0, 0.0}; }
};

SeriesSum operator+(const SeriesSum& a, const SeriesSum& b);

/// sum_{k >= k_start} t.value(k)
SeriesSum sum_from(const TailTerm& t, long long k_start);

/// sum over atoms n > bound of t (restricted to its lattice).
SeriesSum sum_above(const TailTerm& t, long long bound);

/// Hurwitz zeta(s, a) for s > 1, a >= 1.
double hurwitz_zeta(double s, double a);

std::string describe(const TailTerm& t);
std::string describe(const TailLaw& law);

}  // namespace orlicz
