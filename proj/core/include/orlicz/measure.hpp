#pragma once

// Discrete sigma-finite measure spaces.  Atoms are addressed by 1-based
// position in the canonical prefix order; finite spaces also carry string ids.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orlicz/tail.hpp"
#include "orlicz/verdict.hpp"

namespace orlicz {

using Atom = long long;

struct WeightLaw {
  struct Constant { double c; };
  struct Geometric { double a, r; };   // mu(n) = a r^(n-1)
  struct PowerLaw { double c, s; };    // mu(n) = c n^-s
  std::variant<Constant, Geometric, PowerLaw> family;

  double at(Atom n) const;
  TailTerm term() const;
  std::string name() const;
};

class MeasureSpace {
 public:
  enum class Kind { Finite, Countable };

  static MeasureSpace finite(std::vector<std::pair<std::string, double>> atoms);
  /// Uniform finite space with ids "1".."n".
  static MeasureSpace finite(const std::vector<double>& weights);
  static MeasureSpace countable(WeightLaw law, Atom depth);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  /// Number of atoms handled explicitly: N for finite spaces, M for countable.
  Atom depth() const { return depth_; }
  double weight(Atom n) const;
  bool contains(Atom n) const { return n >= 1 && (!is_finite() || n <= depth_); }
  /// Weight as a tail term over all indices (countable only).
  TailTerm weight_term() const;
  const std::optional<WeightLaw>& law() const { return law_; }
  /// Sum of weights strictly above `bound` (0 for finite spaces).
  SeriesSum mass_above(Atom bound) const;
  double total_mass() const;
  std::optional<Atom> find_atom(const std::string& id) const;
  std::string id(Atom n) const;

 private:
  Kind kind_ = Kind::Finite;
  Atom depth_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> weights_;
  std::optional<WeightLaw> law_;
};

/// Values on atoms 1..explicit_size(), then the tail law beyond.
struct SimpleFunction {
  std::vector<double> values;
  TailLaw tail;

  static SimpleFunction constant(const MeasureSpace& X, double c);
  static SimpleFunction of(std::vector<double> v, TailLaw t = TailLaw::zero()) {
    return {std::move(v), std::move(t)};
  }
  Atom explicit_size() const { return static_cast<Atom>(values.size()); }
  double at(Atom n) const;
  bool resolved() const { return tail.resolved; }
  /// Copy with the tail materialized up to atom `size`.
  SimpleFunction extended_to(Atom size) const;
};

/// Pointwise algebra.  Tails combine exactly when the term supports are equal,
/// nested in All, or disjoint; otherwise the result tail is unresolved.
SimpleFunction scaled(const SimpleFunction& f, double c);
SimpleFunction sum(const SimpleFunction& f, const SimpleFunction& g);
SimpleFunction difference(const SimpleFunction& f, const SimpleFunction& g);
SimpleFunction product(const SimpleFunction& f, const SimpleFunction& g);
SimpleFunction absolute(const SimpleFunction& f);
TailLaw product(const TailLaw& a, const TailLaw& b);
bool is_zero(const SimpleFunction& f);

struct AtomSet {
  std::vector<Atom> atoms;         // sorted
  std::optional<Atom> all_from;    // every atom n >= all_from is included

  static AtomSet everything() { return {{}, Atom{1}}; }
  bool contains(Atom n) const;
};

struct MapLaw {
  struct Affine { long long a = 1, b = 0; };   // n -> a n + b
  struct Constant { Atom c = 1; };
  struct Power { long long a = 1; int e = 2; };  // n -> a n^e
  struct CeilDiv { long long d = 2; };         // n -> ceil(n / d)
  struct PairSwap {};                          // 2k-1 <-> 2k
  struct Unresolved {};
  std::variant<Affine, Constant, Power, CeilDiv, PairSwap, Unresolved> rule = Affine{};

  static MapLaw identity() { return {}; }
  Atom at(Atom n) const;
  bool is_identity() const;
  bool resolved() const { return !std::holds_alternative<Unresolved>(rule); }
  bool injective() const;
  std::string name() const;
};

/// phi(n) = targets[n-1] for n <= targets.size(), law(n) beyond.  On countable
/// spaces, targets missing below the depth are filled from a resolved law.
class Transformation {
 public:
  Transformation(const MeasureSpace& X, std::vector<Atom> targets, MapLaw law = MapLaw::identity());
  static Transformation identity(const MeasureSpace& X);

  const MeasureSpace& space() const { return space_; }
  Atom at(Atom n) const;
  Atom explicit_size() const { return static_cast<Atom>(targets_.size()); }
  const std::vector<Atom>& targets() const { return targets_; }
  const MapLaw& law() const { return law_; }
  /// Certified bijectivity of the whole map.
  bool bijective() const;
  /// Smallest B >= explicit_size() with phi(n) > target_bound for every n > B;
  /// nullopt when no such B exists or the law is unresolved.
  std::optional<Atom> domain_bound_for(Atom target_bound) const;
  /// Inverse map; requires bijective().
  Transformation inverse() const;
  /// this followed by `next`: n -> next(this(n)).
  Transformation then(const Transformation& next) const;

 private:
  MeasureSpace space_;
  std::vector<Atom> targets_;
  MapLaw law_;
};

/// Blocks over atoms 1..covered; beyond, either one explicit block absorbs the
/// tail, or the fibers of `tail_fibers` form the blocks.
struct Partition {
  std::vector<std::vector<Atom>> blocks;
  Atom covered = 0;
  std::optional<std::size_t> tail_block;
  std::optional<MapLaw> tail_fibers;
  bool resolved = true;

  static Partition singletons(const MeasureSpace& X);
  /// Index of the block containing atom n.
  std::optional<std::size_t> block_of(Atom n) const;
};

/// mu(m(k)) as a term in k.
std::optional<TailTerm> weight_along(const MeasureSpace& X, const IndexMap& m);
/// t(k) * mu(support(k)), on t's support.
std::optional<TailTerm> weighted_term(const MeasureSpace& X, const TailTerm& t);
/// Atoms above this bound receive h from the map law alone.
Atom rn_explicit_bound(const Transformation& phi);

/// sum_{n > bound} f(n) mu(n) for the tail law of f.
SeriesSum tail_integral(const MeasureSpace& X, const TailLaw& f, Atom bound);

double weighted_measure(const MeasureSpace& X, const SimpleFunction& f, const AtomSet& E);
Verdict nonsingular_check(const Transformation& phi);
SimpleFunction radon_nikodym(const Transformation& phi);
/// y -> (sum of w mu over the fiber of y) / mu(y); radon_nikodym is w = 1.
SimpleFunction pushforward_density(const Transformation& phi, const SimpleFunction& w);
SimpleFunction iterated_rn(const Transformation& phi, int i);
SimpleFunction inverse_rn(const Transformation& phi);
Partition fiber_partition(const Transformation& phi);
SimpleFunction conditional_expectation(const MeasureSpace& X, const SimpleFunction& f,
                                       const Partition& P);
Verdict sigma_finite_check(const Transformation& phi);

/// B_n = (first n atoms) intersected with {f < n}; finite spaces drop the
/// first-n restriction since X itself has finite measure.
class Exhaustion {
 public:
  Exhaustion(const MeasureSpace& X, SimpleFunction f);
  AtomSet set(long long n) const;

 private:
  MeasureSpace space_;
  SimpleFunction f_;
};

Exhaustion exhaustion(const MeasureSpace& X, const SimpleFunction& f);

struct SupportSet {
  std::vector<Atom> atoms;          // explicit region
  std::vector<Lattice> tail;        // lattices of nonzero tail terms
  bool resolved = true;
};
SupportSet support(const SimpleFunction& f);

}  // namespace orlicz
