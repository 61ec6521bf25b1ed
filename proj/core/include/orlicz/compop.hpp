#pragma once

// Composition operators C_phi f = f o phi on discrete Orlicz spaces.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/measure.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

/// (f o phi)(x) = f(phi(x)), with the tail composed through the map law.
SimpleFunction compose_apply(const SimpleFunction& f, const Transformation& phi);

/// Indicator of {f < threshold}.
SimpleFunction indicator_below(const SimpleFunction& f, double threshold);

/// Largest value of f over prefix and tail; nullopt if unresolved.
std::optional<double> supremum(const SimpleFunction& f);

struct ChangeOfVariableReport {
  ModularResult composed;  // rho(f o phi)
  ModularResult weighted;  // sum Phi(|f|) h mu
  bool agree = false;
};
ChangeOfVariableReport change_of_variable_check(const YoungFunction& phi, const SimpleFunction& f,
                                                const Transformation& map, double tol = 1e-12);

struct MembershipReport {
  Verdict direct;    // some k with rho(k f o phi) < inf
  Verdict weighted;  // f in L^Phi((1 + h) dmu)
  bool agree = true;
};
MembershipReport domain_membership(const YoungFunction& phi, const Transformation& map,
                                   const SimpleFunction& f);

struct DomainVerdict {
  enum class Kind { DenselyDefined, NotDenselyDefined, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<Atom> witness;  // atom with h = +inf
  Verdict h_facet;
  Verdict sigma_facet;
  std::optional<Verdict> weighted_facet;  // sigma-finiteness of mu_h, where computed
  bool facets_agree = true;
  std::string nu;  // description of (1 + h) dmu
};
std::string to_string(DomainVerdict::Kind k);

DomainVerdict density_verdict(const Transformation& map);

struct ApproximantReport {
  SimpleFunction f_N;
  double distance = 0.0;           // N(f_N - f)
  Verdict in_domain;               // f_N in D(C_phi)
  double composed_norm = 0.0;      // N(C_phi f_N)
  double bound = 0.0;              // (N - 1) N(f)
  bool bound_holds = false;
};
ApproximantReport truncation_approximants(const YoungFunction& phi, const Transformation& map,
                                          const SimpleFunction& f, long long N, double tol = 1e-9);

struct ClosureRow {
  double epsilon = 0.0;
  long long N = 0;
  double distance = 0.0;
  bool achieved = false;
};
struct ClosureReport {
  std::vector<ClosureRow> rows;
  bool monotone = true;  // N(f_N - f) nonincreasing along the doubling schedule
};
ClosureReport closure_identity_check(const YoungFunction& phi, const Transformation& map,
                                     const SimpleFunction& f,
                                     std::vector<double> epsilons = {1e-2, 1e-4, 1e-6},
                                     long long max_N = 1LL << 20);

struct WeightedDensityReport {
  Verdict verdict;
  std::vector<double> distances;  // N(f chi_{g<n} - f) for n = 1, 2, 4, ...
};
WeightedDensityReport dense_weighted_subspace_check(const YoungFunction& phi, const MeasureSpace& X,
                                                    const SimpleFunction& g,
                                                    const std::optional<SimpleFunction>& sample = {});

struct SumDomainReport {
  SimpleFunction J;
  Verdict weighted;  // f in L^Phi(J dmu)
  Verdict direct;    // f, f o phi, f o psi all in L^Phi
  bool agree = true;
};
SumDomainReport sum_domain_check(const YoungFunction& phi, double a1, const Transformation& map1,
                                 double a2, const Transformation& map2, const SimpleFunction& f);

struct CompositeDomainReport {
  Verdict direct;                        // f, f o psi, f o psi o phi all in L^Phi
  std::optional<Verdict> j0_formula;  // L^Phi(J0 dmu), J0 = 1 + h2 + h1 o psi^-1
  std::optional<Verdict> corrected;      // L^Phi(J dmu), J = 1 + h2 + h2 (h1 o psi^-1)
  std::string notice;
  bool agree = true;  // direct and corrected facets
  bool j0_agrees = true;
};
CompositeDomainReport composite_domain_check(const YoungFunction& phi, const Transformation& map1,
                                             const Transformation& map2, const SimpleFunction& f);

enum class SequenceBuilder { Constant, Truncation, GeometricPerturbation };

struct ClosednessReport {
  std::vector<double> distances;        // N(f_n - f)
  std::vector<double> graph_distances;  // N(f_n o phi - g)
  bool converges = false;
  bool limit_identity = false;          // g = f o phi atomwise
  std::string note;
};
ClosednessReport closedness_demo(const YoungFunction& phi, const Transformation& map,
                                 const SimpleFunction& f, SequenceBuilder builder, int length = 30);

struct BoundednessVerdict {
  enum class Kind { EverywhereDefinedAndBounded, NotEverywhereDefined, Inconclusive };
  Kind kind = Kind::Inconclusive;
  double bound = 0.0;                     // operator norm bound max(1, sup h)
  std::optional<SimpleFunction> witness;  // f in L^Phi with f o phi not in L^Phi
  std::string certificate;
};
std::string to_string(BoundednessVerdict::Kind k);

BoundednessVerdict boundedness_verdict(const YoungFunction& phi, const Transformation& map);

/// max N(f o phi) / N(f) over indicators and seeded random simple functions.
double operator_norm_estimate(const YoungFunction& phi, const Transformation& map, int probes = 64,
                              std::uint64_t seed = 42);

}  // namespace orlicz
