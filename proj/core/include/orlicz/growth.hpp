#pragma once

// Grid probes for the growth conditions of a Young function.  Limits are not
// decidable numerically, so every probe is three-valued and reports the grid
// it certified.

#include <cstddef>
#include <string>
#include <utility>

#include "orlicz/young.hpp"

namespace orlicz {

struct ProbeRange {
  double lo = 1e-6;
  double hi = 1e6;
  int points_per_decade = 512;
};

struct ProbeOptions {
  ProbeRange range;
  /// Ratios above this count as divergent.
  double divergence = 1e6;
  /// Upper bound on points per axis for two-dimensional probes.
  std::size_t max_axis_points = 769;
};

struct GrowthVerdict {
  enum class Kind { HoldsGlobally, HoldsBeyond, ViolatedAt, Inconclusive };

  Kind kind = Kind::Inconclusive;
  double constant = 0.0;   // K, d, b or L: the grid-certified constant
  double x0 = 0.0;         // threshold for HoldsBeyond
  double witness = 0.0;    // for ViolatedAt
  ProbeRange range;        // interval and density actually used
  std::size_t grid_points = 0;
  std::string note;

  bool holds() const { return kind == Kind::HoldsGlobally || kind == Kind::HoldsBeyond; }
};

std::string to_string(GrowthVerdict::Kind k);

/// Phi(2x) <= K Phi(x).
GrowthVerdict delta2_probe(const YoungFunction& phi, const ProbeOptions& opts = {});
/// Phi(xy) <= d Phi(x) Phi(y).  A success is cross-checked against delta2_probe
/// on the same region.
GrowthVerdict delta_prime_probe(const YoungFunction& phi, const ProbeOptions& opts = {});
/// Phi(bxy) >= Phi(x) Phi(y).
GrowthVerdict nabla_prime_probe(const YoungFunction& phi, const ProbeOptions& opts = {});
/// Phi(x)/x -> 0 at 0, -> inf at inf, and Phi vanishes only at 0.
GrowthVerdict n_function_probe(const YoungFunction& phi, const ProbeOptions& opts = {});

struct SumBounds {
  GrowthVerdict K;  // Phi(a+b) <= K (Phi(a) + Phi(b))
  GrowthVerdict L;  // Phi^-1(a) + Phi^-1(b) <= L Phi^-1(a+b)
  /// The reverse inequalities Phi(a)+Phi(b) <= Phi(a+b) and
  /// Phi^-1(a+b) <= Phi^-1(a)+Phi^-1(b) held on every grid pair.
  bool reverse_directions_hold = true;
};

SumBounds sum_bound_constants(const YoungFunction& phi, const ProbeOptions& opts = {});

}  // namespace orlicz
