#pragma once

#include <cstdint>
#include <optional>

#include "orlicz/compop.hpp"
#include "orlicz/growth.hpp"

namespace orlicz {

/// C*g(y) = h(y) times the fiber average of g over phi^-1({y}); 0 on empty fibers.
SimpleFunction adjoint_apply(const YoungFunction& phi, const Transformation& map,
                             const SimpleFunction& g, const ProbeOptions& probe = {});

struct DensityIndexReport {
  SimpleFunction J;  // 1 + h_{-1} Psi(h) o phi
  Verdict verdict;
  GrowthVerdict delta_prime;
  int sampled = 0;
  int contained = 0;         // samples with C*g in L^Psi
  int chain_checked = 0;     // samples where the modular chain was decisive
  int chain_failures = 0;
  int chain_below_x0 = 0;    // samples with arguments under the certified threshold
};
DensityIndexReport adjoint_density_index(const YoungFunction& phi, const YoungFunction& psi,
                                         const Transformation& map, int samples = 16,
                                         std::uint64_t seed = 42, const ProbeOptions& probe = {});

struct AdjointReport {
  SimpleFunction adjoint_values;
  double lhs = 0.0;  // <f o phi, g>
  double rhs = 0.0;  // <f, C*g>
  double residual = 0.0;
  bool within_tolerance = false;
  std::optional<DensityIndexReport> density;
  std::string note;
};
AdjointReport duality_pairing_check(const YoungFunction& phi, const Transformation& map,
                                    const SimpleFunction& f, const SimpleFunction& g,
                                    double tol = 1e-10, const ProbeOptions& probe = {});

}  // namespace orlicz
