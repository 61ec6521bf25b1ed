#pragma once

#include <string>
#include <vector>

#include "orlicz/measure.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct ModularResult {
  double value = 0.0;   // best estimate; +inf permitted
  double lower = 0.0;   // certified bounds
  double upper = 0.0;
  bool resolved = true; // false: only `lower` is meaningful

  bool exact() const { return resolved && lower == upper; }
};

enum class NormMethod { Analytic, Bisection, DualOptimization, BruteForceOracle };
std::string to_string(NormMethod m);

struct NormResult {
  double value = 0.0;
  NormMethod method = NormMethod::Analytic;
  double achieved_tolerance = 0.0;
  bool resolved = true;
  std::string note;
};

struct NormOptions {
  double tolerance = 1e-12;
  /// Skip closed forms and always bisect (used to test the general path).
  bool force_bisection = false;
  /// Skip the stationarity family and use projected ascent.
  bool force_projected_ascent = false;
};

/// rho_Phi(f) = sum Phi(|f|) mu, with closed-form or bounded tails.
ModularResult modular(const YoungFunction& phi, const MeasureSpace& X, const SimpleFunction& f);

/// sum Phi(|f|) w mu for a density w >= 0 (0 * inf = 0).
ModularResult weighted_modular(const YoungFunction& phi, const MeasureSpace& X,
                               const SimpleFunction& f, const SimpleFunction& w);

/// f in L^Phi(w dmu): some k > 0 has sum Phi(k|f|) w mu < inf.  Fails only
/// when every probed k gives a certified infinite modular.
Verdict weighted_membership(const YoungFunction& phi, const MeasureSpace& X,
                            const SimpleFunction& f, const SimpleFunction& w);
Verdict membership(const YoungFunction& phi, const MeasureSpace& X, const SimpleFunction& f);

/// Gauge norm inf{k > 0 : rho(f / k) <= 1}.
NormResult luxemburg_norm(const YoungFunction& phi, const MeasureSpace& X, const SimpleFunction& f,
                          const NormOptions& opts = {});

/// sup{ sum |f g| mu : rho_Psi(g) <= 1 }.  Requires a finite space or a zero tail.
NormResult orlicz_norm(const YoungFunction& phi, const MeasureSpace& X, const SimpleFunction& f,
                       const NormOptions& opts = {});

/// Maximizer of the dual problem on explicit atoms (empty for a zero tail f).
std::vector<double> orlicz_norm_maximizer(const YoungFunction& phi, const MeasureSpace& X,
                                          const SimpleFunction& f, const NormOptions& opts = {});

/// Grid search over modular budgets b_i = rho contribution of atom i, with
/// g_i = Psi^-1(b_i / mu_i).  Coarse-to-fine simplex grid; finite spaces of at
/// most 4 atoms.  A lower bound that converges to the Orlicz norm.
NormResult orlicz_norm_grid(const YoungFunction& phi, const MeasureSpace& X, const SimpleFunction& f,
                            int levels = 3);

bool dual_ball_membership(const YoungFunction& psi, const MeasureSpace& X, const SimpleFunction& g);

/// sum f g mu; throws std::domain_error when not absolutely summable.
double holder_pairing(const MeasureSpace& X, const SimpleFunction& f, const SimpleFunction& g);

struct ConvergenceReport {
  std::vector<double> norm_distance;   // N(f_n - f)
  std::vector<double> modulars;        // rho(f_n)
  double target_modular = 0.0;
  bool norm_converges = false;
  bool modular_converges = false;
  bool pointwise_converges = false;
  bool delta2 = false;
  Verdict verdict;
};

ConvergenceReport convergence_check(const YoungFunction& phi, const MeasureSpace& X,
                                    const std::vector<SimpleFunction>& seq,
                                    const SimpleFunction& f, double tol = 1e-6);

}  // namespace orlicz
