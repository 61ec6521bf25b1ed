#pragma once

// Young functions: convex, even, Phi(0) = 0, Phi(x) -> inf.  Values are
// extended reals; +inf is legal (bounded effective domain).

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace orlicz {

class YoungFunction {
 public:
  /// Phi(x) = |x|^p, p >= 1.
  struct PowerAbs {
    double p;
  };
  /// Phi(x) = |x|^p / p, p > 1.
  struct PowerOverP {
    double p;
  };
  /// Phi(x) = e^|x| - 1.
  struct ExpMinusOne {};
  /// Phi(x) = |x|.
  struct AbsValue {};
  /// Convex piecewise-linear on [0, inf): breakpoints (x_i, Phi(x_i)) starting
  /// at (0, 0), continued beyond the last breakpoint with `tail_slope`
  /// (+inf means Phi = +inf there).
  struct PiecewiseLinear {
    std::vector<std::pair<double, double>> points;
    double tail_slope;
  };
  /// Complementary function of a closed-form family without a closed-form
  /// family of its own (|x|^p with p > 1, e^|x| - 1).
  struct ConjugateOf {
    std::shared_ptr<const YoungFunction> base;
  };

  using Family = std::variant<PowerAbs, PowerOverP, ExpMinusOne, AbsValue, PiecewiseLinear,
                              ConjugateOf>;

  static YoungFunction power_abs(double p);
  static YoungFunction power_over_p(double p);
  static YoungFunction exp_minus_one();
  static YoungFunction abs_value();
  /// Validates convexity and monotonicity; throws std::invalid_argument.
  static YoungFunction piecewise(std::vector<std::pair<double, double>> points,
                                 double tail_slope);
  /// Piecewise continued with the slope of its last segment.
  static YoungFunction piecewise(std::vector<std::pair<double, double>> points);

  const Family& family() const { return family_; }

  /// Phi(|x|).
  double operator()(double x) const;
  /// log Phi(|x|), finite where Phi(x) itself overflows; -inf where Phi vanishes.
  double log_value(double x) const;
  /// One-sided derivatives on [0, inf); +inf outside the effective domain.
  double right_derivative(double x) const;
  double left_derivative(double x) const;
  /// inf{x >= 0 : Phi(x) > y}.
  double inverse(double y) const;
  /// sup{x : Phi(x) < inf}.
  double domain_bound() const;
  /// If Phi(x) = c |x|^p, returns (c, p).
  std::optional<std::pair<double, double>> power_form() const;
  std::string name() const;

 private:
  explicit YoungFunction(Family f) : family_(std::move(f)) {}
  friend YoungFunction conjugate(const YoungFunction& phi);

  Family family_;
};

/// Legendre-Fenchel complement Psi(y) = sup_{x >= 0} (x|y| - Phi(x)).
/// Closed-form families map analytically; piecewise functions map through the
/// breakpoint transform (slopes and abscissae swap roles).
YoungFunction conjugate(const YoungFunction& phi);

/// sup_{y >= 0} (x y - F(y)) by bracketing and golden-section search; used to
/// check analytic conjugates.
double legendre_numeric(const YoungFunction& F, double x);

inline double eval(const YoungFunction& phi, double x) { return phi(x); }
inline double generalized_inverse(const YoungFunction& phi, double y) { return phi.inverse(y); }

/// Phi(x) + Psi(y) - xy for x, y >= 0; nonnegative by Young's inequality.
double young_inequality_gap(const YoungFunction& phi, double x, double y);

/// Parses "power_abs:2", "power_over_p:3", "exp_minus_one", "abs",
/// "conjugate:<spec>".
YoungFunction parse_young(const std::string& spec);

}  // namespace orlicz
