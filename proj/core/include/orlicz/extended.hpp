#pragma once

// Extended nonnegative reals are plain doubles with +inf as a first-class
// value.  The measure-theoretic product convention 0 * inf = 0 applies
// everywhere a weight meets a possibly infinite density.

#include <algorithm>
#include <cmath>
#include <limits>

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_inf(double x) { return std::isinf(x) && x > 0; }

/// Product with 0 * (+/-inf) = 0.
inline double ext_mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

/// Quotient used for densities: 0 / 0 = 0, finite / inf = 0.
inline double ext_div(double a, double b) {
  if (a == 0.0) return 0.0;
  return a / b;
}

/// Relative closeness with an absolute floor of `tol` near zero.
inline bool close_rel(double a, double b, double tol) {
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Neumaier-compensated running sum.  Infinite terms saturate the sum.
class CompensatedSum {
 public:
  void add(double x) {
    if (std::isinf(x) || std::isnan(x)) {
      special_ += x;
      return;
    }
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return special_ != 0.0 ? special_ : sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double special_ = 0.0;
};

}  // namespace orlicz
