#include <cmath>
#include <functional>
#include <stdexcept>

#include "orlicz/norms.hpp"

namespace orlicz {

NormResult orlicz_norm_grid(const YoungFunction& phi, const MeasureSpace& X, const SimpleFunction& f,
                            int levels) {
  if (!X.is_finite() || X.depth() > 4)
    throw std::invalid_argument("grid oracle handles finite spaces of at most 4 atoms");
  const YoungFunction psi = conjugate(phi);
  const std::size_t n = static_cast<std::size_t>(X.depth());
  std::vector<double> a(n), mu(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::abs(f.at(static_cast<Atom>(i + 1)));
    mu[i] = X.weight(static_cast<Atom>(i + 1));
  }
  auto value = [&](const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != 0.0 && b[i] > 0.0) s += a[i] * psi.inverse(b[i] / mu[i]) * mu[i];
    return s;
  };
  std::vector<double> best(n, 1.0 / static_cast<double>(n));
  double best_value = value(best);
  double step = 1e-2, window = 1.0;
  for (int level = 0; level < levels; ++level) {
    const std::vector<double> center = best;
    std::vector<double> b(n);
    std::function<void(std::size_t, double)> walk = [&](std::size_t i, double rest) {
      if (i + 1 == n) {
        b[i] = std::max(0.0, rest);
        if (const double v = value(b); v > best_value) {
          best_value = v;
          best = b;
        }
        return;
      }
      const double lo = std::max(0.0, center[i] - window), hi = std::min(rest, center[i] + window);
      for (double x = lo; x <= hi + 1e-15; x += step) {
        b[i] = x;
        walk(i + 1, rest - x);
      }
    };
    walk(0, 1.0);
    window = 2.0 * step;
    step /= 10.0;
  }
  NormResult r;
  r.value = best_value;
  r.method = NormMethod::BruteForceOracle;
  r.achieved_tolerance = step * 10.0;
  return r;
}

}  // namespace orlicz
