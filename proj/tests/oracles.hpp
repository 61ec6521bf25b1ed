#pragma once

// Reference computations that share no code paths with the library beyond
// evaluating Phi itself.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

/// sup_{0 <= y <= ymax} (x y - F(y)) on a dense grid refined around the best node.
inline double legendre_grid(const Fn& F, double x, double ymax, int nodes = 4096) {
  double best = 0.0, arg = 0.0, h = ymax / nodes;
  for (int i = 0; i <= nodes; ++i) {
    const double y = i * h, v = x * y - F(y);
    if (v > best) best = v, arg = y;
  }
  for (int round = 0; round < 40; ++round) {
    const double lo = std::max(0.0, arg - h), hi = std::min(ymax, arg + h);
    h = (hi - lo) / 64.0;
    for (int i = 0; i <= 64; ++i) {
      const double y = lo + i * h, v = x * y - F(y);
      if (v > best) best = v, arg = y;
    }
  }
  return best;
}

/// inf{t : F(t) > y}, by bisection.
inline double inverse(const Fn& F, double y) {
  double lo = 0.0, hi = 1.0;
  while (F(hi) <= y) lo = hi, hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (F(mid) > y ? hi : lo) = mid;
  }
  return hi;
}

/// inf{k > 0 : sum F(|a_i| / k) mu_i <= 1} by bisection on k.
inline double luxemburg(const Fn& F, const std::vector<double>& a, const std::vector<double>& mu) {
  auto rho = [&](double k) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += F(std::abs(a[i]) / k) * mu[i];
    return s;
  };
  if (std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; })) return 0.0;
  double lo = 1e-300, hi = 1.0;
  while (rho(hi) > 1.0) lo = hi, hi *= 2.0;
  while (rho(lo) <= 1.0 && lo > 1e-300) lo /= 2.0;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (rho(mid) > 1.0 ? lo : hi) = mid;
  }
  return hi;
}

/// Amemiya form of the Orlicz norm: inf_{k > 0} (1 + rho(k f)) / k.
inline double amemiya(const Fn& F, const std::vector<double>& a, const std::vector<double>& mu) {
  auto obj = [&](double logk) {
    const double k = std::exp(logk);
    double s = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += F(std::abs(a[i]) * k) * mu[i];
    return s / k;
  };
  double best = std::numeric_limits<double>::infinity(), arg = 0.0;
  for (double t = -40.0; t <= 40.0; t += 0.01)
    if (const double v = obj(t); v < best) best = v, arg = t;
  double lo = arg - 0.01, hi = arg + 0.01;
  for (int i = 0; i < 200; ++i) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    (obj(m1) < obj(m2) ? hi : lo) = (obj(m1) < obj(m2) ? m2 : m1);
  }
  return std::min(best, obj(0.5 * (lo + hi)));
}

/// mu(phi^-1({y})) / mu({y}) over explicit 1-based targets.
inline std::vector<double> radon_nikodym(const std::vector<double>& mu, const std::vector<long long>& t) {
  std::vector<double> h(mu.size(), 0.0);
  for (std::size_t x = 0; x < t.size(); ++x) h[static_cast<std::size_t>(t[x] - 1)] += mu[x];
  for (std::size_t y = 0; y < mu.size(); ++y) h[y] /= mu[y];
  return h;
}

/// Block averages of f over the fibers of t.
inline std::vector<double> fiber_average(const std::vector<double>& mu, const std::vector<long long>& t,
                                         const std::vector<double>& f) {
  std::map<long long, std::pair<double, double>> acc;
  for (std::size_t x = 0; x < t.size(); ++x) {
    acc[t[x]].first += f[x] * mu[x];
    acc[t[x]].second += mu[x];
  }
  std::vector<double> out(f.size());
  for (std::size_t x = 0; x < t.size(); ++x) out[x] = acc[t[x]].first / acc[t[x]].second;
  return out;
}

}  // namespace oracle
