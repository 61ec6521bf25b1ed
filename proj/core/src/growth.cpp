#include "orlicz/growth.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "orlicz/extended.hpp"

namespace orlicz {

namespace {

void validate(const ProbeRange& r) {
  if (!(r.lo > 0.0) || !(r.hi > r.lo) || std::isinf(r.hi) || r.points_per_decade < 1)
    throw std::invalid_argument("degenerate probe range");
}

std::vector<double> log_grid(const ProbeRange& r) {
  validate(r);
  const double decades = std::log10(r.hi / r.lo);
  const auto n = static_cast<std::size_t>(std::ceil(decades * r.points_per_decade)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = r.lo * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(n - 1));
  g.back() = r.hi;
  return g;
}

std::vector<double> axis_grid(const ProbeOptions& o, ProbeRange& used) {
  auto g = log_grid(o.range);
  std::size_t stride = (g.size() + o.max_axis_points - 1) / std::max<std::size_t>(o.max_axis_points, 1);
  stride = std::max<std::size_t>(stride, 1);
  std::vector<double> out;
  for (std::size_t i = 0; i < g.size(); i += stride) out.push_back(g[i]);
  if (out.back() != g.back()) out.push_back(g.back());
  used = o.range;
  used.points_per_decade = std::max(1, o.range.points_per_decade / static_cast<int>(stride));
  return out;
}

// Phi value that is +inf only because of floating overflow.
bool overflowed(const YoungFunction& phi, double x, double v) {
  return is_inf(v) && x <= phi.domain_bound();
}

struct Sample {
  double x;
  double ratio;
};

// Shared verdict logic for a ratio sampled along an increasing grid.
GrowthVerdict classify_1d(const std::vector<Sample>& s, const ProbeOptions& o) {
  GrowthVerdict v;
  v.range = o.range;
  v.grid_points = s.size();
  if (s.empty()) {
    v.note = "no decisive grid points";
    return v;
  }
  double kmax = 0.0;
  for (const auto& p : s) kmax = std::max(kmax, p.ratio);
  if (kmax <= o.divergence) {
    v.kind = GrowthVerdict::Kind::HoldsGlobally;
    v.constant = kmax;
    return v;
  }
  const double top = s.back().x;
  // suffix on which every ratio is below the divergence threshold
  std::size_t i = s.size();
  double suffix_max = 0.0;
  while (i > 0 && s[i - 1].ratio <= o.divergence) {
    --i;
    suffix_max = std::max(suffix_max, s[i].ratio);
  }
  if (i < s.size() && s[i].x < top / 10.0) {
    v.kind = GrowthVerdict::Kind::HoldsBeyond;
    v.x0 = s[i].x;
    v.constant = suffix_max;
    return v;
  }
  // ratios must keep growing across the last decade
  std::size_t start = 0;
  while (s[start].x < top / 10.0) ++start;
  bool growing = true;
  for (std::size_t j = start + 1; j < s.size(); ++j)
    if (s[j].ratio < s[j - 1].ratio) growing = false;
  if (growing && s.back().ratio > o.divergence) {
    for (std::size_t j = start; j < s.size(); ++j) {
      if (s[j].ratio > o.divergence) {
        v.kind = GrowthVerdict::Kind::ViolatedAt;
        v.witness = s[j].x;
        v.constant = s[j].ratio;
        return v;
      }
    }
  }
  v.note = "ratios exceed the divergence threshold without a monotone trend";
  return v;
}

// Symmetric two-dimensional ratio R(i, j) on an axis grid; nullopt = skip.
template <class F>
GrowthVerdict classify_2d(const std::vector<double>& g, const ProbeRange& used, F ratio,
                          const ProbeOptions& o) {
  const std::size_t n = g.size();
  GrowthVerdict v;
  v.range = used;
  v.grid_points = n * n;
  // best[i] = max over pairs with min index >= i
  std::vector<double> best(n + 1, 0.0);
  std::vector<std::optional<double>> diag(n);
  bool any = false;
  for (std::size_t i = n; i-- > 0;) {
    double row = 0.0;
    for (std::size_t j = i; j < n; ++j) {
      auto r = ratio(g[i], g[j]);
      if (!r) continue;
      any = true;
      row = std::max(row, *r);
      if (j == i) diag[i] = r;
    }
    best[i] = std::max(best[i + 1], row);
  }
  if (!any) {
    v.note = "no decisive grid points";
    return v;
  }
  if (best[0] <= o.divergence) {
    v.kind = GrowthVerdict::Kind::HoldsGlobally;
    v.constant = best[0];
    return v;
  }
  const double top = g.back();
  for (std::size_t i = 0; i < n; ++i) {
    if (best[i] <= o.divergence) {
      if (g[i] < top / 10.0) {
        v.kind = GrowthVerdict::Kind::HoldsBeyond;
        v.x0 = g[i];
        v.constant = best[i];
        return v;
      }
      break;
    }
  }
  std::vector<Sample> d;
  for (std::size_t i = 0; i < n; ++i)
    if (diag[i]) d.push_back({g[i], *diag[i]});
  if (!d.empty()) {
    auto dv = classify_1d(d, o);
    if (dv.kind == GrowthVerdict::Kind::ViolatedAt) {
      v.kind = dv.kind;
      v.witness = dv.witness;
      v.constant = dv.constant;
      return v;
    }
  }
  v.note = "ratios exceed the divergence threshold without a monotone diagonal trend";
  return v;
}

// exp(num - den) for logarithms of nonnegative quantities; 0/0 is skipped.
std::optional<double> log_ratio(double num, double den) {
  if (std::isinf(den) && den < 0) {
    if (std::isinf(num) && num < 0) return std::nullopt;
    return kInf;
  }
  if (is_inf(num)) return kInf;
  return std::exp(num - den);
}

}  // namespace

std::string to_string(GrowthVerdict::Kind k) {
  switch (k) {
    case GrowthVerdict::Kind::HoldsGlobally: return "HoldsGlobally";
    case GrowthVerdict::Kind::HoldsBeyond: return "HoldsBeyond";
    case GrowthVerdict::Kind::ViolatedAt: return "ViolatedAt";
    case GrowthVerdict::Kind::Inconclusive: break;
  }
  return "Inconclusive";
}

GrowthVerdict delta2_probe(const YoungFunction& phi, const ProbeOptions& opts) {
  const auto grid = log_grid(opts.range);
  const double dom = phi.domain_bound();
  std::vector<Sample> s;
  for (double x : grid) {
    if (x > dom) continue;
    const double num = 2.0 * x > dom ? kInf : phi.log_value(2.0 * x);
    if (auto r = log_ratio(num, phi.log_value(x))) s.push_back({x, *r});
  }
  auto v = classify_1d(s, opts);
  v.grid_points = grid.size();
  return v;
}

GrowthVerdict delta_prime_probe(const YoungFunction& phi, const ProbeOptions& opts) {
  ProbeRange used;
  const auto g = axis_grid(opts, used);
  const double dom = phi.domain_bound();
  auto ratio = [&](double x, double y) -> std::optional<double> {
    if (x > dom || y > dom) return std::nullopt;
    const double num = x * y > dom ? kInf : phi.log_value(x * y);
    return log_ratio(num, phi.log_value(x) + phi.log_value(y));
  };
  auto v = classify_2d(g, used, ratio, opts);
  if (v.holds()) {
    ProbeOptions sub = opts;
    if (v.kind == GrowthVerdict::Kind::HoldsBeyond) sub.range.lo = v.x0;
    auto d2 = delta2_probe(phi, sub);
    if (!d2.holds()) {
      v.note = "delta-prime held on the grid but delta-2 did not on the same region (" +
               to_string(d2.kind) + ")";
      v.kind = GrowthVerdict::Kind::Inconclusive;
    }
  }
  return v;
}

GrowthVerdict nabla_prime_probe(const YoungFunction& phi, const ProbeOptions& opts) {
  ProbeRange used;
  const auto g = axis_grid(opts, used);
  const double dom = phi.domain_bound();
  // smallest b with Phi(b x y) >= Phi(x) Phi(y), via the generalized inverse
  auto needed = [&](double x, double y) -> std::optional<double> {
    if (x > dom || y > dom) return std::nullopt;
    const double px = phi(x), py = phi(y);
    if (overflowed(phi, x, px) || overflowed(phi, y, py)) return std::nullopt;
    const double target = px * py;
    if (target == 0.0) return std::nullopt;
    if (is_inf(target)) return std::nullopt;
    const double z = phi.inverse(target);
    if (phi(z) < target && z >= dom) return kInf;
    return z / (x * y);
  };
  return classify_2d(g, used, needed, opts);
}

GrowthVerdict n_function_probe(const YoungFunction& phi, const ProbeOptions& opts) {
  const auto grid = log_grid(opts.range);
  GrowthVerdict v;
  v.range = opts.range;
  v.grid_points = grid.size();
  const double dom = phi.domain_bound();
  std::vector<Sample> s;
  for (double x : grid) {
    if (x > dom) {
      v.kind = GrowthVerdict::Kind::ViolatedAt;
      v.witness = x;
      v.note = "takes the value +inf";
      return v;
    }
    const double px = phi(x);
    if (px == 0.0) {
      v.kind = GrowthVerdict::Kind::ViolatedAt;
      v.witness = x;
      v.note = "vanishes away from 0";
      // keep scanning for the largest zero
      continue;
    }
    if (is_inf(px)) continue;  // overflow
    s.push_back({x, px / x});
  }
  if (v.kind == GrowthVerdict::Kind::ViolatedAt) return v;
  if (s.size() < 3 || s.back().x / s.front().x < 1e3) {
    v.note = "fewer than three decades of finite values";
    return v;
  }
  auto at_or_after = [&](double x) {
    std::size_t i = 0;
    while (i + 1 < s.size() && s[i].x < x * (1.0 - 1e-12)) ++i;
    return i;
  };
  auto at_or_before = [&](double x) {
    std::size_t i = s.size() - 1;
    while (i > 0 && s[i].x > x * (1.0 + 1e-12)) --i;
    return i;
  };
  auto monotone = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = a + 1; j <= b; ++j)
      if (s[j].ratio < s[j - 1].ratio) return false;
    return true;
  };
  enum class End { Ok, Violated, Unknown };
  // Relative change per decade: constant for power laws, shrinking when the
  // ratio settles at a finite positive limit.
  auto judge = [](double c_outer, double c_inner) {
    if (c_outer <= 1e-12) return End::Violated;
    if (c_outer >= 0.5 * c_inner) return End::Ok;
    if (c_outer <= 0.2 * c_inner) return End::Violated;
    return End::Unknown;
  };
  const std::size_t l0 = 0, l1 = at_or_after(s[0].x * 10.0), l2 = at_or_after(s[0].x * 100.0);
  const std::size_t u0 = s.size() - 1, u1 = at_or_before(s[u0].x / 10.0),
                    u2 = at_or_before(s[u0].x / 100.0);
  End lower = End::Unknown, upper = End::Unknown;
  if (monotone(l0, l2))
    lower = judge(1.0 - s[l0].ratio / s[l1].ratio, 1.0 - s[l1].ratio / s[l2].ratio);
  if (monotone(u2, u0))
    upper = judge(s[u0].ratio / s[u1].ratio - 1.0, s[u1].ratio / s[u2].ratio - 1.0);
  if (lower == End::Violated) {
    v.kind = GrowthVerdict::Kind::ViolatedAt;
    v.witness = s[l0].x;
    v.constant = s[l0].ratio;
    v.note = "Phi(x)/x does not tend to 0 at 0";
  } else if (upper == End::Violated) {
    v.kind = GrowthVerdict::Kind::ViolatedAt;
    v.witness = s[u0].x;
    v.constant = s[u0].ratio;
    v.note = "Phi(x)/x does not tend to infinity";
  } else if (lower == End::Ok && upper == End::Ok) {
    v.kind = GrowthVerdict::Kind::HoldsGlobally;
  } else {
    v.note = "trend of Phi(x)/x not certified";
  }
  return v;
}

SumBounds sum_bound_constants(const YoungFunction& phi, const ProbeOptions& opts) {
  ProbeRange used;
  const auto g = axis_grid(opts, used);
  const double dom = phi.domain_bound();
  SumBounds out;
  const double slack = 1e-12;
  auto k_ratio = [&](double a, double b) -> std::optional<double> {
    if (a + b > dom) return std::nullopt;
    const double pa = phi(a), pb = phi(b), pab = phi(a + b);
    if (overflowed(phi, a + b, pab)) return std::nullopt;
    if (pa + pb > pab * (1.0 + slack) + 1e-300) out.reverse_directions_hold = false;
    if (pa + pb == 0.0) return pab == 0.0 ? std::nullopt : std::optional<double>(kInf);
    return pab / (pa + pb);
  };
  auto l_ratio = [&](double a, double b) -> std::optional<double> {
    const double ia = phi.inverse(a), ib = phi.inverse(b), iab = phi.inverse(a + b);
    if (iab > (ia + ib) * (1.0 + slack)) out.reverse_directions_hold = false;
    if (iab == 0.0) return ia + ib == 0.0 ? std::nullopt : std::optional<double>(kInf);
    return (ia + ib) / iab;
  };
  out.K = classify_2d(g, used, k_ratio, opts);
  out.L = classify_2d(g, used, l_ratio, opts);
  return out;
}

}  // namespace orlicz
