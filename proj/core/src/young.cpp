#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "orlicz/extended.hpp"

namespace orlicz {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using PL = YoungFunction::PiecewiseLinear;

double slope(const PL& f, std::size_t i) {  // segment (i-1, i), i >= 1
  const auto& [x0, v0] = f.points[i - 1];
  const auto& [x1, v1] = f.points[i];
  return (v1 - v0) / (x1 - x0);
}

double pl_eval(const PL& f, double x) {
  const auto& [xn, vn] = f.points.back();
  if (x >= xn) {
    if (x == xn) return vn;
    return is_inf(f.tail_slope) ? kInf : vn + f.tail_slope * (x - xn);
  }
  auto it = std::upper_bound(f.points.begin(), f.points.end(), x,
                             [](double v, const auto& p) { return v < p.first; });
  std::size_t i = static_cast<std::size_t>(it - f.points.begin());
  const auto& [x0, v0] = f.points[i - 1];
  return v0 + slope(f, i) * (x - x0);
}

double pl_right_derivative(const PL& f, double x) {
  if (x >= f.points.back().first) return f.tail_slope;
  auto it = std::upper_bound(f.points.begin(), f.points.end(), x,
                             [](double v, const auto& p) { return v < p.first; });
  return slope(f, static_cast<std::size_t>(it - f.points.begin()));
}

double pl_left_derivative(const PL& f, double x) {
  if (x <= 0.0) return 0.0;
  if (x > f.points.back().first) return f.tail_slope;
  auto it = std::lower_bound(f.points.begin(), f.points.end(), x,
                             [](const auto& p, double v) { return p.first < v; });
  return slope(f, static_cast<std::size_t>(it - f.points.begin()));
}

double pl_inverse(const PL& f, double y) {
  const auto& pts = f.points;
  const auto& [xn, vn] = pts.back();
  if (y >= vn) {
    if (is_inf(f.tail_slope)) return xn;
    return xn + (y - vn) / f.tail_slope;
  }
  // first breakpoint whose value exceeds y
  std::size_t i = 1;
  while (pts[i].second <= y) ++i;
  const auto& [x0, v0] = pts[i - 1];
  return x0 + (y - v0) / slope(f, i);
}

// Breakpoint Legendre transform on [0, inf).
PL pl_conjugate(const PL& f) {
  const auto& pts = f.points;
  const std::size_t n = pts.size() - 1;
  std::vector<std::pair<double, double>> out{{0.0, 0.0}};
  auto push = [&](double y, double v) {
    if (y == out.back().first) {
      out.back().second = v;
      return;
    }
    out.emplace_back(y, v);
  };
  for (std::size_t i = 1; i <= n; ++i) {
    double s = slope(f, i);
    push(s, pts[i].first * s - pts[i].second);
  }
  const auto& [xn, vn] = pts.back();
  double tail;
  if (is_inf(f.tail_slope)) {
    tail = xn;
  } else {
    push(f.tail_slope, xn * f.tail_slope - vn);
    tail = kInf;
  }
  // Values at y = 0 segment start are 0 by construction; clamp rounding noise.
  for (auto& p : out) p.second = std::max(p.second, 0.0);
  return PL{std::move(out), tail};
}

double conj_exp_inverse(double t) {
  if (t <= 0.0) return 1.0;
  if (is_inf(t)) return kInf;
  auto psi = [](double y) { return y <= 1.0 ? 0.0 : y * std::log(y) - y + 1.0; };
  double lo = 1.0, hi = 2.0;
  while (psi(hi) <= t) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (psi(mid) > t ? hi : lo) = mid;
  }
  return hi;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

YoungFunction YoungFunction::power_abs(double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("power_abs requires p >= 1");
  return YoungFunction(PowerAbs{p});
}

YoungFunction YoungFunction::power_over_p(double p) {
  if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("power_over_p requires p > 1");
  return YoungFunction(PowerOverP{p});
}

YoungFunction YoungFunction::exp_minus_one() { return YoungFunction(ExpMinusOne{}); }
YoungFunction YoungFunction::abs_value() { return YoungFunction(AbsValue{}); }

YoungFunction YoungFunction::piecewise(std::vector<std::pair<double, double>> points,
                                       double tail_slope) {
  if (points.empty() || points.front() != std::pair<double, double>{0.0, 0.0})
    throw std::invalid_argument("piecewise Young function must start at (0, 0)");
  double prev_slope = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].first > points[i - 1].first) || !std::isfinite(points[i].first) ||
        !std::isfinite(points[i].second))
      throw std::invalid_argument("piecewise breakpoints must be finite and strictly increasing");
    double s = (points[i].second - points[i - 1].second) / (points[i].first - points[i - 1].first);
    if (s < prev_slope - 1e-15 * std::max(1.0, std::abs(s)))
      throw std::invalid_argument("piecewise slopes must be nondecreasing and nonnegative");
    prev_slope = std::max(prev_slope, s);
  }
  if (!(tail_slope >= prev_slope) || !(tail_slope > 0.0))
    throw std::invalid_argument("piecewise tail slope must be positive and at least the last slope");
  if (is_inf(tail_slope) && points.size() < 2)
    throw std::invalid_argument("piecewise Young function must be finite somewhere beyond 0");
  return YoungFunction(PiecewiseLinear{std::move(points), tail_slope});
}

YoungFunction YoungFunction::piecewise(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2)
    throw std::invalid_argument("last-slope continuation needs at least two breakpoints");
  std::size_t n = points.size() - 1;
  double s = (points[n].second - points[n - 1].second) / (points[n].first - points[n - 1].first);
  return piecewise(std::move(points), s);
}

double YoungFunction::operator()(double x) const {
  const double a = std::abs(x);
  return std::visit(
      overloaded{
          [&](const PowerAbs& f) { return std::pow(a, f.p); },
          [&](const PowerOverP& f) { return std::pow(a, f.p) / f.p; },
          [&](const ExpMinusOne&) { return std::expm1(a); },
          [&](const AbsValue&) { return a; },
          [&](const PiecewiseLinear& f) { return pl_eval(f, a); },
          [&](const ConjugateOf& c) -> double {
            if (const auto* pa = std::get_if<PowerAbs>(&c.base->family_)) {
              double q = pa->p / (pa->p - 1.0);
              return (pa->p - 1.0) * std::pow(a / pa->p, q);
            }
            return a <= 1.0 ? 0.0 : a * std::log(a) - a + 1.0;
          },
      },
      family_);
}

double YoungFunction::log_value(double x) const {
  const double a = std::abs(x);
  const double v = (*this)(a);
  if (!is_inf(v) || a > domain_bound()) return std::log(v);
  return std::visit(
      overloaded{
          [&](const PowerAbs& f) { return f.p * std::log(a); },
          [&](const PowerOverP& f) { return f.p * std::log(a) - std::log(f.p); },
          [&](const ExpMinusOne&) { return a + std::log1p(-std::exp(-a)); },
          [&](const AbsValue&) { return std::log(a); },
          [&](const PiecewiseLinear&) { return std::log(v); },
          [&](const ConjugateOf& c) -> double {
            if (const auto* pa = std::get_if<PowerAbs>(&c.base->family_)) {
              const double q = pa->p / (pa->p - 1.0);
              return std::log(pa->p - 1.0) + q * (std::log(a) - std::log(pa->p));
            }
            return std::log(a) + std::log(std::log(a) - 1.0 + 1.0 / a);
          },
      },
      family_);
}

double YoungFunction::right_derivative(double x) const {
  const double a = std::abs(x);
  return std::visit(
      overloaded{
          [&](const PowerAbs& f) { return f.p == 1.0 ? 1.0 : f.p * std::pow(a, f.p - 1.0); },
          [&](const PowerOverP& f) { return std::pow(a, f.p - 1.0); },
          [&](const ExpMinusOne&) { return std::exp(a); },
          [&](const AbsValue&) { return 1.0; },
          [&](const PiecewiseLinear& f) { return pl_right_derivative(f, a); },
          [&](const ConjugateOf& c) -> double {
            if (const auto* pa = std::get_if<PowerAbs>(&c.base->family_))
              return std::pow(a / pa->p, 1.0 / (pa->p - 1.0));
            return a <= 1.0 ? 0.0 : std::log(a);
          },
      },
      family_);
}

double YoungFunction::left_derivative(double x) const {
  const double a = std::abs(x);
  if (a == 0.0) return 0.0;
  if (const auto* f = std::get_if<PiecewiseLinear>(&family_)) return pl_left_derivative(*f, a);
  return right_derivative(a);
}

double YoungFunction::inverse(double y) const {
  if (y < 0.0) throw std::invalid_argument("generalized inverse requires y >= 0");
  return std::visit(
      overloaded{
          [&](const PowerAbs& f) { return std::pow(y, 1.0 / f.p); },
          [&](const PowerOverP& f) { return std::pow(f.p * y, 1.0 / f.p); },
          [&](const ExpMinusOne&) { return std::log1p(y); },
          [&](const AbsValue&) { return y; },
          [&](const PiecewiseLinear& f) { return pl_inverse(f, y); },
          [&](const ConjugateOf& c) -> double {
            if (const auto* pa = std::get_if<PowerAbs>(&c.base->family_)) {
              double q = pa->p / (pa->p - 1.0);
              return pa->p * std::pow(y / (pa->p - 1.0), 1.0 / q);
            }
            return conj_exp_inverse(y);
          },
      },
      family_);
}

double YoungFunction::domain_bound() const {
  if (const auto* f = std::get_if<PiecewiseLinear>(&family_))
    return is_inf(f->tail_slope) ? f->points.back().first : kInf;
  return kInf;
}

std::optional<std::pair<double, double>> YoungFunction::power_form() const {
  return std::visit(
      overloaded{
          [](const PowerAbs& f) -> std::optional<std::pair<double, double>> {
            return std::pair{1.0, f.p};
          },
          [](const PowerOverP& f) -> std::optional<std::pair<double, double>> {
            return std::pair{1.0 / f.p, f.p};
          },
          [](const ExpMinusOne&) -> std::optional<std::pair<double, double>> { return std::nullopt; },
          [](const AbsValue&) -> std::optional<std::pair<double, double>> {
            return std::pair{1.0, 1.0};
          },
          [](const PiecewiseLinear& f) -> std::optional<std::pair<double, double>> {
            if (f.points.size() == 1 && std::isfinite(f.tail_slope))
              return std::pair{f.tail_slope, 1.0};
            return std::nullopt;
          },
          [](const ConjugateOf& c) -> std::optional<std::pair<double, double>> {
            if (const auto* pa = std::get_if<PowerAbs>(&c.base->family())) {
              double q = pa->p / (pa->p - 1.0);
              return std::pair{(pa->p - 1.0) * std::pow(pa->p, -q), q};
            }
            return std::nullopt;
          },
      },
      family_);
}

std::string YoungFunction::name() const {
  return std::visit(
      overloaded{
          [](const PowerAbs& f) { return "power_abs:" + fmt(f.p); },
          [](const PowerOverP& f) { return "power_over_p:" + fmt(f.p); },
          [](const ExpMinusOne&) { return std::string("exp_minus_one"); },
          [](const AbsValue&) { return std::string("abs"); },
          [](const PiecewiseLinear& f) {
            std::string s = "piecewise[";
            for (std::size_t i = 0; i < f.points.size(); ++i) {
              if (i) s += ",";
              s += "(" + fmt(f.points[i].first) + "," + fmt(f.points[i].second) + ")";
            }
            return s + ";tail=" + (is_inf(f.tail_slope) ? std::string("inf") : fmt(f.tail_slope)) +
                   "]";
          },
          [](const ConjugateOf& c) { return "conjugate:" + c.base->name(); },
      },
      family_);
}

YoungFunction conjugate(const YoungFunction& phi) {
  using YF = YoungFunction;
  return std::visit(
      overloaded{
          [&](const YF::PowerAbs& f) {
            if (f.p == 1.0) return YF::piecewise({{0.0, 0.0}, {1.0, 0.0}}, kInf);
            return YF(YF::ConjugateOf{std::make_shared<const YF>(phi)});
          },
          [](const YF::PowerOverP& f) { return YF::power_over_p(f.p / (f.p - 1.0)); },
          [&](const YF::ExpMinusOne&) { return YF(YF::ConjugateOf{std::make_shared<const YF>(phi)}); },
          [](const YF::AbsValue&) { return YF::piecewise({{0.0, 0.0}, {1.0, 0.0}}, kInf); },
          [](const YF::PiecewiseLinear& f) {
            auto c = pl_conjugate(f);
            return YF::piecewise(std::move(c.points), c.tail_slope);
          },
          [](const YF::ConjugateOf& c) { return *c.base; },
      },
      phi.family());
}

double young_inequality_gap(const YoungFunction& phi, double x, double y) {
  if (x < 0.0 || y < 0.0) throw std::invalid_argument("young_inequality_gap requires x, y >= 0");
  const double sum = phi(x) + conjugate(phi)(y);
  if (is_inf(sum)) return kInf;
  return std::fma(-x, y, sum);
}

double legendre_numeric(const YoungFunction& F, double x) {
  const double a = std::abs(x);
  auto g = [&](double y) { return a * y - F(y); };
  const double bound = F.domain_bound();
  double hi = std::min(1.0, bound);
  while (hi < bound && g(std::min(2.0 * hi, bound)) >= g(hi) && hi < 1e300) hi = std::min(2.0 * hi, bound);
  if (hi >= 1e300) return kInf;
  if (!is_inf(bound) && hi < bound && g(bound) >= g(hi)) return g(bound);
  double lo = 0.0;
  hi = std::min(2.0 * hi, bound);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 300 && hi - lo > 1e-17 * std::max(1.0, hi); ++it) {
    if (gc < gd) {
      lo = c;
      c = d;
      gc = gd;
      d = lo + r * (hi - lo);
      gd = g(d);
    } else {
      hi = d;
      d = c;
      gd = gc;
      c = hi - r * (hi - lo);
      gc = g(c);
    }
  }
  double best = std::max({g(lo), g(hi), gc, gd, 0.0});
  if (!is_inf(bound)) best = std::max(best, g(bound));
  return best;
}

namespace {

YoungFunction parse_piecewise(const std::string& spec) {
  if (spec.back() != ']') throw std::invalid_argument("unterminated piecewise spec '" + spec + "'");
  std::string body = spec.substr(10, spec.size() - 11);
  std::optional<double> tail;
  if (auto semi = body.find(";tail="); semi != std::string::npos) {
    const std::string t = body.substr(semi + 6);
    tail = t == "inf" ? kInf : std::stod(t);
    body.resize(semi);
  }
  std::vector<std::pair<double, double>> points;
  std::size_t pos = 0;
  while ((pos = body.find('(', pos)) != std::string::npos) {
    const auto close = body.find(')', pos);
    const auto comma = body.find(',', pos);
    if (close == std::string::npos || comma == std::string::npos || comma > close)
      throw std::invalid_argument("bad breakpoint in piecewise spec '" + spec + "'");
    points.emplace_back(std::stod(body.substr(pos + 1, comma - pos - 1)),
                        std::stod(body.substr(comma + 1, close - comma - 1)));
    pos = close + 1;
  }
  return tail ? YoungFunction::piecewise(std::move(points), *tail)
              : YoungFunction::piecewise(std::move(points));
}

}  // namespace

YoungFunction parse_young(const std::string& spec) {
  if (spec.rfind("piecewise[", 0) == 0) return parse_piecewise(spec);
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto number = [&]() {
    if (arg.empty()) throw std::invalid_argument("missing exponent in Young spec '" + spec + "'");
    std::size_t used = 0;
    double v = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("bad number in Young spec '" + spec + "'");
    return v;
  };
  if (head == "power_abs") return YoungFunction::power_abs(number());
  if (head == "power_over_p") return YoungFunction::power_over_p(number());
  if (head == "exp_minus_one") return YoungFunction::exp_minus_one();
  if (head == "abs") return YoungFunction::abs_value();
  if (head == "conjugate") return conjugate(parse_young(arg));
  throw std::invalid_argument("unknown Young family '" + head + "'");
}

}  // namespace orlicz
