#include "orlicz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orlicz/extended.hpp"
#include "orlicz/growth.hpp"

namespace orlicz {

namespace {

struct Bounds {
  double lo = 0.0, hi = 0.0;
  bool ok = true;  // hi is a valid upper bound
};

Bounds exact(double v) { return {v, v, true}; }

Bounds from_series(const SeriesSum& s) {
  switch (s.kind) {
    case SeriesSum::Kind::Finite: return {std::max(0.0, s.value - s.error), s.value + s.error, true};
    case SeriesSum::Kind::PlusInfinity: return exact(kInf);
    default: return {0.0, kInf, false};
  }
}

// sum_{k >= k0} Phi(|t(k)|) mu(support(k)) for a non-power Phi.
Bounds general_tail(const YoungFunction& phi, const MeasureSpace& X, const TailTerm& t, Atom k0) {
  const auto wt_one = weighted_term(X, make_term(t.support, 1.0));
  const auto wt_abs = weighted_term(X, abs_pow(t, 1.0));
  if (!wt_one || !wt_abs) return {0.0, kInf, false};
  const double lim = std::abs(t.limit());
  const double d0 = phi.right_derivative(0.0);
  CompensatedSum head;
  Atom k = k0;
  Atom chunk = 64;
  const Atom cap = Atom{1} << 20;
  Bounds best{0.0, kInf, false};
  while (true) {
    Bounds rem{0.0, kInf, false};
    if (auto mono = t.monotone_from(k)) {
      for (; k < mono->from; ++k) head.add(ext_mul(phi(t.value(k)), X.weight(t.support.at(k))));
      const double a = std::abs(t.value(k));
      const SeriesSum W = sum_from(*wt_one, k);
      const bool w_inf = W.kind == SeriesSum::Kind::PlusInfinity;
      const double w = W.finite() ? W.value : kInf;
      const double pa = phi(a), pl = phi(lim);
      if (W.kind == SeriesSum::Kind::Unresolved) {
        // no bound available
      } else if (mono->trend == Trend::Constant) {
        rem = exact(ext_mul(pa, w));
      } else if (mono->trend == Trend::Decreasing && lim > 0.0) {
        if (!w_inf) rem = {pl * w, pa * w, true};
        else if (pl > 0.0) rem = exact(kInf);
        else if (pa == 0.0) rem = exact(0.0);
      } else if (mono->trend == Trend::Decreasing) {
        const SeriesSum T = sum_from(*wt_abs, k);
        if (pa == 0.0) rem = exact(0.0);
        else if (T.finite()) rem = {d0 * T.value, pa / a * (T.value + T.error), true};
        else if (T.kind == SeriesSum::Kind::PlusInfinity && d0 > 0.0) rem = exact(kInf);
      } else {  // increasing toward lim
        if (w_inf && pa > 0.0) rem = exact(kInf);
        else if (w_inf && pl == 0.0) rem = exact(0.0);
        else if (!w_inf && !std::isinf(lim)) rem = {pa * w, pl * w, true};
        else if (!w_inf) rem = {pa * w, kInf, false};
      }
    }
    const double h = head.value();
    Bounds total{h + rem.lo, h + rem.hi, rem.ok};
    if (total.ok) best = total;
    else best.lo = std::max(best.lo, total.lo);
    if (total.ok && (is_inf(total.lo) || total.hi - total.lo <= 1e-16 * std::max(total.hi, 1e-300)))
      return total;
    if (k - k0 >= cap) return best;
    for (Atom end = k + chunk; k < end; ++k)
      head.add(ext_mul(phi(t.value(k)), X.weight(t.support.at(k))));
    chunk *= 2;
  }
}

Bounds tail_modular(const YoungFunction& phi, const MeasureSpace& X, const TailLaw& law, Atom above) {
  if (law.is_zero()) return exact(0.0);
  if (!law.resolved || !law.pairwise_disjoint()) return {0.0, kInf, false};
  Bounds total = exact(0.0);
  const auto pf = phi.power_form();
  for (const auto& t : law.terms) {
    Bounds b;
    if (pf) {
      auto wt = weighted_term(X, scaled(abs_pow(t, pf->second), pf->first));
      b = wt ? from_series(sum_above(*wt, above)) : Bounds{0.0, kInf, false};
    } else {
      b = general_tail(phi, X, t, t.support.first_index_above(above));
    }
    total.lo += b.lo;
    total.hi += b.hi;
    total.ok = total.ok && b.ok;
  }
  return total;
}

Atom explicit_extent(const MeasureSpace& X, const SimpleFunction& f) {
  return X.is_finite() ? X.depth() : std::max(X.depth(), f.explicit_size());
}

}  // namespace

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::Analytic: return "analytic";
    case NormMethod::Bisection: return "bisection";
    case NormMethod::DualOptimization: return "dual-optimization";
    case NormMethod::BruteForceOracle: break;
  }
  return "brute-force-oracle";
}

ModularResult modular(const YoungFunction& phi, const MeasureSpace& X, const SimpleFunction& f) {
  const Atom L = f.resolved() ? explicit_extent(X, f) : std::min(f.explicit_size(), explicit_extent(X, f));
  CompensatedSum s;
  for (Atom n = 1; n <= L; ++n) s.add(ext_mul(phi(f.at(n)), X.weight(n)));
  const double head = s.value();
  if (X.is_finite()) return {head, head, head, true};
  if (!f.resolved()) return {head, head, kInf, false};
  const Bounds t = tail_modular(phi, X, f.tail, L);
  ModularResult r;
  r.lower = head + t.lo;
  r.upper = head + t.hi;
  r.resolved = t.ok;
  r.value = t.ok ? (t.lo == t.hi ? r.lower : head + 0.5 * (t.lo + t.hi)) : r.lower;
  return r;
}

ModularResult weighted_modular(const YoungFunction& phi, const MeasureSpace& X,
                               const SimpleFunction& f, const SimpleFunction& w) {
  const Atom L = X.is_finite() ? X.depth()
                               : std::max({X.depth(), f.explicit_size(), w.explicit_size()});
  const bool tails_ok = f.resolved() && w.resolved();
  CompensatedSum s;
  for (Atom n = 1; n <= L; ++n) {
    if (!tails_ok && (n > f.explicit_size() || n > w.explicit_size())) break;
    s.add(ext_mul(ext_mul(phi(f.at(n)), w.at(n)), X.weight(n)));
  }
  const double head = s.value();
  if (X.is_finite() || f.tail.is_zero() || (tails_ok && w.tail.is_zero()))
    return {head, head, head, tails_ok || X.is_finite()};
  if (!tails_ok || !f.tail.pairwise_disjoint()) return {head, head, kInf, false};
  TailLaw phi_f;  // Phi(|f|) as a tail law, when it has one
  bool have = true;
  const auto pf = phi.power_form();
  for (const auto& t : f.tail.terms) {
    if (pf) {
      phi_f.add(scaled(abs_pow(t, pf->second), pf->first));
    } else if (t.is_constant()) {
      const double v = phi(t.coef);
      if (std::isinf(v)) have = false;
      else phi_f.add(make_term(t.support, v));
    } else {
      have = false;
    }
  }
  Bounds tail{0.0, kInf, false};
  if (have) {
    const TailLaw law = product(phi_f, w.tail);
    if (law.resolved) {
      tail = exact(0.0);
      for (const auto& t : law.terms) {
        auto wt = weighted_term(X, t);
        const Bounds b = wt ? from_series(sum_above(*wt, L)) : Bounds{0.0, kInf, false};
        tail = {tail.lo + b.lo, tail.hi + b.hi, tail.ok && b.ok};
      }
    }
  } else if (w.tail.terms.size() == 1 && w.tail.terms[0].is_constant() &&
             w.tail.terms[0].support.is_all() && w.tail.terms[0].support.first <= L + 1) {
    const double c = w.tail.terms[0].coef;
    const Bounds b = tail_modular(phi, X, f.tail, L);
    tail = {ext_mul(c, b.lo), ext_mul(c, b.hi), b.ok};
  }
  ModularResult r;
  r.lower = head + tail.lo;
  r.upper = head + tail.hi;
  r.resolved = tail.ok;
  r.value = tail.ok ? (tail.lo == tail.hi ? r.lower : head + 0.5 * (tail.lo + tail.hi)) : r.lower;
  return r;
}

Verdict weighted_membership(const YoungFunction& phi, const MeasureSpace& X,
                            const SimpleFunction& f, const SimpleFunction& w) {
  bool all_infinite = true;
  for (double k : {1.0, 0x1p-8, 0x1p-16, 0x1p-32, 0x1p-64}) {
    const ModularResult m = weighted_modular(phi, X, scaled(f, k), w);
    if (m.resolved && !is_inf(m.upper))
      return Verdict::holds("modular finite at k = " + std::to_string(k));
    all_infinite = all_infinite && m.resolved && is_inf(m.lower);
  }
  if (all_infinite) return Verdict::fails("modular infinite for every probed k down to 2^-64");
  return Verdict::inconclusive("modular tail unresolved");
}

Verdict membership(const YoungFunction& phi, const MeasureSpace& X, const SimpleFunction& f) {
  return weighted_membership(phi, X, f, SimpleFunction::constant(X, 1.0));
}

NormResult luxemburg_norm(const YoungFunction& phi, const MeasureSpace& X, const SimpleFunction& f,
                          const NormOptions& opts) {
  NormResult out;
  if (is_zero(f)) return out;
  if (const auto pf = phi.power_form(); pf && !opts.force_bisection) {
    const ModularResult m = modular(phi, X, f);
    if (!m.resolved) return {kInf, NormMethod::Analytic, 0.0, false, "tail modular unresolved"};
    const double p = pf->second;
    out.value = std::pow(m.upper, 1.0 / p);
    out.achieved_tolerance = m.upper > 0.0 ? (m.upper - m.lower) / m.upper / p : 0.0;
    return out;
  }
  out.method = NormMethod::Bisection;
  bool unresolved = false;
  auto admissible = [&](double k) {
    const ModularResult m = modular(phi, X, scaled(f, 1.0 / k));
    if (!m.resolved) unresolved = true;
    return m.resolved && m.upper <= 1.0;
  };
  double lo = 1.0, hi = 1.0;
  if (admissible(1.0)) {
    int i = 0;
    while (i++ < 200 && admissible(lo)) {
      hi = lo;
      lo /= 2.0;
    }
  } else {
    int i = 0;
    while (!admissible(hi)) {
      if (unresolved) return {kInf, out.method, 0.0, false, "tail modular unresolved"};
      if (++i > 200) {
        out.value = kInf;
        out.note = "rho(f/k) > 1 for every k up to 2^200";
        return out;
      }
      lo = hi;
      hi *= 2.0;
    }
  }
  if (unresolved) return {kInf, out.method, 0.0, false, "tail modular unresolved"};
  while (hi - lo > opts.tolerance * hi) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (admissible(mid) ? hi : lo) = mid;
  }
  out.value = hi;
  out.achieved_tolerance = (hi - lo) / hi;
  return out;
}

namespace {

struct DualProblem {
  std::vector<double> a, mu;
  YoungFunction phi, psi;

  double constraint(const std::vector<double>& g) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < g.size(); ++i) s.add(ext_mul(psi(g[i]), mu[i]));
    return s.value();
  }
  double objective(const std::vector<double>& g) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < g.size(); ++i) s.add(a[i] * g[i] * mu[i]);
    return s.value();
  }
  std::vector<double> family(double lambda) const {
    std::vector<double> g(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) g[i] = phi.right_derivative(lambda * a[i]);
    return g;
  }
  // Largest s in [0, 1] with constraint(lo + s (hi - lo)) <= 1.
  std::vector<double> mix(const std::vector<double>& lo, const std::vector<double>& hi) const {
    auto at = [&](double s) {
      std::vector<double> g(lo.size());
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = lo[i] + s * (hi[i] - lo[i]);
      return g;
    };
    double s0 = 0.0, s1 = 1.0;
    if (constraint(at(1.0)) <= 1.0) return at(1.0);
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (s0 + s1);
      if (m <= s0 || m >= s1) break;
      (constraint(at(m)) <= 1.0 ? s0 : s1) = m;
    }
    return at(s0);
  }
  std::vector<double> radial(std::vector<double> g) const {
    return mix(std::vector<double>(g.size(), 0.0), g);
  }
};

std::vector<double> stationarity(const DualProblem& P) {
  const double D = P.psi.domain_bound();
  if (!std::isinf(D)) {
    std::vector<double> top(P.a.size(), D);
    if (P.constraint(top) <= 1.0) return top;
  }
  double lo = 0.0, hi = 1.0;
  int doublings = 0;
  while (P.constraint(P.family(hi)) <= 1.0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 2000) return {};
  }
  for (int it = 0; it < 2000; ++it) {
    const double m = lo + 0.5 * (hi - lo);
    if (m <= lo || m >= hi) break;
    (P.constraint(P.family(m)) <= 1.0 ? lo : hi) = m;
  }
  std::vector<double> glo = P.family(lo), ghi = P.family(hi);
  for (std::size_t i = 0; i < ghi.size(); ++i) {
    if (std::isinf(ghi[i])) ghi[i] = std::min(D, P.psi.inverse(2.0 / P.mu[i]));
    if (std::isnan(glo[i]) || std::isnan(ghi[i]) || std::isinf(ghi[i])) return {};
  }
  return P.mix(glo, ghi);
}

// Ascent along the tangent of the modular sphere in the L^2(mu) metric,
// retracted radially onto the sphere.
std::vector<double> projected_ascent(const DualProblem& P) {
  const std::size_t n = P.a.size();
  const double D = P.psi.domain_bound();
  std::vector<double> g = P.radial(P.a);
  double best = P.objective(g);
  double eta = 1.0;
  for (int it = 0; it < 10000 && eta > 1e-18; ++it) {
    std::vector<double> normal(n);
    double nn = 0.0, an = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      normal[i] = P.psi.right_derivative(g[i]);
      if (std::isinf(normal[i])) normal[i] = 0.0;
      nn += normal[i] * normal[i] * P.mu[i];
      an += P.a[i] * normal[i] * P.mu[i];
      scale = std::max(scale, g[i]);
    }
    std::vector<double> d(n);
    double dmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = nn > 0.0 ? P.a[i] - an / nn * normal[i] : P.a[i];
      dmax = std::max(dmax, std::abs(d[i]));
    }
    if (dmax == 0.0) break;
    std::vector<double> trial(n);
    for (std::size_t i = 0; i < n; ++i)
      trial[i] = std::clamp(g[i] + eta * scale / dmax * d[i], 0.0, D);
    trial = P.radial(trial);
    const double v = P.objective(trial);
    if (v > best) {
      best = v;
      g = std::move(trial);
      eta *= 2.0;
    } else {
      eta *= 0.5;
    }
  }
  return g;
}

}  // namespace

std::vector<double> orlicz_norm_maximizer(const YoungFunction& phi, const MeasureSpace& X,
                                          const SimpleFunction& f, const NormOptions& opts) {
  if (!X.is_finite() && !f.tail.is_zero())
    throw PreconditionError("Orlicz norm needs a finite space or a zero tail");
  DualProblem P{{}, {}, phi, conjugate(phi)};
  std::vector<Atom> atoms;
  for (Atom n = 1; n <= f.explicit_size(); ++n) {
    const double v = std::abs(f.at(n));
    if (v == 0.0) continue;
    if (std::isinf(v)) throw std::domain_error("f takes an infinite value");
    atoms.push_back(n);
    P.a.push_back(v);
    P.mu.push_back(X.weight(n));
  }
  std::vector<double> g(static_cast<std::size_t>(f.explicit_size()), 0.0);
  if (atoms.empty()) return g;
  std::vector<double> sol = opts.force_projected_ascent ? std::vector<double>{} : stationarity(P);
  if (sol.empty()) sol = projected_ascent(P);
  for (std::size_t i = 0; i < atoms.size(); ++i) g[static_cast<std::size_t>(atoms[i] - 1)] = sol[i];
  return g;
}

NormResult orlicz_norm(const YoungFunction& phi, const MeasureSpace& X, const SimpleFunction& f,
                       const NormOptions& opts) {
  NormResult out;
  out.method = NormMethod::DualOptimization;
  if (is_zero(f)) return out;
  for (double v : f.values)
    if (std::isinf(v)) {
      out.value = kInf;
      out.note = "f takes an infinite value";
      return out;
    }
  const auto g = orlicz_norm_maximizer(phi, X, f, opts);
  CompensatedSum s;
  for (std::size_t i = 0; i < g.size(); ++i)
    s.add(std::abs(f.values[i]) * g[i] * X.weight(static_cast<Atom>(i) + 1));
  out.value = s.value();
  out.achieved_tolerance = opts.tolerance;
  return out;
}

bool dual_ball_membership(const YoungFunction& psi, const MeasureSpace& X, const SimpleFunction& g) {
  const ModularResult m = modular(psi, X, g);
  return m.resolved && m.upper <= 1.0;
}

double holder_pairing(const MeasureSpace& X, const SimpleFunction& f, const SimpleFunction& g) {
  const Atom L = X.is_finite() ? X.depth()
                               : std::max({X.depth(), f.explicit_size(), g.explicit_size()});
  CompensatedSum s, abs_s;
  for (Atom n = 1; n <= L; ++n) {
    const double v = ext_mul(ext_mul(f.at(n), g.at(n)), X.weight(n));
    s.add(v);
    abs_s.add(std::abs(v));
  }
  if (!X.is_finite()) {
    const TailLaw fg = product(f.tail, g.tail);
    if (!fg.resolved) throw UnresolvedTail("pairing tail has no closed form");
    for (const auto& t : fg.terms) {
      auto wt = weighted_term(X, t);
      if (!wt) throw UnresolvedTail("pairing tail has no closed form");
      const SeriesSum a = sum_above(abs_pow(*wt, 1.0), L);
      if (!a.finite()) throw std::domain_error("pairing is not absolutely summable");
      abs_s.add(a.value);
      s.add(sum_above(*wt, L).value);
    }
  }
  if (std::isinf(abs_s.value()) || std::isnan(s.value()))
    throw std::domain_error("pairing is not absolutely summable");
  return s.value();
}

ConvergenceReport convergence_check(const YoungFunction& phi, const MeasureSpace& X,
                                    const std::vector<SimpleFunction>& seq,
                                    const SimpleFunction& f, double tol) {
  ConvergenceReport r;
  r.target_modular = modular(phi, X, f).value;
  for (const auto& fn : seq) {
    r.norm_distance.push_back(luxemburg_norm(phi, X, difference(fn, f)).value);
    r.modulars.push_back(modular(phi, X, fn).value);
  }
  r.delta2 = delta2_probe(phi).holds();
  if (seq.empty()) {
    r.verdict = Verdict::inconclusive("empty sequence");
    return r;
  }
  r.norm_converges = r.norm_distance.back() <= tol;
  r.modular_converges = close_rel(r.modulars.back(), r.target_modular, tol);
  const SimpleFunction d = difference(seq.back(), f);
  r.pointwise_converges = true;
  for (double v : d.values) r.pointwise_converges = r.pointwise_converges && std::abs(v) <= tol;
  if (r.norm_converges && !r.modular_converges)
    r.verdict = Verdict::fails("norm convergence without modular convergence");
  else if (r.delta2 && r.modular_converges && r.pointwise_converges && !r.norm_converges)
    r.verdict = Verdict::fails("modular and pointwise convergence under delta-2 without norm convergence");
  else
    r.verdict = Verdict::holds(r.norm_converges ? "norm and modular convergence"
                               : r.modular_converges ? "modular convergence only"
                                                     : "no convergence; implications hold vacuously");
  return r;
}

}  // namespace orlicz
