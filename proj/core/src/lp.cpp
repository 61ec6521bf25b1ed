#include "orlicz/lp.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "orlicz/extended.hpp"

namespace orlicz {

namespace {

Verdict finiteness_facet(const SimpleFunction& g, const char* name) {
  for (Atom y = 1; y <= g.explicit_size(); ++y) {
    if (std::isnan(g.at(y))) return Verdict::inconclusive(std::string(name) + " unresolved on the prefix");
    if (is_inf(g.at(y)))
      return Verdict::fails(std::string(name) + " = +inf at atom " + std::to_string(y), y);
  }
  if (!g.resolved()) return Verdict::inconclusive(std::string(name) + " tail unresolved");
  return Verdict::holds(std::string(name) + " finite at every atom");
}

// mu_g({y}) = g(y) mu({y}); sigma-finite iff every atom has finite mass.
Verdict weighted_sigma_facet(const MeasureSpace& X, const SimpleFunction& g, const char* name) {
  for (Atom y = 1; y <= g.explicit_size(); ++y) {
    const double m = weighted_measure(X, g, AtomSet{{y}, std::nullopt});
    if (std::isnan(m)) return Verdict::inconclusive(std::string("mu_") + name + " unresolved");
    if (is_inf(m))
      return Verdict::fails(std::string("mu_") + name + "({" + std::to_string(y) + "}) = +inf", y);
  }
  if (!g.resolved()) return Verdict::inconclusive(std::string("mu_") + name + " tail unresolved");
  return Verdict::holds(std::string("mu_") + name + " is finite on every atom");
}

DomainVerdict combine(Verdict a, Verdict b, std::optional<Verdict> c, std::string nu) {
  DomainVerdict d;
  d.h_facet = std::move(a);
  d.sigma_facet = std::move(b);
  d.weighted_facet = std::move(c);
  d.nu = std::move(nu);
  std::vector<const Verdict*> facets{&d.h_facet, &d.sigma_facet};
  if (d.weighted_facet) facets.push_back(&*d.weighted_facet);
  const Verdict* decisive = nullptr;
  for (const Verdict* v : facets) {
    if (!v->decisive()) continue;
    if (decisive && decisive->status != v->status) d.facets_agree = false;
    if (!decisive) decisive = v;
  }
  if (!d.facets_agree || !decisive) return d;
  if (decisive->status == Status::Holds) {
    d.kind = DomainVerdict::Kind::DenselyDefined;
  } else {
    d.kind = DomainVerdict::Kind::NotDenselyDefined;
    for (const Verdict* v : facets)
      if (v->witness) {
        d.witness = v->witness;
        break;
      }
  }
  return d;
}

}  // namespace

double lp_norm(const MeasureSpace& X, const SimpleFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
  const ModularResult m = modular(YoungFunction::power_abs(p), X, f);
  if (!m.resolved) throw UnresolvedTail("p-th power sum has no closed-form tail");
  return is_inf(m.value) ? kInf : std::pow(m.value, 1.0 / p);
}

SimpleFunction abs_power(const SimpleFunction& f, double q) {
  SimpleFunction out = f;
  for (double& v : out.values) v = std::pow(std::abs(v), q);
  if (!f.tail.resolved || !f.tail.pairwise_disjoint()) {
    if (!f.tail.is_zero()) out.tail = TailLaw::unresolved();
    return out;
  }
  out.tail = TailLaw::zero();
  for (const auto& t : f.tail.terms) out.tail.add(abs_pow(t, q));
  return out;
}

MultiplicationReport multiplication_equivalence_check(const SimpleFunction& f,
                                                      const Transformation& phi, double p,
                                                      double tol) {
  const MeasureSpace& X = phi.space();
  const SimpleFunction h = radon_nikodym(phi);
  MultiplicationReport r;
  r.composed = lp_norm(X, compose_apply(f, phi), p);
  r.multiplied = lp_norm(X, product(f, abs_power(h, 1.0 / p)), p);
  r.split = std::pow(lp_norm(X, f, p), p) + std::pow(r.composed, p);
  const ModularResult w =
      weighted_modular(YoungFunction::power_abs(p), X, f, sum(SimpleFunction::constant(X, 1.0), h));
  if (!w.resolved) throw UnresolvedTail("weighted p-th power sum has no closed-form tail");
  r.weighted = w.value;
  r.norms_agree = close_rel(r.composed, r.multiplied, tol);
  r.identity_holds = close_rel(r.split, r.weighted, tol);
  return r;
}

DomainVerdict lp_density_verdict(const Transformation& phi, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
  const DomainVerdict base = density_verdict(phi);
  const SimpleFunction h = radon_nikodym(phi);
  return combine(base.h_facet, base.sigma_facet, weighted_sigma_facet(phi.space(), h, "h"), base.nu);
}

SimpleFunction weighted_comp_index(const WeightedCompositionSpec& spec) {
  return pushforward_density(spec.phi, abs_power(spec.u, spec.q));
}

WeightedNormReport weighted_norm_check(const WeightedCompositionSpec& spec, const SimpleFunction& f,
                                       double tol) {
  const MeasureSpace& X = spec.phi.space();
  WeightedNormReport r;
  const double direct = lp_norm(X, product(spec.u, compose_apply(f, spec.phi)), spec.q);
  r.direct = std::pow(direct, spec.q);
  const ModularResult m =
      weighted_modular(YoungFunction::power_abs(spec.q), X, f, weighted_comp_index(spec));
  if (!m.resolved) throw UnresolvedTail("index-weighted sum has no closed-form tail");
  r.via_index = m.value;
  r.agree = close_rel(r.direct, r.via_index, tol);
  return r;
}

DomainVerdict weighted_density_verdict(const WeightedCompositionSpec& spec) {
  const Transformation& phi = spec.phi;
  const MeasureSpace& X = phi.space();
  const SimpleFunction J = weighted_comp_index(spec);
  const SimpleFunction uq = abs_power(spec.u, spec.q);

  // Fiber facet: every fiber carries finite |u|^q mass.
  Verdict fiber = Verdict::holds("every fiber carries finite |u|^q mass");
  const Partition P = fiber_partition(phi);
  if (!P.resolved) {
    fiber = Verdict::inconclusive("fibers unresolved beyond the prefix");
  } else {
    for (std::size_t b = 0; b < P.blocks.size() && fiber.status == Status::Holds; ++b) {
      CompensatedSum s;
      bool infinite = false;
      for (Atom n : P.blocks[b]) {
        const double v = ext_mul(uq.at(n), X.weight(n));
        if (is_inf(v)) infinite = true;
        else s.add(v);
      }
      if (P.tail_block && b == *P.tail_block) {
        const Atom L = std::max(P.covered, uq.explicit_size());
        for (Atom n = P.covered + 1; n <= L; ++n) s.add(ext_mul(uq.at(n), X.weight(n)));
        const SeriesSum t = tail_integral(X, uq.tail, L);
        if (t.kind == SeriesSum::Kind::Unresolved) {
          fiber = Verdict::inconclusive("tail of |u|^q unresolved on the absorbing fiber");
          break;
        }
        if (t.kind == SeriesSum::Kind::PlusInfinity) infinite = true;
      }
      if (infinite) {
        const Atom y = P.blocks[b].empty() ? std::get<MapLaw::Constant>(phi.law().rule).c
                                           : phi.at(P.blocks[b].front());
        fiber = Verdict::fails("fiber of atom " + std::to_string(y) + " has infinite |u|^q mass", y);
      }
    }
    if (fiber.status == Status::Holds && !X.is_finite() && !J.resolved())
      fiber = Verdict::inconclusive("index tail unresolved");
  }
  return combine(finiteness_facet(J, "J"), fiber, weighted_sigma_facet(X, J, "J"),
                 "(1 + J) dmu with J = " + describe(J.tail));
}

}  // namespace orlicz
