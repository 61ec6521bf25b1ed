#include "orlicz/compop.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "orlicz/extended.hpp"

namespace orlicz {

namespace {

SimpleFunction one_plus(const MeasureSpace& X, const SimpleFunction& h) {
  return sum(SimpleFunction::constant(X, 1.0), h);
}

bool agree(const Verdict& a, const Verdict& b) {
  return !a.decisive() || !b.decisive() || a.status == b.status;
}

Verdict all_hold(std::initializer_list<Verdict> vs) {
  for (const auto& v : vs)
    if (v.status == Status::Fails) return v;
  for (const auto& v : vs)
    if (v.status == Status::Inconclusive) return v;
  return Verdict::holds("every component is in L^Phi");
}

std::optional<Atom> first_infinite(const SimpleFunction& h) {
  for (Atom y = 1; y <= h.explicit_size(); ++y)
    if (is_inf(h.at(y))) return y;
  return std::nullopt;
}

}  // namespace

std::string to_string(DomainVerdict::Kind k) {
  switch (k) {
    case DomainVerdict::Kind::DenselyDefined: return "DenselyDefined";
    case DomainVerdict::Kind::NotDenselyDefined: return "NotDenselyDefined";
    case DomainVerdict::Kind::Inconclusive: break;
  }
  return "Inconclusive";
}

std::string to_string(BoundednessVerdict::Kind k) {
  switch (k) {
    case BoundednessVerdict::Kind::EverywhereDefinedAndBounded: return "EverywhereDefinedAndBounded";
    case BoundednessVerdict::Kind::NotEverywhereDefined: return "NotEverywhereDefined";
    case BoundednessVerdict::Kind::Inconclusive: break;
  }
  return "Inconclusive";
}

ChangeOfVariableReport change_of_variable_check(const YoungFunction& phi, const SimpleFunction& f,
                                                const Transformation& map, double tol) {
  const MeasureSpace& X = map.space();
  ChangeOfVariableReport r;
  r.composed = modular(phi, X, compose_apply(f, map));
  r.weighted = weighted_modular(phi, X, f, radon_nikodym(map));
  if (r.composed.resolved && r.weighted.resolved) {
    if (r.composed.exact() && r.weighted.exact())
      r.agree = close_rel(r.composed.value, r.weighted.value, tol);
    else
      r.agree = r.composed.lower <= r.weighted.upper * (1 + tol) &&
                r.weighted.lower <= r.composed.upper * (1 + tol);
  }
  return r;
}

MembershipReport domain_membership(const YoungFunction& phi, const Transformation& map,
                                   const SimpleFunction& f) {
  const MeasureSpace& X = map.space();
  MembershipReport r;
  r.direct = all_hold({membership(phi, X, f), membership(phi, X, compose_apply(f, map))});
  r.weighted = weighted_membership(phi, X, f, one_plus(X, radon_nikodym(map)));
  r.agree = agree(r.direct, r.weighted);
  return r;
}

DomainVerdict density_verdict(const Transformation& map) {
  DomainVerdict d;
  const SimpleFunction h = radon_nikodym(map);
  d.nu = "(1 + h) dmu with h = " + describe(h.tail) + " beyond atom " +
         std::to_string(h.explicit_size());
  if (auto w = first_infinite(h)) {
    d.h_facet = Verdict::fails("h = +inf at atom " + std::to_string(*w), *w);
  } else if (h.resolved()) {
    d.h_facet = Verdict::holds("h finite on the prefix; tail law " + describe(h.tail));
  } else {
    d.h_facet = Verdict::inconclusive("h tail unresolved");
  }
  d.sigma_facet = sigma_finite_check(map);
  d.facets_agree = agree(d.h_facet, d.sigma_facet);
  const Verdict& decisive = d.h_facet.decisive() ? d.h_facet : d.sigma_facet;
  if (!d.facets_agree || !decisive.decisive()) {
    d.kind = DomainVerdict::Kind::Inconclusive;
  } else if (decisive.status == Status::Holds) {
    d.kind = DomainVerdict::Kind::DenselyDefined;
  } else {
    d.kind = DomainVerdict::Kind::NotDenselyDefined;
    d.witness = d.h_facet.witness ? d.h_facet.witness : d.sigma_facet.witness;
  }
  return d;
}

ApproximantReport truncation_approximants(const YoungFunction& phi, const Transformation& map,
                                          const SimpleFunction& f, long long N, double tol) {
  if (N < 2) throw std::invalid_argument("truncation index must be at least 2");
  if (density_verdict(map).kind != DomainVerdict::Kind::DenselyDefined)
    throw PreconditionError("truncation approximants need a densely defined operator");
  const MeasureSpace& X = map.space();
  const SimpleFunction h = radon_nikodym(map);
  ApproximantReport r;
  r.f_N = product(f, indicator_below(h, static_cast<double>(N - 1)));
  r.distance = luxemburg_norm(phi, X, difference(r.f_N, f)).value;
  r.in_domain = domain_membership(phi, map, r.f_N).direct;
  r.composed_norm = luxemburg_norm(phi, X, compose_apply(r.f_N, map)).value;
  r.bound = static_cast<double>(N - 1) * luxemburg_norm(phi, X, f).value;
  r.bound_holds = r.composed_norm <= r.bound * (1.0 + tol) + tol;
  return r;
}

ClosureReport closure_identity_check(const YoungFunction& phi, const Transformation& map,
                                     const SimpleFunction& f, std::vector<double> epsilons,
                                     long long max_N) {
  ClosureReport out;
  std::vector<std::pair<long long, double>> trail;
  auto distance_at = [&](long long N) {
    for (const auto& [n, d] : trail)
      if (n == N) return d;
    const double d = truncation_approximants(phi, map, f, N).distance;
    trail.emplace_back(N, d);
    return d;
  };
  for (double eps : epsilons) {
    ClosureRow row{eps, 2, 0.0, false};
    for (long long N = 2; N <= max_N; N *= 2) {
      row.N = N;
      row.distance = distance_at(N);
      if (row.distance <= eps) {
        row.achieved = true;
        break;
      }
    }
    out.rows.push_back(row);
  }
  std::sort(trail.begin(), trail.end());
  for (std::size_t i = 1; i < trail.size(); ++i)
    if (trail[i].second > trail[i - 1].second * (1.0 + 1e-9) + 1e-15) out.monotone = false;
  return out;
}

WeightedDensityReport dense_weighted_subspace_check(const YoungFunction& phi, const MeasureSpace& X,
                                                    const SimpleFunction& g,
                                                    const std::optional<SimpleFunction>& sample) {
  WeightedDensityReport r;
  if (auto w = first_infinite(g)) {
    r.verdict = Verdict::fails("g = +inf at atom " + std::to_string(*w), *w);
    return r;
  }
  if (!g.resolved()) {
    r.verdict = Verdict::inconclusive("tail of g unresolved");
    return r;
  }
  r.verdict = Verdict::holds("g finite at every atom");
  const SimpleFunction f = sample ? *sample : SimpleFunction::constant(X, 1.0);
  if (membership(phi, X, f).status != Status::Holds) return r;
  for (long long n = 1; n <= (1LL << 20); n *= 2) {
    const SimpleFunction fn = product(f, indicator_below(g, static_cast<double>(n)));
    r.distances.push_back(luxemburg_norm(phi, X, difference(fn, f)).value);
    if (r.distances.back() <= 1e-12) break;
  }
  return r;
}

SumDomainReport sum_domain_check(const YoungFunction& phi, double a1, const Transformation& map1,
                                 double a2, const Transformation& map2, const SimpleFunction& f) {
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw std::invalid_argument("coefficients must be positive");
  const MeasureSpace& X = map1.space();
  SumDomainReport r;
  r.J = sum(one_plus(X, radon_nikodym(map1)), radon_nikodym(map2));
  r.weighted = weighted_membership(phi, X, f, r.J);
  r.direct = all_hold({membership(phi, X, f), membership(phi, X, compose_apply(f, map1)),
                       membership(phi, X, compose_apply(f, map2))});
  r.agree = agree(r.weighted, r.direct);
  return r;
}

CompositeDomainReport composite_domain_check(const YoungFunction& phi, const Transformation& map1,
                                             const Transformation& map2, const SimpleFunction& f) {
  const MeasureSpace& X = map1.space();
  CompositeDomainReport r;
  const SimpleFunction f_psi = compose_apply(f, map2);
  r.direct = all_hold({membership(phi, X, f), membership(phi, X, f_psi),
                       membership(phi, X, compose_apply(f_psi, map1))});
  if (!map2.bijective()) {
    r.notice = "psi is not bijective; the J0 facet is skipped";
    return r;
  }
  const SimpleFunction h1 = radon_nikodym(map1);
  const SimpleFunction h2 = radon_nikodym(map2);
  const SimpleFunction h1_psi_inv = compose_apply(h1, map2.inverse());
  const SimpleFunction base = one_plus(X, h2);
  r.j0_formula = weighted_membership(phi, X, f, sum(base, h1_psi_inv));
  r.corrected = weighted_membership(phi, X, f, sum(base, product(h2, h1_psi_inv)));
  r.agree = agree(r.direct, *r.corrected);
  r.j0_agrees = agree(r.direct, *r.j0_formula);
  if (!r.j0_agrees) r.notice = "J0 facet disagrees with the direct membership";
  return r;
}

ClosednessReport closedness_demo(const YoungFunction& phi, const Transformation& map,
                                 const SimpleFunction& f, SequenceBuilder builder, int length) {
  if (density_verdict(map).kind != DomainVerdict::Kind::DenselyDefined)
    throw PreconditionError("closedness demo needs a densely defined operator");
  const MeasureSpace& X = map.space();
  const SimpleFunction g = compose_apply(f, map);
  ClosednessReport r;
  SimpleFunction last;
  for (int n = 1; n <= length; ++n) {
    SimpleFunction fn;
    switch (builder) {
      case SequenceBuilder::Constant: fn = f; break;
      case SequenceBuilder::Truncation: {
        const Atom upto = X.is_finite() ? std::min<Atom>(n, X.depth()) : Atom{n} * 4;
        fn = f.extended_to(upto);
        fn.values.resize(static_cast<std::size_t>(upto));
        fn.tail = TailLaw::zero();
        break;
      }
      case SequenceBuilder::GeometricPerturbation: fn = scaled(f, 1.0 + std::ldexp(1.0, -n)); break;
    }
    r.distances.push_back(luxemburg_norm(phi, X, difference(fn, f)).value);
    r.graph_distances.push_back(luxemburg_norm(phi, X, difference(compose_apply(fn, map), g)).value);
    last = std::move(fn);
  }
  const double tol = 1e-6;
  r.converges = r.distances.back() <= tol && r.graph_distances.back() <= tol;
  if (!r.converges) {
    r.note = "sequence did not converge in norm; limit identity not asserted";
    return r;
  }
  // On atoms, norm convergence forces pointwise convergence, so the graph
  // limit is read off the last element and compared with f o phi.
  const SimpleFunction limit = compose_apply(last, map);
  const SimpleFunction fphi = compose_apply(f, map);
  const Atom L = std::max(limit.explicit_size(), fphi.explicit_size());
  r.limit_identity = true;
  for (Atom n = 1; n <= L; ++n) {
    const double d = std::abs(limit.at(n) - fphi.at(n));
    const double scale = std::pow(X.weight(n), 1.0);
    if (ext_mul(phi(d / tol), scale) > 1.0 + 1e-9) r.limit_identity = false;
  }
  return r;
}

BoundednessVerdict boundedness_verdict(const YoungFunction& phi, const Transformation& map) {
  if (density_verdict(map).kind != DomainVerdict::Kind::DenselyDefined)
    throw PreconditionError("boundedness verdict needs h < inf at every atom");
  const MeasureSpace& X = map.space();
  const SimpleFunction h = radon_nikodym(map);
  BoundednessVerdict v;
  const auto sup = supremum(h);
  if (!sup) {
    v.certificate = "sup h unresolved";
    return v;
  }
  if (!is_inf(*sup)) {
    v.kind = BoundednessVerdict::Kind::EverywhereDefinedAndBounded;
    v.bound = std::max(1.0, *sup);
    std::ostringstream os;
    os.precision(17);
    os << "sup h = " << *sup << "; rho(f o phi) <= sup h * rho(f)";
    v.certificate = os.str();
    return v;
  }
  const auto pf = phi.power_form();
  if (!pf) {
    v.certificate = "h unbounded; witness construction needs a power Young function";
    return v;
  }
  // Budget v_k on atoms of an unbounded term of h: sum v_k < inf, sum v_k h = inf.
  for (const auto& t : h.tail.terms) {
    if (!is_inf(t.limit())) continue;
    const double S = t.exponent_sum();
    const double decay = t.ratio > 1.0 ? 2.0 : 1.0 + S / 2.0;
    const auto w = weight_along(X, t.support.map);
    if (!w) continue;
    TailTerm budget = make_term(t.support, 1.0, 1.0, {Factor{0.0, -decay}});
    TailTerm val = abs_pow(times(budget, scaled(reciprocal(*w), 1.0 / pf->first)), 1.0 / pf->second);
    val.support = t.support;
    SimpleFunction f;
    f.values.assign(static_cast<std::size_t>(h.explicit_size()), 0.0);
    f.tail.add(val);
    const ModularResult mf = modular(phi, X, f);
    const ModularResult mc = modular(phi, X, compose_apply(f, map));
    if (mf.resolved && !is_inf(mf.upper) && mc.resolved && is_inf(mc.lower)) {
      v.kind = BoundednessVerdict::Kind::NotEverywhereDefined;
      v.witness = f;
      std::ostringstream os;
      os.precision(17);
      os << "f = " << describe(f.tail) << " has rho(f) = " << mf.value
         << " and rho(k f o phi) = inf for every k > 0 (power modular scales by k^p)";
      v.certificate = os.str();
      return v;
    }
  }
  v.certificate = "h unbounded but no tail-certified witness was found";
  return v;
}

double operator_norm_estimate(const YoungFunction& phi, const Transformation& map, int probes,
                              std::uint64_t seed) {
  const MeasureSpace& X = map.space();
  const Atom n_atoms = std::min<Atom>(X.depth(), 64);
  double best = 0.0;
  auto probe = [&](const SimpleFunction& f) {
    const double nf = luxemburg_norm(phi, X, f).value;
    if (nf == 0.0 || std::isinf(nf)) return;
    best = std::max(best, luxemburg_norm(phi, X, compose_apply(f, map)).value / nf);
  };
  for (Atom a = 1; a <= n_atoms; ++a) {
    SimpleFunction chi;
    chi.values.assign(static_cast<std::size_t>(X.depth()), 0.0);
    chi.values[static_cast<std::size_t>(a - 1)] = 1.0;
    probe(chi);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int i = 0; i < probes; ++i) {
    SimpleFunction f;
    for (Atom a = 1; a <= X.depth(); ++a) f.values.push_back(U(rng));
    probe(f);
  }
  return best;
}

}  // namespace orlicz
