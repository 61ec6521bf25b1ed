#include "orlicz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "orlicz/adjoint.hpp"
#include "orlicz/commands.hpp"
#include "orlicz/extended.hpp"
#include "orlicz/lp.hpp"

namespace orlicz {

using nlohmann::json;

namespace {

using Failure = std::optional<std::string>;
using Check = std::function<Failure(const Instance&)>;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Failure expect(bool ok, const std::string& what) { return ok ? Failure{} : Failure{what}; }

double rel_gap(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

struct Built {
  MeasureSpace X;
  Transformation T;
  Transformation P;
  SimpleFunction f, g;
  YoungFunction phi;
};

Built build(const Instance& in) {
  MeasureSpace X = in.space();
  return {X,
          Transformation(X, in.targets),
          Transformation(X, in.permutation),
          SimpleFunction::of(in.f),
          SimpleFunction::of(in.g),
          parse_young(in.young)};
}

// Adjoint and Delta' checks need a power family.
YoungFunction delta2_young(const Instance& in) {
  const YoungFunction y = parse_young(in.young);
  if (y.power_form() && y.power_form()->second > 1.0) return y;
  return YoungFunction::power_over_p(2.0);
}

std::vector<double> log_points(int n, double lo, double hi) {
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return xs;
}

// ---------------------------------------------------------------- young

Failure check_involution(const Instance& in) {
  const YoungFunction phi = parse_young(in.young);
  const YoungFunction psi = conjugate(phi);
  for (double x : log_points(64, 1e-3, 1e2)) {
    const double a = phi(x);
    if (is_inf(a) || a > 1e300) continue;
    const double b = legendre_numeric(psi, x);
    if (rel_gap(a, b) > 1e-8 && std::abs(a - b) > 1e-14)
      return "Phi(" + num(x) + ") = " + num(a) + " but sup(xy - Psi(y)) = " + num(b);
  }
  return {};
}

Failure check_young_inequality(const Instance& in) {
  const YoungFunction phi = parse_young(in.young);
  const YoungFunction psi = conjugate(phi);
  std::mt19937_64 rng(in.weights.size() * 7919u + in.f.size());
  std::uniform_real_distribution<double> E(-3.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double x = std::pow(10.0, E(rng)), y = std::pow(10.0, E(rng));
    const double gap = phi(x) + psi(y) - x * y;
    if (gap < -1e-12 * std::max(1.0, x * y))
      return "x = " + num(x) + ", y = " + num(y) + ": gap " + num(gap);
    // Equality at y = Phi'(x).
    const double d = phi.right_derivative(x);
    if (!is_inf(d) && d > 0.0 && !is_inf(psi(d))) {
      const double eq = phi(x) + psi(d) - x * d;
      if (std::abs(eq) > 1e-9 * std::max(1.0, x * d))
        return "equality fails at x = " + num(x) + ": gap " + num(eq);
    }
  }
  return {};
}

// ---------------------------------------------------------------- norms

Failure check_sandwich(const Instance& in) {
  const Built b = build(in);
  const double N = luxemburg_norm(b.phi, b.X, b.f).value;
  const double O = orlicz_norm(b.phi, b.X, b.f).value;
  return expect(N <= O * (1 + 1e-9) && O <= 2 * N * (1 + 1e-9),
                "N = " + num(N) + ", Orlicz norm = " + num(O));
}

Failure check_power_norm(const Instance& in) {
  const Built b = build(in);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    CompensatedSum s;
    for (std::size_t i = 0; i < in.f.size(); ++i) s.add(std::pow(std::abs(in.f[i]), p) * in.weights[i]);
    const double classical = std::pow(s.value(), 1.0 / p);
    const double N = luxemburg_norm(YoungFunction::power_abs(p), b.X, b.f).value;
    if (rel_gap(N, classical) > 1e-12) return "p = " + num(p) + ": " + num(N) + " vs " + num(classical);
  }
  return {};
}

Failure check_indicator_norm(const Instance& in) {
  const Built b = build(in);
  std::vector<double> chi(in.f.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < chi.size(); ++i)
    if (in.f[i] > 0) {
      chi[i] = 1.0;
      mass += in.weights[i];
    }
  if (mass == 0.0) return {};
  const double N = luxemburg_norm(b.phi, b.X, SimpleFunction::of(chi)).value;
  const double expected = 1.0 / b.phi.inverse(1.0 / mass);
  return expect(rel_gap(N, expected) <= 1e-9, num(N) + " vs 1/Phi^-1(1/mu(A)) = " + num(expected));
}

// ---------------------------------------------------------------- measure

Failure check_change_of_variable(const Instance& in) {
  const Built b = build(in);
  const auto r = change_of_variable_check(b.phi, b.f, b.T, 1e-12);
  return expect(r.agree, "composed " + num(r.composed.value) + ", weighted " + num(r.weighted.value));
}

Failure check_conditional_expectation(const Instance& in) {
  const Built b = build(in);
  const Partition P = fiber_partition(b.T);
  const SimpleFunction Ef = conditional_expectation(b.X, b.f, P);
  const SimpleFunction Eg = conditional_expectation(b.X, b.g, P);
  const double tol = 1e-10;
  for (const auto& block : P.blocks) {
    double lhs = 0, rhs = 0, scale = 0;
    for (Atom n : block) {
      lhs += Ef.at(n) * b.X.weight(n);
      rhs += b.f.at(n) * b.X.weight(n);
      scale += std::abs(b.f.at(n)) * b.X.weight(n);
    }
    if (std::abs(lhs - rhs) > tol * std::max(1.0, scale)) return "averaging identity off by " + num(lhs - rhs);
  }
  const SimpleFunction pulled = conditional_expectation(b.X, product(Eg, b.f), P);
  const SimpleFunction outside = product(Eg, Ef);
  const SimpleFunction EEf = conditional_expectation(b.X, Ef, P);
  const SimpleFunction Eabs = conditional_expectation(b.X, absolute(b.f), P);
  for (Atom n = 1; n <= b.X.depth(); ++n) {
    const double s = std::max(1.0, std::abs(outside.at(n)));
    if (std::abs(pulled.at(n) - outside.at(n)) > tol * s) return "pull-out fails at atom " + std::to_string(n);
    if (std::abs(EEf.at(n) - Ef.at(n)) > tol * std::max(1.0, std::abs(Ef.at(n))))
      return "idempotence fails at atom " + std::to_string(n);
    if (Eabs.at(n) < 0.0) return "positivity fails at atom " + std::to_string(n);
    if (b.f.at(n) != 0.0 && Eabs.at(n) == 0.0) return "support inclusion fails at atom " + std::to_string(n);
  }
  const SimpleFunction phi_f = [&] {
    SimpleFunction out = absolute(b.f);
    for (double& v : out.values) v = b.phi(v);
    return out;
  }();
  const SimpleFunction Ephi = conditional_expectation(b.X, phi_f, P);
  for (Atom n = 1; n <= b.X.depth(); ++n) {
    const double lhs = b.phi(Ef.at(n)), rhs = Ephi.at(n);
    if (lhs > rhs * (1 + tol) + tol) return "Jensen fails at atom " + std::to_string(n);
  }
  const double NE = luxemburg_norm(b.phi, b.X, Ef).value, Nf = luxemburg_norm(b.phi, b.X, b.f).value;
  return expect(NE <= Nf * (1 + tol), "contraction fails: " + num(NE) + " > " + num(Nf));
}

Failure check_inverse_consistency(const Instance& in) {
  const Built b = build(in);
  const SimpleFunction h = radon_nikodym(b.P), hi = inverse_rn(b.P);
  for (Atom n = 1; n <= b.X.depth(); ++n)
    if (std::abs(hi.at(n) * h.at(b.P.at(n)) - 1.0) > 1e-12)
      return "h_{-1}(x) h(phi(x)) != 1 at atom " + std::to_string(n);
  return {};
}

// ---------------------------------------------------------------- compop

Failure check_density_coherence(const Instance& in) {
  const Built b = build(in);
  const DomainVerdict d = density_verdict(b.T);
  if (!d.facets_agree) return "facets disagree";
  if (d.kind != DomainVerdict::Kind::DenselyDefined) return "finite instance not densely defined";
  const DomainVerdict l = lp_density_verdict(b.T, 2.0);
  return expect(l.facets_agree && l.kind == d.kind, "lp verdict " + to_string(l.kind));
}

Failure check_approximants(const Instance& in) {
  const Built b = build(in);
  double last = kInf;
  for (long long N : {2, 3, 5, 9, 17, 33, 65}) {
    const ApproximantReport a = truncation_approximants(b.phi, b.T, b.f, N, 1e-9);
    if (!a.bound_holds) return "bound fails at N = " + std::to_string(N);
    if (a.in_domain.status != Status::Holds) return "f_N outside the domain at N = " + std::to_string(N);
    if (a.distance > last * (1 + 1e-9) + 1e-15) return "distance increases at N = " + std::to_string(N);
    last = a.distance;
  }
  return {};
}

Failure check_boundedness(const Instance& in) {
  const Built b = build(in);
  const BoundednessVerdict v = boundedness_verdict(b.phi, b.T);
  if (v.kind != BoundednessVerdict::Kind::EverywhereDefinedAndBounded) return "verdict " + to_string(v.kind);
  const double est = operator_norm_estimate(b.phi, b.T, 16, 42);
  return expect(est <= v.bound * (1 + 1e-9), "estimate " + num(est) + " exceeds bound " + num(v.bound));
}

Failure check_sum_domain(const Instance& in) {
  const Built b = build(in);
  const SumDomainReport r = sum_domain_check(b.phi, 1.0, b.T, 2.0, b.P, b.f);
  return expect(r.agree, "weighted " + to_string(r.weighted.status) + ", direct " + to_string(r.direct.status));
}

Failure check_composite_domain(const Instance& in) {
  const Built b = build(in);
  const CompositeDomainReport r = composite_domain_check(b.phi, b.T, b.P, b.f);
  return expect(r.agree, "direct " + to_string(r.direct.status) + ": " + r.notice);
}

// ---------------------------------------------------------------- lp

Failure check_multiplication(const Instance& in) {
  const Built b = build(in);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const MultiplicationReport r = multiplication_equivalence_check(b.f, b.T, p, 1e-12);
    if (!r.norms_agree) return "p = " + num(p) + ": " + num(r.composed) + " vs " + num(r.multiplied);
    if (!r.identity_holds) return "p = " + num(p) + ": split " + num(r.split) + " vs " + num(r.weighted);
  }
  return {};
}

Failure check_weighted_index(const Instance& in) {
  const Built b = build(in);
  const SimpleFunction h = radon_nikodym(b.T);
  const SimpleFunction J = weighted_comp_index({SimpleFunction::constant(b.X, 1.0), b.T, 2.0, 2.0});
  for (Atom n = 1; n <= b.X.depth(); ++n)
    if (rel_gap(J.at(n), h.at(n)) > 1e-12) return "J != h at atom " + std::to_string(n);
  const WeightedNormReport w = weighted_norm_check({b.g, b.T, 2.0, 1.5}, b.f, 1e-12);
  return expect(w.agree, num(w.direct) + " vs " + num(w.via_index));
}

// ---------------------------------------------------------------- adjoint

Failure check_duality(const Instance& in) {
  const Built b = build(in);
  const AdjointReport r = duality_pairing_check(delta2_young(in), b.T, b.f, b.g, 1e-10);
  return expect(r.within_tolerance, "residual " + num(r.residual) + " on pairing " + num(r.lhs));
}

Failure check_adjoint_reduction(const Instance& in) {
  const Built b = build(in);
  const YoungFunction phi = delta2_young(in);
  const SimpleFunction direct = adjoint_apply(phi, b.P, b.g);
  const SimpleFunction reduced = product(radon_nikodym(b.P), compose_apply(b.g, b.P.inverse()));
  for (Atom n = 1; n <= b.X.depth(); ++n)
    if (std::abs(direct.at(n) - reduced.at(n)) > 1e-12 * std::max(1.0, std::abs(reduced.at(n))))
      return "C*g != h (g o phi^-1) at atom " + std::to_string(n);
  const YoungFunction psi = conjugate(phi);
  const DensityIndexReport d = adjoint_density_index(phi, psi, b.P, 4, 42);
  if (d.verdict.status != Status::Holds) return "finite permutation gave " + to_string(d.verdict.status);
  return expect(d.chain_failures == 0 && d.contained == d.sampled, "containment chain fails");
}

struct Property {
  std::string name;
  Check check;
  int max_atoms;  // instances larger than this are cut down first
};

const std::vector<Property>& instance_properties() {
  static const std::vector<Property> props{
      {"adjoint.bijective_reduction", check_adjoint_reduction, 50},
      {"adjoint.duality", check_duality, 50},
      {"compop.approximants", check_approximants, 50},
      {"compop.boundedness", check_boundedness, 50},
      {"compop.composite_domain", check_composite_domain, 50},
      {"compop.density_coherence", check_density_coherence, 50},
      {"compop.sum_domain", check_sum_domain, 50},
      {"lp.multiplication", check_multiplication, 50},
      {"lp.weighted_index", check_weighted_index, 50},
      {"measure.change_of_variable", check_change_of_variable, 50},
      {"measure.conditional_expectation", check_conditional_expectation, 50},
      {"measure.inverse_consistency", check_inverse_consistency, 50},
      {"norms.indicator", check_indicator_norm, 50},
      {"norms.power_closed_form", check_power_norm, 50},
      {"norms.sandwich", check_sandwich, 50},
      {"young.conjugate_involution", check_involution, 50},
      {"young.inequality", check_young_inequality, 50},
  };
  return props;
}

Failure guarded(const Check& c, const Instance& in) {
  try {
    return c(in);
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

// ---------------------------------------------------------------- corpus

struct CorpusCase {
  std::string property;
  std::string name;
  std::function<Failure()> run;
};

std::vector<CorpusCase> corpus() {
  const auto geo = MeasureSpace::countable({WeightLaw::Geometric{1.0, 0.5}}, 64);
  const auto con = MeasureSpace::countable({WeightLaw::Constant{1.0}}, 64);
  const auto sq = MeasureSpace::countable({WeightLaw::PowerLaw{1.0, 2.0}}, 16);
  const std::vector<Atom> ones(64, 1);
  const Transformation geo_collapse(geo, ones, {MapLaw::Constant{1}});
  const Transformation con_collapse(con, ones, {MapLaw::Constant{1}});
  const Transformation geo_identity = Transformation::identity(geo);
  std::vector<Atom> swap_targets, square_targets;
  for (Atom n = 1; n <= 64; ++n) swap_targets.push_back(n % 2 ? n + 1 : n - 1);
  for (Atom n = 1; n <= 16; ++n) square_targets.push_back(n * n);
  const Transformation geo_swap(geo, swap_targets, {MapLaw::PairSwap{}});
  const Transformation squares(sq, square_targets, {MapLaw::Power{1, 2}});
  const auto three = MeasureSpace::finite(std::vector<double>{1, 1, 1});
  const Transformation three_map(three, {1, 1, 3});
  const YoungFunction x2 = YoungFunction::power_abs(2.0);
  const YoungFunction half_x2 = YoungFunction::power_over_p(2.0);

  auto density_is = [](const Transformation& T, DomainVerdict::Kind k) {
    return [T, k]() -> Failure {
      const DomainVerdict d = density_verdict(T);
      if (!d.facets_agree) return "facets disagree";
      return expect(d.kind == k, "verdict " + to_string(d.kind) + ", expected " + to_string(k));
    };
  };

  std::vector<CorpusCase> cases{
      {"corpus.density", "geometric identity", density_is(geo_identity, DomainVerdict::Kind::DenselyDefined)},
      {"corpus.density", "geometric collapse", density_is(geo_collapse, DomainVerdict::Kind::DenselyDefined)},
      {"corpus.density", "constant-weight collapse",
       [=]() -> Failure {
         const DomainVerdict d = density_verdict(con_collapse);
         if (d.kind != DomainVerdict::Kind::NotDenselyDefined) return "verdict " + to_string(d.kind);
         return expect(d.witness == Atom{1}, "witness is not atom 1");
       }},
      {"corpus.truncation", "geometric collapse, geometric f",
       [=]() -> Failure {
         const SimpleFunction f = SimpleFunction::of({}, TailLaw{}.add(make_term(Lattice::all(), 1.0, 0.5)));
         const ClosureReport c = closure_identity_check(x2, geo_collapse, f, {1e-2, 1e-4, 1e-6}, 1LL << 20);
         if (!c.monotone) return "distances not monotone";
         for (const auto& r : c.rows)
           if (!r.achieved) return "epsilon " + num(r.epsilon) + " not reached";
         for (long long N = 2; N <= (1LL << 20); N *= 4)
           if (!truncation_approximants(x2, geo_collapse, f, N, 1e-9).bound_holds)
             return "bound fails at N = " + std::to_string(N);
         return {};
       }},
      {"corpus.boundedness", "squares on n^-2 weights",
       [=]() -> Failure {
         const BoundednessVerdict v = boundedness_verdict(x2, squares);
         if (v.kind != BoundednessVerdict::Kind::NotEverywhereDefined) return "verdict " + to_string(v.kind);
         return expect(v.witness.has_value(), "no witness");
       }},
      {"corpus.boundedness", "three-atom example",
       [=]() -> Failure {
         const BoundednessVerdict v = boundedness_verdict(x2, three_map);
         if (v.kind != BoundednessVerdict::Kind::EverywhereDefinedAndBounded) return "verdict " + to_string(v.kind);
         const double est = operator_norm_estimate(x2, three_map);
         return expect(std::abs(est - std::sqrt(2.0)) < 1e-12, "estimate " + num(est));
       }},
      {"corpus.composition", "three-atom example",
       [=]() -> Failure {
         const SimpleFunction c = compose_apply(SimpleFunction::of({5, 6, 7}), three_map);
         return expect(c.values == std::vector<double>{5, 5, 7}, "f o phi wrong");
       }},
      {"corpus.adjoint", "three-atom example",
       [=]() -> Failure {
         const SimpleFunction a = adjoint_apply(half_x2, three_map, SimpleFunction::of({4, 0, 7}));
         if (a.values != std::vector<double>{4, 0, 7}) return "C*g wrong";
         const AdjointReport r =
             duality_pairing_check(half_x2, three_map, SimpleFunction::of({1, 2, 3}), SimpleFunction::of({4, 0, 7}));
         return expect(r.lhs == 25.0 && r.rhs == 25.0, "pairings " + num(r.lhs) + ", " + num(r.rhs));
       }},
      {"corpus.adjoint", "geometric pair swap index",
       [=]() -> Failure {
         const DensityIndexReport d = adjoint_density_index(half_x2, conjugate(half_x2), geo_swap);
         if (d.verdict.status != Status::Holds) return "verdict " + to_string(d.verdict.status);
         for (Atom n = 1; n <= 10; ++n) {
           const double expected = n % 2 ? 2.0 : 1.25;
           if (std::abs(d.J.at(n) - expected) > 1e-12) return "J(" + std::to_string(n) + ") = " + num(d.J.at(n));
         }
         return {};
       }},
      {"corpus.adjoint", "identity index",
       [=]() -> Failure {
         const DensityIndexReport d = adjoint_density_index(half_x2, conjugate(half_x2), geo_identity);
         const double expected = 1.0 + conjugate(half_x2)(1.0);
         return expect(d.verdict.status == Status::Holds && std::abs(d.J.at(70) - expected) < 1e-12,
                       "J = " + num(d.J.at(70)));
       }},
      {"corpus.lp", "three-atom weighted index",
       [=]() -> Failure {
         const SimpleFunction J = weighted_comp_index({SimpleFunction::of({1, 3, 0}), three_map, 2.0, 2.0});
         return expect(J.values == std::vector<double>{10, 0, 0}, "J wrong");
       }},
      {"corpus.cli", "norm of an indicator",
       [=]() -> Failure {
         Scenario s;
         s.space = MeasureSpace::finite(std::vector<std::pair<std::string, double>>{{"A", 4.0}});
         s.functions.emplace("chi", SimpleFunction::of({1.0}));
         const json r = run_command(s, {"norm", {"chi"}, "power_abs:2", {}});
         return expect(r["results"]["value"] == 2.0, "norm " + r["results"]["value"].dump());
       }},
      {"corpus.cli", "conjugate exponent",
       [=]() -> Failure {
         const json r = run_command(Scenario{}, {"conjugate", {}, "power_over_p:3", {}});
         return expect(r["results"]["conjugate"] == "power_over_p:1.5", r["results"]["conjugate"].dump());
       }},
  };
  return cases;
}

std::vector<CorpusCase> scenario_cases(const Scenario& s, std::size_t index) {
  std::vector<CorpusCase> out;
  const std::string tag = "scenario " + std::to_string(index);
  for (const auto& [name, T] : s.maps) {
    out.push_back({"scenario.density_coherence", tag + " map " + name, [T]() -> Failure {
                     return expect(density_verdict(T).facets_agree, "facets disagree");
                   }});
  }
  for (std::size_t r = 0; r < s.runs.size(); ++r) {
    const ScenarioRun run = s.runs[r];
    out.push_back({"scenario.runs", tag + " run " + std::to_string(r), [&s, run]() -> Failure {
                     run_command(s, {run.command, run.args, run.young, {}});
                     return {};
                   }});
  }
  return out;
}

}  // namespace

json Instance::to_json() const {
  return {{"weights", weights}, {"targets", targets}, {"permutation", permutation},
          {"f", f},             {"g", g},             {"young", young}};
}

std::string random_young(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> family(0, 4);
  std::uniform_real_distribution<double> P(1.2, 4.0), S(0.05, 2.0);
  switch (family(rng)) {
    case 0: return "power_abs:" + num(P(rng));
    case 1: return "power_over_p:" + num(P(rng));
    case 2: return "exp_minus_one";
    case 3: return "abs";
    default: break;
  }
  double x = 0.0, y = 0.0, slope = 0.0;
  std::string s = "piecewise[(0,0)";
  for (int i = 0; i < 3; ++i) {
    slope += S(rng);
    const double w = S(rng);
    x += w;
    y += slope * w;
    s += ",(" + num(x) + "," + num(y) + ")";
  }
  std::bernoulli_distribution capped(0.3);
  return s + ";tail=" + (capped(rng) ? std::string("inf") : num(slope + S(rng))) + "]";
}

Instance random_instance(std::mt19937_64& rng, int min_atoms, int max_atoms) {
  std::uniform_int_distribution<int> size(min_atoms, max_atoms);
  std::uniform_real_distribution<double> logw(-3.0, 3.0), val(-10.0, 10.0);
  Instance in;
  const int n = size(rng);
  std::uniform_int_distribution<Atom> target(1, n);
  for (int i = 0; i < n; ++i) {
    in.weights.push_back(std::pow(10.0, logw(rng)));
    in.targets.push_back(target(rng));
    in.permutation.push_back(i + 1);
    in.f.push_back(val(rng));
    in.g.push_back(val(rng));
  }
  std::shuffle(in.permutation.begin(), in.permutation.end(), rng);
  in.young = random_young(rng);
  return in;
}

Instance minimize(Instance inst, const std::function<bool(const Instance&)>& fails) {
  bool progress = true;
  while (progress && inst.weights.size() > 1) {
    progress = false;
    for (std::size_t k = 0; k < inst.weights.size() && inst.weights.size() > 1; ++k) {
      Instance c = inst;
      const Atom gone = static_cast<Atom>(k + 1);
      auto shrink = [&](std::vector<Atom>& t, bool perm) {
        const Atom redirect = perm ? t[k] : 1;
        t.erase(t.begin() + static_cast<long>(k));
        for (Atom& a : t) {
          if (a == gone) a = redirect == gone ? 1 : redirect;
          if (a > gone) --a;
        }
      };
      c.weights.erase(c.weights.begin() + static_cast<long>(k));
      c.f.erase(c.f.begin() + static_cast<long>(k));
      c.g.erase(c.g.begin() + static_cast<long>(k));
      shrink(c.targets, false);
      shrink(c.permutation, true);
      if (fails(c)) {
        inst = std::move(c);
        progress = true;
        --k;
      }
    }
  }
  for (auto* v : {&inst.f, &inst.g})
    for (double& x : *v) {
      if (x == 0.0) continue;
      const double keep = x;
      x = 0.0;
      if (!fails(inst)) x = keep;
    }
  return inst;
}

int SuiteReport::passed() const {
  int n = 0;
  for (const auto& p : properties) n += p.passed;
  return n;
}

int SuiteReport::failed() const {
  int n = 0;
  for (const auto& p : properties) n += p.failed;
  return n;
}

const PropertyResult* SuiteReport::find(const std::string& name) const {
  for (const auto& p : properties)
    if (p.name == name) return &p;
  return nullptr;
}

SuiteReport verify_suite(const SuiteOptions& opts) {
  std::map<std::string, PropertyResult> results;
  auto record = [&](const std::string& prop, const Failure& f, const std::function<json()>& witness) {
    PropertyResult& r = results[prop];
    r.name = prop;
    if (!f) {
      ++r.passed;
      return;
    }
    ++r.failed;
    if (!r.first_failure) r.first_failure = json{{"message", *f}, {"witness", witness()}};
  };

  std::mt19937_64 rng(opts.seed);
  for (int i = 0; i < opts.count; ++i) {
    const Instance in = random_instance(rng);
    for (const auto& p : instance_properties()) {
      const Failure f = guarded(p.check, in);
      record(p.name, f, [&] {
        const Instance m = minimize(in, [&](const Instance& c) { return guarded(p.check, c).has_value(); });
        json w = m.to_json();
        w["instance"] = i;
        return w;
      });
    }
  }
  for (const auto& c : corpus()) {
    Failure f;
    try {
      f = c.run();
    } catch (const std::exception& e) {
      f = std::string("exception: ") + e.what();
    }
    record(c.property, f, [&] { return json{{"case", c.name}}; });
  }
  for (std::size_t k = 0; k < opts.scenarios.size(); ++k) {
    for (const auto& c : scenario_cases(opts.scenarios[k], k)) {
      Failure f;
      try {
        f = c.run();
      } catch (const std::exception& e) {
        f = std::string("exception: ") + e.what();
      }
      record(c.property, f, [&] { return json{{"case", c.name}}; });
    }
  }
  SuiteReport out;
  out.seed = opts.seed;
  out.count = opts.count;
  for (auto& [name, r] : results) out.properties.push_back(std::move(r));
  return out;
}

json to_json(const SuiteReport& r) {
  json props = json::array();
  for (const auto& p : r.properties) {
    json j{{"name", p.name}, {"passed", p.passed}, {"failed", p.failed}};
    if (p.first_failure) j["first_failure"] = *p.first_failure;
    props.push_back(j);
  }
  return {{"seed", r.seed},
          {"count", r.count},
          {"passed", r.passed()},
          {"failed", r.failed()},
          {"properties", props}};
}

}  // namespace orlicz
