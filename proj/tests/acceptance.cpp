#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "orlicz/adjoint.hpp"
#include "orlicz/compop.hpp"
#include "orlicz/extended.hpp"
#include "orlicz/growth.hpp"
#include "orlicz/verify.hpp"

using namespace orlicz;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<Instance> battery(int count, std::uint64_t seed = 42, int max_atoms = 50) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) out.push_back(random_instance(rng, 2, max_atoms));
  return out;
}

SimpleFunction values(const std::vector<double>& v) { return SimpleFunction::of(v); }

YoungFunction delta2_family(const Instance& in) {
  const YoungFunction phi = parse_young(in.young);
  if (phi.power_form() && phi.power_form()->second > 1.0) return phi;
  return YoungFunction::power_abs(2.0);
}

std::vector<YoungFunction> piecewise_samples() {
  return {YoungFunction::piecewise({{0, 0}, {1, 0.5}, {2, 2}}, 3.0),
          YoungFunction::piecewise({{0, 0}, {0.5, 0}, {1.5, 1}, {3, 4}}, 5.0),
          YoungFunction::piecewise({{0, 0}, {1, 1}, {2, 3}, {4, 9}}, 4.0)};
}

// inf{t : Phi(t) > y}.
double bisect_inverse(const YoungFunction& phi, double y) {
  double lo = 0.0, hi = 1.0;
  while (phi(hi) <= y) lo = hi, hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) > y ? hi : lo) = mid;
  }
  return hi;
}

// ---------------------------------------------------------------- 1
Outcome conjugate_involution() {
  const auto t0 = Clock::now();
  std::vector<YoungFunction> fams = {YoungFunction::power_abs(1.5), YoungFunction::power_abs(2.0),
                                     YoungFunction::power_abs(3.0)};
  for (auto& p : piecewise_samples()) fams.push_back(p);
  double worst = 0.0, worst_break = 0.0;
  bool names = true;
  for (const auto& phi : fams) {
    const YoungFunction psi = conjugate(phi);
    names = names && conjugate(psi).name() == phi.name();
    for (int i = 0; i < 512; ++i) {
      const double x = std::pow(10.0, -2.0 + 4.0 * i / 511.0);
      const double want = phi(x);
      if (!std::isfinite(want)) continue;
      worst = std::max(worst, rel(legendre_numeric(psi, x), want));
    }
    if (const auto* pl = std::get_if<YoungFunction::PiecewiseLinear>(&phi.family()))
      for (const auto& [x, y] : pl->points) worst_break = std::max(worst_break, std::abs(conjugate(psi)(x) - y));
  }
  const double dt = seconds_since(t0);
  return {names && worst <= 1e-8 && worst_break == 0.0 && dt < 1.0,
          "max rel err " + fmt(worst) + ", breakpoint err " + fmt(worst_break) + ", " + fmt(dt) + " s"};
}

// ---------------------------------------------------------------- 2
Outcome young_inequality() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<YoungFunction> fams = {YoungFunction::power_abs(2.0), YoungFunction::power_over_p(3.0),
                                     YoungFunction::exp_minus_one(), YoungFunction::abs_value()};
  for (auto& p : piecewise_samples()) fams.push_back(p);
  double min_gap = kInf, worst_eq = 0.0;
  for (const auto& phi : fams) {
    const YoungFunction psi = conjugate(phi);
    for (int i = 0; i < 10000; ++i) {
      const double x = std::pow(10.0, u(rng) / 2), y = std::pow(10.0, u(rng) / 2);
      min_gap = std::min(min_gap, young_inequality_gap(phi, x, y) / std::max(1.0, x * y));
      const double d = phi.right_derivative(x);
      if (std::isfinite(d) && std::isfinite(phi(x))) {
        const double g = young_inequality_gap(phi, x, d);
        worst_eq = std::max(worst_eq, std::abs(g) / std::max(1.0, x * d));
      }
    }
  }
  return {min_gap >= -1e-12 && worst_eq <= 1e-9, "min gap " + fmt(min_gap) + ", max equality gap " + fmt(worst_eq)};
}

// ---------------------------------------------------------------- 3
Outcome norm_sandwich() {
  const auto t0 = Clock::now();
  int bad = 0;
  for (const auto& in : battery(200)) {
    const auto X = in.space();
    const auto phi = parse_young(in.young);
    const double N = luxemburg_norm(phi, X, values(in.f)).value;
    const double O = orlicz_norm(phi, X, values(in.f)).value;
    if (!(N <= O * (1 + 1e-9) && O <= 2 * N * (1 + 1e-9))) ++bad;
  }
  const double dt = seconds_since(t0);
  return {bad == 0 && dt < 30.0, std::to_string(bad) + " violations, " + fmt(dt) + " s"};
}

// ---------------------------------------------------------------- 4
Outcome luxemburg_closed_forms() {
  double worst_ind = 0.0, worst_pow = 0.0;
  for (const auto& in : battery(200)) {
    const auto X = in.space();
    const auto phi = parse_young(in.young);
    std::vector<double> chi(in.f.size());
    double mass = 0.0;
    for (std::size_t i = 0; i < chi.size(); ++i)
      if (in.f[i] > 0) chi[i] = 1.0, mass += in.weights[i];
    if (mass > 0) {
      // Phi(1/k) mu(A) = 1 solved in closed form per family.
      double want = 0.0;
      std::visit(
          [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, YoungFunction::PowerAbs>) want = std::pow(mass, 1.0 / fam.p);
            else if constexpr (std::is_same_v<T, YoungFunction::PowerOverP>) want = std::pow(mass / fam.p, 1.0 / fam.p);
            else if constexpr (std::is_same_v<T, YoungFunction::ExpMinusOne>) want = 1.0 / std::log1p(1.0 / mass);
            else if constexpr (std::is_same_v<T, YoungFunction::AbsValue>) want = mass;
            else want = 1.0 / bisect_inverse(phi, 1.0 / mass);
          },
          phi.family());
      worst_ind = std::max(worst_ind, rel(luxemburg_norm(phi, X, values(chi)).value, want));
    }
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      long double s = 0.0L;
      for (std::size_t i = 0; i < in.f.size(); ++i)
        s += std::pow(static_cast<long double>(std::abs(in.f[i])), p) * in.weights[i];
      const double classical = static_cast<double>(std::pow(s, 1.0L / p));
      worst_pow = std::max(worst_pow, rel(luxemburg_norm(YoungFunction::power_abs(p), X, values(in.f)).value,
                                          classical));
    }
  }
  return {worst_ind <= 1e-9 && worst_pow <= 1e-12,
          "indicator rel err " + fmt(worst_ind) + ", power rel err " + fmt(worst_pow)};
}

// ---------------------------------------------------------------- 5
Outcome orlicz_vs_grid() {
  std::mt19937_64 rng(42);
  const std::vector<YoungFunction> fams = {YoungFunction::power_abs(1.5), YoungFunction::power_abs(2.0),
                                           YoungFunction::power_over_p(3.0), YoungFunction::exp_minus_one()};
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Instance in = random_instance(rng, 1, 4);
    const auto X = in.space();
    const auto& phi = fams[static_cast<std::size_t>(i) % fams.size()];
    const double a = orlicz_norm(phi, X, values(in.f)).value;
    const double b = orlicz_norm_grid(phi, X, values(in.f)).value;
    worst = std::max(worst, rel(a, b));
  }
  return {worst <= 1e-4, "max rel gap " + fmt(worst)};
}

// ---------------------------------------------------------------- 6
Outcome change_of_variable() {
  double worst = 0.0;
  for (const auto& in : battery(200)) {
    const auto X = in.space();
    const auto phi = parse_young(in.young);
    const Transformation T(X, in.targets);
    const double lhs = modular(phi, X, compose_apply(values(in.f), T)).value;
    const auto h = radon_nikodym(T);
    long double rhs = 0.0L;
    for (std::size_t i = 0; i < in.f.size(); ++i) {
      const double hv = h.at(static_cast<Atom>(i + 1));
      if (hv > 0) rhs += static_cast<long double>(phi(in.f[i])) * hv * in.weights[i];
    }
    worst = std::max(worst, rel(lhs, static_cast<double>(rhs)));
  }
  return {worst <= 1e-12, "max rel err " + fmt(worst)};
}

// ---------------------------------------------------------------- 7
Outcome conditional_expectation_laws() {
  const double tol = 1e-10;
  int bad = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (bad++ == 0) first = what;
  };
  for (const auto& in : battery(500)) {
    const auto X = in.space();
    const auto phi = parse_young(in.young);
    const Transformation T(X, in.targets);
    const Partition P = fiber_partition(T);
    const auto f = values(in.f), g = values(in.g);
    const auto Ef = conditional_expectation(X, f, P);
    const auto Eg = conditional_expectation(X, g, P);
    const auto Eabs = conditional_expectation(X, absolute(f), P);
    const auto EEf = conditional_expectation(X, Ef, P);
    const auto pulled = conditional_expectation(X, product(Eg, f), P);
    std::vector<double> phif(in.f.size());
    for (std::size_t i = 0; i < phif.size(); ++i) phif[i] = phi(in.f[i]);
    const auto Ephi = conditional_expectation(X, values(phif), P);
    for (const auto& block : P.blocks) {
      long double a = 0, b = 0, scale = 0;
      for (Atom n : block) {
        a += Ef.at(n) * X.weight(n);
        b += f.at(n) * X.weight(n);
        scale += std::abs(f.at(n)) * X.weight(n);
      }
      if (std::abs(static_cast<double>(a - b)) > tol * std::max(1.0, static_cast<double>(scale)))
        fail("averaging identity");
    }
    for (Atom n = 1; n <= X.depth(); ++n) {
      const double out = Eg.at(n) * Ef.at(n);
      if (std::abs(pulled.at(n) - out) > tol * std::max(1.0, std::abs(out))) fail("pull-out");
      if (std::abs(EEf.at(n) - Ef.at(n)) > tol * std::max(1.0, std::abs(Ef.at(n)))) fail("idempotence");
      if (Eabs.at(n) < 0.0) fail("positivity");
      if (f.at(n) != 0.0 && Eabs.at(n) == 0.0) fail("support inclusion");
      const double lhs = phi(Ef.at(n)), rhs = Ephi.at(n);
      if (std::isfinite(rhs) && lhs > rhs + tol * std::max(1.0, rhs)) fail("Jensen");
    }
    const double nE = luxemburg_norm(phi, X, Ef).value, nf = luxemburg_norm(phi, X, f).value;
    if (nE > nf * (1 + tol)) fail("norm contraction");
  }
  return {bad == 0, std::to_string(bad) + " violations" + (bad ? " (first: " + first + ")" : "")};
}

// ---------------------------------------------------------------- 8
Outcome density_coherence() {
  int disagree = 0;
  for (const auto& in : battery(200)) {
    const auto v = density_verdict(Transformation(in.space(), in.targets));
    if (!v.facets_agree || v.kind != DomainVerdict::Kind::DenselyDefined) ++disagree;
  }
  const auto geo = MeasureSpace::countable({WeightLaw::Geometric{0.5, 0.5}}, 64);
  const auto cnt = MeasureSpace::countable({WeightLaw::Constant{1.0}}, 64);
  const DomainVerdict corpus[] = {
      density_verdict(Transformation::identity(geo)),
      density_verdict(Transformation(geo, {}, MapLaw{MapLaw::Constant{1}})),
      density_verdict(Transformation(cnt, {}, MapLaw{MapLaw::Constant{1}}))};
  const DomainVerdict::Kind want[] = {DomainVerdict::Kind::DenselyDefined, DomainVerdict::Kind::DenselyDefined,
                                      DomainVerdict::Kind::NotDenselyDefined};
  std::string got;
  bool ok = disagree == 0;
  for (int i = 0; i < 3; ++i) {
    ok = ok && corpus[i].kind == want[i] && corpus[i].facets_agree;
    got += (i ? " / " : "") + to_string(corpus[i].kind);
  }
  return {ok, std::to_string(disagree) + " incoherent instances; corpus " + got};
}

// ---------------------------------------------------------------- 9
Outcome truncation_convergence() {
  const auto X = MeasureSpace::countable({WeightLaw::Geometric{0.5, 0.5}}, 64);
  const Transformation collapse(X, {}, MapLaw{MapLaw::Constant{1}});
  SimpleFunction f;
  f.tail.add(make_term(Lattice::all(), 3.0, 0.5));
  const auto phi = YoungFunction::power_abs(2.0);
  const auto c = closure_identity_check(phi, collapse, f, {1e-6}, 1LL << 20);
  bool reached = !c.rows.empty() && c.rows.back().achieved && c.rows.back().N <= (1LL << 20);
  bool bounds = true;
  for (long long N = 2; N <= (1LL << 20); N *= 2) {
    const auto r = truncation_approximants(phi, collapse, f, N, 1e-9);
    bounds = bounds && r.bound_holds;
  }
  return {c.monotone && reached && bounds,
          std::string("monotone ") + (c.monotone ? "yes" : "no") + ", 1e-6 reached at N = " +
              (reached ? std::to_string(c.rows.back().N) : "never") + ", bound " + (bounds ? "holds" : "fails")};
}

// ---------------------------------------------------------------- 10
Outcome duality() {
  double worst_abs = 0.0, worst_rel = 0.0;
  for (const auto& in : battery(200)) {
    const auto r = duality_pairing_check(delta2_family(in), Transformation(in.space(), in.targets), values(in.f),
                                         values(in.g), 1e-10);
    const double res = std::abs(r.lhs - r.rhs);
    worst_abs = std::max(worst_abs, res);
    worst_rel = std::max(worst_rel, res / std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)}));
  }
  // Bijective corpus: J finite everywhere exactly when the verdict holds.
  const auto phi = YoungFunction::power_abs(2.0);
  const auto geo = MeasureSpace::countable({WeightLaw::Geometric{0.5, 0.5}}, 32);
  const auto fin = MeasureSpace::finite(std::vector<double>{1.0, 3.0, 0.25, 8.0});
  const Transformation maps[] = {Transformation(geo, {}, MapLaw{MapLaw::PairSwap{}}), Transformation::identity(geo),
                                 Transformation(fin, {2, 3, 4, 1})};
  bool j_ok = true;
  for (const auto& m : maps) {
    const auto d = adjoint_density_index(phi, conjugate(phi), m);
    bool finite = d.J.resolved();
    for (Atom n = 1; n <= d.J.explicit_size(); ++n) finite = finite && std::isfinite(d.J.at(n));
    j_ok = j_ok && finite == (d.verdict.status == Status::Holds);
  }
  return {worst_abs <= 1e-10 && j_ok, "max residual " + fmt(worst_abs) + " (relative " + fmt(worst_rel) +
                                           "), J verdicts " + (j_ok ? "consistent" : "inconsistent")};
}

// ---------------------------------------------------------------- 11
Outcome boundedness() {
  int bad = 0;
  for (const auto& in : battery(200)) {
    const auto phi = parse_young(in.young);
    const Transformation T(in.space(), in.targets);
    const auto v = boundedness_verdict(phi, T);
    if (v.kind != BoundednessVerdict::Kind::EverywhereDefinedAndBounded) ++bad;
    else if (operator_norm_estimate(phi, T, 16) > v.bound * (1 + 1e-9)) ++bad;
  }
  const auto X = MeasureSpace::countable({WeightLaw::PowerLaw{1.0, 2.0}}, 64);
  const auto phi = YoungFunction::power_abs(2.0);
  const Transformation sq(X, {}, MapLaw{MapLaw::Power{1, 2}});
  const auto v = boundedness_verdict(phi, sq);
  bool witness = false;
  if (v.kind == BoundednessVerdict::Kind::NotEverywhereDefined && v.witness) {
    const auto in = modular(phi, X, *v.witness);
    const auto out = modular(phi, X, compose_apply(*v.witness, sq));
    witness = in.resolved && std::isfinite(in.upper) && out.resolved && is_inf(out.lower);
  }
  return {bad == 0 && witness, std::to_string(bad) + " finite failures; unbounded instance " +
                                   to_string(v.kind) + (witness ? " with certified witness" : "")};
}

// ---------------------------------------------------------------- 12
Outcome sum_composite_domains() {
  int bad = 0, total = 0;
  for (const auto& in : battery(200)) {
    const auto X = in.space();
    const auto phi = parse_young(in.young);
    const Transformation m1(X, in.targets), m2(X, in.permutation);
    const auto s = sum_domain_check(phi, 1.0, m1, 2.0, m2, values(in.f));
    const auto c = composite_domain_check(phi, m1, m2, values(in.f));
    total += 2;
    bad += !s.agree;
    bad += !c.agree;
  }
  return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " facet pairs agree"};
}

// ---------------------------------------------------------------- 13
Outcome full_suite() {
  const auto t0 = Clock::now();
  SuiteOptions opts;
  opts.seed = 42;
  opts.count = 200;
  const auto r = verify_suite(opts);
  const double dt = seconds_since(t0);
  return {r.failed() == 0 && dt < 60.0,
          std::to_string(r.passed()) + " passed, " + std::to_string(r.failed()) + " failed, " + fmt(dt) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"conjugate involution", conjugate_involution},
      {"Young inequality", young_inequality},
      {"norm sandwich", norm_sandwich},
      {"Luxemburg closed forms", luxemburg_closed_forms},
      {"Orlicz norm vs grid oracle", orlicz_vs_grid},
      {"change of variable", change_of_variable},
      {"conditional expectation", conditional_expectation_laws},
      {"density coherence", density_coherence},
      {"truncation approximants", truncation_convergence},
      {"adjoint duality", duality},
      {"boundedness", boundedness},
      {"sum and composite domains", sum_composite_domains},
      {"full verification suite", full_suite},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
