#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "orlicz/adjoint.hpp"
#include "orlicz/compop.hpp"

using namespace orlicz;

TEST(Adjoint, FiniteFiberSums) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 1.0, 1.0});
  const Transformation phi(X, {1, 1, 3});
  const auto c = adjoint_apply(YoungFunction::power_abs(2.0), phi, SimpleFunction::of({1.0, 3.0, 7.0}));
  EXPECT_EQ(c.values, (std::vector<double>{4.0, 0.0, 7.0}));
}

TEST(Adjoint, DualityOnRandomMaps) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> w(1e-2, 1e2), v(-10.0, 10.0);
  const auto phi2 = YoungFunction::power_abs(2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 25;
    std::vector<double> mu, f, g;
    std::vector<Atom> t;
    std::uniform_int_distribution<Atom> pick(1, n);
    for (int i = 0; i < n; ++i)
      mu.push_back(w(rng)), f.push_back(v(rng)), g.push_back(v(rng)), t.push_back(pick(rng));
    const auto X = MeasureSpace::finite(mu);
    const auto r = duality_pairing_check(phi2, Transformation(X, t), SimpleFunction::of(f),
                                         SimpleFunction::of(g));
    EXPECT_TRUE(r.within_tolerance) << r.residual;
    // Oracle: C*g = h times the fiber average of g.
    const auto h = oracle::radon_nikodym(mu, t);
    for (int y = 0; y < n; ++y) {
      double num = 0.0, den = 0.0;
      for (int x = 0; x < n; ++x)
        if (t[x] == y + 1) num += g[x] * mu[x], den += mu[x];
      const double ref = den > 0 ? h[y] * num / den : 0.0;
      EXPECT_NEAR(r.adjoint_values.at(y + 1), ref, 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST(Adjoint, RejectsNonDelta2) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 1.0});
  EXPECT_THROW(adjoint_apply(YoungFunction::exp_minus_one(), Transformation(X, {1, 2}),
                             SimpleFunction::of({1.0, 1.0})),
               PreconditionError);
}

TEST(Adjoint, RejectsNotDenselyDefined) {
  const auto X = MeasureSpace::countable({WeightLaw::Constant{1.0}}, 8);
  EXPECT_THROW(adjoint_apply(YoungFunction::power_abs(2.0),
                             Transformation(X, {}, MapLaw{MapLaw::Constant{1}}),
                             SimpleFunction::constant(X, 0.0)),
               PreconditionError);
}

TEST(Adjoint, BijectiveReducesToInverseComposition) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 2.0, 4.0});
  const Transformation phi(X, {3, 1, 2});
  const auto g = SimpleFunction::of({1.0, -2.0, 5.0});
  const auto c = adjoint_apply(YoungFunction::power_abs(2.0), phi, g);
  const auto h = radon_nikodym(phi);
  const auto back = compose_apply(g, phi.inverse());
  for (Atom n = 1; n <= 3; ++n) EXPECT_NEAR(c.at(n), h.at(n) * back.at(n), 1e-14);
}

TEST(Adjoint, DensityIndexForPairSwap) {
  const auto X = MeasureSpace::countable({WeightLaw::Geometric{0.5, 0.5}}, 16);
  const Transformation swap(X, {}, MapLaw{MapLaw::PairSwap{}});
  const auto phi2 = YoungFunction::power_abs(2.0);
  const auto r = adjoint_density_index(phi2, conjugate(phi2), swap);
  EXPECT_TRUE(r.delta_prime.holds());
  EXPECT_EQ(r.chain_failures, 0);
  EXPECT_EQ(r.contained, r.sampled);
  EXPECT_EQ(r.verdict.status, Status::Holds);
  const auto psi = conjugate(phi2);
  for (Atom n = 1; n <= 8; ++n) {
    const Atom m = swap.at(n);
    const double h_inv = X.weight(m) / X.weight(n);  // mu(phi(n)) / mu(n)
    const double h_at_m = X.weight(n) / X.weight(m);  // mu(phi^-1(m)) / mu(m)
    EXPECT_NEAR(r.J.at(n), 1.0 + h_inv * psi(h_at_m), 1e-12) << n;
  }
}
