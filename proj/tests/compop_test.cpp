#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "orlicz/compop.hpp"
#include "orlicz/extended.hpp"

using namespace orlicz;

namespace {

MeasureSpace geometric(Atom depth = 16) {
  return MeasureSpace::countable({WeightLaw::Geometric{0.5, 0.5}}, depth);
}

MeasureSpace counting(Atom depth = 16) {
  return MeasureSpace::countable({WeightLaw::Constant{1.0}}, depth);
}

}  // namespace

TEST(Compop, ComposeFinite) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 1.0, 1.0});
  const auto g = compose_apply(SimpleFunction::of({5.0, 6.0, 7.0}), Transformation(X, {1, 1, 3}));
  EXPECT_EQ(g.values, (std::vector<double>{5.0, 5.0, 7.0}));
}

TEST(Compop, ComposeShiftTail) {
  // f(n) = 2^-n composed with n -> n + 1 gives 2^-(n+1).
  const auto X = geometric();
  SimpleFunction f;
  f.tail.add(make_term(Lattice::all(), 1.0, 0.5));
  const auto g = compose_apply(f, Transformation(X, {}, MapLaw{MapLaw::Affine{1, 1}}));
  ASSERT_TRUE(g.resolved());
  for (Atom n : {1, 3, 50}) EXPECT_NEAR(g.at(n), std::pow(0.5, n + 1), 1e-13 * std::pow(0.5, n));
}

TEST(Compop, ChangeOfVariableOnRandomMaps) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> w(0.1, 10.0), v(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 20;
    std::vector<double> mu, f;
    std::vector<Atom> t;
    std::uniform_int_distribution<Atom> pick(1, n);
    for (int i = 0; i < n; ++i) mu.push_back(w(rng)), f.push_back(v(rng)), t.push_back(pick(rng));
    const auto X = MeasureSpace::finite(mu);
    const auto r = change_of_variable_check(YoungFunction::power_abs(2.0), SimpleFunction::of(f),
                                            Transformation(X, t));
    EXPECT_TRUE(r.agree);
    EXPECT_NEAR(r.composed.value, r.weighted.value, 1e-10 * std::max(1.0, r.composed.value));
  }
}

TEST(Compop, DensityOfConstantCollapse) {
  const auto v = density_verdict(Transformation(counting(), {}, MapLaw{MapLaw::Constant{1}}));
  EXPECT_EQ(v.kind, DomainVerdict::Kind::NotDenselyDefined);
  EXPECT_EQ(v.witness, 1);
  EXPECT_TRUE(v.facets_agree);
}

TEST(Compop, DensityOfGeometricCollapse) {
  const auto v = density_verdict(Transformation(geometric(), {}, MapLaw{MapLaw::Constant{1}}));
  EXPECT_EQ(v.kind, DomainVerdict::Kind::DenselyDefined);
  EXPECT_TRUE(v.facets_agree);
}

TEST(Compop, DensityOfFiniteMapIsDense) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_EQ(density_verdict(Transformation(X, {2, 2, 2})).kind, DomainVerdict::Kind::DenselyDefined);
}

TEST(Compop, DomainMembershipFacetsAgree) {
  const auto X = geometric();
  const Transformation shift(X, {}, MapLaw{MapLaw::Affine{1, 1}});
  const auto r = domain_membership(YoungFunction::power_abs(2.0), shift, SimpleFunction::constant(X, 1.0));
  EXPECT_EQ(r.direct.status, Status::Holds);
  EXPECT_EQ(r.weighted.status, Status::Holds);
  EXPECT_TRUE(r.agree);
}

TEST(Compop, TruncationApproximantBound) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 1.0, 1.0});
  const Transformation phi(X, {2, 2, 2});  // h = (0, 3, 0)
  const auto f = SimpleFunction::of({1.0, 2.0, 3.0});
  const auto phi2 = YoungFunction::power_abs(2.0);
  const auto r = truncation_approximants(phi2, phi, f, 3);
  EXPECT_EQ(r.f_N.values, (std::vector<double>{1.0, 0.0, 3.0}));
  EXPECT_EQ(r.in_domain.status, Status::Holds);
  EXPECT_TRUE(r.bound_holds);
  EXPECT_LE(r.composed_norm, r.bound * (1 + 1e-9));
  const auto large = truncation_approximants(phi2, phi, f, 8);
  EXPECT_NEAR(large.distance, 0.0, 1e-12);
}

TEST(Compop, ClosureScheduleIsMonotone) {
  const auto X = geometric();
  const Transformation shift(X, {}, MapLaw{MapLaw::Affine{1, 1}});
  const auto r = closure_identity_check(YoungFunction::power_abs(2.0), shift, SimpleFunction::constant(X, 1.0));
  EXPECT_TRUE(r.monotone);
  for (const auto& row : r.rows) EXPECT_TRUE(row.achieved) << row.epsilon;
}

TEST(Compop, BoundedWhenDensityBounded) {
  const auto v = boundedness_verdict(YoungFunction::power_abs(2.0),
                                     Transformation(geometric(), {}, MapLaw{MapLaw::Constant{1}}));
  EXPECT_EQ(v.kind, BoundednessVerdict::Kind::EverywhereDefinedAndBounded);
  EXPECT_NEAR(v.bound, 2.0, 1e-12);
}

TEST(Compop, UnboundedDensityGivesWitness) {
  const auto X = MeasureSpace::countable({WeightLaw::PowerLaw{1.0, 2.0}}, 16);
  const auto phi2 = YoungFunction::power_abs(2.0);
  const Transformation sq(X, {}, MapLaw{MapLaw::Power{1, 2}});
  const auto v = boundedness_verdict(phi2, sq);
  ASSERT_EQ(v.kind, BoundednessVerdict::Kind::NotEverywhereDefined);
  ASSERT_TRUE(v.witness.has_value());
  const auto in = modular(phi2, X, *v.witness);
  EXPECT_TRUE(std::isfinite(in.upper));
  EXPECT_TRUE(is_inf(modular(phi2, X, compose_apply(*v.witness, sq)).lower));
}

TEST(Compop, OperatorNormEstimateBelowBound) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 1.0});
  const Transformation phi(X, {1, 1});  // h = (2, 0)
  const auto phi2 = YoungFunction::power_abs(2.0);
  const double est = operator_norm_estimate(phi2, phi);
  EXPECT_NEAR(est, std::sqrt(2.0), 1e-9);
  EXPECT_LE(est, boundedness_verdict(phi2, phi).bound);
}

TEST(Compop, SumAndCompositeDomainsAgree) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 2.0, 3.0, 4.0});
  const Transformation m1(X, {1, 1, 2, 2});
  const Transformation m2(X, {2, 1, 4, 3});
  const auto f = SimpleFunction::of({1.0, -1.0, 2.0, 0.5});
  const auto phi = YoungFunction::power_abs(2.0);
  const auto s = sum_domain_check(phi, 1.0, m1, 2.0, m2, f);
  EXPECT_TRUE(s.agree);
  EXPECT_EQ(s.direct.status, Status::Holds);
  const auto c = composite_domain_check(phi, m1, m2, f);
  EXPECT_TRUE(c.agree);
  ASSERT_TRUE(c.corrected.has_value());
  EXPECT_EQ(c.corrected->status, Status::Holds);
}

TEST(Compop, CompositeFacetsOnCountablePairSwap) {
  const auto X = geometric();
  const Transformation shift(X, {}, MapLaw{MapLaw::Affine{1, 1}});
  const Transformation swap(X, {}, MapLaw{MapLaw::PairSwap{}});
  const auto c = composite_domain_check(YoungFunction::power_abs(2.0), shift, swap,
                                        SimpleFunction::constant(X, 1.0));
  ASSERT_TRUE(c.corrected.has_value());
  EXPECT_TRUE(c.corrected->decisive());
  EXPECT_TRUE(c.agree);
}

TEST(Compop, WeightedSubspaceIsDense) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 1.0, 1.0});
  const auto r = dense_weighted_subspace_check(YoungFunction::power_abs(2.0), X,
                                               SimpleFunction::of({0.5, 3.0, 100.0}));
  EXPECT_EQ(r.verdict.status, Status::Holds);
  ASSERT_FALSE(r.distances.empty());
  EXPECT_NEAR(r.distances.back(), 0.0, 1e-12);
}

TEST(Compop, ClosednessLimitIdentity) {
  const auto X = geometric();
  const Transformation shift(X, {}, MapLaw{MapLaw::Affine{1, 1}});
  const auto r = closedness_demo(YoungFunction::power_abs(2.0), shift, SimpleFunction::constant(X, 1.0),
                                 SequenceBuilder::GeometricPerturbation);
  EXPECT_TRUE(r.converges);
  EXPECT_TRUE(r.limit_identity);
}
