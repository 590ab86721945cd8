#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"
#include "noisestab/distributions.hpp"
#include "noisestab/errors.hpp"
#include "noisestab/families.hpp"
#include "noisestab/gaussian.hpp"
#include "noisestab/stability.hpp"
#include "noisestab/verifier.hpp"
#include "oracles.hpp"

namespace noisestab {
namespace {

TEST(TheoremTwo, DictatorShowsTheHypothesisIsNeeded) {
    const auto d = to_unit_interval(families::dictator(3, 0));
    const auto rep = check_theorem_two(d, d, 0.5, 0.0, 1, 0.1);
    EXPECT_NEAR(rep.lhs, 0.375, 1e-15);
    EXPECT_NEAR(rep.rhs, 1.0 / 3.0, 1e-12);
    // Deficit ρ/4 − 1/12 at ρ = ½.
    EXPECT_NEAR(rep.margin, -(0.125 - 1.0 / 12.0), 1e-12);
    EXPECT_EQ(rep.verdict, Verdict::hypotheses_not_met);
    EXPECT_FALSE(rep.hypotheses.met);
    // The gap survives a small ε.
    EXPECT_LE(check_theorem_two(d, d, 0.5, 0.01, 1, 0.1).margin, -0.03);
}

TEST(TheoremTwo, MajorityHolds) {
    const auto maj = to_unit_interval(families::majority(11));
    const auto rep = check_theorem_two(maj, maj, 0.5, 0.05, 1, 0.15);
    EXPECT_NEAR(rep.lhs, 0.33773981966078281, 1e-14);
    EXPECT_TRUE(rep.hypotheses.met);
    EXPECT_LE(rep.hypotheses.resilience.front().defect, 0.15);
    EXPECT_NEAR(rep.hypotheses.resilience.front().defect, 0.123046875, 1e-15);
    EXPECT_EQ(rep.verdict, Verdict::holds);
    EXPECT_GT(rep.margin, 0.0);
}

TEST(TheoremTwo, DomainAndClamping) {
    const auto f = to_unit_interval(families::majority(3));
    EXPECT_THROW(check_theorem_two(families::majority(3), f, 0.5, 0.1, 1, 0.1), InvalidArgument);
    EXPECT_THROW(check_theorem_two(f, f, -0.5, 0.1, 1, 0.1), UnsupportedDomain);
    const auto rep = check_theorem_two(f, f, 0.5, 0.1, 7, 0.6);
    EXPECT_FALSE(rep.hypotheses.notes.empty());
    EXPECT_EQ(rep.hypotheses.resilience.front().r, 3);
}

TEST(TheoremTwo, LhsAgreesWithBothRoutes) {
    Rng rng(81);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = corpus::random_function(rng, 2, 4, trial % 2 == 0, false);
        const auto g = corpus::random_function(rng, 2, 4, false, false);
        const double r = uniform01(rng);
        const auto rep = check_theorem_two(f, g, r, 0.1, 1, 0.2);
        EXPECT_NEAR(rep.lhs, oracle::noisy_inner_product(f, g, r), 1e-12);
        EXPECT_NEAR(rep.lhs, pair_correlation(f, g, distributions::correlated_bits(r)), 1e-12);
        EXPECT_NE(rep.verdict, Verdict::violated);
    }
}

TEST(TheoremThree, WitnessOnFailure) {
    const auto d = to_unit_interval(families::dictator(3, 0));
    const auto rep = check_theorem_three(d, d, 0.9, 0.0, 1, 0.1);
    EXPECT_LT(rep.margin, 0.0);
    EXPECT_EQ(rep.verdict, Verdict::hypotheses_not_met);
    ASSERT_TRUE(rep.witness.has_value());
    EXPECT_EQ(rep.witness->f_set, std::vector<int>{0});
    EXPECT_NEAR(std::abs(rep.witness->f_coefficient), 0.5, 1e-15);

    const auto lower = check_theorem_three_lower(d, to_unit_interval(families::dictator(3, 1)), 0.5, 0.05, 1, 0.1);
    EXPECT_EQ(lower.direction, BoundDirection::lower);
    // Independent coordinates: lhs = 1/4 and rhs = ½ − H(½, ½, ½) − ε.
    EXPECT_NEAR(lower.lhs, 0.25, 1e-15);
    EXPECT_NEAR(lower.rhs, 0.5 - 1.0 / 3.0 - 0.05, 1e-12);
    EXPECT_EQ(lower.verdict, Verdict::holds);
}

TEST(TheoremMulti, ChainIndicators) {
    const auto f = families::coordinate_indicator(3, 1, 0, 0);
    const auto rep = check_theorem_multi({f, f, f}, distributions::f3_chain(), 0.1, 1, {20000, 3});
    EXPECT_NEAR(rep.lhs, 1.0 / 12.0, 1e-15);
    EXPECT_FALSE(rep.hypotheses.met);
    EXPECT_EQ(rep.verdict, Verdict::hypotheses_not_met);
    ASSERT_TRUE(rep.gamma.has_value());
    EXPECT_GE(rep.gamma->value, 1.0 / 27.0);
}

TEST(TheoremMulti, IndependentStepsAreExact) {
    const auto p = distributions::independent({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
    const auto f = TableFunction::constant(2, 3, 0.5);
    const auto rep = check_theorem_multi({f, f, f}, p, 0.05, 2);
    EXPECT_EQ(rep.gamma->strategy, "independent-exact");
    EXPECT_NEAR(rep.margin, 0.05, 1e-15);
    EXPECT_EQ(rep.verdict, Verdict::holds);
    const auto degenerate = check_theorem_multi({f, f}, distributions::correlated_bits(1.0), 0.05, 1);
    EXPECT_EQ(degenerate.verdict, Verdict::hypotheses_not_met);
}

TEST(Paradox, FrozenMajorityValues) {
    // Exact rationals from a multinomial count.
    const std::pair<int, double> frozen[] = {
        {3, 1.0 / 18.0}, {5, 5.0 / 72.0}, {7, 875.0 / 11664.0}, {9, 65485.0 / 839808.0}};
    for (auto [n, value] : frozen) {
        const auto maj = families::majority(n);
        const auto rep = paradox_probability(maj, maj, maj);
        ASSERT_TRUE(rep.enumeration.has_value());
        EXPECT_NEAR(*rep.enumeration, value, 1e-12) << n;
        EXPECT_NEAR(rep.identity, value, 1e-12) << n;
    }
}

TEST(Paradox, GuilbaudLimit) {
    EXPECT_NEAR(guilbaud_constant(), 0.087739828045910905, 1e-12);
    EXPECT_NEAR(guilbaud_constant(), 0.25 - 3.0 * std::asin(1.0 / 3.0) / (2.0 * std::acos(-1.0)), 1e-15);
}

TEST(Paradox, RoutesAgreeOnRandomTriples) {
    Rng rng(82);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = corpus::uniform_int(rng, 1, 4);
        const auto f = corpus::random_function(rng, 2, n, true, false);
        const auto g = corpus::random_function(rng, 2, n, true, false);
        const auto h = corpus::random_function(rng, 2, n, true, false);
        const auto rep = paradox_probability(f, g, h);
        EXPECT_LE(rep.difference, 1e-12);
    }
    // Dictators never produce a cycle: one voter is always rational.
    const auto d = families::dictator(3, 0);
    EXPECT_NEAR(paradox_probability(d, d, d).value(), 0.0, 1e-15);
}

TEST(Paradox, EnumerationRespectsTheBudget) {
    const auto maj = families::majority(9);
    EXPECT_THROW(paradox_probability_enumeration(maj, maj, maj, 1e6), BudgetExceeded);
    const auto rep = paradox_probability(maj, maj, maj, 1e6);
    EXPECT_FALSE(rep.enumeration.has_value());
    EXPECT_NEAR(rep.value(), 65485.0 / 839808.0, 1e-12);
}

TEST(Arrow, MajorityVersusDictator) {
    const auto maj = families::majority(5);
    const auto rep = check_arrow(maj, maj, maj, 0.05, 1, 0.2);
    EXPECT_EQ(rep.direction, BoundDirection::lower);
    EXPECT_NEAR(rep.lhs, 5.0 / 72.0, 1e-12);
    const auto d = families::dictator(3, 0);
    const auto dict = check_arrow(d, d, d, 0.01, 1, 0.3);
    EXPECT_EQ(dict.verdict, Verdict::hypotheses_not_met);
    EXPECT_LT(dict.margin, 0.0);
}

TEST(Reports, JsonShape) {
    const auto maj = to_unit_interval(families::majority(5));
    const auto doc = report_to_json(check_theorem_two(maj, maj, 0.5, 0.05, 1, 0.2));
    EXPECT_EQ(doc["theorem"], "two");
    EXPECT_EQ(doc["verdict"], "holds");
    EXPECT_TRUE(doc.contains("hypotheses"));
}

}  // namespace
}  // namespace noisestab
