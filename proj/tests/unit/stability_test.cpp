#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"
#include "noisestab/distributions.hpp"
#include "noisestab/errors.hpp"
#include "noisestab/families.hpp"
#include "noisestab/stability.hpp"
#include "oracles.hpp"

namespace noisestab {
namespace {

TEST(NoisyInnerProduct, MatchesDirectDoubleSum) {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = corpus::uniform_int(rng, 1, 5);
        const auto f = corpus::random_function(rng, 2, n, false, false);
        const auto g = corpus::random_function(rng, 2, n, true, false);
        const double r = 2.0 * uniform01(rng) - 1.0;
        EXPECT_NEAR(noisy_inner_product(f, g, r), oracle::noisy_inner_product(f, g, r), 1e-12);
    }
}

TEST(NoisyInnerProduct, FrozenMajorityValues) {
    // Exact binomial sums at 40 digits.
    EXPECT_NEAR(noisy_inner_product(to_unit_interval(families::majority(11)),
                                    to_unit_interval(families::majority(11)), 0.5),
                0.33773981966078281, 1e-14);
    const auto maj3 = to_unit_interval(families::majority(3));
    EXPECT_NEAR(noisy_inner_product(maj3, maj3, -1.0 / 3.0), 5.0 / 27.0, 1e-15);
    EXPECT_DOUBLE_EQ(noisy_inner_product(maj3, maj3, 0.0), 0.25);
    EXPECT_DOUBLE_EQ(noisy_inner_product(maj3, maj3, 1.0), 0.5);
}

TEST(PairCorrelation, OperatorRouteMatchesEnumeration) {
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const int q = corpus::uniform_int(rng, 2, 3);
        const int n = corpus::uniform_int(rng, 1, 4);
        const auto p = corpus::random_distribution(rng, q, 2);
        const auto m = marginals(p);
        const auto f = corpus::random_function(rng, q, n, false, false).with_measure(m[0]);
        const auto g = corpus::random_function(rng, q, n, trial % 2 == 0, false).with_measure(m[1]);
        EXPECT_NEAR(pair_correlation(f, g, p), oracle::joint_expectation({f, g}, p), 1e-12);
    }
}

TEST(PairCorrelation, CorrelatedBitsAgreeWithFourier) {
    Rng rng(43);
    for (double r : {-0.7, 0.0, 0.4, 1.0}) {
        const auto f = corpus::random_function(rng, 2, 4, false, false);
        const auto g = corpus::random_function(rng, 2, 4, false, false);
        EXPECT_NEAR(pair_correlation(f, g, distributions::correlated_bits(r)), noisy_inner_product(f, g, r), 1e-12);
    }
}

TEST(MultiCorrelation, MatchesEnumerationOracle) {
    Rng rng(44);
    for (int trial = 0; trial < 10; ++trial) {
        const int q = corpus::uniform_int(rng, 2, 3);
        const int n = corpus::uniform_int(rng, 1, 3);
        const auto p = corpus::random_distribution(rng, q, 3, 0.0);
        const auto m = marginals(p);
        std::vector<TableFunction> fs;
        for (int j = 0; j < 3; ++j) {
            fs.push_back(corpus::random_function(rng, q, n, false, false).with_measure(m[static_cast<std::size_t>(j)]));
        }
        EXPECT_NEAR(multi_correlation(fs, p), oracle::joint_expectation(fs, p), 1e-12);
    }
}

TEST(MultiCorrelation, ChainIndicatorsGiveOneTwelfth) {
    const auto f = families::coordinate_indicator(3, 1, 0, 0);
    const std::vector<TableFunction> fs{f, f, f};
    EXPECT_NEAR(multi_correlation(fs, distributions::f3_chain()), 1.0 / 12.0, 1e-15);
    const std::vector<TableFunction> pair{f, f};
    const std::vector<double> pxy{1.0 / 6.0, 0.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.0, 0.0, 1.0 / 6.0, 1.0 / 6.0};
    EXPECT_NEAR(pair_correlation(f, f, StepDistribution(3, 2, pxy)), 1.0 / 6.0, 1e-15);
}

TEST(MultiCorrelation, ConstantsGiveTheProduct) {
    const auto p = distributions::f3_chain();
    const std::vector<TableFunction> fs{TableFunction::constant(3, 2, 0.2), TableFunction::constant(3, 2, 0.5),
                                        TableFunction::constant(3, 2, 0.9)};
    EXPECT_NEAR(multi_correlation(fs, p), 0.09, 1e-15);
}

TEST(MultiCorrelation, BudgetGuardNamesItself) {
    const auto f = TableFunction::constant(3, 6, 1.0);
    const std::vector<TableFunction> fs{f, f, f};
    try {
        multi_correlation(fs, distributions::f3_chain(), 1000.0);
        FAIL() << "expected BudgetExceeded";
    } catch (const BudgetExceeded& e) {
        EXPECT_FALSE(e.guard().empty());
        EXPECT_GT(e.required(), 1000.0);
    }
}

TEST(MonteCarlo, CoversTheExactValueAndIsDeterministic) {
    Rng rng(45);
    const auto p = distributions::f3_chain();
    const auto m = marginals(p);
    std::vector<TableFunction> fs;
    for (int j = 0; j < 3; ++j) fs.push_back(corpus::random_function(rng, 3, 3, false, false).with_measure(m[0]));
    const double exact = multi_correlation(fs, p);
    const auto a = multi_correlation_mc(fs, p, 100000, 77);
    const auto b = multi_correlation_mc(fs, p, 100000, 77);
    EXPECT_EQ(a.estimate, b.estimate);
    EXPECT_EQ(a.samples, 100000U);
    EXPECT_LE(std::abs(a.estimate - exact), a.half_width);
}

TEST(Smoothing, HoldsOnRandomPairs) {
    Rng rng(46);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = corpus::random_function(rng, 2, 4, false, false);
        const auto g = corpus::random_function(rng, 2, 4, false, false);
        const std::vector<TableFunction> fs{f, g};
        for (double eps : {0.1, 0.5}) {
            const auto rep = smoothing_check(fs, distributions::correlated_bits(0.5), eps);
            EXPECT_TRUE(rep.holds);
            EXPECT_NEAR(rep.gamma, 0.5 * eps / (2.0 * std::log(2.0 / eps)), 1e-15);
        }
    }
}

TEST(Smoothing, RefusesDegenerateDistributions) {
    const auto f = TableFunction::constant(2, 2, 0.5);
    const std::vector<TableFunction> fs{f, f};
    EXPECT_THROW(smoothing_check(fs, distributions::correlated_bits(1.0), 0.1), DegenerateDistribution);
    EXPECT_THROW(smoothing_check(fs, distributions::correlated_bits(0.5), 0.7), InvalidArgument);
}

}  // namespace
}  // namespace noisestab
