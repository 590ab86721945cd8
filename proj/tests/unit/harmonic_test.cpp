#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"
#include "noisestab/families.hpp"
#include "noisestab/harmonic.hpp"
#include "oracles.hpp"

namespace noisestab {
namespace {

TEST(Fourier, MatchesDirectWalshSums) {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = corpus::uniform_int(rng, 1, 6);
        const auto f = corpus::random_function(rng, 2, n, trial % 2 == 0, false);
        const auto fhat = fourier_transform(f);
        for (SubsetMask s = 0; s < fhat.coefficients.size(); ++s) {
            EXPECT_NEAR(fhat.coefficient(s), oracle::walsh_coefficient(f, s), 1e-12);
        }
        const auto back = inverse_fourier(fhat);
        for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(back[i], f[i], 1e-12);
    }
}

TEST(Fourier, Parseval) {
    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = corpus::random_function(rng, 2, 5, false, false);
        const auto w = fourier_transform(f).level_weights();
        double total = 0.0;
        for (double x : w) total += x;
        EXPECT_NEAR(total, f.variance() + f.mean() * f.mean(), 1e-12);
    }
}

TEST(Fourier, KnownSpectra) {
    const auto maj3 = fourier_transform(families::majority(3));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(maj3.coefficient(SubsetMask{1} << i), 0.5, 1e-15);
    EXPECT_NEAR(maj3.coefficient(0b111), -0.5, 1e-15);
    const auto par = fourier_transform(families::parity(4, 0b0110));
    EXPECT_DOUBLE_EQ(par.coefficient(0b0110), 1.0);
}

TEST(EfronStein, ComponentsMatchInclusionExclusion) {
    Rng rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        const int q = corpus::uniform_int(rng, 2, 3);
        const int n = corpus::uniform_int(rng, 1, 4);
        const auto f = corpus::random_function(rng, q, n, false, true);
        const auto es = efron_stein(f);
        for (SubsetMask s = 0; s < (SubsetMask{1} << n); ++s) {
            const auto lifted = es.lifted_component(s);
            for (const auto& x : oracle::all_points(q, n)) {
                EXPECT_NEAR(lifted.at(x), oracle::efron_stein_component(f, s, x), 1e-12);
            }
            EXPECT_NEAR(es.variance_of(s), oracle::component_variance(f, s), 1e-12);
        }
        const auto rebuilt = es.reconstruct();
        for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(rebuilt[i], f[i], 1e-12);
    }
}

TEST(EfronStein, FastVariancesAgreeWithComponents) {
    Rng rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = corpus::random_function(rng, 3, 4, trial % 2 == 1, true);
        const auto es = efron_stein(f);
        const auto vars = component_variances(f);
        double total = 0.0;
        for (SubsetMask s = 0; s < vars.size(); ++s) {
            EXPECT_NEAR(vars[s], es.variance_of(s), 1e-12);
            if (s != 0) total += vars[s];
        }
        EXPECT_NEAR(total, f.variance(), 1e-12);
    }
}

TEST(EfronStein, FourierAgreesOnTheUniformCube) {
    Rng rng(25);
    const auto f = corpus::random_function(rng, 2, 5, false, false);
    const auto fhat = fourier_transform(f);
    const auto vars = component_variances(f);
    for (SubsetMask s = 1; s < vars.size(); ++s) EXPECT_NEAR(vars[s], fhat.coefficient(s) * fhat.coefficient(s), 1e-13);
}

TEST(Influence, MatchesDefinition) {
    Rng rng(26);
    for (int trial = 0; trial < 15; ++trial) {
        const int q = corpus::uniform_int(rng, 2, 3);
        const int n = corpus::uniform_int(rng, 1, 4);
        const auto f = corpus::random_function(rng, q, n, false, true);
        const auto inf = influences(f);
        const auto vars = component_variances(f);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            EXPECT_NEAR(inf[static_cast<std::size_t>(i)], oracle::influence(f, i), 1e-12);
            EXPECT_NEAR(influence(f, i), inf[static_cast<std::size_t>(i)], 1e-15);
            // I_i = Σ_{S ∋ i} Var f_S.
            double via_components = 0.0;
            for (SubsetMask s = 0; s < vars.size(); ++s) {
                if (s >> i & 1U) via_components += vars[s];
            }
            EXPECT_NEAR(inf[static_cast<std::size_t>(i)], via_components, 1e-12);
            total += inf[static_cast<std::size_t>(i)];
        }
        EXPECT_NEAR(total_influence(f), total, 1e-12);
    }
}

TEST(Influence, NamedFamilies) {
    const auto inf = influences(families::dictator(4, 0));
    EXPECT_DOUBLE_EQ(inf[0], 1.0);
    for (int i = 1; i < 4; ++i) EXPECT_DOUBLE_EQ(inf[static_cast<std::size_t>(i)], 0.0);
    // The {0,1} version has a quarter of the ±1 influence.
    EXPECT_DOUBLE_EQ(influence(to_unit_interval(families::dictator(4, 0)), 0), 0.25);
    // Maj_3: coordinate i is pivotal on half of the inputs.
    EXPECT_DOUBLE_EQ(influence(families::majority(3), 2), 0.5);
    // Coordinate 0 of x_0 · Maj(x_1..x_4) always matters.
    EXPECT_DOUBLE_EQ(influence(families::dictator_times_majority(5), 0), 1.0);
}

TEST(NoiseOperator, ScalesFourierLevels) {
    Rng rng(27);
    const auto f = corpus::random_function(rng, 2, 4, false, false);
    const double eta = 0.6;
    const auto tf = fourier_transform(noise_operator(f, eta));
    const auto fhat = fourier_transform(f);
    for (SubsetMask s = 0; s < fhat.coefficients.size(); ++s) {
        EXPECT_NEAR(tf.coefficient(s), std::pow(eta, mask_size(s)) * fhat.coefficient(s), 1e-13);
    }
}

TEST(NoiseOperator, ScalesEfronSteinComponentsUnderAnyMeasure) {
    Rng rng(28);
    const auto f = corpus::random_function(rng, 3, 3, false, true);
    const double eta = 0.3;
    const auto before = component_variances(f);
    const auto after = component_variances(noise_operator(f, eta));
    for (SubsetMask s = 0; s < before.size(); ++s) {
        EXPECT_NEAR(after[s], std::pow(eta, 2 * mask_size(s)) * before[s], 1e-13);
    }
    EXPECT_NEAR(noise_operator(f, eta).mean(), f.mean(), 1e-14);
}

TEST(Restrictions, ConditionalExpectationAveragesTheRest) {
    Rng rng(29);
    const auto f = corpus::random_function(rng, 3, 3, false, true);
    const std::vector<int> coords{0, 2};
    const auto cond = conditional_expectation(f, coords);
    for (const auto& x : oracle::all_points(3, 3)) {
        const std::vector<int> z{x[0], x[2]};
        EXPECT_NEAR(cond.at(z), oracle::conditional_mean(f, mask_of(coords), x), 1e-12);
        const auto r = restrict(f, coords, z);
        EXPECT_EQ(r.arity(), 1);
        EXPECT_NEAR(r.at(std::vector<int>{x[1]}), f.at(x), 0.0);
    }
}

}  // namespace
}  // namespace noisestab
