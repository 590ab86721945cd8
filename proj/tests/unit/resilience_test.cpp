#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "corpus.hpp"
#include "noisestab/errors.hpp"
#include "noisestab/families.hpp"
#include "noisestab/harmonic.hpp"
#include "noisestab/resilience.hpp"
#include "oracles.hpp"

namespace noisestab {
namespace {

double brute_defect(const TableFunction& f, int r) {
    const double mu = oracle::mean(f);
    double worst = 0.0;
    for (SubsetMask s = 0; s < (SubsetMask{1} << f.arity()); ++s) {
        if (mask_size(s) > r) continue;
        for (const auto& x : oracle::all_points(f.alphabet_size(), f.arity())) {
            if (oracle::point_weight(f, x) <= 0.0) continue;
            worst = std::max(worst, std::abs(oracle::conditional_mean(f, s, x) - mu));
        }
    }
    return worst;
}

TEST(Resilience, NamedExamples) {
    const auto c = resilience_defect(TableFunction::constant(3, 3, 0.4), 3, 0.1);
    EXPECT_NEAR(c.defect, 0.0, 1e-15);
    EXPECT_TRUE(c.passed);

    const auto d = resilience_defect(to_unit_interval(families::dictator(4, 0)), 1, 0.1);
    EXPECT_DOUBLE_EQ(d.defect, 0.5);
    EXPECT_FALSE(d.passed);
    EXPECT_EQ(d.witness.coords, std::vector<int>{0});

    // x_0 · Maj_5: every single conditional is balanced, pairs with x_0 are not.
    const auto dm = families::dictator_times_majority(6);
    EXPECT_NEAR(resilience_defect(dm, 1, 0.1).defect, 0.0, 1e-15);
    EXPECT_NEAR(resilience_defect(dm, 2, 0.1).defect, 0.375, 1e-15);
}

TEST(Resilience, WitnessIsFirstMaximiserAndRecomputes) {
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const int q = corpus::uniform_int(rng, 2, 3);
        const int n = corpus::uniform_int(rng, 1, 4);
        const int r = corpus::uniform_int(rng, 0, n);
        const auto f = corpus::random_function(rng, q, n, trial % 3 == 0, true);
        const auto cert = resilience_defect(f, r, 0.2);
        EXPECT_NEAR(cert.defect, brute_defect(f, r), 1e-12);
        EXPECT_EQ(cert.passed, cert.defect <= 0.2);
        if (!cert.witness.coords.empty()) {
            std::vector<int> x(static_cast<std::size_t>(n), 0);
            for (std::size_t k = 0; k < cert.witness.coords.size(); ++k) {
                x[static_cast<std::size_t>(cert.witness.coords[k])] = cert.witness.assignment[k];
            }
            const double cm = oracle::conditional_mean(f, mask_of(cert.witness.coords), x);
            EXPECT_NEAR(std::abs(cm - cert.mean), cert.defect, 1e-12);
        }
    }
}

TEST(Resilience, MonotoneInR) {
    Rng rng(62);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = corpus::random_function(rng, 3, 4, false, true);
        double prev = 0.0;
        for (int r = 0; r <= 4; ++r) {
            const double d = resilience_defect(f, r, 0.1).defect;
            EXPECT_GE(d, prev - 1e-15);
            prev = d;
        }
    }
}

TEST(Resilience, GuardsAndDomain) {
    const auto f = TableFunction::constant(2, 3, 0.0);
    EXPECT_THROW(resilience_defect(f, 4, 0.1), InvalidArgument);
    EXPECT_THROW(resilience_defect(f, -1, 0.1), InvalidArgument);
    EXPECT_DOUBLE_EQ(resilience_cost(2, 3, 1), 4.0 * 8.0);
    try {
        resilience_defect(TableFunction::constant(2, 26, 0.0), 3, 0.1);
        FAIL() << "expected the cost guard";
    } catch (const BudgetExceeded& e) {
        EXPECT_EQ(e.budget(), kResilienceCostGuard);
    }
}

TEST(FourierSupport, Examples) {
    EXPECT_TRUE(fourier_support(TableFunction::constant(2, 3, 1.0), 3, 0.5).empty());
    EXPECT_EQ(fourier_support(families::dictator(3, 0), 1, 0.5), std::vector<int>{0});
    const auto par = families::parity(3, 0b011);
    EXPECT_TRUE(fourier_support(par, 1, 0.5).empty());
    EXPECT_EQ(fourier_support(par, 2, 0.5), (std::vector<int>{0, 1}));
}

TEST(FourierSupport, MatchesCoefficientScanAndIsMonotone) {
    Rng rng(63);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = corpus::random_function(rng, 2, 5, trial % 2 == 0, false);
        const auto fh = fourier_transform(f);
        const int r = corpus::uniform_int(rng, 1, 3);
        const double alpha = 0.05 + 0.2 * uniform01(rng);
        std::vector<int> scan;
        for (SubsetMask s = 1; s < fh.coefficients.size(); ++s) {
            if (mask_size(s) <= r && fh.coefficient(s) * fh.coefficient(s) >= alpha * alpha) {
                for (int i : mask_members(s)) scan.push_back(i);
            }
        }
        std::sort(scan.begin(), scan.end());
        scan.erase(std::unique(scan.begin(), scan.end()), scan.end());
        const auto supp = fourier_support(f, r, alpha);
        EXPECT_EQ(supp, scan);
        const auto wider = fourier_support(f, r + 1, alpha);
        const auto looser = fourier_support(f, r, alpha * 0.7);
        EXPECT_TRUE(std::includes(wider.begin(), wider.end(), supp.begin(), supp.end()));
        EXPECT_TRUE(std::includes(looser.begin(), looser.end(), supp.begin(), supp.end()));
    }
}

TEST(CrossResilience, Examples) {
    EXPECT_TRUE(cross_resilient(families::dictator(3, 0), families::dictator(3, 1), 1, 0.5).cross_resilient);
    EXPECT_FALSE(cross_resilient(families::dictator(3, 0), families::dictator(3, 0), 1, 0.5).cross_resilient);
    const auto rep = cross_resilient(families::dictator_times_majority(6), families::dictator(6, 0), 2, 0.4);
    EXPECT_TRUE(rep.cross_resilient);
    EXPECT_TRUE(rep.support_f.empty());
}

TEST(CrossResilience, ResilientFunctionsAreCrossResilientWithAnything) {
    Rng rng(64);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 30; ++trial) {
        const auto f = corpus::random_function(rng, 3, 3, false, true);
        const auto cert = resilience_defect(f, 2, 1.0);
        // Strictly inside so the α² support threshold is not a tie.
        const double alpha = cert.defect * 1.01 + 1e-9;
        const auto g = corpus::random_function(rng, 3, 3, true, false).with_measure(f.measure());
        EXPECT_TRUE(cross_resilient(f, g, 2, alpha).cross_resilient);
        ++checked;
    }
    EXPECT_EQ(checked, 30);
}

/// Random function whose low-degree coefficients are rescaled to meet the premise.
TableFunction fourier_surgery(Rng& rng, int n, int r, double alpha) {
    auto fh = fourier_transform(corpus::random_function(rng, 2, n, false, false));
    double worst = 0.0;
    for (SubsetMask s = 1; s < fh.coefficients.size(); ++s) {
        if (mask_size(s) <= r) worst = std::max(worst, std::abs(fh.coefficients[s]));
    }
    const double scale = std::ldexp(alpha, -r) * (0.2 + 0.8 * uniform01(rng)) / worst;
    for (SubsetMask s = 1; s < fh.coefficients.size(); ++s) {
        if (mask_size(s) <= r) fh.coefficients[s] *= scale;
    }
    return inverse_fourier(fh);
}

TEST(SufficientCondition, ConstructedPremisesCertify) {
    Rng rng(65);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = corpus::uniform_int(rng, 2, 6);
        const int r = corpus::uniform_int(rng, 1, n);
        const auto f = fourier_surgery(rng, n, r, 0.2);
        const auto rep = sufficient_condition_check(f, r, 0.2);
        EXPECT_TRUE(rep.premise);
        EXPECT_TRUE(rep.certificate.passed);
        EXPECT_TRUE(rep.consistent);
    }
    const auto dict = sufficient_condition_check(families::dictator(3, 0), 1, 0.3);
    EXPECT_FALSE(dict.premise);
    EXPECT_TRUE(dict.consistent);
    EXPECT_TRUE(sufficient_condition_check(TableFunction::constant(2, 3, 0.5), 2, 0.1).premise);
    EXPECT_THROW(sufficient_condition_check(TableFunction::constant(3, 2, 0.5), 1, 0.1), UnsupportedDomain);
}

TEST(VarianceImplication, HoldsWheneverResilient) {
    Rng rng(66);
    for (int trial = 0; trial < 40; ++trial) {
        const int q = corpus::uniform_int(rng, 2, 3);
        const auto f = corpus::random_function(rng, q, 3, trial % 2 == 0, true);
        for (int r = 1; r <= 3; ++r) {
            const double alpha = resilience_defect(f, r, 1.0).defect;
            const auto rep = resilience_implies_variance(f, r, std::max(alpha, 1e-6));
            EXPECT_TRUE(rep.premise);
            EXPECT_TRUE(rep.conclusion) << rep.max_component_variance << " vs " << alpha * alpha;
        }
    }
    const auto unit = resilience_implies_variance(to_unit_interval(families::majority(5)), 2, 1.0);
    EXPECT_TRUE(unit.premise && unit.conclusion);
}

}  // namespace
}  // namespace noisestab
