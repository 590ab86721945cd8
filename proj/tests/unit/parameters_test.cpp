#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "noisestab/errors.hpp"
#include "noisestab/function_io.hpp"
#include "noisestab/parameters.hpp"

namespace noisestab {
namespace {

TEST(Parameters, TauByDirectSubstitution) {
    // 0.1^{ln 10 · ln 2 / 0.05}, mpmath.
    const auto t = tau_mist(0.1, 0.5);
    EXPECT_NEAR(t.value / 1.2005843996127643e-32, 1.0, 1e-12);
    EXPECT_NEAR(t.log10, -std::log(10.0) * std::log(2.0) / 0.05, 1e-12);
    // log(1/(1−ρ)) vanishes at ρ = 0, so the exponent is 0 and τ = 1.
    const auto flat = tau_mist(0.1, 0.0);
    EXPECT_TRUE(std::isfinite(flat.log10));
    EXPECT_DOUBLE_EQ(flat.value, 1.0);
    double prev = 1.0;
    for (double rho = 0.1; rho < 0.95; rho += 0.1) {
        const double l = tau_mist(0.1, rho).log10;
        EXPECT_LT(l, prev);
        prev = l;
    }
}

TEST(Parameters, GeneralTauFormulas) {
    const double eps = 0.2;
    const double rho = 0.3;
    const double pi = 1.0 / 3.0;
    const double base = (1.0 - rho * rho) * eps / std::pow(3.0, 2.5);
    const double expo = 3.0 * std::log(3.0 / eps) * std::log(1.0 / pi) / ((1.0 - rho) * eps);
    EXPECT_NEAR(tau_general(eps, rho, pi, 3).log10, expo * std::log10(base), 1e-10);
    const double expo2 = std::log(1.0 / pi) * std::log(1.0 / eps) * std::log(1.0 / (1.0 - rho)) / ((1.0 - rho) * eps);
    EXPECT_NEAR(tau_two_general(eps, rho, pi).log10, expo2 * std::log10(eps), 1e-10);
    EXPECT_THROW(tau_general(0.6, rho, pi, 3), InvalidArgument);
    EXPECT_THROW(tau_general(eps, 1.0, pi, 3), InvalidArgument);
    EXPECT_THROW(tau_general(eps, rho, 0.0, 3), InvalidArgument);
    EXPECT_THROW(tau_general(eps, rho, pi, 1), InvalidArgument);
}

TEST(Parameters, RMultiWithSuppliedTau) {
    const auto r = r_multi(0.1, 0.5, 2, 0.5, {}, 1e-3);
    EXPECT_DOUBLE_EQ(r.value, std::ceil(16.0 * std::log(20.0) / (1e-3 * 0.5 * 0.01)));
    EXPECT_DOUBLE_EQ(r.value, 9586344.0);
}

TEST(Parameters, AlphaHalvesPerUnitOfR) {
    // r = ⌈1/(ε²(1−ρ)τ)⌉ = 10 at ε = ½, ρ = 0, τ = 0.4.
    const auto ra = r_alpha_two(0.5, 0.0, {}, 0.4);
    EXPECT_DOUBLE_EQ(ra.r.value, 10.0);
    EXPECT_DOUBLE_EQ(ra.alpha.value, 0.5 * std::ldexp(1.0, -10));
    const auto tiny = r_alpha_two(0.1, 0.5);
    EXPECT_TRUE(tiny.alpha.underflow());
    EXPECT_NEAR(tiny.alpha.log10, std::log10(0.1) - tiny.r.value * std::log10(2.0), 1e-6 * std::abs(tiny.alpha.log10));
}

TEST(Parameters, ChainingIsExact) {
    ConstantsProfile profile;
    profile.C_r = 2.0;
    profile.C_alpha = 0.5;
    for (double eps : {0.05, 0.25, 0.5}) {
        for (double rho : {0.0, 0.4, 0.8}) {
            const auto mb = m_beta_three(eps, rho, 0.5, profile);
            const auto ra = r_alpha_two(eps, rho, profile);
            EXPECT_EQ(mb.base.r.log10, ra.r.log10);
            EXPECT_EQ(mb.base.alpha.log10, ra.alpha.log10);
            EXPECT_GT(mb.m.log10, 0.0);
            EXPECT_LT(mb.beta.log10, 0.0);
        }
    }
}

TEST(Parameters, DepthBounds) {
    EXPECT_DOUBLE_EQ(depth_bound_influence(2.0, 0.25, 0.1), 82.0);
    EXPECT_DOUBLE_EQ(depth_bound_correlated(2.0, 0.25, 0.1), 84.0);
    EXPECT_DOUBLE_EQ(depth_bound_fourier(2, 0.5, 0.1), 2.0 * (1.0 + 40.0));
    // 0.3/0.1 is 2.9999999999999996 in binary; the tolerant ceiling keeps it at 3.
    EXPECT_DOUBLE_EQ(ceil_tolerant(0.3 / 0.1), 3.0);
    EXPECT_DOUBLE_EQ(ceil_tolerant(3.01), 4.0);
    EXPECT_THROW(depth_bound_influence(1.0, 0.0, 0.1), InvalidArgument);
}

TEST(Constants, JsonRoundTripAndValidation) {
    ConstantsProfile p;
    p.C_m = 3.5;
    EXPECT_EQ(constants_from_json(constants_to_json(p)).C_m, 3.5);
    try {
        constants_from_json(nlohmann::json{{"C_tau", -1.0}});
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.path(), "$.C_tau");
    }
    EXPECT_THROW(constants_from_json(nlohmann::json{{"C_x", 1.0}}), ParseError);
    EXPECT_THROW(constants_from_json(nlohmann::json{{"C_r", "big"}}), ParseError);
    const auto file = std::filesystem::temp_directory_path() / "noisestab_constants_test.json";
    write_text_atomically(file, R"({"C_beta": 0.25})");
    EXPECT_EQ(load_constants(file).C_beta, 0.25);
    std::filesystem::remove(file);
}

}  // namespace
}  // namespace noisestab
