#pragma once

#include <cmath>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

namespace noisestab {

/// The unspecified absolute constants of the parameter formulas.
struct ConstantsProfile {
    double C_tau = 1.0;
    double C_r = 1.0;
    double C_alpha = 1.0;
    double C_m = 1.0;
    double C_beta = 1.0;

    void validate() const;
};

nlohmann::json constants_to_json(const ConstantsProfile& profile);
/// Missing keys keep their default. Throws ParseError with a field path.
ConstantsProfile constants_from_json(const nlohmann::json& doc, const std::string& path = "$");
ConstantsProfile load_constants(const std::filesystem::path& file);

/// A positive quantity carried with its base-10 logarithm so values far
/// outside double range stay meaningful. `value` is +∞ or 0 when it overflows
/// or underflows.
struct Quantity {
    double value = 0.0;
    double log10 = 0.0;

    static Quantity from_log10(double l);
    static Quantity exact(double v);
    bool overflow() const { return std::isinf(value); }
    bool underflow() const { return value == 0.0 && std::isfinite(log10); }
};

nlohmann::json quantity_to_json(const Quantity& q);

/// ⌈x⌉ with 1e-9 relative slack, so 80.00000000001 → 80.
double ceil_tolerant(double x);

/// Integer-valued ceiling of a quantity (exact while it fits in a double).
Quantity ceil_quantity(const Quantity& q);

/// τ = ε^{C_τ ln(1/ε) ln(1/(1−ρ)) / ((1−ρ)ε)}; ε ∈ (0,1/2], ρ ∈ [0,1).
Quantity tau_mist(double epsilon, double rho, const ConstantsProfile& profile = {});

/// τ = ((1−ρ²)ε/ℓ^{5/2})^{C_τ ℓ ln(ℓ/ε) ln(1/π_*) / ((1−ρ)ε)}.
Quantity tau_general(double epsilon, double rho, double pi_star, int ell, const ConstantsProfile& profile = {});

/// τ = ε^{C_τ ln(1/μ) ln(1/ε) ln(1/(1−ρ)) / ((1−ρ)ε)}, μ the smallest atom.
Quantity tau_two_general(double epsilon, double rho, double mu, const ConstantsProfile& profile = {});

struct RAlpha {
    Quantity tau;
    Quantity r;
    Quantity alpha;
};

/// r = ⌈C_r/(ε²(1−ρ)τ)⌉, α = C_α ε 2^{−r}, τ from tau_mist (or `tau`).
RAlpha r_alpha_two(double epsilon, double rho, const ConstantsProfile& profile = {},
                   std::optional<double> tau = std::nullopt);

/// r = ⌈C_r · 4ℓ² ln(ℓ/ε) / (τ(1−ρ)ε²)⌉, τ from tau_general unless supplied.
Quantity r_multi(double epsilon, double rho, int ell, double pi_star, const ConstantsProfile& profile = {},
                 std::optional<double> tau = std::nullopt);

struct MBeta {
    RAlpha base;
    Quantity m;
    Quantity beta;
};

/// m = ⌈C_m r/(εα²)⌉ and β = C_β π_*^m 2^{−m} ε, with (r, α) from r_alpha_two.
MBeta m_beta_three(double epsilon, double rho, double pi_star, const ConstantsProfile& profile = {});

/// 2 + ⌈I/(τε)⌉.
double depth_bound_influence(double total_influence, double tau, double epsilon);
/// 4 + ⌈I(F)/(τε)⌉.
double depth_bound_correlated(double total_influence, double tau, double epsilon);
/// r(1 + ⌈1/(α²ε)⌉).
double depth_bound_fourier(int r, double alpha, double epsilon);

}  // namespace noisestab
