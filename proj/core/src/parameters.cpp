#include "noisestab/parameters.hpp"

#include <algorithm>
#include <limits>

#include "noisestab/errors.hpp"
#include "noisestab/function_io.hpp"

namespace noisestab {
namespace {

void validate_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw InvalidArgument("ε must lie in (0, 1/2]");
}

void validate_rho_below_one(double rho, double lo) {
    if (!(rho >= lo && rho < 1.0)) {
        throw InvalidArgument(lo == 0.0 ? "ρ must lie in [0, 1)" : "ρ must lie in [-1, 1)");
    }
}

/// Prefers the directly computed double when it is a usable positive number.
Quantity pick(double direct, double log10) {
    if (std::isfinite(direct) && direct > 0.0) return Quantity{direct, std::log10(direct)};
    return Quantity::from_log10(log10);
}

}  // namespace

void ConstantsProfile::validate() const {
    for (double c : {C_tau, C_r, C_alpha, C_m, C_beta}) {
        if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("every constant in the profile must be positive");
    }
}

nlohmann::json constants_to_json(const ConstantsProfile& profile) {
    return {{"C_tau", profile.C_tau}, {"C_r", profile.C_r}, {"C_alpha", profile.C_alpha},
            {"C_m", profile.C_m},     {"C_beta", profile.C_beta}};
}

ConstantsProfile constants_from_json(const nlohmann::json& doc, const std::string& path) {
    if (!doc.is_object()) throw ParseError(path, "expected an object");
    ConstantsProfile out;
    const std::pair<const char*, double*> slots[] = {{"C_tau", &out.C_tau}, {"C_r", &out.C_r}, {"C_alpha", &out.C_alpha},
                                                     {"C_m", &out.C_m},     {"C_beta", &out.C_beta}};
    for (const auto& [key, slot] : slots) {
        if (!doc.contains(key)) continue;
        const auto& v = doc.at(key);
        if (!v.is_number()) throw ParseError(path + "." + key, "expected a number");
        *slot = v.get<double>();
        if (!(*slot > 0.0)) throw ParseError(path + "." + key, "constants must be positive");
    }
    for (const auto& [key, value] : doc.items()) {
        const bool known = std::any_of(std::begin(slots), std::end(slots), [&](const auto& s) { return key == s.first; });
        if (!known) throw ParseError(path + "." + key, "unknown constant");
    }
    return out;
}

ConstantsProfile load_constants(const std::filesystem::path& file) {
    return constants_from_json(read_json_file(file), file.string() + ": $");
}

Quantity Quantity::from_log10(double l) { return Quantity{std::pow(10.0, l), l}; }

Quantity Quantity::exact(double v) { return Quantity{v, std::log10(v)}; }

nlohmann::json quantity_to_json(const Quantity& q) {
    nlohmann::json doc;
    if (std::isfinite(q.value)) {
        doc["value"] = q.value;
    } else {
        doc["value"] = "inf";
    }
    if (std::isfinite(q.log10)) {
        doc["log10"] = q.log10;
    } else {
        doc["log10"] = q.log10 > 0 ? "inf" : "-inf";
    }
    doc["overflow"] = q.overflow();
    doc["underflow"] = q.underflow();
    return doc;
}

double ceil_tolerant(double x) { return std::ceil(x - 1e-9 * std::abs(x)); }

Quantity ceil_quantity(const Quantity& q) {
    if (!std::isfinite(q.value) || q.log10 > 15.0) return q;
    const double c = ceil_tolerant(q.value);
    return Quantity{c, std::log10(c)};
}

Quantity tau_mist(double epsilon, double rho, const ConstantsProfile& profile) {
    validate_epsilon(epsilon);
    validate_rho_below_one(rho, 0.0);
    profile.validate();
    const double exponent =
        profile.C_tau * std::log(1.0 / epsilon) * -std::log1p(-rho) / ((1.0 - rho) * epsilon);
    return Quantity::from_log10(exponent * std::log10(epsilon));
}

Quantity tau_general(double epsilon, double rho, double pi_star, int ell, const ConstantsProfile& profile) {
    validate_epsilon(epsilon);
    validate_rho_below_one(rho, -1.0);
    if (!(pi_star > 0.0 && pi_star <= 1.0)) throw InvalidArgument("π_* must lie in (0, 1]");
    if (ell < 2) throw InvalidArgument("ℓ must be at least 2");
    profile.validate();
    const double base = (1.0 - rho * rho) * epsilon / std::pow(ell, 2.5);
    if (!(base > 0.0)) throw InvalidArgument("degenerate base: ρ = -1");
    const double exponent =
        profile.C_tau * ell * std::log(ell / epsilon) * std::log(1.0 / pi_star) / ((1.0 - rho) * epsilon);
    return Quantity::from_log10(exponent * std::log10(base));
}

Quantity tau_two_general(double epsilon, double rho, double mu, const ConstantsProfile& profile) {
    validate_epsilon(epsilon);
    validate_rho_below_one(rho, 0.0);
    if (!(mu > 0.0 && mu <= 1.0)) throw InvalidArgument("the smallest atom μ must lie in (0, 1]");
    profile.validate();
    const double exponent = profile.C_tau * std::log(1.0 / mu) * std::log(1.0 / epsilon) * -std::log1p(-rho) /
                            ((1.0 - rho) * epsilon);
    return Quantity::from_log10(exponent * std::log10(epsilon));
}

RAlpha r_alpha_two(double epsilon, double rho, const ConstantsProfile& profile, std::optional<double> tau) {
    RAlpha out;
    if (tau) {
        validate_epsilon(epsilon);
        validate_rho_below_one(rho, 0.0);
        profile.validate();
        if (!(*tau > 0.0 && *tau <= 1.0)) throw InvalidArgument("τ must lie in (0, 1]");
        out.tau = Quantity::exact(*tau);
    } else {
        out.tau = tau_mist(epsilon, rho, profile);
    }
    const double log_r = std::log10(profile.C_r) - 2.0 * std::log10(epsilon) - std::log10(1.0 - rho) - out.tau.log10;
    out.r = ceil_quantity(pick(profile.C_r / (epsilon * epsilon * (1.0 - rho) * out.tau.value), log_r));
    const double log_alpha = std::log10(profile.C_alpha) + std::log10(epsilon) - out.r.value * std::log10(2.0);
    out.alpha = pick(profile.C_alpha * epsilon * std::exp2(-out.r.value), log_alpha);
    return out;
}

Quantity r_multi(double epsilon, double rho, int ell, double pi_star, const ConstantsProfile& profile,
                 std::optional<double> tau) {
    Quantity t;
    if (tau) {
        validate_epsilon(epsilon);
        validate_rho_below_one(rho, -1.0);
        if (ell < 2) throw InvalidArgument("ℓ must be at least 2");
        profile.validate();
        if (!(*tau > 0.0 && *tau <= 1.0)) throw InvalidArgument("τ must lie in (0, 1]");
        t = Quantity::exact(*tau);
    } else {
        t = tau_general(epsilon, rho, pi_star, ell, profile);
    }
    const double numerator = profile.C_r * 4.0 * ell * ell * std::log(ell / epsilon);
    const double log_r = std::log10(numerator) - t.log10 - std::log10(1.0 - rho) - 2.0 * std::log10(epsilon);
    return ceil_quantity(pick(numerator / (t.value * (1.0 - rho) * epsilon * epsilon), log_r));
}

MBeta m_beta_three(double epsilon, double rho, double pi_star, const ConstantsProfile& profile) {
    if (!(pi_star > 0.0 && pi_star <= 1.0)) throw InvalidArgument("π_* must lie in (0, 1]");
    MBeta out;
    out.base = r_alpha_two(epsilon, rho, profile);
    const auto& r = out.base.r;
    const auto& alpha = out.base.alpha;
    const double log_m = std::log10(profile.C_m) + r.log10 - std::log10(epsilon) - 2.0 * alpha.log10;
    out.m = ceil_quantity(pick(profile.C_m * r.value / (epsilon * alpha.value * alpha.value), log_m));
    const double per_level = std::log10(pi_star) - std::log10(2.0);
    const double log_beta = std::log10(profile.C_beta) + out.m.value * per_level + std::log10(epsilon);
    out.beta = pick(profile.C_beta * std::pow(pi_star / 2.0, out.m.value) * epsilon, log_beta);
    return out;
}

double depth_bound_influence(double total_influence, double tau, double epsilon) {
    if (!(tau > 0.0 && epsilon > 0.0)) throw InvalidArgument("depth bounds need τ > 0 and ε > 0");
    return 2.0 + ceil_tolerant(total_influence / (tau * epsilon));
}

double depth_bound_correlated(double total_influence, double tau, double epsilon) {
    if (!(tau > 0.0 && epsilon > 0.0)) throw InvalidArgument("depth bounds need τ > 0 and ε > 0");
    return 4.0 + ceil_tolerant(total_influence / (tau * epsilon));
}

double depth_bound_fourier(int r, double alpha, double epsilon) {
    if (r < 1 || !(alpha > 0.0 && epsilon > 0.0)) throw InvalidArgument("depth bounds need r ≥ 1, α > 0, ε > 0");
    return r * (1.0 + ceil_tolerant(1.0 / (alpha * alpha * epsilon)));
}

}  // namespace noisestab
