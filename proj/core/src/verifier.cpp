#include "noisestab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisestab/errors.hpp"
#include "noisestab/harmonic.hpp"

namespace noisestab {
namespace {

void require_unit_interval(const TableFunction& f, const char* name) {
    for (double v : f.values()) {
        if (v < 0.0 || v > 1.0) throw InvalidArgument(std::string(name) + " must take values in [0,1]");
    }
}

void require_cube_pair(const TableFunction& f, const TableFunction& g) {
    if (!f.is_boolean_uniform() || !g.is_boolean_uniform()) {
        throw UnsupportedDomain("this check is stated on the uniform Boolean cube");
    }
    if (f.arity() != g.arity()) throw InvalidArgument("functions must have the same arity");
}

void require_rho(double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw UnsupportedDomain("the Gaussian upper bounds are stated for ρ ∈ [0,1]");
}

void require_epsilon(double epsilon) {
    if (!(epsilon >= 0.0)) throw InvalidArgument("ε must be non-negative");
}

bool all_in(const TableFunction& f, double a, double b) {
    return std::all_of(f.values().begin(), f.values().end(), [&](double v) { return v == a || v == b; });
}

/// ±1 view of a Boolean-valued table ({0,1} values map by 2v − 1).
TableFunction pm_view(const TableFunction& f) {
    if (f.alphabet_size() != 2) throw UnsupportedDomain("voting functions must be Boolean");
    if (f.range() == RangeTag::pm_one || (f.range() != RangeTag::unit_interval && all_in(f, -1.0, 1.0))) {
        if (!all_in(f, -1.0, 1.0)) throw InvalidArgument("voting function must be ±1-valued");
        return f.with_range(RangeTag::pm_one);
    }
    if (!all_in(f, 0.0, 1.0)) throw InvalidArgument("voting function must be {0,1}- or ±1-valued");
    return to_pm_one(f);
}

Verdict upper_verdict(bool met, double margin) {
    if (!met) return Verdict::hypotheses_not_met;
    return margin >= -kMarginSlack ? Verdict::holds : Verdict::violated;
}

StabilityReport two_function_report(const std::string& id, const TableFunction& f, const TableFunction& g, double rho,
                                    double epsilon) {
    require_cube_pair(f, g);
    require_unit_interval(f, "f");
    require_unit_interval(g, "g");
    require_rho(rho);
    require_epsilon(epsilon);
    StabilityReport rep;
    rep.theorem_id = id;
    rep.lhs = noisy_inner_product(f, g, rho);
    rep.hypotheses.parameters = {{"rho", rho}, {"epsilon", epsilon}, {"mu_f", f.mean()}, {"mu_g", g.mean()}};
    return rep;
}

}  // namespace

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::holds: return "holds";
        case Verdict::violated: return "violated";
        case Verdict::hypotheses_not_met: return "hypotheses_not_met";
        case Verdict::inconclusive_estimate: return "inconclusive_estimate";
    }
    return "unknown";
}

std::string_view to_string(BoundDirection direction) {
    return direction == BoundDirection::upper ? "upper" : "lower";
}

StabilityReport check_theorem_two(const TableFunction& f, const TableFunction& g, double rho, double epsilon, int r,
                                  double alpha) {
    auto rep = two_function_report("two", f, g, rho, epsilon);
    rep.hypotheses.parameters["r"] = r;
    rep.hypotheses.parameters["alpha"] = alpha;
    rep.rhs = halfspace_stability({f.mean(), g.mean(), rho}) + epsilon;
    rep.margin = rep.rhs - rep.lhs;
    const auto cert = resilience_defect(f, std::min(r, f.arity()), alpha);
    if (r > f.arity()) rep.hypotheses.notes.push_back("r exceeds the arity; certified at r = n");
    rep.hypotheses.resilience.push_back(cert);
    rep.hypotheses.met = cert.passed;
    rep.verdict = upper_verdict(rep.hypotheses.met, rep.margin);
    return rep;
}

StabilityReport check_theorem_multi(const std::vector<TableFunction>& functions, const StepDistribution& p,
                                    double epsilon, int r, const MultiCheckOptions& options) {
    require_epsilon(epsilon);
    if (functions.size() != static_cast<std::size_t>(p.steps())) throw InvalidArgument("need one function per step");
    const auto m = marginals(p);
    const int ell = p.steps();
    std::vector<TableFunction> fs;
    for (std::size_t j = 0; j < functions.size(); ++j) {
        require_unit_interval(functions[j], "every f^(j)");
        fs.push_back(functions[j].with_measure(m[j]));
    }
    StabilityReport rep;
    rep.theorem_id = "multi";
    const double alpha = epsilon / (4.0 * ell);
    auto& hyp = rep.hypotheses;
    hyp.parameters = {{"epsilon", epsilon}, {"r", r}, {"alpha", alpha}, {"steps", ell},
                      {"samples", static_cast<double>(options.samples)}, {"seed", static_cast<double>(options.seed)}};
    hyp.met = true;
    const auto corr = rho_max(p);
    hyp.parameters["rho"] = corr.rho;
    if (corr.degenerate) {
        hyp.met = false;
        hyp.notes.push_back("ρ(P) = 1");
    }
    std::vector<double> mu;
    for (const auto& f : fs) {
        const int order = std::min(r, f.arity());
        auto cert = resilience_defect(f, order, alpha);
        hyp.met = hyp.met && cert.passed;
        hyp.resilience.push_back(std::move(cert));
        mu.push_back(f.mean());
    }
    if (r > fs.front().arity()) hyp.notes.push_back("r exceeds the arity; certified at r = n");
    rep.lhs = multi_correlation(fs, p, options.budget);
    rep.gamma = gamma_estimate(mu, gaussian_counterpart(p), options.samples, options.seed);
    rep.rhs = rep.gamma->value + epsilon;
    rep.margin = rep.rhs - rep.lhs;
    const bool exact = rep.gamma->strategy == "independent-exact" || rep.gamma->strategy == "zero-mean";
    if (!hyp.met) {
        rep.verdict = Verdict::hypotheses_not_met;
    } else if (exact) {
        rep.verdict = upper_verdict(true, rep.margin);
    } else {
        rep.verdict = rep.margin - rep.gamma->half_width >= -kMarginSlack ? Verdict::holds : Verdict::inconclusive_estimate;
    }
    return rep;
}

std::optional<FourierWitness> find_fourier_witness(const TableFunction& f, const TableFunction& g, int m, double beta) {
    require_cube_pair(f, g);
    const auto fh = fourier_transform(f);
    const auto gh = fourier_transform(g);
    auto heavy = [&](const FourierExpansion& e) {
        std::vector<SubsetMask> out;
        for (SubsetMask s = 1; s < e.coefficients.size(); ++s) {
            if (mask_size(s) <= m && std::abs(e.coefficients[s]) > beta) out.push_back(s);
        }
        return out;
    };
    std::optional<FourierWitness> best;
    double best_value = -1.0;
    for (SubsetMask s : heavy(fh)) {
        for (SubsetMask t : heavy(gh)) {
            if ((s & t) == 0) continue;
            const double v = std::min(std::abs(fh.coefficients[s]), std::abs(gh.coefficients[t]));
            if (v > best_value) {
                best_value = v;
                best = FourierWitness{mask_members(s), mask_members(t), fh.coefficients[s], gh.coefficients[t]};
            }
        }
    }
    return best;
}

StabilityReport check_theorem_three(const TableFunction& f, const TableFunction& g, double rho, double epsilon,
                                    int m, double beta) {
    auto rep = two_function_report("three", f, g, rho, epsilon);
    rep.hypotheses.parameters["m"] = m;
    rep.hypotheses.parameters["beta"] = beta;
    rep.rhs = halfspace_stability({f.mean(), g.mean(), rho}) + epsilon;
    rep.margin = rep.rhs - rep.lhs;
    rep.hypotheses.cross.push_back(cross_resilient(f, g, m, beta));
    rep.hypotheses.met = rep.hypotheses.cross.back().cross_resilient;
    rep.verdict = upper_verdict(rep.hypotheses.met, rep.margin);
    if (rep.margin < 0.0) rep.witness = find_fourier_witness(f, g, m, beta);
    return rep;
}

StabilityReport check_theorem_three_lower(const TableFunction& f, const TableFunction& g, double rho, double epsilon,
                                          int m, double beta) {
    auto rep = two_function_report("three-lower", f, g, rho, epsilon);
    rep.direction = BoundDirection::lower;
    rep.hypotheses.parameters["m"] = m;
    rep.hypotheses.parameters["beta"] = beta;
    const double mu_f = f.mean();
    rep.rhs = mu_f - halfspace_stability({mu_f, 1.0 - g.mean(), rho}) - epsilon;
    rep.margin = rep.lhs - rep.rhs;
    rep.hypotheses.cross.push_back(cross_resilient(f, g, m, beta));
    rep.hypotheses.met = rep.hypotheses.cross.back().cross_resilient;
    rep.verdict = upper_verdict(rep.hypotheses.met, rep.margin);
    if (rep.margin < 0.0) rep.witness = find_fourier_witness(f, g, m, beta);
    return rep;
}

double paradox_probability_enumeration(const TableFunction& f, const TableFunction& g, const TableFunction& h,
                                       double budget) {
    const auto a = pm_view(f);
    const auto b = pm_view(g);
    const auto c = pm_view(h);
    if (a.arity() != b.arity() || a.arity() != c.arity()) throw InvalidArgument("voting functions need equal arity");
    double total = 0.0;
    for_each_joint_assignment(distributions::arrow3(), a.arity(), budget,
                              [&](std::span<const std::size_t> idx, double w) {
                                  const double x = a[idx[0]];
                                  if (x == b[idx[1]] && x == c[idx[2]]) total += w;
                              });
    return total;
}

double paradox_probability_identity(const TableFunction& f, const TableFunction& g, const TableFunction& h) {
    const auto a = to_unit_interval(pm_view(f));
    const auto b = to_unit_interval(pm_view(g));
    const auto c = to_unit_interval(pm_view(h));
    if (a.arity() != b.arity() || a.arity() != c.arity()) throw InvalidArgument("voting functions need equal arity");
    // 1[a=b=c] = 1 − a − b − c + ab + bc + ca on {0,1}; each pair of voter
    // coordinates is −1/3-correlated, and ⟨u,v⟩_{−1/3} = ⟨u, v∘neg⟩_{1/3}.
    const double third = 1.0 / 3.0;
    const double pairs = noisy_inner_product(a, negate_inputs(b), third) +
                         noisy_inner_product(b, negate_inputs(c), third) +
                         noisy_inner_product(c, negate_inputs(a), third);
    return 1.0 - a.mean() - b.mean() - c.mean() + pairs;
}

ParadoxReport paradox_probability(const TableFunction& f, const TableFunction& g, const TableFunction& h,
                                  double budget) {
    ParadoxReport rep;
    rep.identity = paradox_probability_identity(f, g, h);
    const double leaves = std::pow(6.0, f.arity());
    if (leaves <= budget) {
        rep.enumeration = paradox_probability_enumeration(f, g, h, budget);
        rep.difference = std::abs(*rep.enumeration - rep.identity);
    }
    return rep;
}

double guilbaud_constant() {
    const double third = 1.0 / 3.0;
    // ⟨χ_½, 1 − χ_½⟩_ρ = ½ − ⟨χ_½, χ_½⟩_ρ.
    return 3.0 * (0.5 - halfspace_stability({0.5, 0.5, third})) - 0.5;
}

StabilityReport check_arrow(const TableFunction& f, const TableFunction& g, const TableFunction& h, double epsilon,
                            int m, double beta, double budget) {
    require_epsilon(epsilon);
    const TableFunction fs[] = {pm_view(f), pm_view(g), pm_view(h)};
    StabilityReport rep;
    rep.theorem_id = "arrow";
    rep.direction = BoundDirection::lower;
    auto& hyp = rep.hypotheses;
    hyp.parameters = {{"epsilon", epsilon}, {"m", m}, {"beta", beta}};
    hyp.met = true;
    const char* names[] = {"f", "g", "h"};
    for (int k = 0; k < 3; ++k) {
        const double mean = fs[k].mean();
        hyp.parameters[std::string("mean_") + names[k]] = mean;
        if (std::abs(mean) > 1e-12) {
            hyp.met = false;
            hyp.notes.push_back(std::string(names[k]) + " is not balanced");
        }
    }
    for (int k = 0; k < 3; ++k) {
        hyp.cross.push_back(cross_resilient(fs[k], fs[(k + 1) % 3], m, beta));
        hyp.met = hyp.met && hyp.cross.back().cross_resilient;
    }
    const auto paradox = paradox_probability(fs[0], fs[1], fs[2], budget);
    rep.lhs = paradox.value();
    hyp.parameters["paradox_identity"] = paradox.identity;
    if (paradox.enumeration) hyp.parameters["paradox_enumeration"] = *paradox.enumeration;
    rep.rhs = guilbaud_constant() - epsilon;
    rep.margin = rep.lhs - rep.rhs;
    rep.verdict = upper_verdict(hyp.met, rep.margin);
    return rep;
}

nlohmann::json certificate_to_json(const ResilienceCertificate& cert) {
    return {{"r", cert.r},
            {"alpha", cert.alpha},
            {"defect", cert.defect},
            {"mean", cert.mean},
            {"passed", cert.passed},
            {"witness",
             {{"coords", cert.witness.coords},
              {"assignment", cert.witness.assignment},
              {"conditional_mean", cert.witness.conditional_mean},
              {"deviation", cert.witness.deviation}}}};
}

nlohmann::json cross_to_json(const CrossResilienceReport& rep) {
    return {{"r", rep.r},
            {"alpha", rep.alpha},
            {"support_f", rep.support_f},
            {"support_g", rep.support_g},
            {"intersection", rep.intersection},
            {"cross_resilient", rep.cross_resilient}};
}

nlohmann::json report_to_json(const StabilityReport& report) {
    nlohmann::json doc;
    doc["theorem"] = report.theorem_id;
    doc["direction"] = std::string(to_string(report.direction));
    doc["lhs"] = report.lhs;
    doc["rhs"] = report.rhs;
    doc["margin"] = report.margin;
    doc["verdict"] = std::string(to_string(report.verdict));
    nlohmann::json hyp;
    hyp["met"] = report.hypotheses.met;
    hyp["parameters"] = report.hypotheses.parameters;
    hyp["notes"] = report.hypotheses.notes;
    hyp["resilience"] = nlohmann::json::array();
    for (const auto& c : report.hypotheses.resilience) hyp["resilience"].push_back(certificate_to_json(c));
    hyp["cross_resilience"] = nlohmann::json::array();
    for (const auto& c : report.hypotheses.cross) hyp["cross_resilience"].push_back(cross_to_json(c));
    doc["hypotheses"] = std::move(hyp);
    if (report.gamma) {
        const auto& g = *report.gamma;
        std::vector<std::vector<double>> corr;
        for (Eigen::Index i = 0; i < g.induced_correlation.rows(); ++i) {
            std::vector<double> row;
            for (Eigen::Index j = 0; j < g.induced_correlation.cols(); ++j) row.push_back(g.induced_correlation(i, j));
            corr.push_back(std::move(row));
        }
        doc["gamma"] = {{"label", GammaEstimate::kLabel}, {"value", g.value},      {"strategy", g.strategy},
                        {"samples", g.samples},           {"half_width", g.half_width}, {"mu", g.mu},
                        {"induced_correlation", corr}};
    }
    if (report.witness) {
        const auto& w = *report.witness;
        doc["witness"] = {{"f_set", w.f_set},
                          {"g_set", w.g_set},
                          {"f_coefficient", w.f_coefficient},
                          {"g_coefficient", w.g_coefficient}};
    }
    return doc;
}

}  // namespace noisestab
