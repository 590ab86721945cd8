#include "commands.hpp"

#include <cmath>
#include <ostream>

#include "noisestab/distributions.hpp"
#include "noisestab/errors.hpp"
#include "noisestab/families.hpp"
#include "noisestab/function_io.hpp"
#include "noisestab/gaussian.hpp"
#include "noisestab/harmonic.hpp"
#include "noisestab/parameters.hpp"
#include "noisestab/random.hpp"
#include "noisestab/resilience.hpp"
#include "noisestab/stability.hpp"
#include "noisestab/trees.hpp"
#include "noisestab/verifier.hpp"

namespace noisestab::cli {
namespace {

// Named RNG sub-streams derived from --seed.
constexpr std::uint64_t kStreamF = 101;
constexpr std::uint64_t kStreamG = 102;
constexpr std::uint64_t kStreamH = 103;
constexpr std::uint64_t kStreamMonteCarlo = 201;
constexpr std::uint64_t kStreamGamma = 301;

constexpr double kRouteTol = 1e-10;
constexpr double kQuadratureTol = 1e-9;

int finish(const Checks& checks, std::ostream& out) {
    checks.print(out);
    return checks.all_passed() ? 0 : 1;
}

bool in_unit_interval(const TableFunction& f) {
    for (double v : f.values()) {
        if (v < 0.0 || v > 1.0) return false;
    }
    return true;
}

std::vector<double> flip_probabilities(const TableFunction& f) {
    std::vector<double> out(static_cast<std::size_t>(f.arity()), 0.0);
    std::size_t stride = 1;
    for (int i = 0; i < f.arity(); ++i, stride *= 2) {
        for (std::size_t idx = 0; idx < f.size(); ++idx) {
            if (f[idx] != f[idx ^ stride]) out[static_cast<std::size_t>(i)] += f.weight(idx);
        }
    }
    return out;
}

bool boolean_valued(const TableFunction& f) {
    if (f.alphabet_size() != 2 || f.size() == 0) return false;
    const double a = f[0];
    double b = a;
    for (double v : f.values()) {
        if (v != a) {
            if (b != a && v != b) return false;
            b = v;
        }
    }
    return true;
}

/// Recomputes the certificate's witness deviation from scratch.
bool witness_recomputes(const TableFunction& f, const ResilienceCertificate& cert) {
    if (cert.witness.coords.empty()) return cert.defect == 0.0;
    const auto cond = conditional_expectation(f, cert.witness.coords);
    const double value = cond[encode_index(cert.witness.assignment, f.alphabet_size())];
    return std::abs(std::abs(value - cert.mean) - cert.defect) <= 1e-12;
}

std::vector<double> level_variances(const TableFunction& f) {
    const auto vars = component_variances(f);
    std::vector<double> levels(static_cast<std::size_t>(f.arity()) + 1, 0.0);
    for (SubsetMask s = 0; s < vars.size(); ++s) levels[static_cast<std::size_t>(mask_size(s))] += vars[s];
    return levels;
}

std::string verdict_text(const StabilityReport& r) { return std::string(to_string(r.verdict)); }

}  // namespace

int run_analyze(const Common& c, const AnalyzeOptions& o, std::ostream& out) {
    const auto f = load_function(o.f, o.shape, derive_seed(c.seed, kStreamF));
    Checks checks;
    nlohmann::json doc;
    doc["meta"] = meta_block(c, "analyze", {{"parseval", kQuadratureTol}, {"witness", 1e-12}});
    doc["function"] = {{"q", f.alphabet_size()}, {"n", f.arity()},       {"range", std::string(to_string(f.range()))},
                       {"mean", f.mean()},       {"variance", f.variance()}, {"measure", f.measure()}};
    const auto inf = influences(f);
    doc["influences"] = inf;
    doc["total_influence"] = total_influence(f);
    std::vector<double> flips;
    if (boolean_valued(f)) {
        flips = flip_probabilities(f);
        doc["flip_probabilities"] = flips;
    }
    const auto levels = level_variances(f);
    doc["level_variances"] = levels;
    double spread = 0.0;
    for (std::size_t k = 1; k < levels.size(); ++k) spread += levels[k];
    checks.add("efron-stein variances sum to Var f", std::abs(spread - f.variance()) <= kQuadratureTol);
    if (f.is_boolean_uniform()) {
        const auto weights = fourier_transform(f).level_weights();
        doc["fourier_level_weights"] = weights;
        double worst = 0.0;
        for (std::size_t k = 1; k < weights.size(); ++k) worst = std::max(worst, std::abs(weights[k] - levels[k]));
        checks.add("fourier level weights match component variances", worst <= kQuadratureTol);
    }
    const auto cert = resilience_defect(f, o.r, o.alpha);
    doc["resilience"] = certificate_to_json(cert);
    checks.add("resilience witness recomputes", witness_recomputes(f, cert));
    doc["checks"] = checks.to_json();

    CsvTable table({"coordinate", "influence", "flip_probability"});
    for (int i = 0; i < f.arity(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        table.add_row({std::to_string(i), fmt(inf[k]), flips.empty() ? "" : fmt(flips[k])});
    }
    write_json(c, "analyze.json", doc);
    write_csv(c, "analyze.csv", table);
    out << "mean " << fmt(f.mean()) << ", variance " << fmt(f.variance()) << ", total influence "
        << fmt(total_influence(f)) << "\n";
    out << "resilience defect (r=" << o.r << ") " << fmt(cert.defect) << (cert.passed ? " <= " : " > ") << "alpha "
        << fmt(o.alpha) << "\n";
    return finish(checks, out);
}

int run_stability(const Common& c, const StabilityOptions& o, std::ostream& out) {
    const auto f = load_function(o.f, o.shape, derive_seed(c.seed, kStreamF));
    const auto g = o.g.given() ? load_function(o.g, o.shape, derive_seed(c.seed, kStreamG)) : f;
    Checks checks;
    nlohmann::json doc;
    doc["meta"] = meta_block(c, "stability", {{"route_agreement", kRouteTol}});
    CsvTable table({"rho", "lhs_fourier", "lhs_operator", "halfspace", "margin"});
    const bool cube = f.is_boolean_uniform() && g.is_boolean_uniform();
    double worst = 0.0;
    for (double rho : parse_grid(o.rho_grid)) {
        const double op = pair_correlation(f, g, distributions::correlated_bits(rho));
        const double hs = halfspace_stability({f.mean(), g.mean(), rho});
        std::string fourier;
        if (cube) {
            const double v = noisy_inner_product(f, g, rho);
            worst = std::max(worst, std::abs(v - op));
            fourier = fmt(v);
        }
        table.add_row({fmt(rho), fourier, fmt(op), fmt(hs), fmt(hs - op)});
        doc["grid"].push_back({{"rho", rho}, {"lhs", op}, {"halfspace", hs}});
    }
    if (cube) checks.add("fourier and operator routes agree", worst <= kRouteTol, "max diff " + fmt(worst));

    if (!o.distribution.empty()) {
        const auto p = load_distribution(o.distribution);
        if (p.steps() != 2) throw InvalidArgument("stability takes a 2-step distribution");
        const auto m = marginals(p);
        const std::vector<TableFunction> pair{f.with_measure(m[0]), g.with_measure(m[1])};
        const double exact = pair_correlation(pair[0], pair[1], p);
        const auto mc = multi_correlation_mc(pair, p, c.samples, derive_seed(c.seed, kStreamMonteCarlo));
        doc["distribution"] = {{"spec", o.distribution}, {"exact", exact},
                               {"monte_carlo", {{"estimate", mc.estimate}, {"half_width", mc.half_width},
                                                {"samples", mc.samples}}}};
        out << "<f,g>_P exact " << fmt(exact) << ", Monte-Carlo " << fmt(mc.estimate) << " +- " << fmt(mc.half_width)
            << "\n";
        if (in_unit_interval(f) && in_unit_interval(g)) {
            for (double eps : parse_grid(o.epsilons)) {
                const auto s = smoothing_check(pair, p, eps);
                doc["smoothing"].push_back({{"epsilon", eps}, {"gamma", s.gamma},       {"original", s.original},
                                            {"smoothed", s.smoothed}, {"difference", s.difference}, {"holds", s.holds}});
                checks.add("smoothing at eps=" + fmt(eps), s.holds, "difference " + fmt(s.difference));
            }
        }
    }
    doc["checks"] = checks.to_json();
    write_json(c, "stability.json", doc);
    write_csv(c, "stability.csv", table);
    return finish(checks, out);
}

int run_gauss(const Common& c, const GaussOptions& o, std::ostream& out) {
    Checks checks;
    CsvTable table({"mu1", "mu2", "rho", "closed_form", "quadrature", "difference", "arcsine"});
    nlohmann::json doc;
    doc["meta"] = meta_block(c, "gauss", {{"quadrature_agreement", kQuadratureTol}});
    double worst = 0.0;
    double worst_arcsine = 0.0;
    const bool median = o.mu1 == 0.5 && o.mu2 == 0.5;
    for (double rho : parse_grid(o.rho_grid)) {
        const HalfspaceQuery q{o.mu1, o.mu2, rho};
        const double closed = halfspace_stability(q);
        const double quad = halfspace_stability_quadrature(q);
        worst = std::max(worst, std::abs(closed - quad));
        std::string arc;
        if (median) {
            arc = fmt(arcsine_stability(rho));
            worst_arcsine = std::max(worst_arcsine, std::abs(arcsine_stability(rho) - quad));
        }
        table.add_row({fmt(o.mu1), fmt(o.mu2), fmt(rho), fmt(closed), fmt(quad), fmt(std::abs(closed - quad)), arc});
        doc["rows"].push_back({{"rho", rho}, {"closed_form", closed}, {"quadrature", quad}});
    }
    checks.add("closed form and quadrature agree", worst <= kQuadratureTol, "max diff " + fmt(worst));
    if (median) checks.add("arcsine law", worst_arcsine <= kQuadratureTol, "max diff " + fmt(worst_arcsine));
    doc["checks"] = checks.to_json();
    write_json(c, "gauss.json", doc);
    write_csv(c, "gauss.csv", table);
    return finish(checks, out);
}

int run_tree(const Common& c, const TreeOptions& o, std::ostream& out) {
    DecisionTree tree;
    if (o.kind == "correlated") {
        const auto p = load_distribution(o.distribution);
        auto shape = o.shape;
        shape.q = p.alphabet_size();
        const FunctionSource* sources[] = {&o.f, &o.g, &o.h};
        const std::uint64_t streams[] = {kStreamF, kStreamG, kStreamH};
        std::vector<TableFunction> fs;
        for (int j = 0; j < p.steps(); ++j) {
            const auto k = static_cast<std::size_t>(std::min(j, 2));
            const FunctionSource& src = sources[k]->given() ? *sources[k] : o.f;
            fs.push_back(load_function(src, shape, derive_seed(c.seed, streams[k])));
        }
        tree = correlated_tree(fs, p, o.tau, o.epsilon);
    } else {
        const auto f = load_function(o.f, o.shape, derive_seed(c.seed, kStreamF));
        if (o.kind == "influence") {
            tree = influence_tree(f, o.tau, o.epsilon);
        } else if (o.kind == "fourier") {
            tree = fourier_tree(f, o.r, o.alpha, o.epsilon);
        } else {
            throw InvalidArgument("--kind must be influence, correlated or fourier");
        }
    }
    const auto stats = leaf_statistics(tree);
    Checks checks;
    checks.add("depth bound", tree.guarantees.depth_ok,
               fmt(tree.guarantees.max_depth) + " <= " + fmt(tree.guarantees.depth_bound));
    checks.add("bad-leaf mass bound", tree.guarantees.bad_mass_ok,
               fmt(tree.guarantees.bad_mass) + " <= " + fmt(tree.guarantees.bad_mass_bound));
    if (tree.kind == TreeKind::fourier) checks.add("queried coordinates lie in the support", tree.guarantees.support_ok);
    checks.add("mixture identity", stats.mixture_error <= kRouteTol, "error " + fmt(stats.mixture_error));

    auto doc = tree_to_json(tree);
    doc["meta"] = meta_block(c, "tree", {{"mixture", kRouteTol}, {"influence_slack", 1e-12}});
    doc["statistics"] = {{"nodes", stats.nodes},
                         {"leaves", stats.leaves},
                         {"low_influence", stats.low_influence},
                         {"resilient", stats.resilient},
                         {"depth_truncated", stats.depth_truncated},
                         {"max_depth", stats.max_depth},
                         {"bad_mass", stats.bad_mass},
                         {"drift", stats.drift},
                         {"mixture_error", stats.mixture_error}};
    doc["checks"] = checks.to_json();
    CsvTable table({"kind", "nodes", "leaves", "max_depth", "depth_bound", "bad_mass", "bad_mass_bound", "drift"});
    table.add_row({std::string(to_string(tree.kind)), std::to_string(stats.nodes), std::to_string(stats.leaves),
                   std::to_string(stats.max_depth), fmt(tree.guarantees.depth_bound), fmt(stats.bad_mass),
                   fmt(tree.guarantees.bad_mass_bound), fmt(stats.drift)});
    write_json(c, "tree.json", doc);
    write_csv(c, "tree_stats.csv", table);
    out << to_string(tree.kind) << " tree: " << stats.nodes << " nodes, " << stats.leaves << " leaves, depth "
        << stats.max_depth << "\n";
    return finish(checks, out);
}

int run_certify(const Common& c, const CertifyOptions& o, std::ostream& out) {
    const auto f = load_function(o.f, o.shape, derive_seed(c.seed, kStreamF));
    Checks checks;
    nlohmann::json doc;
    doc["meta"] = meta_block(c, "certify", {{"witness", 1e-12}, {"variance", 1e-10}, {"support_rel", kSupportRelTol},
                                            {"support_floor", kSupportFloor}});
    const auto cert = resilience_defect(f, o.r, o.alpha);
    doc["certificate"] = certificate_to_json(cert);
    doc["fourier_support"] = fourier_support(f, o.r, o.alpha);
    checks.add("witness recomputes", witness_recomputes(f, cert));
    const auto implication = resilience_implies_variance(f, o.r, o.alpha);
    doc["variance_implication"] = {{"premise", implication.premise},
                                   {"max_component_variance", implication.max_component_variance},
                                   {"worst_set", mask_members(implication.worst_set)},
                                   {"conclusion", implication.conclusion}};
    if (implication.premise) checks.add("resilience bounds component variances", implication.conclusion);
    if (f.is_boolean_uniform()) {
        const auto suff = sufficient_condition_check(f, o.r, o.alpha);
        doc["coefficient_criterion"] = {{"premise", suff.premise},
                                        {"max_coefficient", suff.max_coefficient},
                                        {"premise_bound", suff.premise_bound}};
        checks.add("coefficient criterion consistent", suff.consistent);
    }
    if (o.g.given()) {
        const auto g = load_function(o.g, o.shape, derive_seed(c.seed, kStreamG));
        doc["cross_resilience"] = cross_to_json(cross_resilient(f, g, o.r, o.alpha));
    }
    doc["checks"] = checks.to_json();
    write_json(c, "certificate.json", doc);
    out << "defect " << fmt(cert.defect) << " at r=" << o.r << ": " << (cert.passed ? "resilient" : "not resilient")
        << " for alpha " << fmt(o.alpha) << "\n";
    return finish(checks, out);
}

int run_params(const Common& c, const ParamsOptions& o, std::ostream& out) {
    Checks checks;
    CsvTable table({"epsilon", "rho", "log10_tau_mist", "log10_r_two", "log10_alpha_two", "log10_tau_general",
                    "log10_r_multi", "log10_m", "log10_beta", "log10_tau_two_general"});
    nlohmann::json doc;
    doc["meta"] = meta_block(c, "params", nlohmann::json::object());
    doc["ell"] = o.ell;
    doc["pi_star"] = o.pi_star;
    bool chained = true;
    bool in_range = true;
    for (double eps : parse_grid(o.epsilons)) {
        for (double rho : parse_grid(o.rhos)) {
            const auto tm = tau_mist(eps, rho, c.constants);
            const auto two = r_alpha_two(eps, rho, c.constants, o.tau);
            const auto tg = tau_general(eps, rho, o.pi_star, o.ell, c.constants);
            const auto rm = r_multi(eps, rho, o.ell, o.pi_star, c.constants, o.tau);
            const auto mb = m_beta_three(eps, rho, o.pi_star, c.constants);
            const auto t2 = tau_two_general(eps, rho, o.pi_star, c.constants);
            if (!o.tau) chained = chained && mb.base.r.log10 == two.r.log10 && mb.base.alpha.log10 == two.alpha.log10;
            for (const auto* t : {&tm, &tg, &t2}) in_range = in_range && t->log10 <= 0.0;
            in_range = in_range && two.alpha.log10 < 0.0 && mb.beta.log10 < 0.0 && two.r.log10 >= 0.0;
            table.add_row({fmt(eps), fmt(rho), fmt(tm.log10), fmt(two.r.log10), fmt(two.alpha.log10), fmt(tg.log10),
                           fmt(rm.log10), fmt(mb.m.log10), fmt(mb.beta.log10), fmt(t2.log10)});
            doc["rows"].push_back({{"epsilon", eps},
                                   {"rho", rho},
                                   {"tau_mist", quantity_to_json(tm)},
                                   {"r_two", quantity_to_json(two.r)},
                                   {"alpha_two", quantity_to_json(two.alpha)},
                                   {"tau_general", quantity_to_json(tg)},
                                   {"r_multi", quantity_to_json(rm)},
                                   {"m_three", quantity_to_json(mb.m)},
                                   {"beta_three", quantity_to_json(mb.beta)},
                                   {"tau_two_general", quantity_to_json(t2)}});
        }
    }
    checks.add("m, beta chain through r_alpha_two", chained);
    checks.add("tau, alpha, beta in (0,1]; r >= 1", in_range);
    doc["checks"] = checks.to_json();
    write_json(c, "params.json", doc);
    write_csv(c, "params.csv", table);
    return finish(checks, out);
}

int run_verify(const Common& c, const VerifyOptions& o, std::ostream& out) {
    Checks checks;
    std::vector<StabilityReport> reports;
    nlohmann::json doc;
    doc["meta"] = meta_block(c, "verify", {{"route_agreement", kRouteTol}, {"margin_slack", kMarginSlack}});
    auto load = [&](const FunctionSource& s, std::uint64_t stream, const FunctionShape& shape) {
        return load_function(s.given() ? s : o.f, shape, derive_seed(c.seed, stream));
    };
    if (o.theorem == "two" || o.theorem == "three") {
        const auto f = load(o.f, kStreamF, o.shape);
        const auto g = load(o.g, kStreamG, o.shape);
        if (o.theorem == "two") {
            reports.push_back(check_theorem_two(f, g, o.rho, o.epsilon, o.r, o.alpha));
        } else {
            reports.push_back(check_theorem_three(f, g, o.rho, o.epsilon, o.m, o.beta));
            reports.push_back(check_theorem_three_lower(f, g, o.rho, o.epsilon, o.m, o.beta));
        }
        const double op = pair_correlation(f, g, distributions::correlated_bits(o.rho));
        checks.add("fourier and operator routes agree", std::abs(op - reports.front().lhs) <= kRouteTol);
    } else if (o.theorem == "multi") {
        const auto p = load_distribution(o.distribution);
        auto shape = o.shape;
        shape.q = p.alphabet_size();
        const FunctionSource* sources[] = {&o.f, &o.g, &o.h};
        const std::uint64_t streams[] = {kStreamF, kStreamG, kStreamH};
        std::vector<TableFunction> fs;
        for (int j = 0; j < p.steps(); ++j) {
            const auto k = static_cast<std::size_t>(std::min(j, 2));
            fs.push_back(load(*sources[k], streams[k], shape));
        }
        MultiCheckOptions mopt;
        mopt.samples = c.samples;
        mopt.seed = derive_seed(c.seed, kStreamGamma);
        mopt.budget = c.budget;
        reports.push_back(check_theorem_multi(fs, p, o.epsilon, o.r, mopt));
    } else if (o.theorem == "arrow") {
        auto shape = o.shape;
        shape.range = "pm";
        const auto f = load(o.f, kStreamF, shape);
        const auto g = load(o.g, kStreamG, shape);
        const auto h = load(o.h, kStreamH, shape);
        reports.push_back(check_arrow(f, g, h, o.epsilon, o.m, o.beta, c.budget));
        const auto& params = reports.back().hypotheses.parameters;
        if (params.count("paradox_enumeration")) {
            const double diff = std::abs(params.at("paradox_enumeration") - params.at("paradox_identity"));
            checks.add("paradox routes agree", diff <= kRouteTol, "difference " + fmt(diff));
        }
    } else {
        throw InvalidArgument("--theorem must be two, multi, three or arrow");
    }
    CsvTable table({"theorem", "direction", "lhs", "rhs", "margin", "verdict"});
    for (const auto& r : reports) {
        table.add_row({r.theorem_id, std::string(to_string(r.direction)), fmt(r.lhs), fmt(r.rhs), fmt(r.margin),
                       verdict_text(r)});
        doc["reports"].push_back(report_to_json(r));
        out << r.theorem_id << ": lhs " << fmt(r.lhs) << ", rhs " << fmt(r.rhs) << ", margin " << fmt(r.margin) << ", "
            << verdict_text(r) << "\n";
    }
    doc["checks"] = checks.to_json();
    write_json(c, "verify_" + o.theorem + ".json", doc);
    write_csv(c, "verify_" + o.theorem + ".csv", table);
    return finish(checks, out);
}

int run_arrow(const Common& c, const ArrowOptions& o, std::ostream& out) {
    Checks checks;
    CsvTable table({"n", "paradox_enumeration", "paradox_identity", "difference"});
    nlohmann::json doc;
    doc["meta"] = meta_block(c, "arrow", {{"route_agreement", kRouteTol}});
    doc["family"] = o.family;
    for (int n : o.ns) {
        FunctionShape shape;
        shape.n = n;
        shape.range = "pm";
        const auto f = load_function(FunctionSource{o.family, "", {}}, shape, derive_seed(c.seed, kStreamF));
        const auto rep = paradox_probability(f, f, f, c.budget);
        const std::string enumerated = rep.enumeration ? fmt(*rep.enumeration) : "";
        table.add_row({std::to_string(n), enumerated, fmt(rep.identity), rep.enumeration ? fmt(rep.difference) : ""});
        nlohmann::json row = {{"n", n}, {"identity", rep.identity}};
        if (rep.enumeration) {
            row["enumeration"] = *rep.enumeration;
            checks.add("n=" + std::to_string(n) + " routes agree", rep.difference <= kRouteTol,
                       "difference " + fmt(rep.difference));
        }
        doc["rows"].push_back(row);
        out << "n=" << n << ": P[paradox] = " << fmt(rep.value()) << "\n";
    }
    const double g = guilbaud_constant();
    table.add_row({"guilbaud", "", fmt(g), ""});
    doc["guilbaud"] = g;
    doc["checks"] = checks.to_json();
    out << "guilbaud limit " << fmt(g) << "\n";
    write_json(c, "arrow.json", doc);
    write_csv(c, "arrow.csv", table);
    return finish(checks, out);
}

int run_example_f3(const Common& c, const F3Options& o, std::ostream& out) {
    const auto p = distributions::f3_chain();
    auto shape = o.shape;
    shape.q = 3;
    const FunctionSource fallback{"indicator", "", {0, 0}};
    const FunctionSource* sources[] = {&o.f, &o.g, &o.h};
    const std::uint64_t streams[] = {kStreamF, kStreamG, kStreamH};
    std::vector<TableFunction> fs;
    std::vector<double> mu;
    const auto m = marginals(p);
    for (std::size_t j = 0; j < 3; ++j) {
        const FunctionSource& src = sources[j]->given() ? *sources[j] : (o.f.given() ? o.f : fallback);
        auto f = load_function(src, shape, derive_seed(c.seed, streams[j]));
        if (!in_unit_interval(f)) throw InvalidArgument("example-f3 needs [0,1]-valued functions");
        fs.push_back(f.with_measure(m[j]));
        mu.push_back(fs.back().mean());
    }
    const double lhs = multi_correlation(fs, p, c.budget);
    const auto gamma = gamma_estimate(mu, gaussian_counterpart(p), c.samples, derive_seed(c.seed, kStreamGamma));
    nlohmann::json doc;
    doc["meta"] = meta_block(c, "example-f3", nlohmann::json::object());
    doc["n"] = shape.n;
    doc["rho"] = rho_max(p).rho;
    doc["lhs"] = lhs;
    doc["means"] = mu;
    doc["gamma"] = {{"label", GammaEstimate::kLabel}, {"value", gamma.value},           {"strategy", gamma.strategy},
                    {"half_width", gamma.half_width}, {"samples", gamma.samples}};
    doc["gap"] = gamma.value - lhs;
    doc["note"] = "upper-bound direction only; the Gaussian side is a lower estimate of the supremum";
    CsvTable table({"n", "lhs", "gamma_estimate", "gamma_half_width", "gap"});
    table.add_row({std::to_string(shape.n), fmt(lhs), fmt(gamma.value), fmt(gamma.half_width), fmt(gamma.value - lhs)});
    write_json(c, "example_f3.json", doc);
    write_csv(c, "example_f3.csv", table);
    out << "<f,g,h> = " << fmt(lhs) << " (exact), Gamma estimate " << fmt(gamma.value) << " +- "
        << fmt(gamma.half_width) << "\n";
    return 0;
}

}  // namespace noisestab::cli
