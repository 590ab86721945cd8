#include "noisestab/cli/cli.hpp"

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <functional>
#include <ostream>

#include "commands.hpp"
#include "noisestab/errors.hpp"
#include "noisestab/function_io.hpp"
#include "noisestab/version.hpp"

namespace noisestab::cli {
namespace {

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out, "Output directory")->capture_default_str();
    sub->add_option("--seed", c.seed, "Root seed for every random stream")->capture_default_str();
    sub->add_option("--samples", c.samples, "Monte-Carlo sample count")->capture_default_str();
    sub->add_option("--budget", c.budget, "Enumeration budget (operations)")->capture_default_str();
    sub->add_option("--constants", c.constants_file, "ConstantsProfile JSON")->check(CLI::ExistingFile);
}

/// --family/--function/--param for f; prefix "g-" or "h-" for the others.
void add_function(CLI::App* sub, FunctionSource& s, const std::string& prefix, const std::string& who) {
    sub->add_option("--" + prefix + "family", s.family, "Named family for " + who);
    sub->add_option("--" + prefix + "function", s.file, "Function JSON for " + who)->check(CLI::ExistingFile);
    sub->add_option("--" + prefix + "param", s.params, "Family parameters for " + who)->delimiter(',');
}

void add_shape(CLI::App* sub, FunctionShape& shape) {
    sub->add_option("--n", shape.n, "Arity")->capture_default_str();
    sub->add_option("--q", shape.q, "Alphabet size")->capture_default_str();
    sub->add_option("--range", shape.range, "unit, pm or native")
        ->check(CLI::IsMember({"unit", "pm", "native"}))
        ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Noise stability of functions with low influences: analysis and verification"};
    app.set_version_flag("--version", std::string("noisestab ") + kVersion);
    app.require_subcommand(1);

    Common common;
    std::function<int()> action;

    AnalyzeOptions analyze;
    auto* a = app.add_subcommand("analyze", "Influences, Efron-Stein levels and resilience of one function");
    add_common(a, common);
    add_function(a, analyze.f, "", "f");
    add_shape(a, analyze.shape);
    a->add_option("--r", analyze.r, "Resilience order")->capture_default_str();
    a->add_option("--alpha", analyze.alpha, "Resilience tolerance")->capture_default_str();
    a->callback([&] { action = [&] { return run_analyze(common, analyze, out); }; });

    StabilityOptions stability;
    auto* s = app.add_subcommand("stability", "Noisy inner products and smoothing");
    add_common(s, common);
    add_function(s, stability.f, "", "f");
    add_function(s, stability.g, "g-", "g");
    add_shape(s, stability.shape);
    s->add_option("--rho-grid", stability.rho_grid, "a:b:step or comma list")->capture_default_str();
    s->add_option("--distribution", stability.distribution, "2-step distribution for <f,g>_P and smoothing");
    s->add_option("--epsilons", stability.epsilons, "Smoothing epsilons")->capture_default_str();
    s->callback([&] { action = [&] { return run_stability(common, stability, out); }; });

    GaussOptions gauss;
    auto* g = app.add_subcommand("gauss", "Half-space stability table");
    add_common(g, common);
    g->add_option("--mu1", gauss.mu1)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    g->add_option("--mu2", gauss.mu2)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    g->add_option("--rho-grid", gauss.rho_grid, "a:b:step or comma list")->capture_default_str();
    g->callback([&] { action = [&] { return run_gauss(common, gauss, out); }; });

    TreeOptions tree;
    auto* t = app.add_subcommand("tree", "Build a decision tree and check its guarantees");
    add_common(t, common);
    t->add_option("--kind", tree.kind)
        ->check(CLI::IsMember({"influence", "correlated", "fourier"}))
        ->capture_default_str();
    add_function(t, tree.f, "", "f");
    add_function(t, tree.g, "g-", "g (correlated kind)");
    add_function(t, tree.h, "h-", "h (correlated kind)");
    add_shape(t, tree.shape);
    t->add_option("--distribution", tree.distribution, "Distribution for the correlated kind")->capture_default_str();
    t->add_option("--tau", tree.tau)->capture_default_str();
    t->add_option("--epsilon", tree.epsilon)->capture_default_str();
    t->add_option("--r", tree.r)->capture_default_str();
    t->add_option("--alpha", tree.alpha)->capture_default_str();
    t->callback([&] { action = [&] { return run_tree(common, tree, out); }; });

    CertifyOptions certify;
    auto* c = app.add_subcommand("certify", "Resilience certificate and Fourier support");
    add_common(c, common);
    add_function(c, certify.f, "", "f");
    add_function(c, certify.g, "g-", "g (cross-resilience)");
    add_shape(c, certify.shape);
    c->add_option("--r", certify.r)->capture_default_str();
    c->add_option("--alpha", certify.alpha)->capture_default_str();
    c->callback([&] { action = [&] { return run_certify(common, certify, out); }; });

    ParamsOptions params;
    double tau_override = 0.0;
    auto* p = app.add_subcommand("params", "Parameter chains on an epsilon x rho grid");
    add_common(p, common);
    p->add_option("--epsilons", params.epsilons)->capture_default_str();
    p->add_option("--rhos", params.rhos)->capture_default_str();
    p->add_option("--ell", params.ell)->capture_default_str();
    p->add_option("--pi-star", params.pi_star)->capture_default_str();
    auto* tau_opt = p->add_option("--tau", tau_override, "Override tau instead of deriving it");
    p->callback([&] {
        if (tau_opt->count() > 0) params.tau = tau_override;
        action = [&] { return run_params(common, params, out); };
    });

    VerifyOptions verify;
    auto* v = app.add_subcommand("verify", "Margin report for one of the stability theorems");
    add_common(v, common);
    v->add_option("--theorem", verify.theorem)
        ->check(CLI::IsMember({"two", "multi", "three", "arrow"}))
        ->capture_default_str();
    add_function(v, verify.f, "", "f");
    add_function(v, verify.g, "g-", "g (defaults to f)");
    add_function(v, verify.h, "h-", "h (defaults to f)");
    add_shape(v, verify.shape);
    v->add_option("--rho", verify.rho)->capture_default_str();
    v->add_option("--epsilon", verify.epsilon)->capture_default_str();
    v->add_option("--r", verify.r)->capture_default_str();
    v->add_option("--alpha", verify.alpha)->capture_default_str();
    v->add_option("--m", verify.m)->capture_default_str();
    v->add_option("--beta", verify.beta)->capture_default_str();
    v->add_option("--distribution", verify.distribution, "Distribution for --theorem multi")->capture_default_str();
    v->callback([&] { action = [&] { return run_verify(common, verify, out); }; });

    ArrowOptions arrow;
    auto* w = app.add_subcommand("arrow", "Condorcet paradox probabilities");
    add_common(w, common);
    w->add_option("--family", arrow.family)->capture_default_str();
    w->add_option("--n", arrow.ns, "Comma list of arities")->delimiter(',');
    w->callback([&] { action = [&] { return run_arrow(common, arrow, out); }; });

    F3Options f3;
    auto* e = app.add_subcommand("example-f3", "Three-step chain over the field with three elements");
    add_common(e, common);
    add_function(e, f3.f, "", "f (default: indicator of x_0 = 0)");
    add_function(e, f3.g, "g-", "g (defaults to f)");
    add_function(e, f3.h, "h-", "h (defaults to f)");
    e->add_option("--n", f3.shape.n)->capture_default_str();
    e->callback([&] { action = [&] { return run_example_f3(common, f3, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (!common.constants_file.empty()) common.constants = load_constants(common.constants_file);
        return action ? action() : kExitOk;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitInput;
}

}  // namespace noisestab::cli
