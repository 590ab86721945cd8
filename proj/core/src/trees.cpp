#include "noisestab/trees.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <numeric>

#include "noisestab/errors.hpp"
#include "noisestab/harmonic.hpp"
#include "noisestab/parameters.hpp"
#include "noisestab/resilience.hpp"

namespace noisestab {
namespace {

constexpr double kInfluenceSlack = 1e-12;

int clamp_cap(double bound) { return bound >= static_cast<double>(INT_MAX / 2) ? INT_MAX / 2 : static_cast<int>(bound); }

struct MaxInfluence {
    double value = 0.0;
    int local = -1;  // coordinate within the restricted function
};

MaxInfluence max_influence(const TableFunction& f) {
    MaxInfluence out;
    const auto inf = influences(f);
    for (std::size_t i = 0; i < inf.size(); ++i) {
        if (out.local < 0 || inf[i] > out.value) {
            out.value = inf[i];
            out.local = static_cast<int>(i);
        }
    }
    return out;
}

std::vector<int> without(const std::vector<int>& free, int local) {
    std::vector<int> out = free;
    out.erase(out.begin() + local);
    return out;
}

std::size_t add_child(DecisionTree& tree, std::size_t parent, int coord, std::vector<int> label, double mass) {
    TreeNode child;
    const TreeNode& p = tree.nodes[parent];
    child.depth = p.depth + 1;
    child.pinned_coords = p.pinned_coords;
    child.pinned_coords.push_back(coord);
    child.pinned_symbols = p.pinned_symbols;
    child.pinned_symbols.push_back(label);
    child.mass = mass;
    tree.nodes.push_back(std::move(child));
    const std::size_t idx = tree.nodes.size() - 1;
    tree.nodes[parent].child_labels.push_back(std::move(label));
    tree.nodes[parent].children.push_back(idx);
    return idx;
}

LeafInfo make_leaf(std::vector<TableFunction> functions, double tau) {
    LeafInfo leaf;
    for (const auto& f : functions) {
        leaf.means.push_back(f.mean());
        leaf.max_influence = std::max(leaf.max_influence, max_influence(f).value);
    }
    leaf.flags.low_influence = leaf.max_influence <= tau + kInfluenceSlack;
    leaf.functions = std::move(functions);
    return leaf;
}

void grow_influence(DecisionTree& tree, std::size_t idx, const TableFunction& f, const std::vector<int>& free) {
    const auto best = max_influence(f);
    const bool wants = f.arity() > 0 && best.value > tree.tau + kInfluenceSlack;
    if (!wants || tree.nodes[idx].depth >= tree.depth_cap) {
        auto leaf = make_leaf({f}, tree.tau);
        leaf.flags.depth_truncated = wants;
        tree.nodes[idx].leaf = std::move(leaf);
        return;
    }
    const int coord = free[static_cast<std::size_t>(best.local)];
    tree.nodes[idx].split = coord;
    const auto rest = without(free, best.local);
    const int local[] = {best.local};
    for (int a = 0; a < f.alphabet_size(); ++a) {
        const int sym[] = {a};
        const double mass = tree.nodes[idx].mass * f.measure()[static_cast<std::size_t>(a)];
        const std::size_t child = add_child(tree, idx, coord, {a}, mass);
        grow_influence(tree, child, restrict(f, local, sym), rest);
    }
}

void grow_correlated(DecisionTree& tree, std::size_t idx, const std::vector<TableFunction>& fs,
                     const StepDistribution& p, const std::vector<int>& free) {
    MaxInfluence best;
    for (const auto& f : fs) {
        const auto m = max_influence(f);
        if (best.local < 0 || m.value > best.value || (m.value == best.value && m.local < best.local)) best = m;
    }
    const bool wants = fs.front().arity() > 0 && best.value > tree.tau + kInfluenceSlack;
    if (!wants || tree.nodes[idx].depth >= tree.depth_cap || tree.nodes[idx].mass == 0.0) {
        auto leaf = make_leaf(fs, tree.tau);
        leaf.flags.depth_truncated = wants && tree.nodes[idx].mass > 0.0;
        tree.nodes[idx].leaf = std::move(leaf);
        return;
    }
    const int coord = free[static_cast<std::size_t>(best.local)];
    tree.nodes[idx].split = coord;
    const auto rest = without(free, best.local);
    const int local[] = {best.local};
    const std::size_t outcomes = p.table().size();
    for (std::size_t t = 0; t < outcomes; ++t) {
        const auto label = p.tuple(t);
        const double mass = tree.nodes[idx].mass * p.probability(t);
        const std::size_t child = add_child(tree, idx, coord, label, mass);
        std::vector<TableFunction> next;
        next.reserve(fs.size());
        for (std::size_t j = 0; j < fs.size(); ++j) {
            const int sym[] = {label[j]};
            next.push_back(restrict(fs[j], local, sym));
        }
        grow_correlated(tree, child, next, p, rest);
    }
}

/// Smallest T (size, then lex) with 0 < |T| ≤ r and Var[f_T] ≥ α², as a local mask.
std::optional<SubsetMask> witness_set(const TableFunction& f, int r, double alpha) {
    if (f.arity() == 0) return std::nullopt;
    const auto vars = component_variances(f);
    const double threshold = alpha * alpha;
    for (int k = 1; k <= std::min(r, f.arity()); ++k) {
        std::optional<SubsetMask> best;
        std::vector<int> best_members;
        for (SubsetMask s = 1; s < vars.size(); ++s) {
            if (mask_size(s) != k || !meets_variance_threshold(vars[s], threshold)) continue;
            auto members = mask_members(s);
            if (!best || members < best_members) {
                best = s;
                best_members = std::move(members);
            }
        }
        if (best) return best;
    }
    return std::nullopt;
}

void grow_fourier(DecisionTree& tree, std::size_t idx, const TableFunction& f, const std::vector<int>& free,
                  std::vector<int> pending) {
    if (pending.empty()) {
        const auto t = witness_set(f, tree.r, tree.alpha);
        const int size = t ? mask_size(*t) : 0;
        if (!t || tree.nodes[idx].depth + size > tree.depth_cap) {
            auto leaf = make_leaf({f}, INFINITY);
            leaf.flags.low_influence = false;
            leaf.flags.resilient = !t;
            leaf.flags.depth_truncated = t.has_value();
            leaf.resilience_defect = resilience_defect(f, std::min(tree.r, f.arity()), tree.alpha).defect;
            tree.nodes[idx].leaf = std::move(leaf);
            return;
        }
        for (int local : mask_members(*t)) pending.push_back(free[static_cast<std::size_t>(local)]);
        tree.nodes[idx].decision = true;
    }
    tree.nodes[idx].expansion_set = pending;
    const int coord = pending.front();
    const int local_index = static_cast<int>(std::find(free.begin(), free.end(), coord) - free.begin());
    const std::vector<int> later(pending.begin() + 1, pending.end());
    tree.nodes[idx].split = coord;
    const auto rest = without(free, local_index);
    const int local[] = {local_index};
    for (int a = 0; a < f.alphabet_size(); ++a) {
        const int sym[] = {a};
        const double mass = tree.nodes[idx].mass * f.measure()[static_cast<std::size_t>(a)];
        const std::size_t child = add_child(tree, idx, coord, {a}, mass);
        grow_fourier(tree, child, restrict(f, local, sym), rest, later);
    }
}

std::vector<int> all_coordinates(int n) {
    std::vector<int> out(static_cast<std::size_t>(n));
    std::iota(out.begin(), out.end(), 0);
    return out;
}

void finish_guarantees(DecisionTree& tree, double depth_bound, double bad_mass_bound) {
    auto& g = tree.guarantees;
    g.depth_bound = depth_bound;
    g.bad_mass_bound = bad_mass_bound;
    for (const auto& node : tree.nodes) {
        g.max_depth = std::max(g.max_depth, node.depth);
        if (node.is_leaf() && is_bad_leaf(tree, node)) g.bad_mass += node.mass;
    }
    g.depth_ok = g.max_depth <= depth_bound;
    g.bad_mass_ok = g.bad_mass <= bad_mass_bound + 1e-12;
}

}  // namespace

std::string_view to_string(TreeKind kind) {
    switch (kind) {
        case TreeKind::influence: return "influence";
        case TreeKind::correlated: return "correlated";
        case TreeKind::fourier: return "fourier";
    }
    return "unknown";
}

std::vector<std::size_t> DecisionTree::leaves() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].is_leaf()) out.push_back(i);
    }
    return out;
}

bool is_bad_leaf(const DecisionTree& tree, const TreeNode& node) {
    if (!node.is_leaf()) return false;
    return tree.kind == TreeKind::fourier ? !node.leaf->flags.resilient : !node.leaf->flags.low_influence;
}

DecisionTree influence_tree(const TableFunction& f, double tau, double epsilon) {
    if (!(tau > 0.0 && epsilon > 0.0)) throw InvalidArgument("influence tree needs τ > 0 and ε > 0");
    DecisionTree tree;
    tree.kind = TreeKind::influence;
    tree.arity = f.arity();
    tree.alphabet_size = f.alphabet_size();
    tree.tau = tau;
    tree.epsilon = epsilon;
    tree.root_means = {f.mean()};
    const double bound = depth_bound_influence(total_influence(f), tau, epsilon);
    tree.depth_cap = clamp_cap(bound);
    tree.nodes.emplace_back();
    grow_influence(tree, 0, f, all_coordinates(f.arity()));
    finish_guarantees(tree, bound, epsilon);
    return tree;
}

DecisionTree correlated_tree(const std::vector<TableFunction>& functions, const StepDistribution& p, double tau,
                             double epsilon) {
    if (!(tau > 0.0 && epsilon > 0.0)) throw InvalidArgument("correlated tree needs τ > 0 and ε > 0");
    if (functions.size() != static_cast<std::size_t>(p.steps())) throw InvalidArgument("need one function per step");
    const auto m = marginals(p);
    std::vector<TableFunction> fs;
    double total = 0.0;
    for (std::size_t j = 0; j < functions.size(); ++j) {
        const auto& f = functions[j];
        if (f.alphabet_size() != p.alphabet_size() || f.arity() != functions.front().arity()) {
            throw InvalidArgument("functions must share arity and the distribution's alphabet");
        }
        fs.push_back(f.with_measure(m[j]));
        total += total_influence(fs.back());
    }
    DecisionTree tree;
    tree.kind = TreeKind::correlated;
    tree.arity = functions.front().arity();
    tree.alphabet_size = p.alphabet_size();
    tree.steps = p.steps();
    tree.tau = tau;
    tree.epsilon = epsilon;
    for (const auto& f : fs) tree.root_means.push_back(f.mean());
    const double bound = depth_bound_correlated(total, tau, epsilon);
    tree.depth_cap = clamp_cap(bound);
    tree.nodes.emplace_back();
    grow_correlated(tree, 0, fs, p, all_coordinates(tree.arity));
    finish_guarantees(tree, bound, epsilon);
    return tree;
}

DecisionTree fourier_tree(const TableFunction& f, int r, double alpha, double epsilon) {
    if (r < 1 || !(alpha > 0.0 && epsilon > 0.0)) throw InvalidArgument("Fourier tree needs r ≥ 1, α > 0, ε > 0");
    DecisionTree tree;
    tree.kind = TreeKind::fourier;
    tree.arity = f.arity();
    tree.alphabet_size = f.alphabet_size();
    tree.r = r;
    tree.alpha = alpha;
    tree.epsilon = epsilon;
    tree.root_means = {f.mean()};
    const double bound = depth_bound_fourier(r, alpha, epsilon);
    tree.depth_cap = clamp_cap(bound);
    tree.nodes.emplace_back();
    grow_fourier(tree, 0, f, all_coordinates(f.arity()), {});
    // Each completed expansion lowers E[Var] by ≥ α², so truncated mass ≤ ε·Var f.
    finish_guarantees(tree, bound, epsilon * std::max(1.0, f.variance()));

    // Queried coordinates must lie in the (d, π_*^d 2^{−d} α)-support of f.
    auto& g = tree.guarantees;
    SubsetMask queried = 0;
    for (const auto& node : tree.nodes) {
        if (node.split) queried |= SubsetMask{1} << *node.split;
    }
    g.queried = mask_members(queried);
    double pi_star = 1.0;
    for (double w : f.measure()) {
        if (w > 0.0) pi_star = std::min(pi_star, w);
    }
    const double d = bound;
    const double log_beta = d * (std::log(pi_star) - std::log(2.0)) + std::log(alpha);
    const double threshold = std::exp(2.0 * log_beta);  // may underflow to 0; the support floor then applies
    const int order = static_cast<int>(std::min<double>(d, f.arity()));
    g.support = f.arity() == 0 ? std::vector<int>{} : fourier_support_by_variance(f, std::max(order, 1), threshold);
    g.support_ok = std::includes(g.support.begin(), g.support.end(), g.queried.begin(), g.queried.end());
    return tree;
}

TreeStatistics leaf_statistics(const DecisionTree& tree) {
    TreeStatistics s;
    s.nodes = tree.nodes.size();
    std::vector<double> mixture(tree.root_means.size(), 0.0);
    for (const auto& node : tree.nodes) {
        s.max_depth = std::max(s.max_depth, node.depth);
        if (!node.is_leaf()) continue;
        const auto& leaf = *node.leaf;
        ++s.leaves;
        s.low_influence += leaf.flags.low_influence ? 1 : 0;
        s.resilient += leaf.flags.resilient ? 1 : 0;
        s.depth_truncated += leaf.flags.depth_truncated ? 1 : 0;
        s.total_mass += node.mass;
        if (is_bad_leaf(tree, node)) s.bad_mass += node.mass;
        for (std::size_t j = 0; j < leaf.means.size(); ++j) {
            mixture[j] += node.mass * leaf.means[j];
            if (node.mass > 0.0) s.drift = std::max(s.drift, std::abs(leaf.means[j] - tree.root_means[j]));
        }
    }
    for (std::size_t j = 0; j < mixture.size(); ++j) {
        s.mixture_error = std::max(s.mixture_error, std::abs(mixture[j] - tree.root_means[j]));
    }
    return s;
}

nlohmann::json tree_to_json(const DecisionTree& tree) {
    std::function<nlohmann::json(std::size_t)> dump = [&](std::size_t idx) {
        const auto& node = tree.nodes[idx];
        nlohmann::json doc;
        doc["depth"] = node.depth;
        doc["mass"] = node.mass;
        if (node.split) {
            doc["split"] = *node.split;
            if (!node.expansion_set.empty()) doc["expansion_set"] = node.expansion_set;
            nlohmann::json children = nlohmann::json::array();
            for (std::size_t c = 0; c < node.children.size(); ++c) {
                children.push_back({{"label", node.child_labels[c]}, {"node", dump(node.children[c])}});
            }
            doc["children"] = std::move(children);
        }
        if (node.leaf) {
            const auto& leaf = *node.leaf;
            nlohmann::json l;
            l["means"] = leaf.means;
            l["max_influence"] = leaf.max_influence;
            l["low_influence"] = leaf.flags.low_influence;
            l["resilient"] = leaf.flags.resilient;
            l["depth_truncated"] = leaf.flags.depth_truncated;
            if (leaf.resilience_defect) l["resilience_defect"] = *leaf.resilience_defect;
            doc["leaf"] = std::move(l);
        }
        return doc;
    };
    const auto& g = tree.guarantees;
    nlohmann::json doc;
    doc["kind"] = std::string(to_string(tree.kind));
    doc["arity"] = tree.arity;
    doc["alphabet_size"] = tree.alphabet_size;
    doc["steps"] = tree.steps;
    doc["parameters"] = {{"tau", tree.tau}, {"epsilon", tree.epsilon}, {"r", tree.r}, {"alpha", tree.alpha},
                         {"depth_cap", tree.depth_cap}};
    doc["root_means"] = tree.root_means;
    doc["guarantees"] = {{"depth_bound", g.depth_bound}, {"bad_mass_bound", g.bad_mass_bound},
                         {"max_depth", g.max_depth},     {"bad_mass", g.bad_mass},
                         {"depth_ok", g.depth_ok},       {"bad_mass_ok", g.bad_mass_ok},
                         {"support_ok", g.support_ok},   {"queried", g.queried},
                         {"support", g.support}};
    doc["root"] = dump(0);
    return doc;
}

}  // namespace noisestab
