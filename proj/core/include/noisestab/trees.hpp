#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "noisestab/distributions.hpp"
#include "noisestab/table_function.hpp"

namespace noisestab {

enum class TreeKind { influence, correlated, fourier };
std::string_view to_string(TreeKind kind);

struct LeafFlags {
    /// Every leaf function has max influence ≤ τ.
    bool low_influence = false;
    /// Fourier trees only: no 0 < |T| ≤ r with Var[f_T] ≥ α² (the
    /// variance form of (r,α)-resilience). Always false for the other kinds.
    bool resilient = false;
    /// The node still met its expansion rule but hit the depth cap.
    bool depth_truncated = false;
};

struct LeafInfo {
    /// One restricted function per step (a single one for non-correlated trees).
    std::vector<TableFunction> functions;
    std::vector<double> means;
    LeafFlags flags;
    double max_influence = 0.0;
    /// Fourier trees: exact resilience defect of the leaf function at order
    /// min(r, arity), for reference next to the variance criterion.
    std::optional<double> resilience_defect;
};

struct TreeNode {
    int depth = 0;
    /// Pinned coordinates in pinning order; pinned_symbols[k][j] is the symbol
    /// step j received at pinned_coords[k].
    std::vector<int> pinned_coords;
    std::vector<std::vector<int>> pinned_symbols;
    double mass = 1.0;
    std::optional<int> split;
    /// Child labels: one symbol per step.
    std::vector<std::vector<int>> child_labels;
    std::vector<std::size_t> children;
    /// Fourier trees: the witness set T chosen at this node (original
    /// coordinates), or the part of it still to be pinned below.
    std::vector<int> expansion_set;
    /// Fourier trees: true where T was chosen (not a continuation level).
    bool decision = false;
    std::optional<LeafInfo> leaf;

    bool is_leaf() const { return leaf.has_value(); }
};

struct TreeGuarantees {
    double depth_bound = 0.0;
    double bad_mass_bound = 0.0;
    int max_depth = 0;
    double bad_mass = 0.0;
    bool depth_ok = false;
    bool bad_mass_ok = false;
    /// Fourier trees: every queried coordinate lies in the small-threshold
    /// support of the root function. Vacuously true for other kinds.
    bool support_ok = true;
    std::vector<int> queried;
    std::vector<int> support;

    bool holds() const { return depth_ok && bad_mass_ok && support_ok; }
};

struct DecisionTree {
    TreeKind kind = TreeKind::influence;
    int arity = 0;
    int alphabet_size = 2;
    int steps = 1;
    double tau = 0.0;
    double epsilon = 0.0;
    int r = 0;
    double alpha = 0.0;
    /// Expansion stops at this depth.
    int depth_cap = 0;
    /// E[f^{(j)}] at the root.
    std::vector<double> root_means;
    /// nodes[0] is the root; children always follow their parent.
    std::vector<TreeNode> nodes;
    TreeGuarantees guarantees;

    const TreeNode& root() const { return nodes.front(); }
    std::vector<std::size_t> leaves() const;
};

/// Splits on the max-influence coordinate (lowest index on ties) while the
/// max influence exceeds τ and depth < 2 + ⌈I(f)/(τε)⌉.
DecisionTree influence_tree(const TableFunction& f, double tau, double epsilon);

/// Joint tree for ℓ functions under 𝒫: each split pins one coordinate in all
/// functions at once, with one child per ℓ-tuple of symbols weighted by 𝒫.
/// Functions are evaluated under their marginals π_j. Cap 4 + ⌈I(F)/(τε)⌉.
DecisionTree correlated_tree(const std::vector<TableFunction>& functions, const StepDistribution& p, double tau,
                             double epsilon);

/// Pins the smallest witnessing set T (|T| ≤ r, Var[f_T] ≥ α², size then
/// lex) of the current restriction over |T| levels, up to depth r(1+⌈1/(α²ε)⌉).
DecisionTree fourier_tree(const TableFunction& f, int r, double alpha, double epsilon);

struct TreeStatistics {
    std::size_t nodes = 0;
    std::size_t leaves = 0;
    std::size_t low_influence = 0;
    std::size_t resilient = 0;
    std::size_t depth_truncated = 0;
    int max_depth = 0;
    double bad_mass = 0.0;
    double total_mass = 0.0;
    /// max over positive-mass leaves and steps of |leaf mean − root mean|.
    double drift = 0.0;
    /// max over steps of |Σ mass·leaf mean − root mean|.
    double mixture_error = 0.0;
};

TreeStatistics leaf_statistics(const DecisionTree& tree);

/// Leaves that violate the construction's target property.
bool is_bad_leaf(const DecisionTree& tree, const TreeNode& node);

nlohmann::json tree_to_json(const DecisionTree& tree);

}  // namespace noisestab
