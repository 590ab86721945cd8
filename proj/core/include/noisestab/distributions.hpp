#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <vector>

namespace noisestab {

/// Probability table 𝒫 on Ω^ℓ ("ℓ-step distribution"). Tuple (ω_0..ω_{ℓ-1})
/// lives at Σ ω_j q^j, step 0 lowest-order, matching TableFunction.
class StepDistribution {
public:
    StepDistribution(int q, int steps, std::vector<double> table);

    int alphabet_size() const noexcept { return q_; }
    int steps() const noexcept { return steps_; }
    std::span<const double> table() const noexcept { return table_; }
    double probability(std::size_t index) const { return table_[index]; }
    double probability(std::span<const int> tuple) const;

    /// Indices of tuples with positive probability, increasing.
    const std::vector<std::size_t>& support() const noexcept { return support_; }
    std::vector<int> tuple(std::size_t index) const;

private:
    int q_;
    int steps_;
    std::vector<double> table_;
    std::vector<std::size_t> support_;
};

/// π_0, ..., π_{ℓ-1}.
std::vector<std::vector<double>> marginals(const StepDistribution& p);

/// π_*: smallest positive marginal probability over all steps and symbols.
double min_atom(const StepDistribution& p);

/// Smallest positive entry of the full table.
double min_table_atom(const StepDistribution& p);

/// Row-stochastic kernel K[a][b] = P(X_to = b | X_from = a). Rows with
/// π_from(a) = 0 are set to π_to.
Eigen::MatrixXd conditional_kernel(const StepDistribution& p, int from, int to);

/// ρ(𝒫,S,T): maximal correlation between the step groups S and T, i.e. the
/// second singular value of P_{S,T}(a,b)/√(π_S(a)π_T(b)) on the support.
/// Throws InvalidPartition when S and T overlap or either is empty.
double rho(const StepDistribution& p, std::span<const int> first, std::span<const int> second);

/// X^{(step)} ∈ symbols ⇔ (other steps) ∈ rest_tuples, almost surely.
struct DegeneracyWitness {
    int step = 0;
    std::vector<int> symbols;
    /// Tuples of the remaining ℓ−1 steps, encoded in increasing step order.
    std::vector<std::size_t> rest_tuples;
};

struct CorrelationReport {
    double rho = 0.0;
    std::vector<double> per_coordinate;
    bool degenerate = false;
    std::optional<DegeneracyWitness> witness;
};

inline constexpr double kDegeneracyThreshold = 1.0 - 1e-9;

/// ρ(𝒫) = max_j ρ(𝒫,{j},[ℓ]∖{j}); searches for an indicator witness when degenerate.
CorrelationReport rho_max(const StepDistribution& p);

/// Indicator witness search; empty when no proper symbol set splits the support.
std::optional<DegeneracyWitness> find_degeneracy_witness(const StepDistribution& p);

/// Gaussian law on ℝ^{ℓq} with the mean and covariance of the per-step
/// indicator vector (1(X^{(j)} = ω))_{j,ω}. Index of (j, ω) is j·q + ω.
struct GaussianCounterpart {
    int steps = 0;
    int alphabet_size = 0;
    Eigen::VectorXd mean;
    /// PSD projection of the raw moment matrix.
    Eigen::MatrixXd covariance;
    /// Eigenvalues below this were clipped to it.
    double eigen_floor = 0.0;
    /// Smallest eigenvalue of the raw moment matrix.
    double min_raw_eigenvalue = 0.0;
    /// covariance = factor · factorᵀ.
    Eigen::MatrixXd factor;

    int dimension() const { return steps * alphabet_size; }
};

GaussianCounterpart gaussian_counterpart(const StepDistribution& p);

/// ℓ×count matrix of symbols; columns i.i.d. from 𝒫. Deterministic per seed.
Eigen::MatrixXi sample(const StepDistribution& p, std::size_t count, std::uint64_t seed);

/// (ℓq)×count matrix of draws from the counterpart. Deterministic per seed.
Eigen::MatrixXd sample_gaussian(const GaussianCounterpart& g, std::size_t count, std::uint64_t seed);

namespace distributions {

/// ±1 pairs with E[xy] = ρ and uniform marginals; symbol 0 is +1.
StepDistribution correlated_bits(double correlation);

/// Uniform on {−1,1}^3 ∖ {±(1,1,1)}: one voter's pairwise preferences.
StepDistribution arrow3();

/// X uniform on F_3, Y ∈ {X, X+1}, Z ∈ {Y, Y+1}, each step equiprobable.
StepDistribution f3_chain();

/// Markov chain X_0 ~ π, X_{k+1} | X_k ~ kernels[k]; ℓ = kernels.size() + 1.
StepDistribution from_kernel(const std::vector<double>& initial, const std::vector<Eigen::MatrixXd>& kernels);

/// Product of the given per-step marginals.
StepDistribution independent(const std::vector<std::vector<double>>& step_marginals);

}  // namespace distributions

/// {"q": int, "l": int, "table": [...]}.
nlohmann::json distribution_to_json(const StepDistribution& p);
StepDistribution distribution_from_json(const nlohmann::json& doc, const std::string& path = "$");

}  // namespace noisestab
