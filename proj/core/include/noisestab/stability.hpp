#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "noisestab/distributions.hpp"
#include "noisestab/table_function.hpp"

namespace noisestab {

/// Work limit for exact enumeration over supp(𝒫)^n.
inline constexpr double kDefaultEnumerationBudget = 1e8;

/// Two-sided 99% normal quantile used by every Monte-Carlo half-width.
inline constexpr double kZ99 = 2.5758293035489004;

/// ⟨f,g⟩_ρ = Σ_S ρ^{|S|} f̂(S) ĝ(S) on the uniform cube, ρ ∈ [−1,1].
double noisy_inner_product(const TableFunction& f, const TableFunction& g, double rho);

/// ⟨f,g⟩_𝒫 for a 2-step 𝒫: E_{π_0}[f · Kg] with K the step-0→1 conditional
/// kernel applied coordinatewise. Cost O(n q^2 q^n).
double pair_correlation(const TableFunction& f, const TableFunction& g, const StepDistribution& p);

/// Visits every assignment of supp(𝒫)^n with its probability. `indices[j]`
/// is the table index of X^{(j)}. Throws BudgetExceeded past `budget` leaves.
void for_each_joint_assignment(const StepDistribution& p, int n, double budget,
                               const std::function<void(std::span<const std::size_t> indices, double weight)>& visit);

/// ⟨F⟩_𝒫 = E[Π_j f^{(j)}(X^{(j)})] by exact enumeration of supp(𝒫)^n.
double multi_correlation(std::span<const TableFunction> functions, const StepDistribution& p,
                         double budget = kDefaultEnumerationBudget);

struct MonteCarloEstimate {
    double estimate = 0.0;
    /// 99% normal-approximation half-width.
    double half_width = 0.0;
    std::size_t samples = 0;
};

/// Sample mean of Π_j f^{(j)} over i.i.d. columns. Samples are split into
/// fixed-size chunks seeded from (seed, chunk index) and summed in order, so
/// the result does not depend on how chunks are scheduled.
MonteCarloEstimate multi_correlation_mc(std::span<const TableFunction> functions, const StepDistribution& p,
                                        std::size_t samples, std::uint64_t seed);

struct SmoothingReport {
    double rho = 0.0;
    double epsilon = 0.0;
    double gamma = 0.0;
    double original = 0.0;
    double smoothed = 0.0;
    double difference = 0.0;
    bool holds = false;
};

/// Compares ⟨F⟩_𝒫 with ⟨T_{1−γ}F⟩_𝒫 at γ = (1−ρ)ε/(ℓ ln(ℓ/ε)) (or the
/// supplied γ), each f^{(j)} smoothed under its marginal π_j.
/// Throws DegenerateDistribution when ρ(𝒫) = 1.
SmoothingReport smoothing_check(std::span<const TableFunction> functions, const StepDistribution& p, double epsilon,
                                std::optional<double> gamma = std::nullopt);

}  // namespace noisestab
