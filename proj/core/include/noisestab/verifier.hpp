#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "noisestab/distributions.hpp"
#include "noisestab/gaussian.hpp"
#include "noisestab/resilience.hpp"
#include "noisestab/stability.hpp"
#include "noisestab/table_function.hpp"

namespace noisestab {

/// `inconclusive_estimate` only appears when the Gaussian side is a
/// Monte-Carlo lower estimate that cannot separate the two sides.
enum class Verdict { holds, violated, hypotheses_not_met, inconclusive_estimate };
std::string_view to_string(Verdict verdict);

/// upper: claims lhs ≤ rhs, margin = rhs − lhs.
/// lower: claims lhs ≥ rhs, margin = lhs − rhs.
enum class BoundDirection { upper, lower };
std::string_view to_string(BoundDirection direction);

/// Disjoint-support failure: S ∩ T ≠ ∅ with both coefficients above β.
struct FourierWitness {
    std::vector<int> f_set;
    std::vector<int> g_set;
    double f_coefficient = 0.0;
    double g_coefficient = 0.0;
};

struct Hypotheses {
    bool met = false;
    std::map<std::string, double> parameters;
    std::vector<ResilienceCertificate> resilience;
    std::vector<CrossResilienceReport> cross;
    std::vector<std::string> notes;
};

struct StabilityReport {
    std::string theorem_id;
    BoundDirection direction = BoundDirection::upper;
    double lhs = 0.0;
    /// Gaussian bound with the slack ε already applied.
    double rhs = 0.0;
    double margin = 0.0;
    Verdict verdict = Verdict::hypotheses_not_met;
    Hypotheses hypotheses;
    std::optional<GammaEstimate> gamma;
    std::optional<FourierWitness> witness;
};

/// Margins this close to zero count as satisfied (pure rounding).
inline constexpr double kMarginSlack = 1e-12;

/// ⟨f,g⟩_ρ ≤ ⟨χ_{μf}, χ_{μg}⟩_ρ + ε for (r,α)-resilient f on the uniform
/// cube; f, g ∈ [0,1], ρ ∈ [0,1], ε ≥ 0. A failed certificate gives
/// hypotheses_not_met with the margin still computed.
StabilityReport check_theorem_two(const TableFunction& f, const TableFunction& g, double rho, double epsilon, int r,
                                  double alpha);

struct MultiCheckOptions {
    std::size_t samples = 200000;
    std::uint64_t seed = 1;
    double budget = kDefaultEnumerationBudget;
};

/// ⟨F⟩_𝒫 ≤ Γ_𝒢(μ) + ε with every f^{(j)} required (r, ε/(4ℓ))-resilient
/// under π_j. The Gaussian side is gamma_estimate, a lower estimate, so
/// "holds" needs lhs ≤ estimate + ε − half-width; otherwise the verdict is
/// inconclusive_estimate (violated only when the estimate is exact).
StabilityReport check_theorem_multi(const std::vector<TableFunction>& functions, const StepDistribution& p,
                                    double epsilon, int r, const MultiCheckOptions& options = {});

/// Upper bound of check_theorem_two under (m,β)-cross-resilience instead of
/// resilience. A negative margin also reports a FourierWitness when one exists.
StabilityReport check_theorem_three(const TableFunction& f, const TableFunction& g, double rho, double epsilon,
                                    int m, double beta);

/// Mirrored lower bound ⟨f,g⟩_ρ ≥ μf − ⟨χ_{μf}, χ_{1−μg}⟩_ρ − ε under the
/// same cross-resilience hypothesis.
StabilityReport check_theorem_three_lower(const TableFunction& f, const TableFunction& g, double rho, double epsilon,
                                          int m, double beta);

/// max over S ∩ T ≠ ∅, 0 < |S|,|T| ≤ m of min(|f̂(S)|, |ĝ(T)|), when above β.
std::optional<FourierWitness> find_fourier_witness(const TableFunction& f, const TableFunction& g, int m, double beta);

struct ParadoxReport {
    std::optional<double> enumeration;
    double identity = 0.0;
    /// |enumeration − identity| when both exist.
    double difference = 0.0;

    double value() const { return enumeration.value_or(identity); }
};

/// P[f(x) = g(y) = h(z)] with voter columns uniform on the six rational
/// profiles; exact enumeration of 6^n profiles.
double paradox_probability_enumeration(const TableFunction& f, const TableFunction& g, const TableFunction& h,
                                       double budget = kDefaultEnumerationBudget);

/// Same quantity from 1 − ΣE + Σ⟨·,·⟩_{−1/3} in the {0,1} convention, each
/// negative-correlation term evaluated as ⟨a, b∘neg⟩_{1/3}.
double paradox_probability_identity(const TableFunction& f, const TableFunction& g, const TableFunction& h);

/// Both routes; enumeration is skipped (left empty) past `budget`.
/// Accepts ±1-valued or {0,1}-valued Boolean tables.
ParadoxReport paradox_probability(const TableFunction& f, const TableFunction& g, const TableFunction& h,
                                  double budget = kDefaultEnumerationBudget);

/// 3⟨χ_½, 1 − χ_½⟩_{1/3} − 1/2.
double guilbaud_constant();

/// P[f=g=h] ≥ guilbaud_constant() − ε for balanced ±1 functions that are
/// pairwise (m,β)-cross-resilient.
StabilityReport check_arrow(const TableFunction& f, const TableFunction& g, const TableFunction& h, double epsilon,
                            int m, double beta, double budget = kDefaultEnumerationBudget);

nlohmann::json report_to_json(const StabilityReport& report);
nlohmann::json certificate_to_json(const ResilienceCertificate& cert);
nlohmann::json cross_to_json(const CrossResilienceReport& rep);

}  // namespace noisestab
