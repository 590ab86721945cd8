#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "noisestab/distributions.hpp"

namespace noisestab {

double normal_pdf(double x);
double normal_cdf(double x);

/// Φ⁻¹(μ). Returns −∞ at μ = 0 and +∞ at μ = 1; throws outside [0,1].
double normal_quantile(double mu);

/// Left truncation point of every quadrature; Φ(−8.3) < 1e-16.
inline constexpr double kGaussianTruncation = 8.3;

/// P[N ≤ h, M ≤ k] for standard normals with correlation ρ. Infinite
/// thresholds and |ρ| = 1 use exact limits; everything else integrates
/// ∫_{−8.3}^{h} φ(t) Φ((k − ρt)/√(1−ρ²)) dt adaptively.
double bivariate_normal_cdf(double h, double k, double rho);

/// ⟨χ_{μ1}, χ_{μ2}⟩_ρ arguments.
struct HalfspaceQuery {
    double mu1 = 0.5;
    double mu2 = 0.5;
    double rho = 0.0;

    void validate() const;
};

/// Half-space noise stability with exact special cases (μ ∈ {0,1}, ρ ∈ {0,±1},
/// μ1 = μ2 = 1/2 via the arcsine law); quadrature otherwise.
double halfspace_stability(const HalfspaceQuery& query);

/// Same quantity, always by quadrature except where the integrand is singular
/// (μ ∈ {0,1}, |ρ| = 1). Used to cross-check the closed forms.
double halfspace_stability_quadrature(const HalfspaceQuery& query);

/// 1/4 + arcsin(ρ)/(2π).
double arcsine_stability(double rho);

struct ContinuityReport {
    double rho_lhs = 0.0;
    double rho_rhs = 0.0;
    double mu_lhs = 0.0;
    double mu_rhs = 0.0;
    bool rho_holds = false;
    bool mu_holds = false;
    bool holds() const { return rho_holds && mu_holds; }
};

/// Both continuity estimates for half-space stability:
/// |H(ρ1) − H(ρ2)| ≤ 10(ρ2−ρ1)/(1−ρ2) at (μ1, μ2), and
/// |H(μ1', μ2') − H(μ1, μ2)| ≤ 2|μ1−μ1'| + 2|μ2−μ2'| at both ρ1 and ρ2.
ContinuityReport continuity_bound_check(double mu1, double mu2, double rho1, double rho2, double mu1p, double mu2p);

/// Borell's upper bound ⟨χ_{μφ}, χ_{μψ}⟩_ρ for ρ ≥ 0.
double borell_bound(double mu_phi, double mu_psi, double rho);

/// Step function on ℝ with values in [0,1]: values[i] on
/// [breakpoints[i-1], breakpoints[i]), with ±∞ at the ends.
class PiecewiseConstant {
public:
    PiecewiseConstant(std::vector<double> breakpoints, std::vector<double> values);

    /// Indicator of [a, b].
    static PiecewiseConstant interval(double a, double b);
    /// Indicator of (−∞, Φ⁻¹(μ)).
    static PiecewiseConstant halfline(double mu);
    static PiecewiseConstant constant(double c);

    double operator()(double x) const;
    /// Gaussian mean E[φ(N)].
    double mean() const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

struct BorellReport {
    double value = 0.0;
    double bound = 0.0;
    double mu_phi = 0.0;
    double mu_psi = 0.0;
    double rho = 0.0;
    bool holds = false;
};

/// Evaluates ⟨φ,ψ⟩_ρ as an outer adaptive integral over N with the inner
/// conditional expectation of ψ(M) in closed form, and compares it with
/// borell_bound(μφ, μψ, ρ) + 1e-8. Throws UnsupportedDomain for ρ < 0.
BorellReport borell_check(const PiecewiseConstant& phi, const PiecewiseConstant& psi, double rho);

/// Heuristic lower estimate of Γ_𝒢(μ) from half-space test functions.
struct GammaEstimate {
    static constexpr const char* kLabel = "lower-estimate";

    std::vector<double> mu;
    double value = 0.0;
    /// "halfspace-family", "constant-functions", "independent-exact" or "zero-mean".
    std::string strategy;
    std::size_t samples = 0;
    double half_width = 0.0;
    /// Correlations of the per-step projections used by the half-spaces.
    Eigen::MatrixXd induced_correlation;
    /// Projection direction inside each step's indicator block.
    std::vector<Eigen::VectorXd> directions;
};

/// For each step, thresholds the projection of that step's indicator block
/// onto its leading cross-step canonical direction at quantile μ_j and
/// Monte-Carlo estimates E[Π φ^{(j)}]. The constant functions (value Π μ_j)
/// are also admissible, so the larger of the two is reported.
GammaEstimate gamma_estimate(std::span<const double> mu, const GaussianCounterpart& g, std::size_t samples,
                             std::uint64_t seed);

}  // namespace noisestab
