#include "noisestab/gaussian.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "noisestab/errors.hpp"
#include "noisestab/stability.hpp"

namespace noisestab {
namespace {

constexpr double kQuadratureTol = 1e-13;
constexpr unsigned kQuadratureDepth = 25;

template <class F>
double integrate(F&& f, double a, double b) {
    if (!(b > a)) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 31>::integrate(f, a, b, kQuadratureDepth, kQuadratureTol);
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

/// Quadrature-only evaluation for finite thresholds and |ρ| < 1.
double quadrant_integral(double h, double k, double rho) {
    const double s = std::sqrt((1.0 - rho) * (1.0 + rho));
    const double upper = std::min(h, kGaussianTruncation);
    const double value = integrate([=](double t) { return normal_pdf(t) * normal_cdf((k - rho * t) / s); },
                                   -kGaussianTruncation, upper);
    return clamp01(value);
}

/// Exact limits; returns NaN when the generic integral is needed.
double quadrant_limits(double h, double k, double rho) {
    if (h == -INFINITY || k == -INFINITY) return 0.0;
    if (h == INFINITY) return normal_cdf(k);
    if (k == INFINITY) return normal_cdf(h);
    if (rho >= 1.0) return normal_cdf(std::min(h, k));
    if (rho <= -1.0) return std::max(0.0, normal_cdf(h) + normal_cdf(k) - 1.0);
    return NAN;
}

void validate_rho(double rho) {
    if (!(rho >= -1.0 && rho <= 1.0)) throw InvalidArgument("correlation must lie in [-1,1]");
}

}  // namespace

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidArgument("quantile argument must lie in [0,1]");
    if (mu == 0.0) return -INFINITY;
    if (mu == 1.0) return INFINITY;
    return boost::math::quantile(boost::math::normal_distribution<double>(), mu);
}

double bivariate_normal_cdf(double h, double k, double rho) {
    validate_rho(rho);
    const double limit = quadrant_limits(h, k, rho);
    if (!std::isnan(limit)) return limit;
    if (rho == 0.0) return normal_cdf(h) * normal_cdf(k);
    return quadrant_integral(h, k, rho);
}

void HalfspaceQuery::validate() const {
    if (!(mu1 >= 0.0 && mu1 <= 1.0) || !(mu2 >= 0.0 && mu2 <= 1.0)) {
        throw InvalidArgument("half-space means must lie in [0,1]");
    }
    validate_rho(rho);
}

double arcsine_stability(double rho) { return 0.25 + std::asin(rho) / (2.0 * std::numbers::pi); }

double halfspace_stability(const HalfspaceQuery& query) {
    query.validate();
    const auto [mu1, mu2, rho] = query;
    if (mu1 == 0.0 || mu2 == 0.0) return 0.0;
    if (mu1 == 1.0) return mu2;
    if (mu2 == 1.0) return mu1;
    if (rho == 0.0) return mu1 * mu2;
    if (rho == 1.0) return std::min(mu1, mu2);
    if (rho == -1.0) return std::max(0.0, mu1 + mu2 - 1.0);
    if (mu1 == 0.5 && mu2 == 0.5) return arcsine_stability(rho);
    return quadrant_integral(normal_quantile(mu1), normal_quantile(mu2), rho);
}

double halfspace_stability_quadrature(const HalfspaceQuery& query) {
    query.validate();
    const auto [mu1, mu2, rho] = query;
    if (mu1 == 0.0 || mu2 == 0.0) return 0.0;
    if (mu1 == 1.0) return mu2;
    if (mu2 == 1.0) return mu1;
    if (rho == 1.0) return std::min(mu1, mu2);
    if (rho == -1.0) return std::max(0.0, mu1 + mu2 - 1.0);
    return quadrant_integral(normal_quantile(mu1), normal_quantile(mu2), rho);
}

ContinuityReport continuity_bound_check(double mu1, double mu2, double rho1, double rho2, double mu1p, double mu2p) {
    if (!(rho1 <= rho2 && rho2 < 1.0)) throw InvalidArgument("continuity check needs ρ1 ≤ ρ2 < 1");
    ContinuityReport r;
    r.rho_lhs = std::abs(halfspace_stability({mu1, mu2, rho1}) - halfspace_stability({mu1, mu2, rho2}));
    r.rho_rhs = 10.0 * (rho2 - rho1) / (1.0 - rho2);
    r.rho_holds = r.rho_lhs <= r.rho_rhs;
    for (double rho : {rho1, rho2}) {
        r.mu_lhs = std::max(r.mu_lhs, std::abs(halfspace_stability({mu1p, mu2p, rho}) - halfspace_stability({mu1, mu2, rho})));
    }
    r.mu_rhs = 2.0 * std::abs(mu1 - mu1p) + 2.0 * std::abs(mu2 - mu2p);
    r.mu_holds = r.mu_lhs <= r.mu_rhs;
    return r;
}

double borell_bound(double mu_phi, double mu_psi, double rho) {
    if (rho < 0.0) throw UnsupportedDomain("Borell's bound is stated for ρ ≥ 0");
    return halfspace_stability({mu_phi, mu_psi, rho});
}

PiecewiseConstant::PiecewiseConstant(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (values_.size() != breakpoints_.size() + 1) {
        throw InvalidArgument("a step function needs one more value than breakpoints");
    }
    if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end())) throw InvalidArgument("breakpoints must increase");
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("step function values must lie in [0,1]");
    }
}

PiecewiseConstant PiecewiseConstant::interval(double a, double b) { return PiecewiseConstant({a, b}, {0.0, 1.0, 0.0}); }

PiecewiseConstant PiecewiseConstant::halfline(double mu) {
    if (mu <= 0.0) return constant(0.0);
    if (mu >= 1.0) return constant(1.0);
    return PiecewiseConstant({normal_quantile(mu)}, {1.0, 0.0});
}

PiecewiseConstant PiecewiseConstant::constant(double c) { return PiecewiseConstant({}, {c}); }

double PiecewiseConstant::operator()(double x) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double PiecewiseConstant::mean() const {
    double total = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double lo = i == 0 ? 0.0 : normal_cdf(breakpoints_[i - 1]);
        const double hi = i == breakpoints_.size() ? 1.0 : normal_cdf(breakpoints_[i]);
        total += values_[i] * (hi - lo);
    }
    return total;
}

BorellReport borell_check(const PiecewiseConstant& phi, const PiecewiseConstant& psi, double rho) {
    if (rho < 0.0) throw UnsupportedDomain("Borell's bound is stated for ρ ≥ 0");
    if (rho > 1.0) throw InvalidArgument("correlation must lie in [-1,1]");
    BorellReport r;
    r.rho = rho;
    r.mu_phi = phi.mean();
    r.mu_psi = psi.mean();
    r.bound = borell_bound(r.mu_phi, r.mu_psi, rho);

    const double s = std::sqrt((1.0 - rho) * (1.0 + rho));
    // E[ψ(M) | N = t] with M | N = t ~ N(ρt, 1−ρ²).
    auto inner = [&](double t) {
        if (s == 0.0) return psi(rho * t);
        double acc = 0.0;
        const auto& bp = psi.breakpoints();
        const auto& vals = psi.values();
        for (std::size_t j = 0; j < vals.size(); ++j) {
            const double lo = j == 0 ? 0.0 : normal_cdf((bp[j - 1] - rho * t) / s);
            const double hi = j == bp.size() ? 1.0 : normal_cdf((bp[j] - rho * t) / s);
            acc += vals[j] * (hi - lo);
        }
        return acc;
    };
    // Integrate piece by piece so every integrand is smooth in t (for ρ < 1).
    std::vector<double> cuts{-kGaussianTruncation};
    for (double b : phi.breakpoints()) cuts.push_back(std::clamp(b, -kGaussianTruncation, kGaussianTruncation));
    if (s == 0.0) {
        for (double b : psi.breakpoints()) cuts.push_back(std::clamp(b / rho, -kGaussianTruncation, kGaussianTruncation));
    }
    cuts.push_back(kGaussianTruncation);
    std::sort(cuts.begin(), cuts.end());
    double value = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k];
        const double b = cuts[k + 1];
        if (!(b > a)) continue;
        const double level = phi(0.5 * (a + b));
        if (level == 0.0) continue;
        value += level * integrate([&](double t) { return normal_pdf(t) * inner(t); }, a, b);
    }
    r.value = value;
    r.holds = r.value <= r.bound + 1e-8;
    return r;
}

GammaEstimate gamma_estimate(std::span<const double> mu, const GaussianCounterpart& g, std::size_t samples,
                             std::uint64_t seed) {
    const int ell = g.steps;
    const int q = g.alphabet_size;
    if (mu.size() != static_cast<std::size_t>(ell)) throw InvalidArgument("need one mean per step");
    for (double m : mu) {
        if (!(m >= 0.0 && m <= 1.0)) throw InvalidArgument("Γ means must lie in [0,1]");
    }
    GammaEstimate out;
    out.mu.assign(mu.begin(), mu.end());
    out.induced_correlation = Eigen::MatrixXd::Identity(ell, ell);
    const double product = std::accumulate(mu.begin(), mu.end(), 1.0, std::multiplies<>());

    if (std::any_of(mu.begin(), mu.end(), [](double m) { return m == 0.0; })) {
        out.strategy = "zero-mean";
        out.value = 0.0;
        return out;
    }
    auto block = [&](int j, int k) { return g.covariance.block(j * q, k * q, q, q); };
    double cross = 0.0;
    for (int j = 0; j < ell; ++j) {
        for (int k = 0; k < ell; ++k) {
            if (j != k) cross = std::max(cross, block(j, k).cwiseAbs().maxCoeff());
        }
    }
    if (cross < 1e-14) {
        out.strategy = "independent-exact";
        out.value = product;
        return out;
    }

    // Whiten each step block (pseudo-inverse square root; the indicator blocks
    // are singular) and take the leading eigenvector of the whitened
    // cross-step matrix: the first canonical direction shared by all steps.
    const Eigen::Index dim = g.dimension();
    Eigen::MatrixXd whiten = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<Eigen::VectorXd> fallback(static_cast<std::size_t>(ell));
    for (int j = 0; j < ell; ++j) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(block(j, j));
        const auto& lam = eig.eigenvalues();
        Eigen::VectorXd inv = Eigen::VectorXd::Zero(q);
        for (int a = 0; a < q; ++a) inv(a) = lam(a) > 1e-12 ? 1.0 / std::sqrt(lam(a)) : 0.0;
        whiten.block(j * q, j * q, q, q) = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
        fallback[static_cast<std::size_t>(j)] = eig.eigenvectors().col(q - 1);
    }
    Eigen::MatrixXd offdiag = g.covariance;
    for (int j = 0; j < ell; ++j) offdiag.block(j * q, j * q, q, q).setZero();
    const Eigen::MatrixXd canon = whiten * offdiag * whiten;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> top(0.5 * (canon + canon.transpose()));
    const Eigen::VectorXd lead = top.eigenvectors().col(dim - 1);

    std::vector<double> sigma(static_cast<std::size_t>(ell));
    for (int j = 0; j < ell; ++j) {
        Eigen::VectorXd v = whiten.block(j * q, j * q, q, q) * lead.segment(j * q, q);
        if (v.norm() < 1e-12) v = fallback[static_cast<std::size_t>(j)];
        const double var = v.dot(block(j, j) * v);
        sigma[static_cast<std::size_t>(j)] = std::sqrt(std::max(var, 0.0));
        out.directions.push_back(v);
    }
    for (int j = 0; j < ell; ++j) {
        for (int k = 0; k < ell; ++k) {
            if (j == k) continue;
            const double den = sigma[static_cast<std::size_t>(j)] * sigma[static_cast<std::size_t>(k)];
            out.induced_correlation(j, k) =
                den > 0.0 ? out.directions[static_cast<std::size_t>(j)].dot(block(j, k) * out.directions[static_cast<std::size_t>(k)]) / den : 0.0;
        }
    }

    if (samples < 2) throw InvalidArgument("Γ estimation needs at least 2 samples");
    const Eigen::MatrixXd draws = sample_gaussian(g, samples, seed);
    std::vector<double> cut(static_cast<std::size_t>(ell));
    for (int j = 0; j < ell; ++j) cut[static_cast<std::size_t>(j)] = normal_quantile(mu[static_cast<std::size_t>(j)]);
    double hits = 0.0;
    for (Eigen::Index c = 0; c < draws.cols(); ++c) {
        bool inside = true;
        for (int j = 0; j < ell && inside; ++j) {
            const auto sj = static_cast<std::size_t>(j);
            if (sigma[sj] == 0.0) {
                inside = mu[sj] >= 0.5;  // degenerate projection: pick the half-space containing 0
                continue;
            }
            const double z = out.directions[sj].dot(draws.col(c).segment(j * q, q) - g.mean.segment(j * q, q)) / sigma[sj];
            inside = z <= cut[sj];
        }
        if (inside) hits += 1.0;
    }
    const double n = static_cast<double>(samples);
    const double p = hits / n;
    const double hw = kZ99 * std::sqrt(p * (1.0 - p) / n);
    out.samples = samples;
    if (p >= product) {
        out.strategy = "halfspace-family";
        out.value = p;
        out.half_width = hw;
    } else {
        out.strategy = "constant-functions";
        out.value = product;
    }
    return out;
}

}  // namespace noisestab
