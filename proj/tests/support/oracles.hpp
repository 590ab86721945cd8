#pragma once

// Slow, direct reference computations used only by tests. Each one follows
// the textbook definition and shares no code path with the library routine
// it checks beyond TableFunction storage.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "noisestab/distributions.hpp"
#include "noisestab/table_function.hpp"

namespace noisestab::oracle {

inline double point_weight(const TableFunction& f, const std::vector<int>& x) {
    double w = 1.0;
    for (int v : x) w *= f.measure()[static_cast<std::size_t>(v)];
    return w;
}

inline std::vector<std::vector<int>> all_points(int q, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    const std::size_t total = static_cast<std::size_t>(std::pow(q, n) + 0.5);
    for (std::size_t k = 0; k < total; ++k) {
        out.push_back(x);
        for (int i = 0; i < n; ++i) {
            if (++x[static_cast<std::size_t>(i)] < q) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
    }
    return out;
}

inline double mean(const TableFunction& f) {
    double total = 0.0;
    for (const auto& x : all_points(f.alphabet_size(), f.arity())) total += point_weight(f, x) * f.at(x);
    return total;
}

/// E[f | X_S = z] by summing matching points and dividing by their mass.
inline double conditional_mean(const TableFunction& f, SubsetMask set, const std::vector<int>& x_on_set) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& x : all_points(f.alphabet_size(), f.arity())) {
        bool match = true;
        for (int i = 0; i < f.arity(); ++i) {
            if (((set >> i) & 1U) && x[static_cast<std::size_t>(i)] != x_on_set[static_cast<std::size_t>(i)]) match = false;
        }
        if (!match) continue;
        const double w = point_weight(f, x);
        num += w * f.at(x);
        den += w;
    }
    return den > 0.0 ? num / den : 0.0;
}

/// f_S(x) = Σ_{U ⊆ S} (−1)^{|S∖U|} E[f | X_U = x_U].
inline double efron_stein_component(const TableFunction& f, SubsetMask set, const std::vector<int>& x) {
    double total = 0.0;
    for (SubsetMask u = set;; u = (u - 1) & set) {
        const int sign = (__builtin_popcountll(set & ~u) % 2 == 0) ? 1 : -1;
        total += sign * conditional_mean(f, u, x);
        if (u == 0) break;
    }
    return total;
}

inline double component_variance(const TableFunction& f, SubsetMask set) {
    double mean = 0.0;
    double second = 0.0;
    for (const auto& x : all_points(f.alphabet_size(), f.arity())) {
        const double v = efron_stein_component(f, set, x);
        mean += point_weight(f, x) * v;
        second += point_weight(f, x) * v * v;
    }
    return second - mean * mean;
}

/// E over x_{−i} of the variance of f in coordinate i.
inline double influence(const TableFunction& f, int i) {
    const int q = f.alphabet_size();
    double total = 0.0;
    for (const auto& x : all_points(q, f.arity())) {
        if (x[static_cast<std::size_t>(i)] != 0) continue;
        double rest = 1.0;
        for (int k = 0; k < f.arity(); ++k) {
            if (k != i) rest *= f.measure()[static_cast<std::size_t>(x[static_cast<std::size_t>(k)])];
        }
        auto y = x;
        double m1 = 0.0;
        double m2 = 0.0;
        for (int a = 0; a < q; ++a) {
            y[static_cast<std::size_t>(i)] = a;
            const double w = f.measure()[static_cast<std::size_t>(a)];
            const double v = f.at(y);
            m1 += w * v;
            m2 += w * v * v;
        }
        total += rest * (m2 - m1 * m1);
    }
    return total;
}

/// f̂(S) = E[f · Π_{i∈S} x_i] on the uniform cube.
inline double walsh_coefficient(const TableFunction& f, SubsetMask set) {
    double total = 0.0;
    for (const auto& x : all_points(2, f.arity())) {
        int chi = 1;
        for (int i = 0; i < f.arity(); ++i) {
            if ((set >> i) & 1U) chi *= pm_value(x[static_cast<std::size_t>(i)]);
        }
        total += chi * f.at(x);
    }
    return total / std::pow(2.0, f.arity());
}

/// Σ_{x,y} f(x) g(y) Π_i (1 + ρ x_i y_i)/4 on the uniform cube.
inline double noisy_inner_product(const TableFunction& f, const TableFunction& g, double rho) {
    const auto pts = all_points(2, f.arity());
    double total = 0.0;
    for (const auto& x : pts) {
        for (const auto& y : pts) {
            double w = 1.0;
            for (int i = 0; i < f.arity(); ++i) {
                w *= (1.0 + rho * pm_value(x[static_cast<std::size_t>(i)]) * pm_value(y[static_cast<std::size_t>(i)])) / 4.0;
            }
            total += w * f.at(x) * g.at(y);
        }
    }
    return total;
}

/// E[Π_j f_j(X^{(j)})] over every assignment of Ω^{ℓ n}, zero-probability ones included.
inline double joint_expectation(const std::vector<TableFunction>& fs, const StepDistribution& p) {
    const int q = p.alphabet_size();
    const int ell = p.steps();
    const int n = fs.front().arity();
    double total = 0.0;
    for (const auto& big : all_points(q, ell * n)) {
        double w = 1.0;
        std::vector<std::vector<int>> xs(static_cast<std::size_t>(ell), std::vector<int>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i) {
            std::vector<int> column(static_cast<std::size_t>(ell));
            for (int j = 0; j < ell; ++j) {
                column[static_cast<std::size_t>(j)] = big[static_cast<std::size_t>(i * ell + j)];
                xs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = column[static_cast<std::size_t>(j)];
            }
            w *= p.probability(column);
        }
        if (w == 0.0) continue;
        double prod = w;
        for (int j = 0; j < ell; ++j) prod *= fs[static_cast<std::size_t>(j)].at(xs[static_cast<std::size_t>(j)]);
        total += prod;
    }
    return total;
}

/// Maximal correlation of (X_A, X_B) by alternating conditional expectations
/// (power iteration on the Markov operator restricted to mean-zero functions).
inline double maximal_correlation(const StepDistribution& p, SubsetMask a, SubsetMask b, int iterations = 5000) {
    const int q = p.alphabet_size();
    const int ell = p.steps();
    auto key = [&](const std::vector<int>& t, SubsetMask m) {
        std::size_t k = 0;
        for (int j = ell - 1; j >= 0; --j) {
            if ((m >> j) & 1U) k = k * static_cast<std::size_t>(q) + static_cast<std::size_t>(t[static_cast<std::size_t>(j)]);
        }
        return k;
    };
    const std::size_t na = static_cast<std::size_t>(std::pow(q, __builtin_popcountll(a)) + 0.5);
    const std::size_t nb = static_cast<std::size_t>(std::pow(q, __builtin_popcountll(b)) + 0.5);
    Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(na), static_cast<Eigen::Index>(nb));
    for (std::size_t idx = 0; idx < p.table().size(); ++idx) {
        const auto t = p.tuple(idx);
        joint(static_cast<Eigen::Index>(key(t, a)), static_cast<Eigen::Index>(key(t, b))) += p.probability(idx);
    }
    const Eigen::VectorXd pa = joint.rowwise().sum();
    const Eigen::VectorXd pb = joint.colwise().sum().transpose();
    Eigen::VectorXd g = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(nb), 0.3, 1.7).array().sin();
    double rho = 0.0;
    for (int it = 0; it < iterations; ++it) {
        g.array() -= pb.dot(g);
        const double gn = std::sqrt(pb.dot(g.cwiseProduct(g)));
        if (gn < 1e-300) return 0.0;
        g /= gn;
        Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(na));
        for (Eigen::Index i = 0; i < f.size(); ++i) {
            if (pa(i) > 0.0) f(i) = joint.row(i).dot(g) / pa(i);
        }
        rho = std::sqrt(pa.dot(f.cwiseProduct(f)));
        if (rho < 1e-300) return 0.0;
        f /= rho;
        Eigen::VectorXd next = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nb));
        for (Eigen::Index k = 0; k < next.size(); ++k) {
            if (pb(k) > 0.0) next(k) = joint.col(k).dot(f) / pb(k);
        }
        g = next;
    }
    return rho;
}

inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Plackett: Φ₂(h,k;ρ) = Φ(h)Φ(k) + ∫_0^ρ φ₂(h,k;r) dr, composite Simpson.
inline double bivariate_cdf_plackett(double h, double k, double rho, int intervals = 20000) {
    auto density = [&](double r) {
        const double s = 1.0 - r * r;
        return std::exp(-(h * h - 2.0 * r * h * k + k * k) / (2.0 * s)) / (2.0 * std::numbers::pi * std::sqrt(s));
    };
    const double step = rho / intervals;
    double acc = density(0.0) + density(rho);
    for (int i = 1; i < intervals; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * density(i * step);
    return normal_cdf(h) * normal_cdf(k) + acc * step / 3.0;
}

}  // namespace noisestab::oracle
