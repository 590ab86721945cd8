#include "noisestab/resilience.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisestab/errors.hpp"
#include "noisestab/harmonic.hpp"

namespace noisestab {
namespace {

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

/// Advances `c` to the next k-subset of {0..n-1} in lexicographic order.
bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

}  // namespace

double resilience_cost(int q, int n, int r) {
    double total = 0.0;
    const double full = std::pow(static_cast<double>(q), n);
    for (int k = 0; k <= std::min(r, n); ++k) total += binomial(n, k) * full;
    return total;
}

ResilienceCertificate resilience_defect(const TableFunction& f, int r, double alpha) {
    const int n = f.arity();
    const int q = f.alphabet_size();
    if (r < 0) throw InvalidArgument("resilience order r must be non-negative");
    if (r > n) throw InvalidArgument("resilience order r = " + std::to_string(r) + " exceeds arity " + std::to_string(n));
    const double cost = resilience_cost(q, n, r);
    if (cost > kResilienceCostGuard) throw BudgetExceeded("resilience enumeration Σ C(n,k)·q^n", cost, kResilienceCostGuard);

    ResilienceCertificate cert;
    cert.r = r;
    cert.alpha = alpha;
    cert.mean = f.mean();
    cert.witness.conditional_mean = cert.mean;
    const auto& pi = f.measure();

    for (int k = 1; k <= r; ++k) {
        std::vector<int> coords(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) coords[static_cast<std::size_t>(i)] = i;
        do {
            const auto cond = conditional_expectation(f, coords);
            std::vector<int> z(static_cast<std::size_t>(k), 0);
            while (true) {
                double w = 1.0;
                for (int v : z) w *= pi[static_cast<std::size_t>(v)];
                if (w > 0.0) {
                    const double value = cond[encode_index(z, q)];
                    const double dev = std::abs(value - cert.mean);
                    if (dev > cert.defect) {
                        cert.defect = dev;
                        cert.witness = {coords, z, value, dev};
                    }
                }
                // Lexicographic odometer: the last coordinate moves fastest.
                int pos = k - 1;
                while (pos >= 0 && ++z[static_cast<std::size_t>(pos)] == q) z[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0) break;
            }
        } while (next_combination(coords, n));
    }
    cert.passed = cert.defect <= alpha;
    return cert;
}

bool meets_variance_threshold(double variance, double threshold) {
    return variance >= kSupportFloor && variance >= threshold * (1.0 - kSupportRelTol);
}

std::vector<int> support_from_variances(const std::vector<double>& variances, int n, int r,
                                        double variance_threshold) {
    SubsetMask covered = 0;
    for (SubsetMask s = 1; s < variances.size(); ++s) {
        const int size = mask_size(s);
        if (size <= r && meets_variance_threshold(variances[s], variance_threshold)) covered |= s;
    }
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
        if ((covered >> i) & 1U) out.push_back(i);
    }
    return out;
}

std::vector<int> fourier_support_by_variance(const TableFunction& f, int r, double variance_threshold) {
    if (r < 1) throw InvalidArgument("Fourier support needs r ≥ 1");
    return support_from_variances(component_variances(f), f.arity(), r, variance_threshold);
}

std::vector<int> fourier_support(const TableFunction& f, int r, double alpha) {
    if (!(alpha > 0.0)) throw InvalidArgument("Fourier support needs α > 0");
    return fourier_support_by_variance(f, r, alpha * alpha);
}

CrossResilienceReport cross_resilient(const TableFunction& f, const TableFunction& g, int r, double alpha) {
    if (f.arity() != g.arity() || f.alphabet_size() != g.alphabet_size()) {
        throw InvalidArgument("cross-resilience needs functions on the same domain");
    }
    CrossResilienceReport rep;
    rep.r = r;
    rep.alpha = alpha;
    rep.support_f = fourier_support(f, r, alpha);
    rep.support_g = fourier_support(g, r, alpha);
    std::set_intersection(rep.support_f.begin(), rep.support_f.end(), rep.support_g.begin(), rep.support_g.end(),
                          std::back_inserter(rep.intersection));
    rep.cross_resilient = rep.intersection.empty();
    return rep;
}

SufficientConditionReport sufficient_condition_check(const TableFunction& f, int r, double alpha) {
    if (!f.is_boolean_uniform()) throw UnsupportedDomain("the coefficient criterion is for the uniform Boolean cube");
    const auto fh = fourier_transform(f);
    SufficientConditionReport rep;
    rep.r = r;
    rep.alpha = alpha;
    rep.premise_bound = std::ldexp(alpha, -r);
    for (SubsetMask s = 1; s < fh.coefficients.size(); ++s) {
        if (mask_size(s) <= r) rep.max_coefficient = std::max(rep.max_coefficient, std::abs(fh.coefficients[s]));
    }
    rep.premise = rep.max_coefficient <= rep.premise_bound;
    rep.certificate = resilience_defect(f, r, alpha);
    rep.consistent = !rep.premise || rep.certificate.passed;
    return rep;
}

VarianceImplicationReport resilience_implies_variance(const TableFunction& f, int r, double alpha) {
    VarianceImplicationReport rep;
    rep.r = r;
    rep.alpha = alpha;
    rep.certificate = resilience_defect(f, r, alpha);
    rep.premise = rep.certificate.passed;
    const auto vars = component_variances(f);
    for (SubsetMask s = 1; s < vars.size(); ++s) {
        if (mask_size(s) <= r && vars[s] > rep.max_component_variance) {
            rep.max_component_variance = vars[s];
            rep.worst_set = s;
        }
    }
    rep.conclusion = rep.max_component_variance <= alpha * alpha + 1e-10;
    return rep;
}

}  // namespace noisestab
