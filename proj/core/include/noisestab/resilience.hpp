#pragma once

#include <vector>

#include "noisestab/table_function.hpp"

namespace noisestab {

/// Largest Σ_{k≤r} C(n,k)·q^n work estimate resilience_defect accepts.
inline constexpr double kResilienceCostGuard = 1e9;

/// Component variances at or above threshold·(1 − kSupportRelTol) count as
/// support; anything below kSupportFloor is treated as numerical zero.
inline constexpr double kSupportRelTol = 1e-9;
inline constexpr double kSupportFloor = 1e-24;

/// Σ_{k≤r} C(n,k)·q^n.
double resilience_cost(int q, int n, int r);

struct ResilienceWitness {
    std::vector<int> coords;
    std::vector<int> assignment;
    double conditional_mean = 0.0;
    double deviation = 0.0;
};

struct ResilienceCertificate {
    int r = 0;
    double defect = 0.0;
    double alpha = 0.0;
    double mean = 0.0;
    ResilienceWitness witness;
    bool passed = false;
};

/// max |E[f | X_S = z] − E[f]| over |S| ≤ r and z of positive probability,
/// by enumeration (S by size then lex, z lex; first maximizer is the witness).
/// passed ⇔ defect ≤ alpha. Throws InvalidArgument for r > n and
/// BudgetExceeded past kResilienceCostGuard.
ResilienceCertificate resilience_defect(const TableFunction& f, int r, double alpha);

/// Coordinates i with some 0 < |S| ≤ r, i ∈ S and Var[f_S] ≥ α².
std::vector<int> fourier_support(const TableFunction& f, int r, double alpha);

/// Same with the variance threshold given directly (useful when α² underflows).
std::vector<int> fourier_support_by_variance(const TableFunction& f, int r, double variance_threshold);

/// Support rule applied to precomputed component variances (indexed by mask).
std::vector<int> support_from_variances(const std::vector<double>& variances, int n, int r,
                                        double variance_threshold);

bool meets_variance_threshold(double variance, double threshold);

struct CrossResilienceReport {
    int r = 0;
    double alpha = 0.0;
    std::vector<int> support_f;
    std::vector<int> support_g;
    std::vector<int> intersection;
    bool cross_resilient = false;
};

/// (r,α)-cross-resilience: disjoint (r,α)-Fourier supports.
CrossResilienceReport cross_resilient(const TableFunction& f, const TableFunction& g, int r, double alpha);

struct SufficientConditionReport {
    int r = 0;
    double alpha = 0.0;
    /// max |f̂(S)| over 0 < |S| ≤ r.
    double max_coefficient = 0.0;
    double premise_bound = 0.0;
    bool premise = false;
    ResilienceCertificate certificate;
    /// premise ⇒ certificate.passed.
    bool consistent = false;
};

/// Small low-degree coefficients (≤ 2^{−r}α) force (r,α)-resilience.
/// Boolean uniform only; throws UnsupportedDomain otherwise.
SufficientConditionReport sufficient_condition_check(const TableFunction& f, int r, double alpha);

struct VarianceImplicationReport {
    int r = 0;
    double alpha = 0.0;
    bool premise = false;
    ResilienceCertificate certificate;
    double max_component_variance = 0.0;
    SubsetMask worst_set = 0;
    /// Var[f_S] ≤ α² + 1e-10 for all 0 < |S| ≤ r.
    bool conclusion = false;
};

/// (r,α)-resilience bounds every low-order Efron–Stein variance by α².
/// The conclusion is evaluated regardless; premise failure is only reported.
VarianceImplicationReport resilience_implies_variance(const TableFunction& f, int r, double alpha);

}  // namespace noisestab
