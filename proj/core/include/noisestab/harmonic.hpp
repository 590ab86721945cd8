#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <vector>

#include "noisestab/table_function.hpp"

namespace noisestab {

/// Walsh–Fourier coefficients f̂(S), indexed by subset bitmask.
struct FourierExpansion {
    int arity = 0;
    std::vector<double> coefficients;

    double coefficient(SubsetMask set) const { return coefficients.at(set); }

    /// Σ_{|S| = k} f̂(S)² for k = 0..n.
    std::vector<double> level_weights() const;
};

/// f̂(S) = E[f·x_S] by an in-place butterfly, O(n·2^n).
/// Throws UnsupportedDomain unless q = 2 with the uniform measure.
FourierExpansion fourier_transform(const TableFunction& f);

/// Exact inverse of fourier_transform; the result is tagged unrestricted.
TableFunction inverse_fourier(const FourierExpansion& expansion);

/// Orthogonal decomposition f = Σ_S f_S under the product measure.
///
/// Each component f_S is stored as a table on Ω^S (coordinates of S in
/// increasing order) and depends only on those coordinates.
struct EfronSteinDecomposition {
    int arity = 0;
    int alphabet_size = 2;
    std::vector<double> measure;
    std::map<SubsetMask, TableFunction> components;
    std::map<SubsetMask, double> component_variances;

    const TableFunction& component(SubsetMask set) const { return components.at(set); }
    double variance_of(SubsetMask set) const { return component_variances.at(set); }

    /// f_S lifted back to a table on the full Ω^n.
    TableFunction lifted_component(SubsetMask set) const;

    /// Σ_S f_S as a table on Ω^n.
    TableFunction reconstruct() const;
};

/// Every component and its variance; cost O(n·(1+q)^n).
EfronSteinDecomposition efron_stein(const TableFunction& f);

/// Var[f_S] for every S (indexed by mask) without materialising component tables.
std::vector<double> component_variances(const TableFunction& f);

/// I_i(f) = E[Var[f | all coordinates except i]].
double influence(const TableFunction& f, int coordinate);
std::vector<double> influences(const TableFunction& f);
double total_influence(const TableFunction& f);

/// T_η: each coordinate kept with probability η, else resampled from the measure.
TableFunction noise_operator(const TableFunction& f, double eta);

/// Applies a row-stochastic q×q kernel to every coordinate:
/// (Kf)(x) = Σ_y Π_i K[x_i][y_i] f(y). The result carries `output_measure`
/// (empty: the input's measure). Throws InvalidKernel on a bad kernel.
TableFunction apply_kernel(const TableFunction& f, const Eigen::MatrixXd& kernel,
                           std::vector<double> output_measure = {});

/// f with coordinates `coords` pinned to `assignment`; arity drops by |coords|.
TableFunction restrict(const TableFunction& f, std::span<const int> coords,
                       std::span<const int> assignment);

/// z ↦ E[f | X_S = z] as a table on Ω^S, coordinates of S in increasing order.
TableFunction conditional_expectation(const TableFunction& f, std::span<const int> coords);

}  // namespace noisestab
