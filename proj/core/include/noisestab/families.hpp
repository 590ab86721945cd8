#pragma once

#include <string>
#include <vector>

#include "noisestab/random.hpp"
#include "noisestab/table_function.hpp"

namespace noisestab::families {

/// Boolean families use the symbol convention of pm_value: symbol 0 is +1.

/// sgn(Σ x_i), ties broken to +1. pm_one.
TableFunction majority(int n);

/// x_i. pm_one.
TableFunction dictator(int n, int i);

/// Π_{i∈S} x_i. pm_one.
TableFunction parity(int n, SubsetMask set);

/// OR of `count` disjoint AND-blocks of `width` coordinates, each true when
/// all its inputs are +1; n = width·count. {0,1}-valued.
TableFunction tribes(int width, int count);

/// 1(Σ x_i ≥ a). {0,1}-valued.
TableFunction threshold(int n, int a);

/// x_0 · sgn(Σ_{i≥1} x_i), ties to +1. pm_one; coordinate 0 has influence 1.
TableFunction dictator_times_majority(int n);

/// Indicator 1(x_i = symbol) on Ω^n, uniform measure.
TableFunction coordinate_indicator(int q, int n, int i, int symbol);

/// Uniform [0,1] values.
TableFunction random_unit(int q, int n, Rng& rng, std::vector<double> measure = {});

/// Independent {0,1} values, each 1 with probability p.
TableFunction random_indicator(int q, int n, Rng& rng, double p = 0.5, std::vector<double> measure = {});

/// Random probability vector with every entry at least `floor`.
std::vector<double> random_measure(int q, Rng& rng, double floor = 0.05);

/// Builds a named family from `name` and integer parameters; used by the CLI.
/// Names: majority, dictator, parity, tribes, threshold, dictator_times_majority.
TableFunction by_name(const std::string& name, int n, const std::vector<int>& params);

}  // namespace noisestab::families
