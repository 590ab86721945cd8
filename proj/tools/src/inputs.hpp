#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "noisestab/distributions.hpp"
#include "noisestab/table_function.hpp"

namespace noisestab::cli {

/// Where a function comes from: a named family or a JSON file.
struct FunctionSource {
    std::string family;
    std::string file;
    std::vector<int> params;

    bool given() const { return !family.empty() || !file.empty(); }
};

/// Shape and codomain options shared by every function of a command.
struct FunctionShape {
    int n = 3;
    int q = 2;
    /// unit: {0,1} / [0,1] tables; pm: ±1 tables; native: as built.
    std::string range = "unit";
};

/// Families: majority, dictator, parity, tribes, threshold,
/// dictator_times_majority (Boolean), plus indicator (params: coord, symbol),
/// random_indicator and random_unit on Ω = [q]. Random families draw from
/// `seed`. Files are loaded as stored; --range applies to families only.
TableFunction load_function(const FunctionSource& source, const FunctionShape& shape, std::uint64_t seed);

/// "correlated_bits:RHO", "f3_chain", "arrow3", or a JSON file path.
StepDistribution load_distribution(const std::string& spec);

/// "a:b:step" (inclusive of b) or a comma list.
std::vector<double> parse_grid(const std::string& text);

}  // namespace noisestab::cli
