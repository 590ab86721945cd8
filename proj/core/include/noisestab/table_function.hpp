#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace noisestab {

/// Bitmask over coordinates; bit i set means coordinate i belongs to the set.
using SubsetMask = std::uint64_t;

/// Which codomain convention a table claims. Conversions are always explicit.
enum class RangeTag { unit_interval, pm_one, unrestricted };

std::string_view to_string(RangeTag tag);
RangeTag range_tag_from_string(std::string_view name);

/// Largest table accepted (q^n entries).
inline constexpr std::size_t kMaxTableSize = std::size_t{1} << 28;

/// Tolerance for "sums to one" checks on probability vectors.
inline constexpr double kProbabilityTol = 1e-12;

/// q^n, throwing InvalidArgument past kMaxTableSize.
std::size_t table_size(int q, int n);

/// Digits of `index` in base q, coordinate 0 first (lowest order).
std::vector<int> decode_index(std::size_t index, int q, int n);
std::size_t encode_index(std::span<const int> symbols, int q);

std::vector<double> uniform_measure(int q);

/// Throws InvalidArgument unless `measure` is a probability vector of length q.
void validate_measure(std::span<const double> measure, int q);

/// Product weight Π_i π(x_i) of every point of Ω^n, indexed like a table.
std::vector<double> product_weights(std::span<const double> measure, int n);

/// Boolean symbols: symbol 0 is the value +1, symbol 1 is −1.
inline constexpr int pm_value(int symbol) { return symbol == 0 ? 1 : -1; }

/// Members of a mask in increasing order.
std::vector<int> mask_members(SubsetMask mask);
SubsetMask mask_of(std::span<const int> coords);
inline int mask_size(SubsetMask mask) { return __builtin_popcountll(mask); }

/// Real-valued function on Ω^n with a product measure, stored densely.
///
/// Index layout is row-major with coordinate 0 as the lowest-order digit,
/// so x = (x_0, ..., x_{n-1}) lives at Σ x_i q^i. Values are immutable once
/// constructed; every transformation returns a new table.
class TableFunction {
public:
    /// An empty `measure` means uniform. Validates all invariants.
    TableFunction(int q, int n, std::vector<double> values, std::vector<double> measure = {},
                  RangeTag range = RangeTag::unrestricted);

    static TableFunction constant(int q, int n, double value, std::vector<double> measure = {},
                                  RangeTag range = RangeTag::unrestricted);

    /// Builds a table by evaluating `rule(std::span<const int>)` on every point.
    template <class Rule>
    static TableFunction tabulate(int q, int n, Rule&& rule, RangeTag range = RangeTag::unrestricted,
                                  std::vector<double> measure = {}) {
        const std::size_t size = table_size(q, n);
        std::vector<double> values(size);
        std::vector<int> x(static_cast<std::size_t>(n), 0);
        for (std::size_t idx = 0; idx < size; ++idx) {
            values[idx] = static_cast<double>(rule(std::span<const int>(x)));
            for (int i = 0; i < n; ++i) {
                if (++x[static_cast<std::size_t>(i)] < q) break;
                x[static_cast<std::size_t>(i)] = 0;
            }
        }
        return TableFunction(q, n, std::move(values), std::move(measure), range);
    }

    int alphabet_size() const noexcept { return q_; }
    int arity() const noexcept { return n_; }
    std::size_t size() const noexcept { return values_.size(); }
    RangeTag range() const noexcept { return range_; }

    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& measure() const noexcept { return measure_; }

    double operator[](std::size_t index) const { return values_[index]; }
    double at(std::span<const int> symbols) const;

    /// q = 2 with the uniform measure.
    bool is_boolean_uniform() const;

    /// Product-measure weight of the point at `index`.
    double weight(std::size_t index) const;

    double mean() const;
    double variance() const;

    /// Same values under a different per-coordinate measure.
    TableFunction with_measure(std::vector<double> measure) const;

    /// Same values with a new range tag (re-validated).
    TableFunction with_range(RangeTag range) const;

private:
    int q_;
    int n_;
    std::vector<double> values_;
    std::vector<double> measure_;
    RangeTag range_;
};

/// {0,1}-valued table to ±1 via 2f − 1. Symbol value +1 stays "true".
TableFunction to_pm_one(const TableFunction& f);

/// ±1-valued table to {0,1} via (1 + f)/2.
TableFunction to_unit_interval(const TableFunction& f);

/// Both-way coordinate flip x -> -x on Boolean tables: g(x) = f(-x).
TableFunction negate_inputs(const TableFunction& f);

}  // namespace noisestab
