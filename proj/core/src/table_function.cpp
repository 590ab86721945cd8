#include "noisestab/table_function.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "noisestab/errors.hpp"

namespace noisestab {

std::string_view to_string(RangeTag tag) {
    switch (tag) {
        case RangeTag::unit_interval: return "unit_interval";
        case RangeTag::pm_one: return "pm_one";
        case RangeTag::unrestricted: return "unrestricted";
    }
    return "unrestricted";
}

RangeTag range_tag_from_string(std::string_view name) {
    if (name == "unit_interval") return RangeTag::unit_interval;
    if (name == "pm_one") return RangeTag::pm_one;
    if (name == "unrestricted") return RangeTag::unrestricted;
    throw InvalidArgument("unknown range tag '" + std::string(name) + "'");
}

std::size_t table_size(int q, int n) {
    if (q < 2) throw InvalidArgument("alphabet size must be at least 2, got " + std::to_string(q));
    if (n < 0) throw InvalidArgument("arity must be nonnegative, got " + std::to_string(n));
    std::size_t size = 1;
    for (int i = 0; i < n; ++i) {
        size *= static_cast<std::size_t>(q);
        if (size > kMaxTableSize) {
            throw InvalidArgument("table q^n = " + std::to_string(q) + "^" + std::to_string(n) +
                                  " exceeds the exhaustive-enumeration limit");
        }
    }
    return size;
}

std::vector<int> decode_index(std::size_t index, int q, int n) {
    std::vector<int> x(static_cast<std::size_t>(n));
    for (auto& digit : x) {
        digit = static_cast<int>(index % static_cast<std::size_t>(q));
        index /= static_cast<std::size_t>(q);
    }
    return x;
}

std::size_t encode_index(std::span<const int> symbols, int q) {
    std::size_t index = 0;
    for (std::size_t i = symbols.size(); i-- > 0;) {
        index = index * static_cast<std::size_t>(q) + static_cast<std::size_t>(symbols[i]);
    }
    return index;
}

std::vector<double> uniform_measure(int q) {
    return std::vector<double>(static_cast<std::size_t>(q), 1.0 / q);
}

void validate_measure(std::span<const double> measure, int q) {
    if (measure.size() != static_cast<std::size_t>(q)) {
        throw InvalidArgument("measure has " + std::to_string(measure.size()) +
                              " entries, alphabet size is " + std::to_string(q));
    }
    double total = 0.0;
    for (double p : measure) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("measure entries must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > kProbabilityTol) {
        throw InvalidArgument("measure sums to " + std::to_string(total) + ", not 1");
    }
}

std::vector<double> product_weights(std::span<const double> measure, int n) {
    const int q = static_cast<int>(measure.size());
    std::vector<double> weights(table_size(q, n), 1.0);
    std::size_t block = 1;
    for (int i = 0; i < n; ++i) {
        const std::size_t stride = block;
        block *= static_cast<std::size_t>(q);
        for (std::size_t idx = 0; idx < weights.size(); ++idx) {
            weights[idx] *= measure[(idx / stride) % static_cast<std::size_t>(q)];
        }
    }
    return weights;
}

std::vector<int> mask_members(SubsetMask mask) {
    std::vector<int> members;
    for (int i = 0; mask != 0; ++i, mask >>= 1) {
        if (mask & 1U) members.push_back(i);
    }
    return members;
}

SubsetMask mask_of(std::span<const int> coords) {
    SubsetMask mask = 0;
    for (int c : coords) mask |= SubsetMask{1} << c;
    return mask;
}

TableFunction::TableFunction(int q, int n, std::vector<double> values, std::vector<double> measure,
                             RangeTag range)
    : q_(q), n_(n), values_(std::move(values)), measure_(std::move(measure)), range_(range) {
    const std::size_t expected = table_size(q, n);
    if (values_.size() != expected) {
        throw InvalidArgument("value table has " + std::to_string(values_.size()) +
                              " entries, expected q^n = " + std::to_string(expected));
    }
    if (measure_.empty()) measure_ = uniform_measure(q);
    validate_measure(measure_, q);
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
        const double v = values_[idx];
        if (!std::isfinite(v)) throw InvalidArgument("value " + std::to_string(idx) + " is not finite");
        if (range_ == RangeTag::unit_interval && (v < 0.0 || v > 1.0)) {
            throw InvalidArgument("value " + std::to_string(idx) + " = " + std::to_string(v) +
                                  " outside [0,1] for a unit_interval table");
        }
        if (range_ == RangeTag::pm_one && v != 1.0 && v != -1.0) {
            throw InvalidArgument("value " + std::to_string(idx) + " = " + std::to_string(v) +
                                  " is not ±1 for a pm_one table");
        }
    }
}

TableFunction TableFunction::constant(int q, int n, double value, std::vector<double> measure,
                                      RangeTag range) {
    return TableFunction(q, n, std::vector<double>(table_size(q, n), value), std::move(measure), range);
}

double TableFunction::at(std::span<const int> symbols) const {
    if (symbols.size() != static_cast<std::size_t>(n_)) {
        throw InvalidArgument("point has " + std::to_string(symbols.size()) + " coordinates, arity is " +
                              std::to_string(n_));
    }
    return values_[encode_index(symbols, q_)];
}

bool TableFunction::is_boolean_uniform() const {
    return q_ == 2 && std::abs(measure_[0] - 0.5) <= kProbabilityTol &&
           std::abs(measure_[1] - 0.5) <= kProbabilityTol;
}

double TableFunction::weight(std::size_t index) const {
    double w = 1.0;
    for (int i = 0; i < n_; ++i) {
        w *= measure_[index % static_cast<std::size_t>(q_)];
        index /= static_cast<std::size_t>(q_);
    }
    return w;
}

double TableFunction::mean() const {
    const auto weights = product_weights(measure_, n_);
    return std::inner_product(values_.begin(), values_.end(), weights.begin(), 0.0);
}

double TableFunction::variance() const {
    const auto weights = product_weights(measure_, n_);
    const double m = std::inner_product(values_.begin(), values_.end(), weights.begin(), 0.0);
    double var = 0.0;
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
        const double d = values_[idx] - m;
        var += weights[idx] * d * d;
    }
    return var;
}

TableFunction TableFunction::with_measure(std::vector<double> measure) const {
    return TableFunction(q_, n_, values_, std::move(measure), range_);
}

TableFunction TableFunction::with_range(RangeTag range) const {
    return TableFunction(q_, n_, values_, measure_, range);
}

TableFunction to_pm_one(const TableFunction& f) {
    std::vector<double> out(f.values().begin(), f.values().end());
    for (double& v : out) {
        if (v != 0.0 && v != 1.0) throw InvalidArgument("to_pm_one needs a {0,1}-valued table");
        v = 2.0 * v - 1.0;
    }
    return TableFunction(f.alphabet_size(), f.arity(), std::move(out), f.measure(), RangeTag::pm_one);
}

TableFunction to_unit_interval(const TableFunction& f) {
    std::vector<double> out(f.values().begin(), f.values().end());
    for (double& v : out) {
        if (v != 1.0 && v != -1.0) throw InvalidArgument("to_unit_interval needs a ±1-valued table");
        v = 0.5 * (1.0 + v);
    }
    return TableFunction(f.alphabet_size(), f.arity(), std::move(out), f.measure(), RangeTag::unit_interval);
}

TableFunction negate_inputs(const TableFunction& f) {
    if (f.alphabet_size() != 2) throw UnsupportedDomain("input negation is defined for Boolean tables only");
    const std::size_t all = f.size() - 1;
    std::vector<double> out(f.size());
    for (std::size_t idx = 0; idx < f.size(); ++idx) out[idx] = f[idx ^ all];
    std::vector<double> flipped{f.measure()[1], f.measure()[0]};
    return TableFunction(2, f.arity(), std::move(out), std::move(flipped), f.range());
}

}  // namespace noisestab
