#include "noisestab/families.hpp"

#include <algorithm>
#include <string>

#include "noisestab/errors.hpp"

namespace noisestab::families {
namespace {

int pm_sum(std::span<const int> x, int from = 0) {
    int s = 0;
    for (std::size_t i = static_cast<std::size_t>(from); i < x.size(); ++i) s += pm_value(x[i]);
    return s;
}

void require_arity(int n, int minimum, const char* family) {
    if (n < minimum) {
        throw InvalidArgument(std::string(family) + " needs n >= " + std::to_string(minimum));
    }
}

}  // namespace

TableFunction majority(int n) {
    require_arity(n, 1, "majority");
    return TableFunction::tabulate(2, n, [](std::span<const int> x) { return pm_sum(x) >= 0 ? 1 : -1; },
                                   RangeTag::pm_one);
}

TableFunction dictator(int n, int i) {
    require_arity(n, 1, "dictator");
    if (i < 0 || i >= n) throw InvalidArgument("dictator coordinate out of range");
    return TableFunction::tabulate(2, n, [i](std::span<const int> x) { return pm_value(x[static_cast<std::size_t>(i)]); },
                                   RangeTag::pm_one);
}

TableFunction parity(int n, SubsetMask set) {
    if (n < 0 || (n < 64 && (set >> n) != 0)) throw InvalidArgument("parity set not contained in [n]");
    return TableFunction::tabulate(2, n, [set](std::span<const int> x) {
        int v = 1;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (set & (SubsetMask{1} << i)) v *= pm_value(x[i]);
        }
        return v;
    }, RangeTag::pm_one);
}

TableFunction tribes(int width, int count) {
    if (width < 1 || count < 1) throw InvalidArgument("tribes needs width >= 1 and count >= 1");
    return TableFunction::tabulate(2, width * count, [width, count](std::span<const int> x) {
        for (int t = 0; t < count; ++t) {
            bool all = true;
            for (int k = 0; k < width; ++k) all = all && x[static_cast<std::size_t>(t * width + k)] == 0;
            if (all) return 1;
        }
        return 0;
    }, RangeTag::unit_interval);
}

TableFunction threshold(int n, int a) {
    require_arity(n, 1, "threshold");
    return TableFunction::tabulate(2, n, [a](std::span<const int> x) { return pm_sum(x) >= a ? 1 : 0; },
                                   RangeTag::unit_interval);
}

TableFunction dictator_times_majority(int n) {
    require_arity(n, 2, "dictator_times_majority");
    return TableFunction::tabulate(2, n, [](std::span<const int> x) {
        return pm_value(x[0]) * (pm_sum(x, 1) >= 0 ? 1 : -1);
    }, RangeTag::pm_one);
}

TableFunction coordinate_indicator(int q, int n, int i, int symbol) {
    if (i < 0 || i >= n) throw InvalidArgument("indicator coordinate out of range");
    if (symbol < 0 || symbol >= q) throw InvalidArgument("indicator symbol outside the alphabet");
    return TableFunction::tabulate(q, n, [i, symbol](std::span<const int> x) {
        return x[static_cast<std::size_t>(i)] == symbol ? 1 : 0;
    }, RangeTag::unit_interval);
}

TableFunction random_unit(int q, int n, Rng& rng, std::vector<double> measure) {
    std::vector<double> values(table_size(q, n));
    for (double& v : values) v = uniform01(rng);
    return TableFunction(q, n, std::move(values), std::move(measure), RangeTag::unit_interval);
}

TableFunction random_indicator(int q, int n, Rng& rng, double p, std::vector<double> measure) {
    std::vector<double> values(table_size(q, n));
    for (double& v : values) v = uniform01(rng) < p ? 1.0 : 0.0;
    return TableFunction(q, n, std::move(values), std::move(measure), RangeTag::unit_interval);
}

std::vector<double> random_measure(int q, Rng& rng, double floor) {
    if (floor * q >= 1.0) throw InvalidArgument("measure floor too large for the alphabet");
    std::vector<double> raw(static_cast<std::size_t>(q));
    double total = 0.0;
    for (double& r : raw) {
        r = uniform01(rng) + 1e-3;
        total += r;
    }
    const double free_mass = 1.0 - floor * q;
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < raw.size(); ++k) {
        raw[k] = floor + free_mass * raw[k] / total;
        acc += raw[k];
    }
    raw.back() = 1.0 - acc;
    return raw;
}

TableFunction by_name(const std::string& name, int n, const std::vector<int>& params) {
    auto param = [&](std::size_t k, int fallback) { return k < params.size() ? params[k] : fallback; };
    if (name == "majority") return majority(n);
    if (name == "dictator") return dictator(n, param(0, 0));
    if (name == "parity") {
        SubsetMask set = params.empty() ? (n >= 64 ? ~SubsetMask{0} : (SubsetMask{1} << n) - 1) : mask_of(params);
        return parity(n, set);
    }
    if (name == "tribes") return tribes(param(0, 2), param(1, n > 0 ? n / std::max(1, param(0, 2)) : 1));
    if (name == "threshold") return threshold(n, param(0, 0));
    if (name == "dictator_times_majority") return dictator_times_majority(n);
    throw InvalidArgument("unknown function family '" + name + "'");
}

}  // namespace noisestab::families
