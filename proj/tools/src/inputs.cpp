#include "inputs.hpp"

#include <cmath>
#include <sstream>

#include "noisestab/errors.hpp"
#include "noisestab/families.hpp"
#include "noisestab/function_io.hpp"
#include "noisestab/random.hpp"

namespace noisestab::cli {
namespace {

double parse_number(const std::string& text, const std::string& context) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("cannot parse '" + text + "' in " + context);
    }
    if (used != text.size()) throw InvalidArgument("cannot parse '" + text + "' in " + context);
    return v;
}

bool two_valued(const TableFunction& f, double a, double b) {
    for (double v : f.values()) {
        if (v != a && v != b) return false;
    }
    return true;
}

TableFunction apply_range(const TableFunction& f, const std::string& range) {
    if (range == "native") return f;
    if (range == "unit") {
        if (f.range() == RangeTag::pm_one) return to_unit_interval(f);
        return f;
    }
    if (range == "pm") {
        if (f.range() == RangeTag::pm_one) return f;
        if (two_valued(f, 0.0, 1.0)) return to_pm_one(f);
        throw InvalidArgument("--range pm needs a {0,1}-valued family");
    }
    throw InvalidArgument("--range must be unit, pm or native");
}

}  // namespace

TableFunction load_function(const FunctionSource& source, const FunctionShape& shape, std::uint64_t seed) {
    if (!source.file.empty() && !source.family.empty()) throw InvalidArgument("give either a family or a file, not both");
    if (!source.file.empty()) return noisestab::load_function(source.file);
    if (source.family.empty()) throw InvalidArgument("no function given (use --family or --function)");
    const auto& name = source.family;
    auto param = [&](std::size_t k, int fallback) { return k < source.params.size() ? source.params[k] : fallback; };
    if (name == "indicator") {
        return apply_range(families::coordinate_indicator(shape.q, shape.n, param(0, 0), param(1, 0)), shape.range);
    }
    if (name == "random_indicator" || name == "random_unit") {
        Rng rng(seed);
        auto f = name == "random_unit" ? families::random_unit(shape.q, shape.n, rng)
                                       : families::random_indicator(shape.q, shape.n, rng);
        return apply_range(f, shape.range);
    }
    if (shape.q != 2) throw InvalidArgument("family '" + name + "' is Boolean; use --q 2");
    return apply_range(families::by_name(name, shape.n, source.params), shape.range);
}

StepDistribution load_distribution(const std::string& spec) {
    if (spec == "f3_chain") return distributions::f3_chain();
    if (spec == "arrow3") return distributions::arrow3();
    const std::string prefix = "correlated_bits:";
    if (spec.rfind(prefix, 0) == 0) {
        return distributions::correlated_bits(parse_number(spec.substr(prefix.size()), "--distribution"));
    }
    return distribution_from_json(read_json_file(spec), spec + ": $");
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(parse_number(item, "grid '" + text + "'"));
        if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
            throw InvalidArgument("grid '" + text + "' must be start:stop:step with step > 0 and stop ≥ start");
        }
        const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
        for (long k = 0; k < count; ++k) {
            // Snap to 12 decimals so 0.1-steps print as written.
            out.push_back(std::round((parts[0] + static_cast<double>(k) * parts[2]) * 1e12) / 1e12);
        }
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item, "list '" + text + "'"));
    if (out.empty()) throw InvalidArgument("empty list '" + text + "'");
    return out;
}

}  // namespace noisestab::cli
