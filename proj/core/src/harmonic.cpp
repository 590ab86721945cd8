#include "noisestab/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "noisestab/errors.hpp"

namespace noisestab {
namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

/// Tensor of shape (1+q)^n: digit 0 means "averaged out", digit k+1 means
/// "kept at symbol k". Entry at a digit pattern is Π_{kept}(I−E_i)Π_{rest}E_i f.
std::vector<double> efron_stein_tensor(const TableFunction& f) {
    const int q = f.alphabet_size();
    const int n = f.arity();
    const auto& pi = f.measure();
    const std::size_t wide = static_cast<std::size_t>(q) + 1;

    std::vector<double> cur(f.values().begin(), f.values().end());
    std::size_t lower = 1;  // (1+q)^i
    for (int i = 0; i < n; ++i) {
        const std::size_t outer = ipow(static_cast<std::size_t>(q), n - i - 1);
        std::vector<double> next(lower * wide * outer);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t l = 0; l < lower; ++l) {
                double m = 0.0;
                for (int k = 0; k < q; ++k) {
                    m += pi[static_cast<std::size_t>(k)] * cur[l + lower * (static_cast<std::size_t>(k) + static_cast<std::size_t>(q) * o)];
                }
                next[l + lower * (wide * o)] = m;
                for (int k = 0; k < q; ++k) {
                    next[l + lower * (static_cast<std::size_t>(k) + 1 + wide * o)] =
                        cur[l + lower * (static_cast<std::size_t>(k) + static_cast<std::size_t>(q) * o)] - m;
                }
            }
        }
        cur = std::move(next);
        lower *= wide;
    }
    return cur;
}

void validate_coordinate(const TableFunction& f, int coordinate) {
    if (coordinate < 0 || coordinate >= f.arity()) {
        throw InvalidArgument("coordinate " + std::to_string(coordinate) + " out of range for arity " +
                              std::to_string(f.arity()));
    }
}

/// Sorted copy of `coords` with the matching permutation of `assignment`.
void normalise_restriction(const TableFunction& f, std::span<const int> coords, std::span<const int> assignment,
                           std::vector<int>& sorted_coords, std::vector<int>& sorted_assignment) {
    if (coords.size() != assignment.size()) {
        throw InvalidArgument("assignment has " + std::to_string(assignment.size()) + " symbols for " +
                              std::to_string(coords.size()) + " coordinates");
    }
    std::vector<std::size_t> order(coords.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return coords[a] < coords[b]; });
    sorted_coords.clear();
    sorted_assignment.clear();
    for (std::size_t k : order) {
        validate_coordinate(f, coords[k]);
        if (!sorted_coords.empty() && sorted_coords.back() == coords[k]) {
            throw InvalidArgument("coordinate " + std::to_string(coords[k]) + " repeated");
        }
        if (assignment[k] < 0 || assignment[k] >= f.alphabet_size()) {
            throw InvalidArgument("symbol " + std::to_string(assignment[k]) + " outside the alphabet");
        }
        sorted_coords.push_back(coords[k]);
        sorted_assignment.push_back(assignment[k]);
    }
}

}  // namespace

std::vector<double> FourierExpansion::level_weights() const {
    std::vector<double> weights(static_cast<std::size_t>(arity) + 1, 0.0);
    for (std::size_t s = 0; s < coefficients.size(); ++s) {
        weights[static_cast<std::size_t>(mask_size(s))] += coefficients[s] * coefficients[s];
    }
    return weights;
}

FourierExpansion fourier_transform(const TableFunction& f) {
    if (!f.is_boolean_uniform()) {
        throw UnsupportedDomain("fourier_transform needs q = 2 with the uniform measure; use efron_stein");
    }
    std::vector<double> a(f.values().begin(), f.values().end());
    const std::size_t size = a.size();
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t block = 0; block < size; block += 2 * half) {
            for (std::size_t j = block; j < block + half; ++j) {
                const double u = a[j];
                const double v = a[j + half];
                a[j] = u + v;
                a[j + half] = u - v;
            }
        }
    }
    const double scale = 1.0 / static_cast<double>(size);
    for (double& c : a) c *= scale;
    return FourierExpansion{f.arity(), std::move(a)};
}

TableFunction inverse_fourier(const FourierExpansion& expansion) {
    std::vector<double> a = expansion.coefficients;
    const std::size_t size = a.size();
    if (size != table_size(2, expansion.arity)) {
        throw InvalidArgument("coefficient vector length does not match 2^arity");
    }
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t block = 0; block < size; block += 2 * half) {
            for (std::size_t j = block; j < block + half; ++j) {
                const double u = a[j];
                const double v = a[j + half];
                a[j] = u + v;
                a[j + half] = u - v;
            }
        }
    }
    return TableFunction(2, expansion.arity, std::move(a));
}

EfronSteinDecomposition efron_stein(const TableFunction& f) {
    const int q = f.alphabet_size();
    const int n = f.arity();
    const auto& pi = f.measure();
    const std::size_t wide = static_cast<std::size_t>(q) + 1;
    const auto tensor = efron_stein_tensor(f);

    EfronSteinDecomposition out;
    out.arity = n;
    out.alphabet_size = q;
    out.measure = pi;

    const SubsetMask subsets = SubsetMask{1} << n;
    for (SubsetMask set = 0; set < subsets; ++set) {
        const auto members = mask_members(set);
        const int k = static_cast<int>(members.size());
        const std::size_t size = table_size(q, k);
        std::vector<double> values(size);
        double var = 0.0;
        std::vector<int> z(static_cast<std::size_t>(k), 0);
        for (std::size_t idx = 0; idx < size; ++idx) {
            std::size_t t = 0;
            double w = 1.0;
            for (int a = 0; a < k; ++a) {
                const auto sym = static_cast<std::size_t>(z[static_cast<std::size_t>(a)]);
                t += (sym + 1) * ipow(wide, members[static_cast<std::size_t>(a)]);
                w *= pi[sym];
            }
            values[idx] = tensor[t];
            var += w * tensor[t] * tensor[t];
            for (int a = 0; a < k; ++a) {
                if (++z[static_cast<std::size_t>(a)] < q) break;
                z[static_cast<std::size_t>(a)] = 0;
            }
        }
        out.component_variances.emplace(set, set == 0 ? 0.0 : var);
        out.components.emplace(set, TableFunction(q, k, std::move(values), pi));
    }
    return out;
}

std::vector<double> component_variances(const TableFunction& f) {
    const int q = f.alphabet_size();
    const int n = f.arity();
    const auto& pi = f.measure();
    const auto tensor = efron_stein_tensor(f);
    std::vector<double> var(std::size_t{1} << n, 0.0);
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::size_t t = 0; t < tensor.size(); ++t) {
        SubsetMask set = 0;
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            const int d = digits[static_cast<std::size_t>(i)];
            if (d != 0) {
                set |= SubsetMask{1} << i;
                w *= pi[static_cast<std::size_t>(d - 1)];
            }
        }
        if (set != 0) var[set] += w * tensor[t] * tensor[t];
        for (int i = 0; i < n; ++i) {
            if (++digits[static_cast<std::size_t>(i)] <= q) break;
            digits[static_cast<std::size_t>(i)] = 0;
        }
    }
    return var;
}

TableFunction EfronSteinDecomposition::lifted_component(SubsetMask set) const {
    const auto& comp = components.at(set);
    const auto members = mask_members(set);
    return TableFunction::tabulate(alphabet_size, arity, [&](std::span<const int> x) {
        std::size_t idx = 0;
        for (std::size_t a = members.size(); a-- > 0;) {
            idx = idx * static_cast<std::size_t>(alphabet_size) + static_cast<std::size_t>(x[static_cast<std::size_t>(members[a])]);
        }
        return comp[idx];
    }, RangeTag::unrestricted, measure);
}

TableFunction EfronSteinDecomposition::reconstruct() const {
    std::vector<double> sum(table_size(alphabet_size, arity), 0.0);
    for (const auto& [set, comp] : components) {
        const auto lifted = lifted_component(set);
        for (std::size_t idx = 0; idx < sum.size(); ++idx) sum[idx] += lifted[idx];
    }
    return TableFunction(alphabet_size, arity, std::move(sum), measure);
}

double influence(const TableFunction& f, int coordinate) {
    validate_coordinate(f, coordinate);
    const int q = f.alphabet_size();
    const auto& pi = f.measure();
    const auto weights = product_weights(pi, f.arity());
    const std::size_t stride = ipow(static_cast<std::size_t>(q), coordinate);
    const std::size_t span = stride * static_cast<std::size_t>(q);

    double total = 0.0;
    for (std::size_t hi = 0; hi < f.size(); hi += span) {
        for (std::size_t lo = 0; lo < stride; ++lo) {
            const std::size_t base = hi + lo;
            double others = 0.0;
            double m = 0.0;
            for (int k = 0; k < q; ++k) {
                const std::size_t idx = base + static_cast<std::size_t>(k) * stride;
                others += weights[idx];
                m += pi[static_cast<std::size_t>(k)] * f[idx];
            }
            double var = 0.0;
            for (int k = 0; k < q; ++k) {
                const double d = f[base + static_cast<std::size_t>(k) * stride] - m;
                var += pi[static_cast<std::size_t>(k)] * d * d;
            }
            total += others * var;
        }
    }
    return total;
}

std::vector<double> influences(const TableFunction& f) {
    std::vector<double> out(static_cast<std::size_t>(f.arity()));
    for (int i = 0; i < f.arity(); ++i) out[static_cast<std::size_t>(i)] = influence(f, i);
    return out;
}

double total_influence(const TableFunction& f) {
    const auto inf = influences(f);
    return std::accumulate(inf.begin(), inf.end(), 0.0);
}

TableFunction noise_operator(const TableFunction& f, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("noise parameter must lie in [0,1]");
    const int q = f.alphabet_size();
    Eigen::MatrixXd kernel(q, q);
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            kernel(a, b) = (1.0 - eta) * f.measure()[static_cast<std::size_t>(b)] + (a == b ? eta : 0.0);
        }
    }
    return apply_kernel(f, kernel);
}

TableFunction apply_kernel(const TableFunction& f, const Eigen::MatrixXd& kernel,
                           std::vector<double> output_measure) {
    const int q = f.alphabet_size();
    if (kernel.rows() != q || kernel.cols() != q) {
        throw InvalidKernel("kernel must be " + std::to_string(q) + "x" + std::to_string(q));
    }
    for (int a = 0; a < q; ++a) {
        double row = 0.0;
        for (int b = 0; b < q; ++b) {
            if (!(kernel(a, b) >= -kProbabilityTol)) throw InvalidKernel("kernel has a negative entry");
            row += kernel(a, b);
        }
        if (std::abs(row - 1.0) > kProbabilityTol) {
            throw InvalidKernel("kernel row " + std::to_string(a) + " sums to " + std::to_string(row));
        }
    }

    std::vector<double> cur(f.values().begin(), f.values().end());
    std::vector<double> next(cur.size());
    std::vector<double> column(static_cast<std::size_t>(q));
    std::size_t stride = 1;
    for (int i = 0; i < f.arity(); ++i) {
        const std::size_t span = stride * static_cast<std::size_t>(q);
        for (std::size_t hi = 0; hi < cur.size(); hi += span) {
            for (std::size_t lo = 0; lo < stride; ++lo) {
                const std::size_t base = hi + lo;
                for (int b = 0; b < q; ++b) column[static_cast<std::size_t>(b)] = cur[base + static_cast<std::size_t>(b) * stride];
                for (int a = 0; a < q; ++a) {
                    double acc = 0.0;
                    for (int b = 0; b < q; ++b) acc += kernel(a, b) * column[static_cast<std::size_t>(b)];
                    next[base + static_cast<std::size_t>(a) * stride] = acc;
                }
            }
        }
        std::swap(cur, next);
        stride = span;
    }

    // Convex combinations keep [0,1]; clip rounding so the tag stays valid.
    RangeTag range = RangeTag::unrestricted;
    if (f.range() == RangeTag::unit_interval) {
        range = RangeTag::unit_interval;
        for (double& v : cur) v = std::clamp(v, 0.0, 1.0);
    }
    if (output_measure.empty()) output_measure = f.measure();
    return TableFunction(q, f.arity(), std::move(cur), std::move(output_measure), range);
}

TableFunction restrict(const TableFunction& f, std::span<const int> coords, std::span<const int> assignment) {
    std::vector<int> pinned;
    std::vector<int> values;
    normalise_restriction(f, coords, assignment, pinned, values);
    const int q = f.alphabet_size();
    const int n = f.arity();
    const int k = static_cast<int>(pinned.size());

    std::vector<int> x(static_cast<std::size_t>(n), 0);
    std::vector<int> free_coords;
    for (int i = 0, a = 0; i < n; ++i) {
        if (a < k && pinned[static_cast<std::size_t>(a)] == i) {
            x[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(a)];
            ++a;
        } else {
            free_coords.push_back(i);
        }
    }
    const std::size_t size = table_size(q, n - k);
    std::vector<double> out(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
        std::size_t rest = idx;
        for (int c : free_coords) {
            x[static_cast<std::size_t>(c)] = static_cast<int>(rest % static_cast<std::size_t>(q));
            rest /= static_cast<std::size_t>(q);
        }
        out[idx] = f[encode_index(x, q)];
    }
    return TableFunction(q, n - k, std::move(out), f.measure(), f.range());
}

TableFunction conditional_expectation(const TableFunction& f, std::span<const int> coords) {
    std::vector<int> zeros(coords.size(), 0);
    std::vector<int> sorted;
    std::vector<int> unused;
    normalise_restriction(f, coords, zeros, sorted, unused);
    const int q = f.alphabet_size();
    const int n = f.arity();
    const int k = static_cast<int>(sorted.size());
    const SubsetMask kept = mask_of(sorted);

    // E[f | X_S = z] = Σ_rest π(rest) f(z, rest) under the product measure.
    std::vector<double> out(table_size(q, k), 0.0);
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        double w = 1.0;
        std::size_t bucket = 0;
        std::size_t place = 1;
        for (int i = 0; i < n; ++i) {
            const int sym = x[static_cast<std::size_t>(i)];
            if (kept & (SubsetMask{1} << i)) {
                bucket += place * static_cast<std::size_t>(sym);
                place *= static_cast<std::size_t>(q);
            } else {
                w *= f.measure()[static_cast<std::size_t>(sym)];
            }
        }
        out[bucket] += w * f[idx];
        for (int i = 0; i < n; ++i) {
            if (++x[static_cast<std::size_t>(i)] < q) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
    }
    const RangeTag range = f.range() == RangeTag::unit_interval ? RangeTag::unit_interval : RangeTag::unrestricted;
    if (range == RangeTag::unit_interval) {
        for (double& v : out) v = std::clamp(v, 0.0, 1.0);
    }
    return TableFunction(q, k, std::move(out), f.measure(), range);
}

}  // namespace noisestab
