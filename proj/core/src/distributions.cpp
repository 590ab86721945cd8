#include "noisestab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "noisestab/errors.hpp"
#include "noisestab/random.hpp"
#include "noisestab/table_function.hpp"

namespace noisestab {
namespace {

/// Joint table of the step groups `first` × `second`, flattened over Ω^first and Ω^second.
Eigen::MatrixXd group_joint(const StepDistribution& p, std::span<const int> first, std::span<const int> second) {
    const int q = p.alphabet_size();
    const auto rows = static_cast<Eigen::Index>(table_size(q, static_cast<int>(first.size())));
    const auto cols = static_cast<Eigen::Index>(table_size(q, static_cast<int>(second.size())));
    Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(rows, cols);
    for (std::size_t idx : p.support()) {
        const auto t = p.tuple(idx);
        std::size_t a = 0;
        std::size_t b = 0;
        for (std::size_t k = first.size(); k-- > 0;) a = a * static_cast<std::size_t>(q) + static_cast<std::size_t>(t[static_cast<std::size_t>(first[k])]);
        for (std::size_t k = second.size(); k-- > 0;) b = b * static_cast<std::size_t>(q) + static_cast<std::size_t>(t[static_cast<std::size_t>(second[k])]);
        joint(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += p.probability(idx);
    }
    return joint;
}

void validate_group(const StepDistribution& p, std::span<const int> group, const char* name) {
    if (group.empty()) throw InvalidPartition(std::string(name) + " step set is empty");
    for (int s : group) {
        if (s < 0 || s >= p.steps()) throw InvalidPartition(std::string(name) + " step " + std::to_string(s) + " out of range");
    }
}

std::vector<int> complement_steps(int steps, int j) {
    std::vector<int> rest;
    for (int s = 0; s < steps; ++s) {
        if (s != j) rest.push_back(s);
    }
    return rest;
}

}  // namespace

StepDistribution::StepDistribution(int q, int steps, std::vector<double> table)
    : q_(q), steps_(steps), table_(std::move(table)) {
    if (steps < 2) throw InvalidArgument("a step distribution needs at least 2 steps");
    const std::size_t expected = table_size(q, steps);
    if (table_.size() != expected) {
        throw InvalidArgument("distribution table has " + std::to_string(table_.size()) + " entries, expected " +
                              std::to_string(expected));
    }
    double total = 0.0;
    for (std::size_t idx = 0; idx < table_.size(); ++idx) {
        if (!(table_[idx] >= 0.0) || !std::isfinite(table_[idx])) {
            throw InvalidArgument("distribution entry " + std::to_string(idx) + " is negative");
        }
        total += table_[idx];
        if (table_[idx] > 0.0) support_.push_back(idx);
    }
    if (std::abs(total - 1.0) > kProbabilityTol) {
        throw InvalidArgument("distribution sums to " + std::to_string(total) + ", not 1");
    }
}

double StepDistribution::probability(std::span<const int> tuple) const {
    if (tuple.size() != static_cast<std::size_t>(steps_)) throw InvalidArgument("tuple length differs from ℓ");
    return table_[encode_index(tuple, q_)];
}

std::vector<int> StepDistribution::tuple(std::size_t index) const { return decode_index(index, q_, steps_); }

std::vector<std::vector<double>> marginals(const StepDistribution& p) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(p.steps()),
                                         std::vector<double>(static_cast<std::size_t>(p.alphabet_size()), 0.0));
    for (std::size_t idx : p.support()) {
        const auto t = p.tuple(idx);
        for (std::size_t j = 0; j < t.size(); ++j) out[j][static_cast<std::size_t>(t[j])] += p.probability(idx);
    }
    return out;
}

double min_atom(const StepDistribution& p) {
    double best = 1.0;
    for (const auto& m : marginals(p)) {
        for (double v : m) {
            if (v > 0.0) best = std::min(best, v);
        }
    }
    return best;
}

double min_table_atom(const StepDistribution& p) {
    double best = 1.0;
    for (std::size_t idx : p.support()) best = std::min(best, p.probability(idx));
    return best;
}

Eigen::MatrixXd conditional_kernel(const StepDistribution& p, int from, int to) {
    if (from == to) throw InvalidPartition("kernel needs two distinct steps");
    const int one[] = {from};
    const int two[] = {to};
    validate_group(p, one, "source");
    validate_group(p, two, "target");
    Eigen::MatrixXd joint = group_joint(p, one, two);
    const auto m = marginals(p);
    for (Eigen::Index a = 0; a < joint.rows(); ++a) {
        const double row = m[static_cast<std::size_t>(from)][static_cast<std::size_t>(a)];
        for (Eigen::Index b = 0; b < joint.cols(); ++b) {
            joint(a, b) = row > 0.0 ? joint(a, b) / row : m[static_cast<std::size_t>(to)][static_cast<std::size_t>(b)];
        }
    }
    return joint;
}

double rho(const StepDistribution& p, std::span<const int> first, std::span<const int> second) {
    validate_group(p, first, "first");
    validate_group(p, second, "second");
    for (int a : first) {
        for (int b : second) {
            if (a == b) throw InvalidPartition("step sets overlap at step " + std::to_string(a));
        }
    }
    const Eigen::MatrixXd joint = group_joint(p, first, second);
    const Eigen::VectorXd row_mass = joint.rowwise().sum();
    const Eigen::VectorXd col_mass = joint.colwise().sum().transpose();

    std::vector<Eigen::Index> rows;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index a = 0; a < joint.rows(); ++a) {
        if (row_mass(a) > 0.0) rows.push_back(a);
    }
    for (Eigen::Index b = 0; b < joint.cols(); ++b) {
        if (col_mass(b) > 0.0) cols.push_back(b);
    }
    if (rows.size() < 2 || cols.size() < 2) return 0.0;

    Eigen::MatrixXd normalised(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            normalised(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                joint(rows[r], cols[c]) / std::sqrt(row_mass(rows[r]) * col_mass(cols[c]));
        }
    }
    // Top singular pair is (√π_S, √π_T) with value 1; the next one is ρ.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(normalised);
    const auto& sv = svd.singularValues();
    return std::clamp(sv(1), 0.0, 1.0);
}

std::optional<DegeneracyWitness> find_degeneracy_witness(const StepDistribution& p) {
    const int q = p.alphabet_size();
    const int ell = p.steps();
    const auto m = marginals(p);
    for (int j = 0; j < ell; ++j) {
        const auto rest = complement_steps(ell, j);
        const int here[] = {j};
        const Eigen::MatrixXd joint = group_joint(p, here, rest);
        unsigned live = 0;
        for (int a = 0; a < q; ++a) {
            if (m[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)] > 0.0) live |= 1U << a;
        }
        // Proper nonempty subsets of the live symbols.
        for (unsigned sub = (live - 1) & live; sub != 0; sub = (sub - 1) & live) {
            bool separable = true;
            std::vector<std::size_t> inside;
            for (Eigen::Index b = 0; b < joint.cols() && separable; ++b) {
                bool with_in = false;
                bool with_out = false;
                for (int a = 0; a < q; ++a) {
                    if (joint(a, b) <= 0.0) continue;
                    ((sub >> a) & 1U) ? with_in = true : with_out = true;
                }
                if (with_in && with_out) separable = false;
                if (with_in) inside.push_back(static_cast<std::size_t>(b));
            }
            if (separable) {
                DegeneracyWitness w;
                w.step = j;
                for (int a = 0; a < q; ++a) {
                    if ((sub >> a) & 1U) w.symbols.push_back(a);
                }
                w.rest_tuples = std::move(inside);
                return w;
            }
        }
    }
    return std::nullopt;
}

CorrelationReport rho_max(const StepDistribution& p) {
    CorrelationReport report;
    for (int j = 0; j < p.steps(); ++j) {
        const int here[] = {j};
        const auto rest = complement_steps(p.steps(), j);
        report.per_coordinate.push_back(rho(p, here, rest));
    }
    report.rho = *std::max_element(report.per_coordinate.begin(), report.per_coordinate.end());
    report.degenerate = report.rho >= kDegeneracyThreshold;
    if (report.degenerate) report.witness = find_degeneracy_witness(p);
    return report;
}

GaussianCounterpart gaussian_counterpart(const StepDistribution& p) {
    const int q = p.alphabet_size();
    const int ell = p.steps();
    const Eigen::Index dim = static_cast<Eigen::Index>(ell) * q;
    GaussianCounterpart g;
    g.steps = ell;
    g.alphabet_size = q;
    g.mean = Eigen::VectorXd::Zero(dim);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t idx : p.support()) {
        const auto t = p.tuple(idx);
        const double w = p.probability(idx);
        for (int j = 0; j < ell; ++j) {
            const Eigen::Index u = static_cast<Eigen::Index>(j) * q + t[static_cast<std::size_t>(j)];
            g.mean(u) += w;
            for (int k = 0; k < ell; ++k) {
                const Eigen::Index v = static_cast<Eigen::Index>(k) * q + t[static_cast<std::size_t>(k)];
                second(u, v) += w;
            }
        }
    }
    Eigen::MatrixXd raw = second - g.mean * g.mean.transpose();
    raw = 0.5 * (raw + raw.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(raw);
    Eigen::VectorXd lambda = eig.eigenvalues();
    g.min_raw_eigenvalue = lambda.minCoeff();
    g.eigen_floor = 0.0;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) lambda(k) = std::max(lambda(k), g.eigen_floor);
    const Eigen::MatrixXd& u = eig.eigenvectors();
    g.factor = u * lambda.cwiseSqrt().asDiagonal();
    g.covariance = u * lambda.asDiagonal() * u.transpose();
    g.covariance = 0.5 * (g.covariance + g.covariance.transpose());
    return g;
}

Eigen::MatrixXi sample(const StepDistribution& p, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw InvalidArgument("sample count must be positive");
    std::vector<double> cdf;
    cdf.reserve(p.support().size());
    double acc = 0.0;
    for (std::size_t idx : p.support()) {
        acc += p.probability(idx);
        cdf.push_back(acc);
    }
    std::vector<std::vector<int>> tuples;
    for (std::size_t idx : p.support()) tuples.push_back(p.tuple(idx));

    Rng rng(seed);
    Eigen::MatrixXi out(p.steps(), static_cast<Eigen::Index>(count));
    for (std::size_t c = 0; c < count; ++c) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        const auto& t = tuples[static_cast<std::size_t>(it - cdf.begin())];
        for (int j = 0; j < p.steps(); ++j) out(j, static_cast<Eigen::Index>(c)) = t[static_cast<std::size_t>(j)];
    }
    return out;
}

Eigen::MatrixXd sample_gaussian(const GaussianCounterpart& g, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw InvalidArgument("sample count must be positive");
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const Eigen::Index dim = g.dimension();
    Eigen::MatrixXd z(dim, static_cast<Eigen::Index>(count));
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) z(r, c) = normal(rng);
    }
    Eigen::MatrixXd out = g.factor * z;
    out.colwise() += g.mean;
    return out;
}

namespace distributions {

StepDistribution correlated_bits(double correlation) {
    if (!(correlation >= -1.0 && correlation <= 1.0)) throw InvalidArgument("correlation must lie in [-1,1]");
    const double same = (1.0 + correlation) / 4.0;
    const double diff = (1.0 - correlation) / 4.0;
    // index = a + 2b with symbol 0 = +1
    return StepDistribution(2, 2, {same, diff, diff, same});
}

StepDistribution arrow3() {
    std::vector<double> table(8, 1.0 / 6.0);
    table[0] = 0.0;  // (+1,+1,+1)
    table[7] = 0.0;  // (−1,−1,−1)
    return StepDistribution(2, 3, std::move(table));
}

StepDistribution f3_chain() {
    Eigen::MatrixXd step = Eigen::MatrixXd::Zero(3, 3);
    for (int a = 0; a < 3; ++a) {
        step(a, a) = 0.5;
        step(a, (a + 1) % 3) = 0.5;
    }
    return from_kernel(uniform_measure(3), {step, step});
}

StepDistribution from_kernel(const std::vector<double>& initial, const std::vector<Eigen::MatrixXd>& kernels) {
    const int q = static_cast<int>(initial.size());
    validate_measure(initial, q);
    if (kernels.empty()) throw InvalidArgument("from_kernel needs at least one kernel");
    for (const auto& k : kernels) {
        if (k.rows() != q || k.cols() != q) throw InvalidKernel("kernel shape differs from the alphabet size");
        for (Eigen::Index a = 0; a < q; ++a) {
            if ((k.row(a).array() < 0.0).any() || std::abs(k.row(a).sum() - 1.0) > kProbabilityTol) {
                throw InvalidKernel("kernel row " + std::to_string(a) + " is not a probability vector");
            }
        }
    }
    const int ell = static_cast<int>(kernels.size()) + 1;
    std::vector<double> table(table_size(q, ell));
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        const auto t = decode_index(idx, q, ell);
        double w = initial[static_cast<std::size_t>(t[0])];
        for (int s = 1; s < ell && w > 0.0; ++s) w *= kernels[static_cast<std::size_t>(s - 1)](t[static_cast<std::size_t>(s - 1)], t[static_cast<std::size_t>(s)]);
        table[idx] = w;
    }
    return StepDistribution(q, ell, std::move(table));
}

StepDistribution independent(const std::vector<std::vector<double>>& step_marginals) {
    if (step_marginals.size() < 2) throw InvalidArgument("independent needs at least 2 steps");
    const int q = static_cast<int>(step_marginals.front().size());
    for (const auto& m : step_marginals) validate_measure(m, q);
    const int ell = static_cast<int>(step_marginals.size());
    std::vector<double> table(table_size(q, ell));
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        const auto t = decode_index(idx, q, ell);
        double w = 1.0;
        for (int s = 0; s < ell; ++s) w *= step_marginals[static_cast<std::size_t>(s)][static_cast<std::size_t>(t[static_cast<std::size_t>(s)])];
        table[idx] = w;
    }
    return StepDistribution(q, ell, std::move(table));
}

}  // namespace distributions

nlohmann::json distribution_to_json(const StepDistribution& p) {
    nlohmann::json doc;
    doc["q"] = p.alphabet_size();
    doc["l"] = p.steps();
    doc["table"] = std::vector<double>(p.table().begin(), p.table().end());
    return doc;
}

StepDistribution distribution_from_json(const nlohmann::json& doc, const std::string& path) {
    if (!doc.is_object()) throw ParseError(path, "expected an object");
    for (const char* key : {"q", "l", "table"}) {
        if (!doc.contains(key)) throw ParseError(path + "." + key, "missing field");
    }
    if (!doc["q"].is_number_integer()) throw ParseError(path + ".q", "expected an integer");
    if (!doc["l"].is_number_integer()) throw ParseError(path + ".l", "expected an integer");
    if (!doc["table"].is_array()) throw ParseError(path + ".table", "expected an array");
    std::vector<double> table;
    for (std::size_t k = 0; k < doc["table"].size(); ++k) {
        if (!doc["table"][k].is_number()) throw ParseError(path + ".table[" + std::to_string(k) + "]", "expected a number");
        table.push_back(doc["table"][k].get<double>());
    }
    try {
        return StepDistribution(doc["q"].get<int>(), doc["l"].get<int>(), std::move(table));
    } catch (const InvalidArgument& e) {
        throw ParseError(path, e.what());
    }
}

}  // namespace noisestab
