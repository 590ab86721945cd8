#include "noisestab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <thread>

#include "noisestab/errors.hpp"
#include "noisestab/harmonic.hpp"
#include "noisestab/random.hpp"

namespace noisestab {
namespace {

constexpr std::size_t kChunkSize = 1 << 16;

void validate_family(std::span<const TableFunction> functions, const StepDistribution& p) {
    if (functions.size() != static_cast<std::size_t>(p.steps())) {
        throw InvalidArgument("got " + std::to_string(functions.size()) + " functions for a " +
                              std::to_string(p.steps()) + "-step distribution");
    }
    for (const auto& f : functions) {
        if (f.alphabet_size() != p.alphabet_size()) throw InvalidArgument("function alphabet differs from the distribution's");
        if (f.arity() != functions.front().arity()) throw InvalidArgument("functions have different arities");
    }
}

struct ChunkSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

ChunkSums run_chunk(std::span<const TableFunction> functions, const StepDistribution& p, std::size_t count,
                    std::uint64_t seed) {
    const int n = functions.front().arity();
    const int ell = p.steps();
    const auto q = static_cast<std::size_t>(p.alphabet_size());
    // Columns are drawn coordinate-major: n·count draws from one stream.
    const Eigen::MatrixXi cols = sample(p, count * static_cast<std::size_t>(std::max(n, 1)), seed);
    ChunkSums out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(ell));
    for (std::size_t s = 0; s < count; ++s) {
        std::fill(idx.begin(), idx.end(), 0);
        std::size_t place = 1;
        for (int i = 0; i < n; ++i) {
            const auto c = static_cast<Eigen::Index>(s * static_cast<std::size_t>(n) + static_cast<std::size_t>(i));
            for (int j = 0; j < ell; ++j) idx[static_cast<std::size_t>(j)] += place * static_cast<std::size_t>(cols(j, c));
            place *= q;
        }
        double prod = 1.0;
        for (int j = 0; j < ell; ++j) prod *= functions[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
        out.sum += prod;
        out.sum_sq += prod * prod;
    }
    return out;
}

}  // namespace

double noisy_inner_product(const TableFunction& f, const TableFunction& g, double rho) {
    if (f.arity() != g.arity()) throw InvalidArgument("noisy inner product needs equal arities");
    if (!(rho >= -1.0 && rho <= 1.0)) throw InvalidArgument("correlation must lie in [-1,1]");
    const auto fh = fourier_transform(f);
    const auto gh = fourier_transform(g);
    std::vector<double> powers(static_cast<std::size_t>(f.arity()) + 1, 1.0);
    for (std::size_t k = 1; k < powers.size(); ++k) powers[k] = powers[k - 1] * rho;
    double total = 0.0;
    for (std::size_t s = 0; s < fh.coefficients.size(); ++s) {
        total += powers[static_cast<std::size_t>(mask_size(s))] * fh.coefficients[s] * gh.coefficients[s];
    }
    return total;
}

double pair_correlation(const TableFunction& f, const TableFunction& g, const StepDistribution& p) {
    if (p.steps() != 2) throw InvalidArgument("pair_correlation needs a 2-step distribution");
    if (f.alphabet_size() != p.alphabet_size() || g.alphabet_size() != p.alphabet_size()) {
        throw InvalidArgument("function alphabet differs from the distribution's");
    }
    if (f.arity() != g.arity()) throw InvalidArgument("pair_correlation needs equal arities");
    const auto m = marginals(p);
    const auto smoothed = apply_kernel(g, conditional_kernel(p, 0, 1), m[0]);
    const auto weights = product_weights(m[0], f.arity());
    double total = 0.0;
    for (std::size_t idx = 0; idx < f.size(); ++idx) total += weights[idx] * f[idx] * smoothed[idx];
    return total;
}

void for_each_joint_assignment(const StepDistribution& p, int n, double budget,
                               const std::function<void(std::span<const std::size_t>, double)>& visit) {
    const auto& support = p.support();
    const double leaves = std::pow(static_cast<double>(support.size()), n);
    if (leaves > budget) throw BudgetExceeded("exact enumeration |supp(P)|^n; use the Monte-Carlo path", leaves, budget);

    const int ell = p.steps();
    const auto q = static_cast<std::size_t>(p.alphabet_size());
    std::vector<std::vector<int>> tuples;
    for (std::size_t idx : support) tuples.push_back(p.tuple(idx));

    // indices[level][j]: partial table index of step j after `level` coordinates.
    std::vector<std::vector<std::size_t>> indices(static_cast<std::size_t>(n) + 1,
                                                  std::vector<std::size_t>(static_cast<std::size_t>(ell), 0));
    std::vector<double> weight(static_cast<std::size_t>(n) + 1, 1.0);
    std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> place(static_cast<std::size_t>(n), 1);
    for (int i = 1; i < n; ++i) place[static_cast<std::size_t>(i)] = place[static_cast<std::size_t>(i - 1)] * q;

    if (n == 0) {
        visit(indices[0], 1.0);
        return;
    }
    int level = 0;
    while (level >= 0) {
        const auto lv = static_cast<std::size_t>(level);
        if (choice[lv] == tuples.size()) {
            choice[lv] = 0;
            --level;
            if (level >= 0) ++choice[static_cast<std::size_t>(level)];
            continue;
        }
        const auto& t = tuples[choice[lv]];
        weight[lv + 1] = weight[lv] * p.probability(support[choice[lv]]);
        for (int j = 0; j < ell; ++j) {
            indices[lv + 1][static_cast<std::size_t>(j)] =
                indices[lv][static_cast<std::size_t>(j)] + place[lv] * static_cast<std::size_t>(t[static_cast<std::size_t>(j)]);
        }
        if (level + 1 == n) {
            visit(indices[lv + 1], weight[lv + 1]);
            ++choice[lv];
        } else {
            ++level;
        }
    }
}

double multi_correlation(std::span<const TableFunction> functions, const StepDistribution& p, double budget) {
    validate_family(functions, p);
    double total = 0.0;
    for_each_joint_assignment(p, functions.front().arity(), budget,
                              [&](std::span<const std::size_t> idx, double w) {
                                  double prod = w;
                                  for (std::size_t j = 0; j < idx.size(); ++j) prod *= functions[j][idx[j]];
                                  total += prod;
                              });
    return total;
}

MonteCarloEstimate multi_correlation_mc(std::span<const TableFunction> functions, const StepDistribution& p,
                                        std::size_t samples, std::uint64_t seed) {
    validate_family(functions, p);
    if (samples < 2) throw InvalidArgument("Monte-Carlo estimation needs at least 2 samples");
    for (const auto& f : functions) {
        for (double v : f.values()) {
            if (v < -1.0 || v > 1.0) throw InvalidArgument("Monte-Carlo path needs values bounded in [-1,1]");
        }
    }
    const std::size_t chunks = (samples + kChunkSize - 1) / kChunkSize;
    std::vector<std::future<ChunkSums>> pending;
    pending.reserve(chunks);
    const auto launch = std::thread::hardware_concurrency() > 1 ? std::launch::async : std::launch::deferred;
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t count = std::min(kChunkSize, samples - c * kChunkSize);
        pending.push_back(std::async(launch, run_chunk, functions, std::cref(p), count, derive_seed(seed, c)));
    }
    ChunkSums total;
    for (auto& fut : pending) {
        const auto part = fut.get();
        total.sum += part.sum;
        total.sum_sq += part.sum_sq;
    }
    const double count = static_cast<double>(samples);
    const double mean = total.sum / count;
    const double var = std::max(0.0, (total.sum_sq - count * mean * mean) / (count - 1.0));
    return MonteCarloEstimate{mean, kZ99 * std::sqrt(var / count), samples};
}

SmoothingReport smoothing_check(std::span<const TableFunction> functions, const StepDistribution& p, double epsilon,
                                std::optional<double> gamma) {
    validate_family(functions, p);
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw InvalidArgument("smoothing needs ε in (0, 1/2]");
    for (const auto& f : functions) {
        for (double v : f.values()) {
            if (v < 0.0 || v > 1.0) throw InvalidArgument("smoothing check needs [0,1]-valued functions");
        }
    }
    const auto corr = rho_max(p);
    if (corr.degenerate) throw DegenerateDistribution("ρ(P) = 1; smoothing does not apply");

    SmoothingReport report;
    report.rho = corr.rho;
    report.epsilon = epsilon;
    const double ell = p.steps();
    report.gamma = gamma.value_or((1.0 - corr.rho) * epsilon / (ell * std::log(ell / epsilon)));
    if (!(report.gamma >= 0.0 && report.gamma <= 1.0)) throw InvalidArgument("γ must lie in [0,1]");

    const auto m = marginals(p);
    std::vector<TableFunction> smoothed;
    std::vector<TableFunction> original;
    for (std::size_t j = 0; j < functions.size(); ++j) {
        original.push_back(functions[j].with_measure(m[j]));
        smoothed.push_back(noise_operator(original.back(), 1.0 - report.gamma));
    }
    if (p.steps() == 2) {
        report.original = pair_correlation(original[0], original[1], p);
        report.smoothed = pair_correlation(smoothed[0], smoothed[1], p);
    } else {
        report.original = multi_correlation(original, p);
        report.smoothed = multi_correlation(smoothed, p);
    }
    report.difference = std::abs(report.original - report.smoothed);
    report.holds = report.difference <= epsilon;
    return report;
}

}  // namespace noisestab
