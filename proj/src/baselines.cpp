#include "ordex/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>

#include "ordex/errors.hpp"
#include "ordex/kernels.hpp"

namespace ordex {

namespace {

constexpr std::size_t kShapleyFeatureCap = 12;

// factorials up to 12! are exact in double
double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

std::vector<std::uint64_t> all_masks(std::size_t n) {
    std::vector<std::uint64_t> masks(1ULL << n);
    std::iota(masks.begin(), masks.end(), 0ULL);
    return masks;
}

}  // namespace

double MetricMatrix::max_abs_off_diagonal() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) m = std::max(m, std::fabs(at(i, j)));
    return m;
}

MetricMatrix pearson_matrix(const Dataset& ds) {
    ds.validate();
    const std::size_t n_feat = ds.n_features();
    const std::size_t n = ds.n_samples();
    if (n < 2) throw InsufficientData("pearson: need at least 2 samples");

    // Center all columns once, then correlations are normalized dot products.
    std::vector<std::vector<double>> centered(n_feat);
    std::vector<double> norms(n_feat);
    std::vector<bool> constant(n_feat, false);
    const auto& k = kernels::active();
    for (std::size_t f = 0; f < n_feat; ++f) {
        centered[f].resize(n);
        const double mean = k.sum(ds.columns[f].data(), n) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) centered[f][i] = ds.columns[f][i] - mean;
        norms[f] = std::sqrt(k.dot(centered[f].data(), centered[f].data(), n));
        if (norms[f] < 1e-12) {
            constant[f] = true;
            std::cerr << "warning: pearson: column '" << ds.feature_names[f]
                      << "' is constant; reporting 0\n";
        }
    }

    MetricMatrix m;
    m.metric = "pearson";
    m.names = ds.feature_names;
    m.n = n_feat;
    m.values.assign(n_feat * n_feat, 0.0);
    for (std::size_t i = 0; i < n_feat; ++i) {
        for (std::size_t j = i; j < n_feat; ++j) {
            double r = 0.0;
            if (!constant[i] && !constant[j]) {
                if (i == j) {
                    r = 1.0;
                } else {
                    r = k.dot(centered[i].data(), centered[j].data(), n) / (norms[i] * norms[j]);
                    r = std::clamp(r, -1.0, 1.0);
                }
            }
            m.at(i, j) = r;
            m.at(j, i) = r;
        }
    }
    return m;
}

namespace {

int mi_bin_count(std::size_t n) {
    const double b = std::floor(std::sqrt(static_cast<double>(n) / 5.0));
    return static_cast<int>(std::clamp(b, 4.0, 32.0));
}

// Equal-frequency bin index per sample: rank * B / n under a stable
// (value, index) order, so every bin holds n/B +- 1 samples.
std::vector<int> equal_frequency_bins(const std::vector<double>& col, int bins) {
    const std::size_t n = col.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&col](std::uint32_t a, std::uint32_t b) {
        return col[a] != col[b] ? col[a] < col[b] : a < b;
    });
    std::vector<int> bin(n);
    for (std::size_t rank = 0; rank < n; ++rank)
        bin[order[rank]] = static_cast<int>(rank * static_cast<std::size_t>(bins) / n);
    return bin;
}

double mi_from_bins(const std::vector<int>& bx, const std::vector<int>& by, int bins) {
    const std::size_t n = bx.size();
    const std::size_t b = static_cast<std::size_t>(bins);
    std::vector<double> joint(b * b, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        joint[static_cast<std::size_t>(bx[i]) * b + static_cast<std::size_t>(by[i])] += 1.0;
    std::vector<double> px(b, 0.0), py(b, 0.0);
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) {
            px[i] += joint[i * b + j];
            py[j] += joint[i * b + j];
        }
    const double dn = static_cast<double>(n);
    double mi = 0.0;
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) {
            const double c = joint[i * b + j];
            if (c > 0.0) mi += (c / dn) * std::log2(c * dn / (px[i] * py[j]));
        }
    return std::max(mi, 0.0);
}

}  // namespace

MetricMatrix mutual_information_matrix(const Dataset& ds) {
    ds.validate();
    const std::size_t n = ds.n_samples();
    if (n < 50) throw InsufficientData("mutual_information: need at least 50 samples");
    const std::size_t n_feat = ds.n_features();
    const int bins = mi_bin_count(n);

    std::vector<std::vector<int>> binned(n_feat);
    for (std::size_t f = 0; f < n_feat; ++f) binned[f] = equal_frequency_bins(ds.columns[f], bins);

    MetricMatrix m;
    m.metric = "mutual_information";
    m.names = ds.feature_names;
    m.n = n_feat;
    m.mi_bins = bins;
    m.values.assign(n_feat * n_feat, 0.0);
    for (std::size_t i = 0; i < n_feat; ++i) {
        m.at(i, i) = std::log2(static_cast<double>(bins));
        for (std::size_t j = i + 1; j < n_feat; ++j) {
            const double v = mi_from_bins(binned[i], binned[j], bins);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return m;
}

std::vector<double> shapley_values_game(const GameValue& v, std::size_t n_players) {
    if (n_players == 0 || n_players > kShapleyFeatureCap)
        throw CapacityError("shapley: player count must be in [1, 12]");
    const std::size_t n = n_players;
    std::vector<double> table(1ULL << n);
    for (std::uint64_t mask = 0; mask < table.size(); ++mask) table[mask] = v(mask);

    std::vector<double> weight(n);  // by |S|
    const double nfact = factorial(n);
    for (std::size_t s = 0; s < n; ++s) weight[s] = factorial(s) * factorial(n - s - 1) / nfact;

    std::vector<double> phi(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t bit = 1ULL << i;
        for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
            if (mask & bit) continue;
            const auto s = static_cast<std::size_t>(std::popcount(mask));
            phi[i] += weight[s] * (table[mask | bit] - table[mask]);
        }
    }
    return phi;
}

std::vector<double> shapley_interactions_game(const GameValue& v, std::size_t n_players) {
    if (n_players == 0 || n_players > kShapleyFeatureCap)
        throw CapacityError("shapley: player count must be in [1, 12]");
    const std::size_t n = n_players;
    std::vector<double> table(1ULL << n);
    for (std::uint64_t mask = 0; mask < table.size(); ++mask) table[mask] = v(mask);

    std::vector<double> phi(n * n, 0.0);
    if (n < 2) return phi;
    std::vector<double> weight(n - 1);  // by |S|
    const double denom = 2.0 * factorial(n - 1);
    for (std::size_t s = 0; s + 2 <= n; ++s)
        weight[s] = factorial(s) * factorial(n - s - 2) / denom;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::uint64_t bi = 1ULL << i;
            const std::uint64_t bj = 1ULL << j;
            double total = 0.0;
            for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
                if (mask & (bi | bj)) continue;
                const auto s = static_cast<std::size_t>(std::popcount(mask));
                total += weight[s] * (table[mask | bi | bj] - table[mask | bi] -
                                      table[mask | bj] + table[mask]);
            }
            phi[i * n + j] = total;
            phi[j * n + i] = total;
        }
    }
    return phi;
}

namespace {

// Primes the cache over all 2^n subsets and returns the game
// v(S) = MSE(empty) - MSE(S) as a dense table lookup.
std::vector<double> mse_game_table(const Dataset& ds, const ModelSpec& model,
                                   const SplitSpec& split, SubsetMseCache& cache) {
    const std::size_t n = ds.n_features();
    if (n > kShapleyFeatureCap)
        throw CapacityError("shapley baselines support at most 12 features (" + std::to_string(n) +
                            " given)");
    const SubsetEvaluator eval(ds, model, split);
    eval.prime(all_masks(n), cache);
    const double base = *cache.find(0);
    std::vector<double> game(1ULL << n);
    for (std::uint64_t mask = 0; mask < game.size(); ++mask) game[mask] = base - *cache.find(mask);
    return game;
}

}  // namespace

MetricMatrix shapley_values(const Dataset& ds, const ModelSpec& model, const SplitSpec& split,
                            SubsetMseCache& cache) {
    const auto game = mse_game_table(ds, model, split, cache);
    const auto phi = shapley_values_game([&game](std::uint64_t m) { return game[m]; },
                                         ds.n_features());
    MetricMatrix m;
    m.metric = "shapley_value";
    m.names = ds.feature_names;
    m.n = ds.n_features();
    m.is_vector = true;
    m.values = phi;
    return m;
}

MetricMatrix shapley_interaction_matrix(const Dataset& ds, const ModelSpec& model,
                                        const SplitSpec& split, SubsetMseCache& cache) {
    const auto game = mse_game_table(ds, model, split, cache);
    MetricMatrix m;
    m.metric = "shapley_interaction";
    m.names = ds.feature_names;
    m.n = ds.n_features();
    m.values = shapley_interactions_game([&game](std::uint64_t mask) { return game[mask]; },
                                         ds.n_features());
    return m;
}

void write_metric_csv(const MetricMatrix& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    for (std::size_t j = 0; j < m.n; ++j) out << m.names[j] << (j + 1 < m.n ? "," : "\n");
    if (m.is_vector) {
        for (std::size_t j = 0; j < m.n; ++j)
            out << format_double(m.values[j]) << (j + 1 < m.n ? "," : "\n");
    } else {
        for (std::size_t i = 0; i < m.n; ++i)
            for (std::size_t j = 0; j < m.n; ++j)
                out << format_double(m.at(i, j)) << (j + 1 < m.n ? "," : "\n");
    }
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace ordex
