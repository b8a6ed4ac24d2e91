#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ordex/model.hpp"

namespace ordex {

// One reference interaction/redundancy measure over all features: either a
// symmetric matrix (pearson, mutual_information, shapley_interaction) or a
// per-feature vector (shapley_value).
struct MetricMatrix {
    std::string metric;
    std::vector<std::string> names;
    std::size_t n = 0;
    bool is_vector = false;
    std::vector<double> values;  // n*n row-major, or n for vectors
    int mi_bins = 0;             // mutual_information only

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
    double max_abs_off_diagonal() const;
};

// Sample Pearson correlation for every feature pair. Constant columns get 0
// entries (with a warning on stderr) instead of NaN.
MetricMatrix pearson_matrix(const Dataset& ds);

// Plug-in mutual information in bits on equal-frequency 2-D histograms with
// B = clamp(floor(sqrt(n/5)), 4, 32) bins per axis. The diagonal reports
// log2(B), the ceiling of the binning. Requires >= 50 samples.
MetricMatrix mutual_information_matrix(const Dataset& ds);

// Cooperative game v(S) over feature subsets given as bitmasks.
using GameValue = std::function<double(std::uint64_t)>;

// Exact Shapley values of v by weighted subset enumeration (2^n terms).
std::vector<double> shapley_values_game(const GameValue& v, std::size_t n_players);

// Exact pairwise Shapley interaction indices:
//   phi_ij = sum over S in N\{i,j} of |S|!(n-|S|-2)!/(2(n-1)!) *
//            (v(S+ij) - v(S+i) - v(S+j) + v(S))
std::vector<double> shapley_interactions_game(const GameValue& v, std::size_t n_players);

// Shapley values / interactions of the subset-MSE game
// v(S) = MSE(empty) - MSE(S), sharing the given cache. At most 12 features
// (2^n exact enumeration); CapacityError beyond.
MetricMatrix shapley_values(const Dataset& ds, const ModelSpec& model, const SplitSpec& split,
                            SubsetMseCache& cache);
MetricMatrix shapley_interaction_matrix(const Dataset& ds, const ModelSpec& model,
                                        const SplitSpec& split, SubsetMseCache& cache);

// CSV with a header row of feature names; one matrix row per line (vectors
// are written as a single row).
void write_metric_csv(const MetricMatrix& m, const std::filesystem::path& path);

}  // namespace ordex
