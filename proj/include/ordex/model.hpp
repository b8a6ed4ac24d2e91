#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ordex/dataset.hpp"

namespace ordex {

// Seeded 70/30-style shuffle split. The same spec on the same dataset always
// yields the same train/test partition.
struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 1;
};

struct ModelSpec {
    enum class Kind { knn, linear };
    Kind kind = Kind::knn;
    // k-NN neighbour count; 0 selects max(5, round(2*sqrt(n_train))).
    int k = 0;
};

// Subset-bitmask -> holdout MSE memo shared by ordering trials and Shapley
// enumeration. An insert corresponds to exactly one model fit.
class SubsetMseCache {
public:
    std::optional<double> find(std::uint64_t mask) const {
        const auto it = map_.find(mask);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    void insert(std::uint64_t mask, double mse) {
        if (map_.emplace(mask, mse).second) ++fits_;
    }
    std::uint64_t fits() const { return fits_; }
    std::size_t size() const { return map_.size(); }

private:
    std::unordered_map<std::uint64_t, double> map_;
    std::uint64_t fits_ = 0;
};

// Subset-trainable regressor behind one contract: train on exactly the
// masked feature columns, return holdout MSE. Target and selected features
// are standardized with train-split statistics only; the empty mask fits
// the constant mean-of-train-targets predictor.
class SubsetEvaluator {
public:
    SubsetEvaluator(const Dataset& ds, const ModelSpec& model, const SplitSpec& split);

    // One model fit; pure function of (dataset, mask, model, split).
    double evaluate(std::uint64_t mask) const;

    // Lookup-or-evaluate against a cache.
    double cached_mse(std::uint64_t mask, SubsetMseCache& cache) const;

    // Ensures every mask is present in the cache, evaluating missing ones in
    // parallel. Final cache contents are identical to serial evaluation.
    void prime(const std::vector<std::uint64_t>& masks, SubsetMseCache& cache) const;

    // Holdout predictions in test-row order (standardized target units).
    std::vector<double> predictions(std::uint64_t mask) const;

    std::size_t n_features() const { return dataset_->n_features(); }
    std::size_t n_train() const { return train_rows_.size(); }
    std::size_t n_test() const { return test_rows_.size(); }
    int effective_k() const { return k_; }
    const std::vector<std::size_t>& train_rows() const { return train_rows_; }
    const std::vector<std::size_t>& test_rows() const { return test_rows_; }

private:
    struct Packed {
        std::vector<double> train;  // column-major, n_train per column
        std::vector<double> test;   // column-major, n_test per column
        std::size_t dim = 0;
    };
    Packed pack(std::uint64_t mask) const;
    std::vector<double> predict_knn(const Packed& p) const;
    std::vector<double> predict_linear(const Packed& p) const;

    const Dataset* dataset_;
    ModelSpec model_;
    SplitSpec split_;
    int k_ = 0;
    std::vector<std::size_t> train_rows_;
    std::vector<std::size_t> test_rows_;
    std::vector<double> target_train_;  // standardized
    std::vector<double> target_test_;   // standardized with train stats
    double target_train_mean_std_ = 0.0;
};

// Train/test row indices for a split (exposed for tests and diagnostics).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_rows(std::size_t n_samples,
                                                                         const SplitSpec& split);

// Convenience form of the evaluator for one-off queries.
double subset_mse(const Dataset& ds, std::uint64_t mask, const ModelSpec& model,
                  const SplitSpec& split, SubsetMseCache& cache);

// mse_before - mse_after; negative values (harmful additions) pass through.
double marginal_reduction(double mse_before, double mse_after);

}  // namespace ordex
