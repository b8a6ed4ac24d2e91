#include "ordex/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "ordex/errors.hpp"
#include "ordex/kernels.hpp"
#include "ordex/parallel.hpp"
#include "ordex/rng.hpp"

namespace ordex {

namespace {

constexpr double kTinySd = 1e-12;
constexpr double kRidge = 1e-8;

struct ColumnStats {
    double mean;
    double scale;  // sd, or 1 when the column is (numerically) constant
};

ColumnStats train_stats(const double* v, std::size_t n) {
    const auto& k = kernels::active();
    const double mean = k.sum(v, n) / static_cast<double>(n);
    // population variance of the train split
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = v[i] - mean;
        sq += d * d;
    }
    const double sd = std::sqrt(sq / static_cast<double>(n));
    return {mean, sd < kTinySd ? 1.0 : sd};
}

}  // namespace

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_rows(std::size_t n_samples,
                                                                         const SplitSpec& split) {
    if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0))
        throw ArgumentError("split: train_fraction must be in (0, 1)");
    std::vector<std::size_t> idx(n_samples);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(splitmix64(split.seed) ^ 0xa5a5a5a5a5a5a5a5ULL);
    for (std::size_t i = n_samples; i > 1; --i)
        std::swap(idx[i - 1], idx[rng.below(i)]);
    const auto n_train =
        static_cast<std::size_t>(std::llround(split.train_fraction * static_cast<double>(n_samples)));
    std::vector<std::size_t> train(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::size_t> test(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    return {std::move(train), std::move(test)};
}

SubsetEvaluator::SubsetEvaluator(const Dataset& ds, const ModelSpec& model, const SplitSpec& split)
    : dataset_(&ds), model_(model), split_(split) {
    if (ds.n_features() > 64)
        throw ArgumentError("subset model: feature count exceeds the 64-bit subset mask");
    auto [train, test] = split_rows(ds.n_samples(), split);
    train_rows_ = std::move(train);
    test_rows_ = std::move(test);
    if (train_rows_.empty()) throw ArgumentError("subset model: split leaves no training rows");
    if (test_rows_.size() < 10)
        throw ArgumentError("subset model: split leaves fewer than 10 test rows");

    std::vector<double> raw_train(train_rows_.size());
    for (std::size_t i = 0; i < train_rows_.size(); ++i) raw_train[i] = ds.target[train_rows_[i]];
    const ColumnStats st = train_stats(raw_train.data(), raw_train.size());
    target_train_.resize(train_rows_.size());
    for (std::size_t i = 0; i < train_rows_.size(); ++i)
        target_train_[i] = (raw_train[i] - st.mean) / st.scale;
    target_test_.resize(test_rows_.size());
    for (std::size_t i = 0; i < test_rows_.size(); ++i)
        target_test_[i] = (ds.target[test_rows_[i]] - st.mean) / st.scale;
    target_train_mean_std_ =
        kernels::active().sum(target_train_.data(), target_train_.size()) /
        static_cast<double>(target_train_.size());

    if (model_.kind == ModelSpec::Kind::knn) {
        k_ = model_.k != 0
                 ? model_.k
                 : std::max<int>(5, static_cast<int>(std::llround(
                                        2.0 * std::sqrt(static_cast<double>(train_rows_.size())))));
        if (k_ < 1) throw ArgumentError("knn: k must be positive");
        if (static_cast<std::size_t>(k_) > train_rows_.size())
            throw ArgumentError("knn: k exceeds the number of training rows");
    }
}

SubsetEvaluator::Packed SubsetEvaluator::pack(std::uint64_t mask) const {
    if (dataset_->n_features() < 64 && (mask >> dataset_->n_features()) != 0)
        throw ArgumentError("subset mask references a feature out of range");
    Packed p;
    for (std::size_t f = 0; f < dataset_->n_features(); ++f) {
        if ((mask >> f & 1ULL) == 0) continue;
        const auto& col = dataset_->columns[f];
        const std::size_t base_train = p.train.size();
        p.train.resize(base_train + train_rows_.size());
        for (std::size_t i = 0; i < train_rows_.size(); ++i)
            p.train[base_train + i] = col[train_rows_[i]];
        const ColumnStats st = train_stats(p.train.data() + base_train, train_rows_.size());
        for (std::size_t i = 0; i < train_rows_.size(); ++i)
            p.train[base_train + i] = (p.train[base_train + i] - st.mean) / st.scale;

        const std::size_t base_test = p.test.size();
        p.test.resize(base_test + test_rows_.size());
        for (std::size_t i = 0; i < test_rows_.size(); ++i)
            p.test[base_test + i] = (col[test_rows_[i]] - st.mean) / st.scale;
        ++p.dim;
    }
    return p;
}

std::vector<double> SubsetEvaluator::predict_knn(const Packed& p) const {
    const std::size_t n_tr = train_rows_.size();
    const std::size_t n_te = test_rows_.size();
    std::vector<double> pred(n_te);
    std::vector<double> dist(n_tr);
    std::vector<std::uint32_t> order(n_tr);
    const auto& k = kernels::active();
    const std::size_t kk = static_cast<std::size_t>(k_);

    for (std::size_t t = 0; t < n_te; ++t) {
        std::fill(dist.begin(), dist.end(), 0.0);
        for (std::size_t d = 0; d < p.dim; ++d)
            k.accum_sq_diff(dist.data(), p.train.data() + d * n_tr, p.test[d * n_te + t], n_tr);
        std::iota(order.begin(), order.end(), 0U);
        // Distance ties broken by lower train-row position for determinism.
        std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(kk - 1),
                         order.end(), [&dist](std::uint32_t a, std::uint32_t b) {
                             return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                         });
        std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(kk));
        double s = 0.0;
        for (std::size_t i = 0; i < kk; ++i) s += target_train_[order[i]];
        pred[t] = s / static_cast<double>(kk);
    }
    return pred;
}

std::vector<double> SubsetEvaluator::predict_linear(const Packed& p) const {
    const std::size_t n_tr = train_rows_.size();
    const std::size_t n_te = test_rows_.size();
    const std::size_t d = p.dim;
    Eigen::MatrixXd X(n_tr, d + 1);
    X.col(0).setOnes();
    for (std::size_t j = 0; j < d; ++j)
        X.col(static_cast<Eigen::Index>(j + 1)) = Eigen::Map<const Eigen::VectorXd>(
            p.train.data() + j * n_tr, static_cast<Eigen::Index>(n_tr));
    const Eigen::Map<const Eigen::VectorXd> y(target_train_.data(), static_cast<Eigen::Index>(n_tr));
    Eigen::MatrixXd gram = X.transpose() * X;
    gram.diagonal().array() += kRidge;
    const Eigen::VectorXd beta = gram.ldlt().solve(X.transpose() * y);

    std::vector<double> pred(n_te);
    for (std::size_t t = 0; t < n_te; ++t) {
        double v = beta(0);
        for (std::size_t j = 0; j < d; ++j) v += beta(static_cast<Eigen::Index>(j + 1)) * p.test[j * n_te + t];
        pred[t] = v;
    }
    return pred;
}

std::vector<double> SubsetEvaluator::predictions(std::uint64_t mask) const {
    if (mask == 0)
        return std::vector<double>(test_rows_.size(), target_train_mean_std_);
    const Packed p = pack(mask);
    return model_.kind == ModelSpec::Kind::knn ? predict_knn(p) : predict_linear(p);
}

double SubsetEvaluator::evaluate(std::uint64_t mask) const {
    const std::vector<double> pred = predictions(mask);
    return kernels::active().sum_sq_diff(pred.data(), target_test_.data(), pred.size()) /
           static_cast<double>(pred.size());
}

double SubsetEvaluator::cached_mse(std::uint64_t mask, SubsetMseCache& cache) const {
    if (!cache.find(0)) cache.insert(0, evaluate(0));  // baseline entry is always kept
    if (const auto hit = cache.find(mask)) return *hit;
    const double v = evaluate(mask);
    cache.insert(mask, v);
    return v;
}

void SubsetEvaluator::prime(const std::vector<std::uint64_t>& masks, SubsetMseCache& cache) const {
    std::vector<std::uint64_t> missing;
    missing.reserve(masks.size() + 1);
    if (!cache.find(0)) missing.push_back(0);
    for (const auto m : masks)
        if (!cache.find(m)) missing.push_back(m);
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    std::vector<double> values(missing.size());
    parallel_for(missing.size(), [&](std::size_t i) { values[i] = evaluate(missing[i]); });
    for (std::size_t i = 0; i < missing.size(); ++i) cache.insert(missing[i], values[i]);
}

double subset_mse(const Dataset& ds, std::uint64_t mask, const ModelSpec& model,
                  const SplitSpec& split, SubsetMseCache& cache) {
    return SubsetEvaluator(ds, model, split).cached_mse(mask, cache);
}

double marginal_reduction(double mse_before, double mse_after) {
    if (!std::isfinite(mse_before) || !std::isfinite(mse_after))
        throw NumericalError("marginal_reduction: non-finite MSE input");
    return mse_before - mse_after;
}

}  // namespace ordex
