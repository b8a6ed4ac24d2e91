#include "ordex/ordering.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "ordex/dataset.hpp"
#include "ordex/errors.hpp"
#include "ordex/rng.hpp"

namespace ordex {

namespace {

constexpr std::size_t kExhaustiveFeatureCap = 8;

std::vector<int> sampled_order(std::size_t n_features, std::uint64_t seed, std::uint64_t trial) {
    Rng rng(derive_stream(seed, trial));
    std::vector<int> order(n_features);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n_features; i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
    return order;
}

// Builds the trial records for a fixed list of orders: collects every prefix
// subset, primes the cache for them (in parallel), then assembles step MSE
// traces from cached values only.
std::vector<TrialRecord> assemble_trials(const Dataset& ds, const SubsetEvaluator& eval,
                                         SubsetMseCache& cache,
                                         const std::vector<std::vector<int>>& orders) {
    std::vector<std::uint64_t> masks;
    masks.reserve(orders.size() * ds.n_features() + 1);
    masks.push_back(0);
    for (const auto& order : orders) {
        std::uint64_t mask = 0;
        for (const int f : order) {
            mask |= 1ULL << f;
            masks.push_back(mask);
        }
    }
    eval.prime(masks, cache);

    std::vector<TrialRecord> trials(orders.size());
    for (std::size_t t = 0; t < orders.size(); ++t) {
        TrialRecord& rec = trials[t];
        rec.trial_index = t;
        rec.order = orders[t];
        rec.step_mse.resize(ds.n_features() + 1);
        rec.deltas.resize(ds.n_features());
        std::uint64_t mask = 0;
        rec.step_mse[0] = *cache.find(0);
        for (std::size_t j = 0; j < rec.order.size(); ++j) {
            mask |= 1ULL << rec.order[j];
            rec.step_mse[j + 1] = *cache.find(mask);
            rec.deltas[j] = rec.step_mse[j] - rec.step_mse[j + 1];
        }
    }
    return trials;
}

void check_pair(const TrialSet& trials, int a, int b) {
    const int n = static_cast<int>(trials.n_features);
    if (a < 0 || b < 0 || a >= n || b >= n)
        throw ArgumentError("pair index out of range");
    if (a == b) throw ArgumentError("pair requires two distinct features");
}

}  // namespace

TrialSet run_exhaustive(const Dataset& ds, const ModelSpec& model, const SplitSpec& split,
                        SubsetMseCache& cache) {
    ds.validate();
    const std::size_t n = ds.n_features();
    if (n > kExhaustiveFeatureCap)
        throw CapacityError("exhaustive mode supports at most 8 features (" + std::to_string(n) +
                            " given); use run_sampled");
    if (n == 0) throw ArgumentError("dataset has no features");

    std::vector<std::vector<int>> orders;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const SubsetEvaluator eval(ds, model, split);
    TrialSet out;
    out.trials = assemble_trials(ds, eval, cache, orders);
    out.mode = TrialMode::exhaustive;
    out.n_features = n;
    out.model = model;
    out.split = split;
    out.dataset_id = ds.provenance.generator;
    return out;
}

TrialSet run_exhaustive(const Dataset& ds, const ModelSpec& model, const SplitSpec& split) {
    SubsetMseCache cache;
    return run_exhaustive(ds, model, split, cache);
}

TrialSet run_sampled(const Dataset& ds, const ModelSpec& model, const SplitSpec& split,
                     std::size_t n_trials, std::uint64_t seed, SubsetMseCache& cache) {
    ds.validate();
    if (n_trials < 1) throw ArgumentError("run_sampled: n_trials must be >= 1");
    const std::size_t n = ds.n_features();
    if (n == 0) throw ArgumentError("dataset has no features");

    std::vector<std::vector<int>> orders(n_trials);
    for (std::size_t t = 0; t < n_trials; ++t) orders[t] = sampled_order(n, seed, t);

    const SubsetEvaluator eval(ds, model, split);
    TrialSet out;
    out.trials = assemble_trials(ds, eval, cache, orders);
    out.mode = TrialMode::sampled;
    out.n_features = n;
    out.model = model;
    out.split = split;
    out.seed = seed;
    out.dataset_id = ds.provenance.generator;
    return out;
}

TrialSet run_sampled(const Dataset& ds, const ModelSpec& model, const SplitSpec& split,
                     std::size_t n_trials, std::uint64_t seed) {
    SubsetMseCache cache;
    return run_sampled(ds, model, split, n_trials, seed, cache);
}

PairCloud build_pair_clouds(const TrialSet& trials, int a, int b) {
    check_pair(trials, a, b);
    PairCloud cloud;
    cloud.a = a;
    cloud.b = b;
    for (const auto& rec : trials.trials) {
        std::size_t pos_a = 0, pos_b = 0;
        for (std::size_t j = 0; j < rec.order.size(); ++j) {
            if (rec.order[j] == a) pos_a = j;
            if (rec.order[j] == b) pos_b = j;
        }
        const Point2 pt{rec.deltas[pos_a], rec.deltas[pos_b]};
        if (pos_a < pos_b) {
            cloud.red.push_back(pt);
            cloud.red_trials.push_back(rec.trial_index);
        } else {
            cloud.blue.push_back(pt);
            cloud.blue_trials.push_back(rec.trial_index);
        }
    }
    return cloud;
}

std::vector<Point3> export_triad_cloud(const TrialSet& trials, int a, int b, int c) {
    check_pair(trials, a, b);
    check_pair(trials, a, c);
    check_pair(trials, b, c);
    std::vector<Point3> points;
    points.reserve(trials.trials.size());
    for (const auto& rec : trials.trials) {
        Point3 pt;
        for (std::size_t j = 0; j < rec.order.size(); ++j) {
            if (rec.order[j] == a) pt.x = rec.deltas[j];
            if (rec.order[j] == b) pt.y = rec.deltas[j];
            if (rec.order[j] == c) pt.z = rec.deltas[j];
        }
        points.push_back(pt);
    }
    return points;
}

void write_trials_csv(const TrialSet& trials, const std::vector<std::string>& feature_names,
                      const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "trial_index,position,feature_name,mse_before,mse_after,delta\n";
    for (const auto& rec : trials.trials)
        for (std::size_t j = 0; j < rec.order.size(); ++j)
            out << rec.trial_index << ',' << j << ',' << feature_names[rec.order[j]] << ','
                << format_double(rec.step_mse[j]) << ',' << format_double(rec.step_mse[j + 1]) << ','
                << format_double(rec.deltas[j]) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

void write_cloud_csv(const PairCloud& cloud, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "trial_index,arm,x,y\n";
    for (std::size_t i = 0; i < cloud.red.size(); ++i)
        out << cloud.red_trials[i] << ",red," << format_double(cloud.red[i].x) << ','
            << format_double(cloud.red[i].y) << '\n';
    for (std::size_t i = 0; i < cloud.blue.size(); ++i)
        out << cloud.blue_trials[i] << ",blue," << format_double(cloud.blue[i].x) << ','
            << format_double(cloud.blue[i].y) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

void write_triad_csv(const std::vector<Point3>& points, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "trial_index,x,y,z\n";
    for (std::size_t i = 0; i < points.size(); ++i)
        out << i << ',' << format_double(points[i].x) << ',' << format_double(points[i].y) << ','
            << format_double(points[i].z) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace ordex
