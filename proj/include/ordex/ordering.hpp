#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ordex/model.hpp"

namespace ordex {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// One feature-addition order with its per-step holdout MSE trace.
// step_mse[0] is the empty-subset MSE; deltas[j] = step_mse[j] -
// step_mse[j+1] is attributed to feature order[j], so the deltas telescope
// exactly to step_mse.front() - step_mse.back().
struct TrialRecord {
    std::uint64_t trial_index = 0;
    std::vector<int> order;
    std::vector<double> step_mse;
    std::vector<double> deltas;
};

enum class TrialMode { exhaustive, sampled };

struct TrialSet {
    std::vector<TrialRecord> trials;
    TrialMode mode = TrialMode::sampled;
    std::size_t n_features = 0;
    ModelSpec model;
    SplitSpec split;
    std::uint64_t seed = 0;  // sampling seed; unused in exhaustive mode
    std::string dataset_id;
};

// Order-conditioned contribution clouds for a feature pair. Every trial
// contributes the point (delta of a, delta of b); it lands in `red` when a
// precedes b in the trial's order, else in `blue`.
struct PairCloud {
    int a = 0;
    int b = 0;
    std::vector<Point2> red;
    std::vector<Point2> blue;
    std::vector<std::uint64_t> red_trials;   // originating trial per red point
    std::vector<std::uint64_t> blue_trials;  // originating trial per blue point
};

// All n! addition orders in lexicographic order. Requires n_features <= 8
// (CapacityError otherwise, pointing at run_sampled); the shared cache keeps
// the number of model fits at 2^n.
TrialSet run_exhaustive(const Dataset& ds, const ModelSpec& model, const SplitSpec& split,
                        SubsetMseCache& cache);
TrialSet run_exhaustive(const Dataset& ds, const ModelSpec& model, const SplitSpec& split);

// n_trials seeded uniform random orders. Trial t's permutation depends only
// on (seed, t), not on n_trials.
TrialSet run_sampled(const Dataset& ds, const ModelSpec& model, const SplitSpec& split,
                     std::size_t n_trials, std::uint64_t seed, SubsetMseCache& cache);
TrialSet run_sampled(const Dataset& ds, const ModelSpec& model, const SplitSpec& split,
                     std::size_t n_trials, std::uint64_t seed);

PairCloud build_pair_clouds(const TrialSet& trials, int a, int b);

// One (delta_a, delta_b, delta_c) point per trial.
std::vector<Point3> export_triad_cloud(const TrialSet& trials, int a, int b, int c);

// trial_index,position,feature_name,mse_before,mse_after,delta
void write_trials_csv(const TrialSet& trials, const std::vector<std::string>& feature_names,
                      const std::filesystem::path& path);

// trial_index,arm,x,y with arm in {red, blue}
void write_cloud_csv(const PairCloud& cloud, const std::filesystem::path& path);

// trial_index,x,y,z
void write_triad_csv(const std::vector<Point3>& points, const std::filesystem::path& path);

}  // namespace ordex
