#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ordex/baselines.hpp"
#include "ordex/geometry.hpp"
#include "ordex/ordering.hpp"

namespace ordex {

inline constexpr const char* kToolVersion = "0.1.0";

// Everything an analyze/compare run needs; fully echoed into the report so a
// run can be reproduced from its artifacts.
struct RunConfig {
    std::string data_path;
    std::string target_column = "y";
    TrialMode mode = TrialMode::sampled;
    std::size_t n_trials = 0;  // 0 -> 20 * n_features
    ModelSpec model;
    SplitSpec split;
    std::uint64_t seed = 42;  // trial-order sampling seed
    double tau = 0.4;
    std::vector<std::string> baselines;  // of {pearson, mutual_information, shapley}
    std::string out_dir = "out";
};

struct GenerateConfig {
    std::string kind;
    std::size_t n_samples = 2000;
    std::size_t n_distractors = 3;
    double noise_sd = 0.05;
    std::uint64_t seed = 42;
    std::string out_dir = "data";
};

// Writes <out>/<kind>.csv plus the <kind>.provenance.json sidecar and
// returns the CSV path.
std::filesystem::path run_generate(const GenerateConfig& cfg);

// Full pipeline: ordering run, pair scores, triad detection, optional
// baselines; writes report.json, clouds/, plots/, trials.csv and triads/
// under cfg.out_dir. Returns the report document.
nlohmann::json run_analyze(const RunConfig& cfg);

// Fig-3-style comparison: L-score vs Pearson vs mutual information vs
// Shapley interaction. Writes four heatmap SVGs and compare.csv.
void run_compare(const RunConfig& cfg);

// L-scores of a score table as a renderable/exportable matrix (pairs with
// insufficient data appear as 0).
MetricMatrix l_score_metric(const PairScoreTable& table, const std::vector<std::string>& names);

// Canonical serialization: sorted keys, 2-space indent, trailing newline.
void write_report_json(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace ordex
