#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace ordex {

// Where a dataset came from, enough to regenerate it bit-identically.
struct Provenance {
    std::string generator;   // e.g. "synergy-cubic", "csv"
    nlohmann::json params;   // generator parameters (or source path for csv)
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
};

// Column-major feature matrix plus target. Invariants: unique feature
// names, one name per column, equal column lengths, all values finite.
struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> columns;  // [feature][sample]
    std::vector<double> target;
    Provenance provenance;

    std::size_t n_samples() const { return target.size(); }
    std::size_t n_features() const { return columns.size(); }

    // Throws ArgumentError on any violated invariant.
    void validate() const;
};

// Shortest round-trip decimal rendering (std::to_chars).
std::string format_double(double v);

// CSV with a header row: feature columns first, target column last.
void write_dataset_csv(const Dataset& ds, const std::filesystem::path& csv_path);

// Sidecar {generator, params, seed}.
void write_provenance(const Provenance& p, const std::filesystem::path& json_path);

// Generic CSV ingestion. The target column is located by name; every other
// column becomes a feature, in file order. Throws IoError when unreadable,
// ArgumentError when the target is missing or a cell is not numeric (the
// message names the offending column).
Dataset load_dataset_csv(const std::filesystem::path& csv_path, const std::string& target_column);

}  // namespace ordex
