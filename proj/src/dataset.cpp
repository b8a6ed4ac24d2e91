#include "ordex/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unordered_set>

#include "ordex/errors.hpp"

namespace ordex {

nlohmann::json Provenance::to_json() const {
    return nlohmann::json{{"generator", generator}, {"params", params}, {"seed", seed}};
}

void Dataset::validate() const {
    if (feature_names.size() != columns.size())
        throw ArgumentError("dataset: feature name count does not match column count");
    std::unordered_set<std::string> seen;
    for (const auto& name : feature_names)
        if (!seen.insert(name).second)
            throw ArgumentError("dataset: duplicate feature name '" + name + "'");
    for (std::size_t f = 0; f < columns.size(); ++f) {
        if (columns[f].size() != target.size())
            throw ArgumentError("dataset: column '" + feature_names[f] + "' length mismatch");
        for (double v : columns[f])
            if (!std::isfinite(v))
                throw ArgumentError("dataset: non-finite value in column '" + feature_names[f] + "'");
    }
    for (double v : target)
        if (!std::isfinite(v)) throw ArgumentError("dataset: non-finite value in target");
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_dataset_csv(const Dataset& ds, const std::filesystem::path& csv_path) {
    std::ofstream out(csv_path);
    if (!out) throw IoError("cannot open for writing: " + csv_path.string());
    for (const auto& name : ds.feature_names) out << name << ',';
    out << "y\n";
    for (std::size_t i = 0; i < ds.n_samples(); ++i) {
        for (const auto& col : ds.columns) out << format_double(col[i]) << ',';
        out << format_double(ds.target[i]) << '\n';
    }
    if (!out) throw IoError("write failed: " + csv_path.string());
}

void write_provenance(const Provenance& p, const std::filesystem::path& json_path) {
    std::ofstream out(json_path);
    if (!out) throw IoError("cannot open for writing: " + json_path.string());
    out << p.to_json().dump(2) << '\n';
    if (!out) throw IoError("write failed: " + json_path.string());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, const std::string& column, std::size_t row) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t' || *(last - 1) == '\r')) --last;
    double v = 0.0;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw DataError("non-numeric value in column '" + column + "' at data row " +
                        std::to_string(row));
    return v;
}

}  // namespace

Dataset load_dataset_csv(const std::filesystem::path& csv_path, const std::string& target_column) {
    std::ifstream in(csv_path);
    if (!in) throw IoError("cannot open dataset: " + csv_path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError("empty dataset file: " + csv_path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);

    std::size_t target_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == target_column) target_idx = i;
    if (target_idx == header.size())
        throw DataError("target column '" + target_column + "' not found in " + csv_path.string());

    Dataset ds;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (i != target_idx) {
            ds.feature_names.push_back(header[i]);
            ds.columns.emplace_back();
        }

    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw DataError("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                            " cells, expected " + std::to_string(header.size()));
        std::size_t f = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i == target_idx) {
                ds.target.push_back(parse_cell(cells[i], target_column, row));
            } else {
                ds.columns[f].push_back(parse_cell(cells[i], header[i], row));
                ++f;
            }
        }
    }
    ds.provenance.generator = "csv";
    ds.provenance.params = nlohmann::json{{"path", csv_path.string()}, {"target", target_column}};
    try {
        ds.validate();
    } catch (const ArgumentError& e) {
        throw DataError(e.what());
    }
    return ds;
}

}  // namespace ordex
