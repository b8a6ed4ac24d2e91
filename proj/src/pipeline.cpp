#include "ordex/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include "ordex/errors.hpp"
#include "ordex/svg.hpp"
#include "ordex/synthgen.hpp"

namespace ordex {

namespace fs = std::filesystem;

namespace {

const char* mode_name(TrialMode m) { return m == TrialMode::exhaustive ? "exhaustive" : "sampled"; }
const char* model_name(ModelSpec::Kind k) { return k == ModelSpec::Kind::knn ? "knn" : "linear"; }

nlohmann::json geometry_json(const CloudGeometry& g) {
    return {{"lambda1", g.lambda1}, {"lambda2", g.lambda2},       {"theta", g.theta},
            {"skinny", g.skinny},   {"horiz", g.horiz},           {"n_points", g.n_points},
            {"degenerate", g.degenerate}};
}

nlohmann::json metric_json(const MetricMatrix& m) {
    nlohmann::json doc;
    doc["metric"] = m.metric;
    doc["names"] = m.names;
    if (m.metric == "mutual_information") doc["bins"] = m.mi_bins;
    if (m.is_vector) {
        doc["values"] = m.values;
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < m.n; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j = 0; j < m.n; ++j) row.push_back(m.at(i, j));
            rows.push_back(row);
        }
        doc["values"] = rows;
    }
    return doc;
}

nlohmann::json config_json(const RunConfig& cfg) {
    return {{"data", {{"path", cfg.data_path}, {"target", cfg.target_column}}},
            {"mode", mode_name(cfg.mode)},
            {"n_trials", cfg.n_trials},
            {"model", {{"kind", model_name(cfg.model.kind)}, {"k", cfg.model.k}}},
            {"split", {{"train_fraction", cfg.split.train_fraction}, {"seed", cfg.split.seed}}},
            {"seed", cfg.seed},
            {"tau", cfg.tau},
            {"baselines", cfg.baselines},
            {"out_dir", cfg.out_dir}};
}

std::string pair_stem(int a, int b) {
    return "pair_" + std::to_string(a) + "_" + std::to_string(b);
}

struct AnalysisCore {
    Dataset dataset;
    TrialSet trials;
    PairScoreTable scores;
    SubsetMseCache cache;
    std::size_t n_trials_effective = 0;
};

AnalysisCore run_core(const RunConfig& cfg) {
    AnalysisCore core;
    core.dataset = load_dataset_csv(cfg.data_path, cfg.target_column);
    if (core.dataset.n_features() > 64)
        throw CapacityError("dataset has " + std::to_string(core.dataset.n_features()) +
                            " features; the subset mask supports at most 64");
    if (cfg.mode == TrialMode::exhaustive) {
        core.trials = run_exhaustive(core.dataset, cfg.model, cfg.split, core.cache);
    } else {
        core.n_trials_effective =
            cfg.n_trials != 0 ? cfg.n_trials : 20 * core.dataset.n_features();
        core.trials = run_sampled(core.dataset, cfg.model, cfg.split, core.n_trials_effective,
                                  cfg.seed, core.cache);
    }
    core.n_trials_effective = core.trials.trials.size();
    core.scores = score_matrix(core.trials);
    return core;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

MetricMatrix l_score_metric(const PairScoreTable& table, const std::vector<std::string>& names) {
    MetricMatrix m;
    m.metric = "l_score";
    m.names = names;
    m.n = table.n_features();
    m.values.assign(m.n * m.n, 0.0);
    for (std::size_t a = 0; a < m.n; ++a)
        for (std::size_t b = a + 1; b < m.n; ++b)
            if (const auto s = table.score(static_cast<int>(a), static_cast<int>(b))) {
                m.at(a, b) = *s;
                m.at(b, a) = *s;
            }
    return m;
}

void write_report_json(const nlohmann::json& doc, const fs::path& path) {
    write_text(path, doc.dump(2) + "\n");
}

std::filesystem::path run_generate(const GenerateConfig& cfg) {
    const Dataset ds =
        generate_by_name(cfg.kind, cfg.n_samples, cfg.n_distractors, cfg.noise_sd, cfg.seed);
    fs::create_directories(cfg.out_dir);
    const fs::path csv = fs::path(cfg.out_dir) / (cfg.kind + ".csv");
    write_dataset_csv(ds, csv);
    write_provenance(ds.provenance, fs::path(cfg.out_dir) / (cfg.kind + ".provenance.json"));
    return csv;
}

nlohmann::json run_analyze(const RunConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    AnalysisCore core = run_core(cfg);
    const Dataset& ds = core.dataset;
    const int n = static_cast<int>(ds.n_features());

    const fs::path out(cfg.out_dir);
    fs::create_directories(out / "clouds");
    fs::create_directories(out / "plots");

    nlohmann::json report;
    report["config"] = config_json(cfg);
    report["version"] = kToolVersion;
    report["dataset"] = {{"path", cfg.data_path},
                         {"n_samples", ds.n_samples()},
                         {"n_features", ds.n_features()},
                         {"feature_names", ds.feature_names}};

    // per-pair records, clouds, scatter plots
    nlohmann::json pairs = nlohmann::json::array();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const PairCloud cloud = build_pair_clouds(core.trials, a, b);
            write_cloud_csv(cloud, out / "clouds" / (pair_stem(a, b) + ".csv"));
            const auto& cell = core.scores.at(a, b);
            write_text(out / "plots" / (pair_stem(a, b) + ".svg"),
                       render_pair_scatter(cloud, cell, ds.feature_names[static_cast<std::size_t>(a)],
                                           ds.feature_names[static_cast<std::size_t>(b)]));
            nlohmann::json rec;
            rec["a"] = a;
            rec["b"] = b;
            rec["name_a"] = ds.feature_names[static_cast<std::size_t>(a)];
            rec["name_b"] = ds.feature_names[static_cast<std::size_t>(b)];
            if (cell) {
                rec["l_score"] = cell->l_score;
                rec["dominance"] = cell->dominance;
                rec["mean_delta_a"] = cell->mean_delta_a;
                rec["mean_delta_b"] = cell->mean_delta_b;
                rec["red"] = geometry_json(cell->red);
                rec["blue"] = geometry_json(cell->blue);
            } else {
                rec["insufficient_data"] = true;
                rec["n_red"] = cloud.red.size();
                rec["n_blue"] = cloud.blue.size();
            }
            pairs.push_back(rec);
        }
    }
    report["pairs"] = pairs;

    const MetricMatrix lmat = l_score_metric(core.scores, ds.feature_names);
    write_text(out / "plots" / "heatmap_l_score.svg", render_heatmap(lmat));
    write_trials_csv(core.trials, ds.feature_names, out / "trials.csv");

    // flagged triples
    const auto triads = detect_higher_order(core.scores, cfg.tau);
    nlohmann::json triads_json = nlohmann::json::array();
    for (const auto& t : triads) {
        fs::create_directories(out / "triads");
        const auto points = export_triad_cloud(core.trials, t.a, t.b, t.c);
        write_triad_csv(points, out / "triads" /
                                    ("triple_" + std::to_string(t.a) + "_" + std::to_string(t.b) +
                                     "_" + std::to_string(t.c) + ".csv"));
        triads_json.push_back({{"a", t.a},
                               {"b", t.b},
                               {"c", t.c},
                               {"type", t.type == TriadFlag::Type::synergy ? "synergy" : "redundancy"},
                               {"scores", t.scores}});
    }
    report["triads"] = triads_json;

    // requested baselines
    nlohmann::json baselines_json = nlohmann::json::object();
    for (const auto& name : cfg.baselines) {
        if (name == "pearson") {
            const MetricMatrix m = pearson_matrix(ds);
            baselines_json["pearson"] = metric_json(m);
            write_text(out / "plots" / "heatmap_pearson.svg", render_heatmap(m));
        } else if (name == "mutual_information") {
            const MetricMatrix m = mutual_information_matrix(ds);
            baselines_json["mutual_information"] = metric_json(m);
            write_text(out / "plots" / "heatmap_mutual_information.svg", render_heatmap(m));
        } else if (name == "shapley") {
            const MetricMatrix values = shapley_values(ds, cfg.model, cfg.split, core.cache);
            const MetricMatrix inter = shapley_interaction_matrix(ds, cfg.model, cfg.split, core.cache);
            baselines_json["shapley_value"] = metric_json(values);
            baselines_json["shapley_interaction"] = metric_json(inter);
            write_text(out / "plots" / "heatmap_shapley_interaction.svg", render_heatmap(inter));
        } else {
            throw ArgumentError("unknown baseline '" + name +
                                "'; valid: pearson mutual_information shapley");
        }
    }
    report["baselines"] = baselines_json;

    report["trials"] = {{"mode", mode_name(core.trials.mode)},
                        {"count", core.n_trials_effective},
                        {"csv", "trials.csv"}};
    // Deterministic work counters; wall-clock goes to stderr so reports stay
    // byte-identical across runs.
    report["work"] = {{"model_fits", core.cache.fits()},
                      {"subset_cache_entries", core.cache.size()}};

    write_report_json(report, out / "report.json");

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    std::cerr << "analyze: " << core.n_trials_effective << " trials, " << core.cache.fits()
              << " model fits, " << elapsed << " ms -> " << (out / "report.json").string() << "\n";
    return report;
}

void run_compare(const RunConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    AnalysisCore core = run_core(cfg);
    const Dataset& ds = core.dataset;

    const fs::path out(cfg.out_dir);
    fs::create_directories(out / "plots");

    if (ds.n_features() > 12)
        throw CapacityError("compare needs the exact Shapley baseline, capped at 12 features (" +
                            std::to_string(ds.n_features()) +
                            " given); use analyze without --baselines shapley instead");
    const MetricMatrix lmat = l_score_metric(core.scores, ds.feature_names);
    const MetricMatrix pearson = pearson_matrix(ds);
    const MetricMatrix mi = mutual_information_matrix(ds);
    const MetricMatrix inter = shapley_interaction_matrix(ds, cfg.model, cfg.split, core.cache);

    write_text(out / "plots" / "heatmap_l_score.svg", render_heatmap(lmat));
    write_text(out / "plots" / "heatmap_pearson.svg", render_heatmap(pearson));
    write_text(out / "plots" / "heatmap_mutual_information.svg", render_heatmap(mi));
    write_text(out / "plots" / "heatmap_shapley_interaction.svg", render_heatmap(inter));

    std::ofstream csv(out / "compare.csv");
    if (!csv) throw IoError("cannot open for writing: " + (out / "compare.csv").string());
    csv << "feature_a,feature_b,l_score,pearson,mutual_information,shapley_interaction\n";
    for (std::size_t a = 0; a < ds.n_features(); ++a)
        for (std::size_t b = a + 1; b < ds.n_features(); ++b)
            csv << ds.feature_names[a] << ',' << ds.feature_names[b] << ','
                << format_double(lmat.at(a, b)) << ',' << format_double(pearson.at(a, b)) << ','
                << format_double(mi.at(a, b)) << ',' << format_double(inter.at(a, b)) << '\n';
    if (!csv) throw IoError("write failed: compare.csv");

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    std::cerr << "compare: " << core.cache.fits() << " model fits, " << elapsed << " ms -> "
              << (out / "compare.csv").string() << "\n";
}

}  // namespace ordex
