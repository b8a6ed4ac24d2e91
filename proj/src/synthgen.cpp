#include "ordex/synthgen.hpp"

#include <cmath>

#include "ordex/errors.hpp"
#include "ordex/rng.hpp"

namespace ordex {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_args(std::size_t n_samples, double noise_sd) {
    if (n_samples < 10) throw ArgumentError("generator: n_samples must be >= 10");
    if (!(noise_sd >= 0.0)) throw ArgumentError("generator: noise_sd must be >= 0");
}

std::vector<double> draw_normals(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    return v;
}

void append_distractors(Dataset& ds, Rng& rng, std::size_t n_samples, std::size_t n_distractors,
                        std::size_t first_index) {
    for (std::size_t d = 0; d < n_distractors; ++d) {
        ds.feature_names.push_back("x" + std::to_string(first_index + d));
        ds.columns.push_back(draw_normals(rng, n_samples));
    }
}

nlohmann::json base_params(std::size_t n_samples, std::size_t n_distractors, double noise_sd) {
    return nlohmann::json{
        {"n_samples", n_samples}, {"n_distractors", n_distractors}, {"noise_sd", noise_sd}};
}

}  // namespace

const char* synergy_kind_name(SynergyKind k) {
    switch (k) {
        case SynergyKind::multiplicative: return "multiplicative";
        case SynergyKind::asymmetric_cubic: return "asymmetric_cubic";
        case SynergyKind::trigonometric: return "trigonometric";
    }
    return "?";
}

const char* redundancy_kind_name(RedundancyKind k) {
    switch (k) {
        case RedundancyKind::cubic: return "cubic";
        case RedundancyKind::square: return "square";
        case RedundancyKind::trigonometric: return "trigonometric";
        case RedundancyKind::absolute: return "absolute";
    }
    return "?";
}

Dataset gen_synergy(SynergyKind kind, std::size_t n_samples, std::size_t n_distractors,
                    double noise_sd, std::uint64_t seed) {
    check_args(n_samples, noise_sd);
    Rng rng(seed);
    Dataset ds;
    ds.feature_names = {"x1", "x2"};
    ds.columns.push_back(draw_normals(rng, n_samples));  // A
    ds.columns.push_back(draw_normals(rng, n_samples));  // B
    append_distractors(ds, rng, n_samples, n_distractors, 3);

    ds.target.resize(n_samples);
    const auto& A = ds.columns[0];
    const auto& B = ds.columns[1];
    for (std::size_t i = 0; i < n_samples; ++i) {
        double core = 0.0;
        switch (kind) {
            case SynergyKind::multiplicative: core = A[i] * B[i]; break;
            case SynergyKind::asymmetric_cubic: core = A[i] * A[i] * A[i] * B[i]; break;
            case SynergyKind::trigonometric: core = std::sin(A[i] * B[i]); break;
        }
        ds.target[i] = core + noise_sd * rng.normal();
    }

    // provenance carries the CLI registry name so it round-trips
    const char* reg = kind == SynergyKind::multiplicative    ? "synergy-multiplicative"
                      : kind == SynergyKind::asymmetric_cubic ? "synergy-cubic"
                                                               : "synergy-trigonometric";
    ds.provenance = {reg, base_params(n_samples, n_distractors, noise_sd), seed};
    ds.validate();
    return ds;
}

Dataset gen_redundancy(RedundancyKind kind, std::size_t n_samples, std::size_t n_distractors,
                       double noise_sd, std::uint64_t seed) {
    check_args(n_samples, noise_sd);
    Rng rng(seed);
    std::vector<double> latent = draw_normals(rng, n_samples);

    std::vector<double> derived(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        double t = 0.0;
        switch (kind) {
            case RedundancyKind::cubic: t = latent[i] * latent[i] * latent[i]; break;
            case RedundancyKind::square: t = latent[i] * latent[i]; break;
            case RedundancyKind::trigonometric: t = std::cos(kPi * latent[i]); break;
            case RedundancyKind::absolute: t = std::fabs(latent[i]); break;
        }
        derived[i] = t + noise_sd * rng.normal();
    }

    Dataset ds;
    ds.feature_names = {"x1", "x2"};
    ds.columns.push_back(latent);
    ds.columns.push_back(std::move(derived));
    append_distractors(ds, rng, n_samples, n_distractors, 3);

    // Target carries its own noise so the holdout MSE floor stays nonzero.
    ds.target.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i)
        ds.target[i] = latent[i] + noise_sd * rng.normal();

    ds.provenance = {std::string("redundancy-") + redundancy_kind_name(kind),
                     base_params(n_samples, n_distractors, noise_sd), seed};
    ds.validate();
    return ds;
}

Dataset gen_triple(std::size_t n_samples, std::size_t n_distractors, double noise_sd,
                   std::uint64_t seed) {
    check_args(n_samples, noise_sd);
    Rng rng(seed);
    Dataset ds;
    ds.feature_names = {"x1", "x2", "x3"};
    for (int f = 0; f < 3; ++f) ds.columns.push_back(draw_normals(rng, n_samples));
    append_distractors(ds, rng, n_samples, n_distractors, 4);

    ds.target.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i)
        ds.target[i] =
            ds.columns[0][i] * ds.columns[1][i] * ds.columns[2][i] + noise_sd * rng.normal();

    ds.provenance = {"triple", base_params(n_samples, n_distractors, noise_sd), seed};
    ds.validate();
    return ds;
}

Dataset generate_by_name(const std::string& kind, std::size_t n_samples,
                         std::size_t n_distractors, double noise_sd, std::uint64_t seed) {
    if (kind == "synergy-multiplicative")
        return gen_synergy(SynergyKind::multiplicative, n_samples, n_distractors, noise_sd, seed);
    if (kind == "synergy-cubic")
        return gen_synergy(SynergyKind::asymmetric_cubic, n_samples, n_distractors, noise_sd, seed);
    if (kind == "synergy-trigonometric")
        return gen_synergy(SynergyKind::trigonometric, n_samples, n_distractors, noise_sd, seed);
    if (kind == "redundancy-cubic")
        return gen_redundancy(RedundancyKind::cubic, n_samples, n_distractors, noise_sd, seed);
    if (kind == "redundancy-square")
        return gen_redundancy(RedundancyKind::square, n_samples, n_distractors, noise_sd, seed);
    if (kind == "redundancy-trigonometric")
        return gen_redundancy(RedundancyKind::trigonometric, n_samples, n_distractors, noise_sd, seed);
    if (kind == "redundancy-absolute")
        return gen_redundancy(RedundancyKind::absolute, n_samples, n_distractors, noise_sd, seed);
    if (kind == "triple") return gen_triple(n_samples, n_distractors, noise_sd, seed);

    std::string msg = "unknown generator kind '" + kind + "'; valid kinds:";
    for (const auto& name : generator_names()) msg += " " + name;
    throw ArgumentError(msg);
}

std::vector<std::string> generator_names() {
    return {"synergy-multiplicative", "synergy-cubic",          "synergy-trigonometric",
            "redundancy-cubic",       "redundancy-square",      "redundancy-trigonometric",
            "redundancy-absolute",    "triple"};
}

}  // namespace ordex
