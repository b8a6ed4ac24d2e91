#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ordex/dataset.hpp"
#include "ordex/rng.hpp"

namespace ordex::test {

inline double sample_corr(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

// Dataset of pure noise: gaussian features, gaussian target, no structure.
inline Dataset noise_dataset(std::size_t n_features, std::size_t n_samples, std::uint64_t seed) {
    Rng rng(seed);
    Dataset ds;
    for (std::size_t f = 0; f < n_features; ++f) {
        ds.feature_names.push_back("x" + std::to_string(f + 1));
        auto& col = ds.columns.emplace_back(n_samples);
        for (auto& v : col) v = rng.normal();
    }
    ds.target.resize(n_samples);
    for (auto& v : ds.target) v = rng.normal();
    ds.provenance.generator = "test-noise";
    ds.provenance.seed = seed;
    return ds;
}

}  // namespace ordex::test
