#include "ordex/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace ordex::kernels {

namespace {

double sum_scalar(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void accum_sq_diff_scalar(double* acc, const double* col, double q, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = col[i] - q;
        acc[i] += d * d;
    }
}

const Ops scalar_ops = {
    "scalar",
    sum_scalar,
    dot_scalar,
    sum_sq_diff_scalar,
    accum_sq_diff_scalar,
};

const Ops* resolve() {
    const Ops* vec = simd();
    const char* env = std::getenv("ORDEX_KERNEL");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_ops;
        if (vec != nullptr && std::strcmp(env, vec->name) == 0) return vec;
        // Unknown or unavailable backend name: fall through to auto.
    }
    return vec != nullptr ? vec : &scalar_ops;
}

}  // namespace

const Ops& scalar() { return scalar_ops; }

const Ops& active() {
    static const Ops* chosen = resolve();
    return *chosen;
}

#if !defined(ORDEX_WITH_AVX2) && !defined(ORDEX_WITH_NEON)
const Ops* simd() { return nullptr; }
#endif

}  // namespace ordex::kernels
