#pragma once

#include <cstddef>
#include <string>

namespace ordex::kernels {

// Dense double-precision kernels behind the model/baseline inner loops.
// Scalar reference implementations always exist; SIMD variants (AVX2 on
// x86-64, NEON on aarch64) are selected once at startup based on CPU
// support, overridable with ORDEX_KERNEL=scalar|avx2|neon.
//
// SIMD variants accumulate in vector lanes, so results may differ from the
// scalar reference at rounding level; the equivalence tests bound this.
struct Ops {
    const char* name;
    // sum of v[0..n)
    double (*sum)(const double* v, std::size_t n);
    // dot product of a and b
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum of squared differences, Σ (a[i] - b[i])^2
    double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
    // acc[i] += (col[i] - q)^2   — one coordinate pass of a distance sweep
    void (*accum_sq_diff)(double* acc, const double* col, double q, std::size_t n);
};

// Active implementation (resolved once, thread-safe).
const Ops& active();

// Specific backends, for equivalence tests. `scalar()` always exists;
// `simd()` is null when the build/CPU has no vector backend.
const Ops& scalar();
const Ops* simd();

}  // namespace ordex::kernels
