#pragma once

#include <cstdint>

#include "ordex/dataset.hpp"

namespace ordex {

// Synthetic benchmark generators. All base features and distractors are
// i.i.d. standard normal; regenerating with identical arguments yields a
// bit-identical Dataset.

enum class SynergyKind { multiplicative, asymmetric_cubic, trigonometric };
enum class RedundancyKind { cubic, square, trigonometric, absolute };

// Features x1 = A, x2 = B, then distractors. Target:
//   multiplicative    A*B + e
//   asymmetric_cubic  A^3*B + e
//   trigonometric     sin(A*B) + e
Dataset gen_synergy(SynergyKind kind, std::size_t n_samples, std::size_t n_distractors,
                    double noise_sd, std::uint64_t seed);

// Latent A drives everything: x1 = A, x2 = transform(A) + e, distractors,
// target Y = A + e_y.
//   cubic A^3, square A^2, trigonometric cos(pi*A), absolute |A|
Dataset gen_redundancy(RedundancyKind kind, std::size_t n_samples, std::size_t n_distractors,
                       double noise_sd, std::uint64_t seed);

// x1, x2, x3 standard normal, target Y = x1*x2*x3 + e, then distractors.
Dataset gen_triple(std::size_t n_samples, std::size_t n_distractors, double noise_sd,
                   std::uint64_t seed);

const char* synergy_kind_name(SynergyKind k);
const char* redundancy_kind_name(RedundancyKind k);

// CLI-facing generator registry ("synergy-cubic", "redundancy-absolute",
// "triple", ...). Throws ArgumentError listing valid names.
Dataset generate_by_name(const std::string& kind, std::size_t n_samples,
                         std::size_t n_distractors, double noise_sd, std::uint64_t seed);
std::vector<std::string> generator_names();

}  // namespace ordex
