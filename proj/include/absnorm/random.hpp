#pragma once

#include <cstdint>

#include "absnorm/matrix.hpp"

namespace absnorm {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the index-th independent stream under `seed`:
/// mix64(seed + 0x9E3779B97F4A7C15 · (index + 1)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// n×n matrix with i.i.d. standard complex Gaussian entries (real and
/// imaginary parts independent, mean 0, variance 1/2). Determined by (n, seed).
ComplexMatrix random_ginibre(std::size_t n, std::uint64_t seed);

}  // namespace absnorm
