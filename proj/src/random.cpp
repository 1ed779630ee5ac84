#include "absnorm/random.hpp"

#include <cmath>
#include <random>

#include "absnorm/errors.hpp"

namespace absnorm {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

ComplexMatrix random_ginibre(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("random_ginibre: order must be at least 1");
  std::mt19937_64 rng(mix64(seed));
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::vector<Complex> entries(n * n);
  for (auto& z : entries) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = {re, im};
  }
  return ComplexMatrix(n, std::move(entries));
}

}  // namespace absnorm
