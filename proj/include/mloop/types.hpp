#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace mloop {

using Complex = std::complex<double>;

// All three families are stored as complex matrices; SO(N) elements simply
// carry zero imaginary parts, which complex arithmetic preserves exactly.
using Matrix = Eigen::MatrixXcd;

using Rng = std::mt19937_64;

// splitmix64 step, used to derive independent child seeds from one root seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace mloop
