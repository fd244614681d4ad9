#pragma once

#include <cstdint>

#include "mloop/group.hpp"
#include "mloop/loop_word.hpp"

namespace mloop {

struct GradientCheckReport {
  int cases = 0;
  double max_gradient_error = 0.0;   // relative, closed form vs central differences
  double max_laplacian_error = 0.0;  // relative, closed form vs second differences
  double max_inner_error = 0.0;      // absolute, closed form vs direct pairing
  bool pass = false;
};

inline constexpr double kGradientTolerance = 1e-6;
inline constexpr double kLaplacianTolerance = 1e-4;
inline constexpr double kInnerTolerance = 1e-10;

/// Random word over edges [0, alphabet) with between 1 and max_m letters on
/// `edge`, total length at most max_len.
LoopWord random_loop_word(Rng& rng, int edge, int alphabet, int max_len, int max_m);

/// Compares the closed-form gradient, Laplacian and gradient pairing of
/// random Wilson loops against finite-difference and direct-pairing values.
GradientCheckReport run_gradient_check(const GroupSpec& spec, int cases, std::uint64_t seed,
                                       int alphabet = 4);

}  // namespace mloop
