#pragma once

#include <vector>

#include "mloop/holonomy.hpp"
#include "mloop/loop_word.hpp"

namespace mloop {

/// Ambient partial derivatives of W_l viewed as a polynomial in the entries
/// q_aj of the link q = Q_e, with q^-1 replaced by q^T. Only defined for SO(N).
struct AmbientDerivatives {
  /// grad(a, j) = dW / dq_aj.
  Matrix grad;
  /// hessian(a * N + j, b * N + i) = d^2 W / dq_aj dq_bi; empty unless requested.
  Matrix hessian;
};

AmbientDerivatives ambient_derivatives(const LoopWord& loop, int edge, const Configuration& q,
                                       bool with_hessian);

/// dG/dq for G = prod_i W_{l_i} by the product rule.
Matrix ambient_product_gradient(const std::vector<LoopWord>& loops, int edge,
                                const Configuration& q);

/// Laplace-Beltrami operator from ambient derivatives:
/// -(N-1) sum q_aj f_aj + sum f_{aj,aj} - sum q_ai q_bj f_{bi,aj}.
Complex extrinsic_laplacian(const AmbientDerivatives& f, const Matrix& q);

/// sum q_aj f_aj.
Complex extrinsic_radial(const Matrix& df, const Matrix& q);

/// Riemannian pairing from ambient gradients:
/// sum f_aj g_aj - sum q_ai q_bj f_aj g_bi.
Complex extrinsic_inner(const Matrix& df, const Matrix& dg, const Matrix& q);

}  // namespace mloop
