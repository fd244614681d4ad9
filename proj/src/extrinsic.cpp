#include "mloop/extrinsic.hpp"

#include <stdexcept>

namespace mloop {

AmbientDerivatives ambient_derivatives(const LoopWord& loop, int edge, const Configuration& q,
                                       bool with_hessian) {
  if (!q.spec.is_orthogonal())
    throw std::invalid_argument("ambient derivatives are defined for SO(N) only");
  const int n = q.spec.n();
  AmbientDerivatives out{Matrix::Zero(n, n), Matrix()};
  const auto occ = occurrences(loop, edge);

  for (const auto& [x, w] : occ.all) {
    const Matrix r = holonomy(excise(loop, x), q);
    // d/dq_aj Tr(q R) = R_ja, d/dq_aj Tr(q^T R) = R_aj
    out.grad += w > 0 ? Matrix(r.transpose()) : r;
  }
  if (!with_hessian) return out;

  out.hessian = Matrix::Zero(n * n, n * n);
  for (const auto& [x, wx] : occ.all) {
    for (const auto& [y, wy] : occ.all) {
      if (x == y) continue;
      const Matrix a = holonomy(segment(loop, x, y), q);
      const Matrix b = holonomy(segment(loop, y, x), q);
      // Tr(S_x A S_y B) with S = E_pq for w = +1 and E_qp for w = -1;
      // Tr(E_pq A E_rs B) = A_qr B_sp.
      for (int p = 0; p < n; ++p)
        for (int qq = 0; qq < n; ++qq)
          for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
              const int p1 = wx > 0 ? p : qq, q1 = wx > 0 ? qq : p;
              const int r1 = wy > 0 ? r : s, s1 = wy > 0 ? s : r;
              out.hessian(p * n + qq, r * n + s) += a(q1, r1) * b(s1, p1);
            }
    }
  }
  return out;
}

Matrix ambient_product_gradient(const std::vector<LoopWord>& loops, int edge,
                                const Configuration& q) {
  const int n = q.spec.n();
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < loops.size(); ++i) {
    Complex rest = 1.0;
    for (std::size_t j = 0; j < loops.size(); ++j)
      if (j != i) rest *= wilson(loops[j], q);
    out += rest * ambient_derivatives(loops[i], edge, q, false).grad;
  }
  return out;
}

Complex extrinsic_radial(const Matrix& df, const Matrix& q) { return q.cwiseProduct(df).sum(); }

Complex extrinsic_laplacian(const AmbientDerivatives& f, const Matrix& q) {
  const int n = static_cast<int>(q.rows());
  Complex second = 0.0, cross = 0.0;
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j) {
      second += f.hessian(a * n + j, a * n + j);
      for (int b = 0; b < n; ++b)
        for (int i = 0; i < n; ++i) cross += q(a, i) * q(b, j) * f.hessian(b * n + i, a * n + j);
    }
  return -static_cast<double>(n - 1) * extrinsic_radial(f.grad, q) + second - cross;
}

Complex extrinsic_inner(const Matrix& df, const Matrix& dg, const Matrix& q) {
  // sum_{abij} q_ai q_bj f_aj g_bi = Tr((q^T f)(q^T g))
  const Matrix qf = q.transpose() * df;
  const Matrix qg = q.transpose() * dg;
  return df.cwiseProduct(dg).sum() - (qf * qg).trace();
}

}  // namespace mloop
