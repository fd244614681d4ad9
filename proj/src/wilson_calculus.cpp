#include "mloop/wilson_calculus.hpp"

namespace mloop {

namespace {

Matrix pow_pm(const Matrix& m, int exponent) { return exponent > 0 ? m : Matrix(m.adjoint()); }

}  // namespace

ComplexTangent grad_wilson(const LoopWord& loop, int edge, const Configuration& q) {
  const int n = q.spec.n();
  ComplexTangent out{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  const auto occ = occurrences(loop, edge);
  if (occ.empty()) return out;

  const Matrix& g = q.links.at(edge);
  const Complex i_unit(0.0, 1.0);
  for (const auto& [x, w] : occ.all) {
    const Matrix r = holonomy(excise(loop, x), q);
    const Matrix inv_part = pow_pm(r, -w);
    const Matrix sandwich = g * pow_pm(r, w) * g;
    out.re += inv_part - sandwich;
    if (!q.spec.is_orthogonal()) out.im += static_cast<double>(w) * i_unit * (inv_part + sandwich);
  }
  if (q.spec.eta() == 1) {
    const Complex wl = wilson(loop, q);
    const double coef = 2.0 * occ.t() / n;
    out.re += (i_unit * coef * wl.imag()) * g;
    out.im -= (i_unit * coef * wl.real()) * g;
  }
  return out;
}

Matrix grad_re_wilson(const LoopWord& loop, int edge, const Configuration& q) {
  return grad_wilson(loop, edge, q).re;
}

Complex grad_inner(const LoopWord& l1, const LoopWord& l2, int edge, const Configuration& q) {
  const auto c1 = occurrences(l1, edge);
  const auto c2 = occurrences(l2, edge);
  if (c1.empty() || c2.empty()) return 0.0;

  Complex sum = 0.0;
  if (q.spec.is_orthogonal()) {
    for (const auto& [x, wx] : c1.all)
      for (const auto& [y, wy] : c2.all)
        sum += wilson(negative_merger(l1, x, l2, y), q) - wilson(positive_merger(l1, x, l2, y), q);
    return sum;
  }
  for (const auto& [x, wx] : c1.all) {
    for (const auto& [y, wy] : c2.all) {
      if (wx * wy < 0)
        sum += 2.0 * wilson(negative_merger(l1, x, l2, y), q);
      else
        sum -= 2.0 * wilson(positive_merger(l1, x, l2, y), q);
    }
  }
  if (q.spec.eta() == 1) {
    const double n = q.spec.n();
    sum += (2.0 * c1.t() * c2.t() / n) * wilson(l1, q) * wilson(l2, q);
  }
  return sum;
}

Complex grad_inner_action(const LoopWord& l1, const LoopWord& l2, int edge,
                          const Configuration& q) {
  const auto c1 = occurrences(l1, edge);
  const auto c2 = occurrences(l2, edge);
  if (c1.empty() || c2.empty()) return 0.0;

  Complex sum = 0.0;
  for (const auto& [x, wx] : c1.all)
    for (const auto& [y, wy] : c2.all)
      sum += wilson(negative_merger(l1, x, l2, y), q) - wilson(positive_merger(l1, x, l2, y), q);
  if (q.spec.eta() == 1) {
    const double n = q.spec.n();
    const Complex w1 = wilson(l1, q);
    sum += (c1.t() * c2.t() / n) * (w1 * wilson(l2, q) - w1 * wilson(inverse(l2), q));
  }
  return sum;
}

double trace_LR(const Matrix& g, const Matrix& x, const Matrix& y, const GroupSpec& spec) {
  if (g.rows() != spec.n() || x.rows() != spec.n() || y.rows() != spec.n())
    throw std::invalid_argument("trace_LR: dimension mismatch");
  const Matrix gi = g.adjoint();
  if (spec.is_orthogonal())
    return 0.5 * (x.trace() * y.trace()).real() -
           0.5 * (gi * x.transpose() * g * y).trace().real();
  return (x.trace() * y.trace()).real() -
         (static_cast<double>(spec.eta()) / spec.n()) * (gi * x * g * y).trace().real();
}

Complex laplacian_wilson(const LoopWord& loop, int edge, const Configuration& q) {
  const auto occ = occurrences(loop, edge);
  if (occ.empty()) return 0.0;
  const int n = q.spec.n();
  const int m = occ.m();
  const Complex wl = wilson(loop, q);

  Complex same = 0.0;
  Complex opposite = 0.0;
  for (const auto& [x, wx] : occ.all) {
    for (const auto& [y, wy] : occ.all) {
      if (x == y) continue;
      if (wx * wy > 0) {
        auto [a, b] = positive_split(loop, x, y);
        same += wilson(a, q) * wilson(b, q);
        if (q.spec.is_orthogonal()) same -= wilson(negative_twist(loop, x, y), q);
      } else {
        auto [a, b] = negative_split(loop, x, y);
        opposite += wilson(a, q) * wilson(b, q);
        if (q.spec.is_orthogonal()) opposite -= wilson(positive_twist(loop, x, y), q);
      }
    }
  }
  if (q.spec.is_orthogonal()) return -static_cast<double>((n - 1) * m) * wl - same + opposite;
  const double t = occ.t();
  const double diag = 2.0 * m * n - 2.0 * q.spec.eta() * t * t / n;
  return -2.0 * same + 2.0 * opposite - diag * wl;
}

}  // namespace mloop
