#pragma once

// Independent reference computations used only by the test suites.

#include <cmath>
#include <random>
#include <vector>

#include "mloop/group.hpp"
#include "mloop/holonomy.hpp"
#include "mloop/loop_word.hpp"
#include "mloop/wilson_calculus.hpp"

namespace mloop::oracle {

inline const std::vector<GroupSpec>& small_groups() {
  static const std::vector<GroupSpec> groups = [] {
    std::vector<GroupSpec> g;
    for (auto fam : {GroupFamily::SO, GroupFamily::SU, GroupFamily::U})
      for (int n : {2, 3, 4}) g.emplace_back(fam, n);
    return g;
  }();
  return groups;
}

/// Random word over edges [0, alphabet) containing edge `e` between 1 and
/// max_m times, total length at most max_len.
inline LoopWord random_word(Rng& rng, int e, int alphabet, int max_len, int max_m) {
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  const int len = len_dist(rng);
  const int m = std::uniform_int_distribution<int>(1, std::min(max_m, len))(rng);
  std::vector<EdgeRef> letters;
  std::vector<int> slots(len, 0);
  for (int i = 0; i < m; ++i) slots[i] = 1;
  std::shuffle(slots.begin(), slots.end(), rng);
  std::uniform_int_distribution<int> other(0, alphabet - 1);
  for (int s : slots) {
    int edge = e;
    if (!s) {
      do edge = other(rng);
      while (edge == e);
    }
    letters.push_back({edge, sign_dist(rng) ? 1 : -1});
  }
  return LoopWord(std::move(letters));
}

inline Matrix random_ambient(int n, bool real, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), real ? 0.0 : normal(rng));
  return m;
}

/// Brute force trace of P_g L_X R_Y P_g: sum_k <F_k, X F_k Y>.
inline double frame_trace_LR(const Matrix& g, const Matrix& x, const Matrix& y,
                             const GroupSpec& spec) {
  double sum = 0.0;
  for (const auto& f : frame(g, spec)) sum += metric(f, Matrix(x * f * y));
  return sum;
}

/// Direct complexified pairing of two closed-form gradients.
inline Complex direct_pairing(const LoopWord& l1, const LoopWord& l2, int e,
                              const Configuration& q) {
  return metric(grad_wilson(l1, e, q), grad_wilson(l2, e, q));
}

inline Complex direct_action_pairing(const LoopWord& l1, const LoopWord& l2, int e,
                                     const Configuration& q) {
  const int n = q.spec.n();
  ComplexTangent re2{grad_wilson(l2, e, q).re, Matrix::Zero(n, n)};
  return metric(grad_wilson(l1, e, q), re2);
}

/// Product of the letters strictly between cyclic positions `from` and `to`
/// (from == to gives the full remainder), multiplied out directly.
inline Matrix slice_product(const LoopWord& w, std::size_t from, std::size_t to,
                            const Configuration& q) {
  const int n = q.spec.n();
  Matrix out = Matrix::Identity(n, n);
  for (std::size_t i = (from + 1) % w.size(); i != to; i = (i + 1) % w.size()) {
    const Matrix& u = q.links[w[i].edge];
    out = out * (w[i].orientation > 0 ? u : Matrix(u.adjoint()));
  }
  return out;
}

inline Matrix pow_pm(const Matrix& m, int s) { return s > 0 ? m : Matrix(m.adjoint()); }

/// Modified Bessel ratio / trapezoid quadrature of
/// int_{-pi}^{pi} h(theta) exp(a cos theta) d theta / int exp(a cos theta).
template <class F>
double circle_average(F&& h, double a, int points = 4096) {
  double num = 0.0, den = 0.0;
  for (int k = 0; k < points; ++k) {
    const double th = -M_PI + 2.0 * M_PI * k / points;
    const double w = std::exp(a * std::cos(th));
    num += h(th) * w;
    den += w;
  }
  return num / den;
}

}  // namespace mloop::oracle
