#include "mloop/holonomy.hpp"

#include <algorithm>
#include <stdexcept>

namespace mloop {

Configuration identity_configuration(const GroupSpec& spec, int num_edges) {
  return {spec, std::vector<Matrix>(num_edges, Matrix::Identity(spec.n(), spec.n()))};
}

Configuration haar_configuration(const GroupSpec& spec, int num_edges, Rng& rng) {
  Configuration q{spec, {}};
  q.links.reserve(num_edges);
  for (int i = 0; i < num_edges; ++i) q.links.push_back(haar_sample(spec, rng));
  return q;
}

Matrix holonomy(const LoopWord& word, const Configuration& q) {
  const int n = q.spec.n();
  Matrix out = Matrix::Identity(n, n);
  for (const auto& letter : word) {
    if (letter.edge >= q.num_edges())
      throw LoopError("edge " + std::to_string(letter.edge) + " not in configuration");
    const Matrix& link = q.links[letter.edge];
    if (link.rows() != n || link.cols() != n)
      throw std::invalid_argument("link matrix has wrong dimension");
    if (letter.orientation > 0)
      out = out * link;
    else
      out = out * link.adjoint();
  }
  return out;
}

Complex wilson(const LoopWord& word, const Configuration& q) { return holonomy(word, q).trace(); }

Complex wilson_product(const std::vector<LoopWord>& words, const Configuration& q) {
  Complex out(1.0);
  for (const auto& w : words) out *= wilson(w, q);
  return out;
}

double max_membership_residual(const Configuration& q) {
  double r = 0.0;
  for (const auto& g : q.links) r = std::max(r, membership_residual(g, q.spec));
  return r;
}

}  // namespace mloop
