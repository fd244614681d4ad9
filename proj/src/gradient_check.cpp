#include "mloop/gradient_check.hpp"

#include <algorithm>
#include <stdexcept>

#include "mloop/finite_difference.hpp"
#include "mloop/wilson_calculus.hpp"

namespace mloop {

LoopWord random_loop_word(Rng& rng, int edge, int alphabet, int max_len, int max_m) {
  if (alphabet < 2 || max_len < 1 || max_m < 1) throw std::invalid_argument("bad word shape");
  const int len = std::uniform_int_distribution<int>(1, max_len)(rng);
  const int m = std::uniform_int_distribution<int>(1, std::min(max_m, len))(rng);
  std::vector<int> marked(len, 0);
  std::fill(marked.begin(), marked.begin() + m, 1);
  std::shuffle(marked.begin(), marked.end(), rng);
  std::uniform_int_distribution<int> other(0, alphabet - 2);
  std::bernoulli_distribution sign;
  std::vector<EdgeRef> letters;
  for (int mk : marked) {
    int id = edge;
    if (!mk) {
      id = other(rng);
      if (id >= edge) ++id;
    }
    letters.push_back({id, sign(rng) ? 1 : -1});
  }
  return LoopWord(std::move(letters));
}

GradientCheckReport run_gradient_check(const GroupSpec& spec, int cases, std::uint64_t seed,
                                       int alphabet) {
  Rng rng(derive_seed(seed, 0x67726164));
  GradientCheckReport r;
  r.cases = cases;
  const int e = 0;
  for (int c = 0; c < cases; ++c) {
    const LoopWord l1 = random_loop_word(rng, e, alphabet, 8, 4);
    const LoopWord l2 = random_loop_word(rng, e, alphabet, 8, 4);
    const Configuration q = haar_configuration(spec, alphabet, rng);
    const Observable w = [&](const Configuration& x) { return wilson(l1, x); };

    r.max_gradient_error =
        std::max(r.max_gradient_error, relative_error(grad_wilson(l1, e, q), fd_gradient(w, e, q)));
    const Complex lap = laplacian_wilson(l1, e, q);
    const Complex fd = fd_laplacian(w, e, q);
    r.max_laplacian_error =
        std::max(r.max_laplacian_error, std::abs(lap - fd) / std::max(1.0, std::abs(fd)));
    const Complex direct = metric(grad_wilson(l1, e, q), grad_wilson(l2, e, q));
    r.max_inner_error = std::max(r.max_inner_error, std::abs(grad_inner(l1, l2, e, q) - direct));
  }
  r.pass = r.max_gradient_error < kGradientTolerance && r.max_laplacian_error < kLaplacianTolerance &&
           r.max_inner_error < kInnerTolerance;
  return r;
}

}  // namespace mloop
