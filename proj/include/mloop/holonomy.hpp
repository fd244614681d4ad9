#pragma once

#include <vector>

#include "mloop/group.hpp"
#include "mloop/loop_word.hpp"

namespace mloop {

/// One group element per positively oriented edge.
struct Configuration {
  GroupSpec spec;
  std::vector<Matrix> links;

  int num_edges() const { return static_cast<int>(links.size()); }
};

Configuration identity_configuration(const GroupSpec& spec, int num_edges);
Configuration haar_configuration(const GroupSpec& spec, int num_edges, Rng& rng);

/// Ordered product of link matrices along the word (inverse for backward
/// letters). The null word yields the identity.
Matrix holonomy(const LoopWord& word, const Configuration& q);

/// Tr of the holonomy; the null word gives N.
Complex wilson(const LoopWord& word, const Configuration& q);

/// Product of Wilson values; an empty list gives 1.
Complex wilson_product(const std::vector<LoopWord>& words, const Configuration& q);

/// Largest membership residual over all links.
double max_membership_residual(const Configuration& q);

}  // namespace mloop
