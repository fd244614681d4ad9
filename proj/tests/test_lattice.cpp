#include <gtest/gtest.h>

#include <set>

#include "mloop/holonomy.hpp"
#include "mloop/lattice.hpp"
#include "oracles.hpp"

using namespace mloop;

namespace {

int expected_edges(const std::vector<int>& dims, bool periodic) {
  int total = 0;
  for (std::size_t a = 0; a < dims.size(); ++a) {
    int count = periodic ? dims[a] : dims[a];
    for (std::size_t b = 0; b < dims.size(); ++b)
      if (b != a) count *= periodic ? dims[b] : dims[b] + 1;
    total += count;
  }
  return total;
}

int expected_plaquettes(const std::vector<int>& dims, bool periodic) {
  int total = 0;
  for (std::size_t a = 0; a < dims.size(); ++a)
    for (std::size_t b = a + 1; b < dims.size(); ++b) {
      int count = dims[a] * dims[b];
      for (std::size_t c = 0; c < dims.size(); ++c)
        if (c != a && c != b) count *= periodic ? dims[c] : dims[c] + 1;
      total += count;
    }
  return total;
}

}  // namespace

TEST(Lattice, SmallCounts) {
  EXPECT_EQ(build_rect_lattice({1, 1}).num_edges(), 4);
  EXPECT_EQ(build_rect_lattice({1, 1}).num_plaquettes(), 1);
  EXPECT_EQ(build_rect_lattice({2, 1}).num_edges(), 7);
  EXPECT_EQ(build_rect_lattice({2, 1}).num_plaquettes(), 2);
  EXPECT_EQ(build_rect_lattice({2, 2}).num_edges(), 12);
  EXPECT_EQ(build_rect_lattice({2, 2}).num_plaquettes(), 4);
  EXPECT_THROW(build_rect_lattice({0, 2}), std::invalid_argument);
  EXPECT_THROW(build_rect_lattice({}), std::invalid_argument);
}

TEST(Lattice, CountsMatchClosedFormsUpToSize100) {
  for (bool periodic : {false, true})
    for (int d = 1; d <= 3; ++d) {
      std::vector<int> dims(d, 1);
      while (true) {
        int size = 1;
        for (int x : dims) size *= x;
        if (size <= 100 && !(periodic && std::any_of(dims.begin(), dims.end(), [](int x) { return x < 3; }))) {
          const CellComplex c = build_rect_lattice(dims, periodic);
          EXPECT_EQ(c.num_edges(), expected_edges(dims, periodic));
          EXPECT_EQ(c.num_plaquettes(), expected_plaquettes(dims, periodic));
        }
        int a = 0;
        while (a < d && ++dims[a] > 5) dims[a++] = 1;
        if (a == d) break;
      }
    }
}

TEST(Lattice, BoundaryWordsAreClosedAndTrivialAtIdentity) {
  for (const auto& dims : std::vector<std::vector<int>>{{1, 1}, {3, 2}, {2, 2, 2}}) {
    const CellComplex c = build_rect_lattice(dims);
    const Configuration id = identity_configuration(GroupSpec(GroupFamily::SU, 3), c.num_edges());
    for (int p = 0; p < c.num_plaquettes(); ++p) {
      EXPECT_TRUE(c.is_closed(c.boundary_word(p, 1)));
      EXPECT_EQ(c.boundary_word(p, -1), inverse(c.boundary_word(p, 1)));
      EXPECT_LT((holonomy(c.boundary_word(p, 1), id) - Matrix::Identity(3, 3)).norm(), 1e-15);
      EXPECT_EQ(parse_loop(to_string(c.boundary_word(p, 1))), c.boundary_word(p, 1));
    }
  }
}

TEST(Lattice, SingleSquareConvention) {
  const CellComplex c = build_rect_lattice({1, 1});
  const Plaquette& p = c.plaquette(0);
  // bottom, right, top^-1, left^-1
  const int bottom = c.edge_id(0, 0), left = c.edge_id(0, 1);
  const int right = c.edge_id(c.edge(bottom).target, 1), top = c.edge_id(c.edge(left).target, 0);
  EXPECT_EQ(p.boundary, (LoopWord{{bottom, 1}, {right, 1}, {top, -1}, {left, -1}}));
  for (int e = 0; e < 4; ++e) {
    const auto inc = c.plaquettes_containing(e);
    ASSERT_EQ(inc.size(), 1u);
    EXPECT_EQ(std::abs(inc[0].t()), 1);
  }
}

TEST(Lattice, SharedEdgeHasOppositeSigns) {
  const CellComplex c = build_rect_lattice({2, 1});
  int shared = 0;
  for (int e = 0; e < c.num_edges(); ++e) {
    const auto inc = c.plaquettes_containing(e);
    if (inc.size() != 2) continue;
    ++shared;
    EXPECT_EQ(inc[0].t() + inc[1].t(), 0);
    const auto signed_inc = c.signed_plaquettes_containing(e);
    EXPECT_EQ(signed_inc.size(), 4u);
    for (const auto& s : signed_inc) EXPECT_EQ(std::abs(s.t()), 1);
  }
  EXPECT_EQ(shared, 1);
}

TEST(Lattice, OneDimensionalHasNoPlaquettes) {
  const CellComplex c = build_rect_lattice({3});
  EXPECT_EQ(c.num_plaquettes(), 0);
  for (int e = 0; e < c.num_edges(); ++e) EXPECT_TRUE(c.plaquettes_containing(e).empty());
  EXPECT_THROW(c.plaquettes_containing(7), std::out_of_range);
}

TEST(Lattice, IncidenceSymmetryExhaustive) {
  for (int nx = 1; nx <= 3; ++nx)
    for (int ny = 1; ny <= 3; ++ny) {
      const CellComplex c = build_rect_lattice({nx, ny});
      for (int e = 0; e < c.num_edges(); ++e) {
        std::set<int> listed;
        for (const auto& inc : c.plaquettes_containing(e)) listed.insert(inc.plaquette);
        for (int p = 0; p < c.num_plaquettes(); ++p)
          EXPECT_EQ(listed.count(p) == 1, !occurrences(c.plaquette(p).boundary, e).empty());
      }
    }
}

TEST(Lattice, ValidationNamesTheProblem) {
  const CellComplex c = build_rect_lattice({1, 1});
  try {
    c.validate_loop(parse_loop("0+ 9+"));
    FAIL();
  } catch (const LoopError& e) {
    EXPECT_NE(std::string(e.what()).find("9"), std::string::npos);
  }
  EXPECT_FALSE(c.is_closed(parse_loop("0+ 1+")));
  EXPECT_TRUE(c.is_closed(parse_loop("0+ 0-")));
}

TEST(Lattice, ReorientationKeepsClosedness) {
  const CellComplex c = build_rect_lattice({2, 2});
  Rng rng(4);
  std::bernoulli_distribution coin;
  std::vector<bool> fe(c.num_edges()), fp(c.num_plaquettes());
  for (auto&& b : fe) b = coin(rng);
  for (auto&& b : fp) b = coin(rng);
  const CellComplex r = reorient(c, fe, fp);
  for (int p = 0; p < r.num_plaquettes(); ++p) EXPECT_TRUE(r.is_closed(r.plaquette(p).boundary));
  for (int v = 0; v < c.num_vertices(); ++v)
    for (int a = 0; a < 2; ++a) EXPECT_EQ(r.edge_id(v, a), c.edge_id(v, a));
}
