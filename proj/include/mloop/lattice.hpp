#pragma once

#include <vector>

#include "mloop/loop_word.hpp"

namespace mloop {

struct Edge {
  int source = 0;
  int target = 0;
  int axis = 0;
  /// Corner vertex the edge was generated from (its source before any re-orientation).
  int anchor = 0;
};

struct Plaquette {
  int corner = 0;
  int mu = 0;
  int nu = 1;
  LoopWord boundary;
};

/// Occurrences of a fixed edge in the boundary of one oriented plaquette.
/// `orientation` is +1 for p and -1 for p^-1; t is the signed occurrence
/// count of the edge in that boundary word.
struct PlaquetteIncidence {
  int plaquette = 0;
  int orientation = 1;
  LoopWord boundary;
  OccurrenceTable occurrences;
  int t() const { return occurrences.t(); }
};

class CellComplex {
 public:
  CellComplex(std::vector<int> dims, bool periodic, std::vector<int> vertex_stride,
              int num_vertices, std::vector<Edge> edges, std::vector<Plaquette> plaquettes);

  const std::vector<int>& dims() const { return dims_; }
  bool periodic() const { return periodic_; }
  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_plaquettes() const { return static_cast<int>(plaquettes_.size()); }
  const Edge& edge(int id) const;
  const Plaquette& plaquette(int id) const;
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }

  std::vector<int> coordinates(int vertex) const;
  /// Edge leaving `vertex` along `axis`, or -1 when it does not exist.
  int edge_id(int vertex, int axis) const;

  /// Boundary word of p (+1) or p^-1 (-1).
  LoopWord boundary_word(int plaquette, int orientation = 1) const;

  /// Positively oriented plaquettes whose boundary contains the edge.
  std::vector<PlaquetteIncidence> plaquettes_containing(int edge) const;
  /// Both orientations p and p^-1 of every plaquette containing the edge.
  std::vector<PlaquetteIncidence> signed_plaquettes_containing(int edge) const;

  /// True when every edge id is valid and consecutive letters share endpoints.
  bool is_closed(const LoopWord& word) const;
  /// Throws LoopError naming the first offending edge or gap.
  void validate_loop(const LoopWord& word) const;

 private:
  std::vector<int> dims_;
  bool periodic_ = false;
  std::vector<int> stride_;
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<Plaquette> plaquettes_;
  std::vector<std::vector<int>> vertex_edges_;
};

/// Hypercubic box with `dims[i]` cells along axis i. Vertices are
/// linearized with axis 0 fastest; edges are numbered vertex-major then by
/// axis; plaquettes by corner vertex then by axis pair (mu < nu), with
/// boundary e(v,mu)+ e(v+mu,nu)+ e(v+nu,mu)- e(v,nu)-.
CellComplex build_rect_lattice(const std::vector<int>& dims, bool periodic = false);

/// Reverses the orientation of the flagged edges and plaquettes. The link
/// variables of a flipped edge become their inverses, so words must be
/// rewritten with `reorient_word`.
CellComplex reorient(const CellComplex& c, const std::vector<bool>& flip_edges,
                     const std::vector<bool>& flip_plaquettes);
LoopWord reorient_word(const LoopWord& word, const std::vector<bool>& flip_edges);

}  // namespace mloop
