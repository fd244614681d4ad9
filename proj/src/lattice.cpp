#include "mloop/lattice.hpp"

#include <stdexcept>

namespace mloop {

CellComplex::CellComplex(std::vector<int> dims, bool periodic, std::vector<int> vertex_stride,
                         int num_vertices, std::vector<Edge> edges,
                         std::vector<Plaquette> plaquettes)
    : dims_(std::move(dims)),
      periodic_(periodic),
      stride_(std::move(vertex_stride)),
      num_vertices_(num_vertices),
      edges_(std::move(edges)),
      plaquettes_(std::move(plaquettes)) {
  vertex_edges_.assign(num_vertices_, std::vector<int>(dims_.size(), -1));
  for (int id = 0; id < num_edges(); ++id) vertex_edges_[edges_[id].anchor][edges_[id].axis] = id;
}

const Edge& CellComplex::edge(int id) const {
  if (id < 0 || id >= num_edges()) throw std::out_of_range("edge " + std::to_string(id) + " does not exist");
  return edges_[id];
}

const Plaquette& CellComplex::plaquette(int id) const {
  if (id < 0 || id >= num_plaquettes())
    throw std::out_of_range("plaquette " + std::to_string(id) + " does not exist");
  return plaquettes_[id];
}

std::vector<int> CellComplex::coordinates(int vertex) const {
  std::vector<int> c(dims_.size());
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    const int extent = periodic_ ? dims_[a] : dims_[a] + 1;
    c[a] = (vertex / stride_[a]) % extent;
  }
  return c;
}

int CellComplex::edge_id(int vertex, int axis) const {
  if (vertex < 0 || vertex >= num_vertices_ || axis < 0 || axis >= static_cast<int>(dims_.size()))
    return -1;
  return vertex_edges_[vertex][axis];
}

LoopWord CellComplex::boundary_word(int p, int orientation) const {
  const LoopWord& w = plaquette(p).boundary;
  if (orientation == 1) return w;
  if (orientation == -1) return inverse(w);
  throw std::invalid_argument("plaquette orientation must be +1 or -1");
}

std::vector<PlaquetteIncidence> CellComplex::plaquettes_containing(int e) const {
  edge(e);
  std::vector<PlaquetteIncidence> out;
  for (int p = 0; p < num_plaquettes(); ++p) {
    auto occ = occurrences(plaquettes_[p].boundary, e);
    if (!occ.empty()) out.push_back({p, 1, plaquettes_[p].boundary, std::move(occ)});
  }
  return out;
}

std::vector<PlaquetteIncidence> CellComplex::signed_plaquettes_containing(int e) const {
  std::vector<PlaquetteIncidence> out;
  for (const auto& inc : plaquettes_containing(e)) {
    out.push_back(inc);
    LoopWord inv = inverse(inc.boundary);
    auto occ = occurrences(inv, e);
    out.push_back({inc.plaquette, -1, std::move(inv), std::move(occ)});
  }
  return out;
}

void CellComplex::validate_loop(const LoopWord& word) const {
  if (word.is_null()) return;
  for (const auto& l : word)
    if (l.edge >= num_edges())
      throw LoopError("loop references unknown edge " + std::to_string(l.edge));
  auto head = [&](const EdgeRef& l) { return l.orientation > 0 ? edges_[l.edge].target : edges_[l.edge].source; };
  auto tail = [&](const EdgeRef& l) { return l.orientation > 0 ? edges_[l.edge].source : edges_[l.edge].target; };
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto& a = word[i];
    const auto& b = word[(i + 1) % word.size()];
    if (head(a) != tail(b))
      throw LoopError("loop is not closed: letter " + std::to_string(i) + " (edge " +
                      std::to_string(a.edge) + ") does not meet edge " + std::to_string(b.edge));
  }
}

bool CellComplex::is_closed(const LoopWord& word) const {
  try {
    validate_loop(word);
    return true;
  } catch (const LoopError&) {
    return false;
  }
}

CellComplex build_rect_lattice(const std::vector<int>& dims, bool periodic) {
  if (dims.empty()) throw std::invalid_argument("lattice needs at least one axis");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("lattice extents must be >= 1");
  const int d = static_cast<int>(dims.size());

  std::vector<int> extent(d), stride(d);
  int num_vertices = 1;
  for (int a = 0; a < d; ++a) {
    extent[a] = periodic ? dims[a] : dims[a] + 1;
    stride[a] = num_vertices;
    num_vertices *= extent[a];
  }
  auto coord = [&](int v, int a) { return (v / stride[a]) % extent[a]; };
  auto step = [&](int v, int a) {
    const int c = coord(v, a);
    return c + 1 < extent[a] ? v + stride[a] : v - c * stride[a];
  };
  auto has_edge = [&](int v, int a) { return periodic || coord(v, a) < dims[a]; };

  std::vector<Edge> edges;
  std::vector<std::vector<int>> id(num_vertices, std::vector<int>(d, -1));
  for (int v = 0; v < num_vertices; ++v)
    for (int a = 0; a < d; ++a)
      if (has_edge(v, a)) {
        id[v][a] = static_cast<int>(edges.size());
        edges.push_back({v, step(v, a), a, v});
      }
  if (edges.empty()) throw std::invalid_argument("lattice has no edges");

  std::vector<Plaquette> plaquettes;
  for (int v = 0; v < num_vertices; ++v)
    for (int mu = 0; mu < d; ++mu)
      for (int nu = mu + 1; nu < d; ++nu) {
        if (!has_edge(v, mu) || !has_edge(v, nu)) continue;
        LoopWord w{{id[v][mu], 1}, {id[step(v, mu)][nu], 1}, {id[step(v, nu)][mu], -1}, {id[v][nu], -1}};
        plaquettes.push_back({v, mu, nu, std::move(w)});
      }
  return CellComplex(dims, periodic, stride, num_vertices, std::move(edges), std::move(plaquettes));
}

LoopWord reorient_word(const LoopWord& word, const std::vector<bool>& flip_edges) {
  std::vector<EdgeRef> letters(word.begin(), word.end());
  for (auto& l : letters)
    if (l.edge < static_cast<int>(flip_edges.size()) && flip_edges[l.edge]) l.orientation = -l.orientation;
  return LoopWord(std::move(letters));
}

CellComplex reorient(const CellComplex& c, const std::vector<bool>& flip_edges,
                     const std::vector<bool>& flip_plaquettes) {
  std::vector<Edge> edges = c.edges();
  for (int i = 0; i < c.num_edges(); ++i)
    if (i < static_cast<int>(flip_edges.size()) && flip_edges[i]) std::swap(edges[i].source, edges[i].target);
  std::vector<Plaquette> plaquettes = c.plaquettes();
  for (int p = 0; p < c.num_plaquettes(); ++p) {
    LoopWord w = reorient_word(plaquettes[p].boundary, flip_edges);
    if (p < static_cast<int>(flip_plaquettes.size()) && flip_plaquettes[p]) w = inverse(w);
    plaquettes[p].boundary = std::move(w);
  }
  std::vector<int> stride(c.dims().size());
  int s = 1;
  for (std::size_t a = 0; a < stride.size(); ++a) {
    stride[a] = s;
    s *= c.periodic() ? c.dims()[a] : c.dims()[a] + 1;
  }
  return CellComplex(c.dims(), c.periodic(), stride, c.num_vertices(), std::move(edges),
                     std::move(plaquettes));
}

}  // namespace mloop
