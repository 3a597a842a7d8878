#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pachner/error.hpp"

namespace pachner {

using Label = std::string;
/// Ordered tetrahedron; the vertex order carries the orientation.
using Tet = std::array<Label, 4>;
/// Unordered pair, stored sorted.
using Edge = std::array<Label, 2>;
/// Unordered triple, stored sorted.
using Triangle = std::array<Label, 3>;

Edge make_edge(const Label& a, const Label& b);
Triangle make_triangle(Label a, Label b, Label c);
/// Vertex set of a tetrahedron, sorted; used as the identity of a simplex.
std::array<Label, 4> vertex_set(const Tet& t);
bool contains(const Tet& t, const Label& v);
bool contains(const Tet& t, const Edge& e);

/// +1 if `seq` is an even permutation of `ref`, -1 if odd, 0 if the two are
/// not permutations of each other.
int permutation_sign(const std::array<Label, 4>& seq, const std::array<Label, 4>& ref);

std::string edge_key(const Edge& e);  // "A-B"

struct FVector {
  std::size_t n0 = 0, n1 = 0, n2 = 0, n3 = 0;

  long euler() const {
    return static_cast<long>(n0) - static_cast<long>(n1) + static_cast<long>(n2) -
           static_cast<long>(n3);
  }
  friend bool operator==(const FVector&, const FVector&) = default;
};

/// Signed f-vector difference, as produced by a Pachner move.
struct FDelta {
  long d0 = 0, d1 = 0, d2 = 0, d3 = 0;
  friend bool operator==(const FDelta&, const FDelta&) = default;
};
FDelta operator-(const FVector& after, const FVector& before);

/// Immutable vertex-labeled 3D triangulation. Simplices are identified by
/// their vertex sets; edges and triangles are derived and kept in
/// lexicographic order so every downstream matrix basis is reproducible.
class Triangulation {
 public:
  Triangulation() = default;

  /// Vertices in order of first appearance.
  static Triangulation build(std::vector<Tet> tets);
  /// Explicit vertex order; must be exactly the set of labels used by `tets`.
  static Triangulation build(std::vector<Label> vertices, std::vector<Tet> tets);

  const std::vector<Label>& vertices() const { return vertices_; }
  const std::vector<Tet>& tets() const { return tets_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  bool has_vertex(const Label& v) const { return vertex_index_.count(v) != 0; }
  bool has_edge(const Edge& e) const { return edge_index_.count(e) != 0; }
  bool has_triangle(const Triangle& f) const { return triangle_tets_.count(f) != 0; }
  /// Index of the tetrahedron with the same vertex set, if any.
  std::optional<std::size_t> find_tet(const Tet& t) const;

  std::size_t vertex_index(const Label& v) const;
  /// Throws EdgeNotFound.
  std::size_t edge_index(const Edge& e) const;
  /// Tetrahedra (by index) containing the triangle; empty if absent.
  const std::vector<std::size_t>& triangle_tets(const Triangle& f) const;
  std::vector<std::size_t> tets_containing(const Label& v) const;
  std::vector<std::size_t> tets_containing(const Edge& e) const;

  bool closed() const { return closed_; }

  friend bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.vertices_ == b.vertices_ && a.tets_ == b.tets_;
  }

 private:
  std::vector<Label> vertices_;
  std::vector<Tet> tets_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::map<Label, std::size_t> vertex_index_;
  std::map<Edge, std::size_t> edge_index_;
  std::map<Triangle, std::vector<std::size_t>> triangle_tets_;
  std::map<std::array<Label, 4>, std::size_t> tet_index_;
  bool closed_ = false;
};

FVector f_vector(const Triangulation& t);
bool is_closed(const Triangulation& t);

/// Tetrahedra around `e`, consecutive entries sharing a triangle that
/// contains `e`. Cyclic for closed triangulations, a path otherwise.
/// Throws EdgeNotFound or StarNotCyclic.
std::vector<std::size_t> edge_star(const Triangulation& t, const Edge& e);

std::size_t edge_valence(const Triangulation& t, const Edge& e);

/// Boundary of the 4-simplex on A..E (a triangulated 3-sphere).
Triangulation seed_boundary_4simplex();

/// Named seed triangulations; currently only "boundary-4-simplex".
/// Throws UnknownSeed.
Triangulation seed_by_name(const std::string& name);

using VertexMap = std::map<Label, Label>;

/// Label bijection carrying the tetrahedra of `a` onto those of `b`, found by
/// backtracking. Intended for small triangulations.
std::optional<VertexMap> isomorphic(const Triangulation& a, const Triangulation& b);

}  // namespace pachner
