#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>

#include "pachner/simplicial.hpp"
#include "pachner/tetrahedron.hpp"

namespace pachner {

using Point = Point3<double>;

/// Euclidean coordinates for the vertices of a triangulation.
struct Decoration {
  std::map<Label, Point> coords;

  /// Throws MissingCoordinate.
  const Point& at(const Label& v) const;
  friend bool operator==(const Decoration&, const Decoration&) = default;
};

using LengthMap = std::map<Edge, double>;

struct DecorateOptions {
  double scale = 1.0;
  /// Minimum |signed volume| as a fraction of scale^3.
  double vol_floor = 1e-6;
  int max_retries = 1000;

  double absolute_floor() const { return vol_floor * scale * scale * scale; }
};

/// Coordinates uniform in [0, scale]^3, resampled until every tetrahedron has
/// |V| >= floor. Deterministic in `seed`. Throws GenericityFailed.
Decoration decorate_random(const Triangulation& t, std::uint64_t seed,
                           const DecorateOptions& opts = {});

/// Adds `v` strictly inside `tet` at random barycentric coordinates, each >= 0.05.
Decoration decorate_extend(const Decoration& dec, const Label& v, const Tet& tet,
                           std::uint64_t seed, const DecorateOptions& opts = {});
/// Adds `v` at the given barycentric coordinates of `tet` (weights sum to 1).
Decoration decorate_extend_at(const Decoration& dec, const Label& v, const Tet& tet,
                              const Eigen::Vector4d& barycentric,
                              const DecorateOptions& opts = {});

std::array<Point, 4> tet_points(const Decoration& dec, const Tet& t);
TetLengths<double> tet_lengths(const Decoration& dec, const Tet& t);
TetLengths<double> tet_lengths(const LengthMap& l, const Tet& t);

/// Position of `e` in the (01, 02, 03, 12, 13, 23) order of `t`; -1 if absent.
int local_edge_index(const Tet& t, const Edge& e);

LengthMap lengths_of(const Triangulation& t, const Decoration& dec);

double volume_signed(const Decoration& dec, const Tet& t);
double volume_cm(const TetLengths<double>& l);
double min_abs_volume(const Triangulation& t, const Decoration& dec);
/// Sign of the signed volume of `t` in its stored vertex order.
int orientation_sign(const Decoration& dec, const Tet& t);

double dihedral_unsigned(const TetLengths<double>& l, int local_edge);
double dihedral_signed(const Decoration& dec, const Tet& t, const Edge& e);

/// True when every triangle through `e` is shared by two tetrahedra.
bool is_interior_edge(const Triangulation& t, const Edge& e);

/// 2*pi minus the sum of dihedral angles around the interior edge `e`,
/// as a function of the lengths alone.
double deficit_local(const Triangulation& t, const LengthMap& l, const Edge& e);

/// -sum of orientation-signed dihedral angles around `e`, reduced to (-pi, pi].
double deficit_global_mod2pi(const Triangulation& t, const Decoration& dec, const Edge& e);

}  // namespace pachner
