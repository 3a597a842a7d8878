#include "pachner/geometry.hpp"

#include <cmath>
#include <numbers>

#include "pachner/random.hpp"

namespace pachner {

const Point& Decoration::at(const Label& v) const {
  auto it = coords.find(v);
  if (it == coords.end()) throw Error(ErrorKind::MissingCoordinate, "no coordinates for '" + v + "'");
  return it->second;
}

std::array<Point, 4> tet_points(const Decoration& dec, const Tet& t) {
  return {dec.at(t[0]), dec.at(t[1]), dec.at(t[2]), dec.at(t[3])};
}

TetLengths<double> tet_lengths(const Decoration& dec, const Tet& t) {
  return lengths_from_points(tet_points(dec, t));
}

TetLengths<double> tet_lengths(const LengthMap& l, const Tet& t) {
  TetLengths<double> out;
  for (int k = 0; k < 6; ++k) {
    const Edge e = make_edge(t[kTetEdges[k][0]], t[kTetEdges[k][1]]);
    auto it = l.find(e);
    if (it == l.end()) throw Error(ErrorKind::EdgeNotFound, "no length for " + edge_key(e));
    out(k) = it->second;
  }
  return out;
}

int local_edge_index(const Tet& t, const Edge& e) {
  int i = -1, j = -1;
  for (int k = 0; k < 4; ++k) {
    if (t[k] == e[0]) i = k;
    if (t[k] == e[1]) j = k;
  }
  return (i < 0 || j < 0) ? -1 : local_edge(i, j);
}

double volume_signed(const Decoration& dec, const Tet& t) {
  return signed_volume(dec.at(t[0]), dec.at(t[1]), dec.at(t[2]), dec.at(t[3]));
}

double volume_cm(const TetLengths<double>& l) { return volume_from_lengths(l); }

double min_abs_volume(const Triangulation& t, const Decoration& dec) {
  double m = std::numeric_limits<double>::infinity();
  for (const Tet& tet : t.tets()) m = std::min(m, std::abs(volume_signed(dec, tet)));
  return m;
}

int orientation_sign(const Decoration& dec, const Tet& t) {
  return volume_signed(dec, t) >= 0.0 ? 1 : -1;
}

Decoration decorate_random(const Triangulation& t, std::uint64_t seed, const DecorateOptions& opts) {
  Rng rng(seed);
  const double floor = opts.absolute_floor();
  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    Decoration dec;
    for (const Label& v : t.vertices()) {
      Point p;
      for (int c = 0; c < 3; ++c) p(c) = uniform(rng, 0.0, opts.scale);
      dec.coords.emplace(v, p);
    }
    if (t.tets().empty() || min_abs_volume(t, dec) >= floor) return dec;
  }
  throw Error(ErrorKind::GenericityFailed, "no decoration with |V| >= " + std::to_string(floor) +
                                               " after " + std::to_string(opts.max_retries) +
                                               " attempts");
}

Decoration decorate_extend_at(const Decoration& dec, const Label& v, const Tet& tet,
                              const Eigen::Vector4d& barycentric, const DecorateOptions& opts) {
  if (dec.coords.count(v)) throw Error(ErrorKind::LabelInUse, "'" + v + "' already decorated");
  const auto p = tet_points(dec, tet);
  const double floor = opts.absolute_floor();
  const double parent = signed_volume(p[0], p[1], p[2], p[3]);
  if (std::abs(parent) < floor)
    throw Error(ErrorKind::GenericityFailed, "parent tetrahedron is degenerate");

  Decoration out = dec;
  Point x = Point::Zero();
  for (int k = 0; k < 4; ++k) x += barycentric(k) * p[k];
  out.coords.emplace(v, x);
  for (int k = 0; k < 4; ++k) {
    auto q = p;
    q[k] = x;
    if (std::abs(signed_volume(q[0], q[1], q[2], q[3])) < floor)
      throw Error(ErrorKind::GenericityFailed, "sub-tetrahedron below the volume floor");
  }
  return out;
}

Decoration decorate_extend(const Decoration& dec, const Label& v, const Tet& tet,
                           std::uint64_t seed, const DecorateOptions& opts) {
  Rng rng(seed);
  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    // flat Dirichlet sample, rejected unless every weight is >= 0.05
    Eigen::Vector4d w;
    for (int k = 0; k < 4; ++k) w(k) = -std::log(1.0 - uniform01(rng));
    w /= w.sum();
    if (w.minCoeff() >= 0.05) return decorate_extend_at(dec, v, tet, w, opts);
  }
  throw Error(ErrorKind::GenericityFailed, "barycentric sampling exhausted");
}

LengthMap lengths_of(const Triangulation& t, const Decoration& dec) {
  LengthMap l;
  for (const Edge& e : t.edges()) l.emplace(e, (dec.at(e[0]) - dec.at(e[1])).norm());
  return l;
}

double dihedral_unsigned(const TetLengths<double>& l, int local_edge) {
  return dihedral_angle(l, local_edge);
}

double dihedral_signed(const Decoration& dec, const Tet& t, const Edge& e) {
  const int k = local_edge_index(t, e);
  if (k < 0) throw Error(ErrorKind::EdgeNotFound, edge_key(e) + " is not an edge of the tetrahedron");
  return orientation_sign(dec, t) * dihedral_unsigned(tet_lengths(dec, t), k);
}

bool is_interior_edge(const Triangulation& t, const Edge& e) {
  const Edge s = make_edge(e[0], e[1]);
  if (!t.has_edge(s)) return false;
  for (std::size_t ti : t.tets_containing(s))
    for (const Label& x : t.tets()[ti])
      if (x != s[0] && x != s[1] && t.triangle_tets(make_triangle(s[0], s[1], x)).size() != 2)
        return false;
  return true;
}

namespace {

std::vector<std::size_t> interior_star(const Triangulation& t, const Edge& e) {
  auto star = edge_star(t, e);
  if (!is_interior_edge(t, e))
    throw Error(ErrorKind::StarNotCyclic, edge_key(make_edge(e[0], e[1])) + " is a boundary edge");
  return star;
}

}  // namespace

double deficit_local(const Triangulation& t, const LengthMap& l, const Edge& e) {
  double sum = 0.0;
  for (std::size_t ti : interior_star(t, e)) {
    const Tet& tet = t.tets()[ti];
    sum += dihedral_unsigned(tet_lengths(l, tet), local_edge_index(tet, e));
  }
  return 2.0 * std::numbers::pi - sum;
}

double deficit_global_mod2pi(const Triangulation& t, const Decoration& dec, const Edge& e) {
  double sum = 0.0;
  for (std::size_t ti : interior_star(t, e)) sum += dihedral_signed(dec, t.tets()[ti], e);
  double r = std::remainder(-sum, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

}  // namespace pachner
