#include "pachner/moves.hpp"

#include <algorithm>
#include <set>

namespace pachner {

namespace {

Triangulation rewrite(const Triangulation& t, const std::vector<Tet>& consumed,
                      const std::vector<Tet>& produced, const std::vector<Label>& added,
                      const std::vector<Label>& removed) {
  std::set<std::array<Label, 4>> drop;
  for (const Tet& c : consumed) {
    if (!t.find_tet(c))
      throw Error(ErrorKind::SiteStale, "tetrahedron " + c[0] + c[1] + c[2] + c[3] +
                                            " is not in the triangulation");
    drop.insert(vertex_set(c));
  }
  std::vector<Tet> tets;
  tets.reserve(t.tets().size() - consumed.size() + produced.size());
  for (const Tet& tet : t.tets())
    if (!drop.count(vertex_set(tet))) tets.push_back(tet);
  tets.insert(tets.end(), produced.begin(), produced.end());

  std::vector<Label> vertices;
  for (const Label& v : t.vertices())
    if (std::find(removed.begin(), removed.end(), v) == removed.end()) vertices.push_back(v);
  vertices.insert(vertices.end(), added.begin(), added.end());
  return Triangulation::build(std::move(vertices), std::move(tets));
}

Label apex(const Tet& t, const Triangle& face) {
  for (const Label& v : t)
    if (std::find(face.begin(), face.end(), v) == face.end()) return v;
  throw Error(ErrorKind::PatternMismatch, "face not contained in tetrahedron");
}

// (A, B, C) with (A, B, C, D) an even permutation of `t`, D its apex over the face.
std::array<Label, 3> oriented_face(const Tet& t, const Label& d) {
  std::array<Label, 3> abc;
  std::size_t k = 0;
  for (const Label& v : t)
    if (v != d) abc[k++] = v;
  if (permutation_sign({abc[0], abc[1], abc[2], d}, t) < 0) std::swap(abc[0], abc[1]);
  return abc;
}

std::string tet_name(const Tet& t) { return t[0] + t[1] + t[2] + t[3]; }

}  // namespace

std::string_view to_string(MoveKind k) {
  switch (k) {
    case MoveKind::M23: return "2-3";
    case MoveKind::M32: return "3-2";
    case MoveKind::M14: return "1-4";
    case MoveKind::M41: return "4-1";
  }
  return "?";
}

std::vector<MoveSite23> find_sites_23(const Triangulation& t) {
  std::vector<MoveSite23> sites;
  for (const Triangle& f : t.triangles()) {
    const auto& incident = t.triangle_tets(f);
    if (incident.size() != 2) continue;
    const Tet& tet1 = t.tets()[std::min(incident[0], incident[1])];
    const Tet& tet2 = t.tets()[std::max(incident[0], incident[1])];
    const Label d = apex(tet1, f);
    const Label e = apex(tet2, f);
    if (t.has_edge(make_edge(d, e))) continue;
    sites.push_back({tet1, tet2, oriented_face(tet1, d), d, e});
  }
  return sites;
}

namespace {

std::pair<Triangulation, MoveRecord> do_23(const Triangulation& t, const MoveSite23& site) {
  const auto i1 = t.find_tet(site.tet1);
  const auto i2 = t.find_tet(site.tet2);
  if (!i1 || !i2) throw Error(ErrorKind::SiteStale, "site tetrahedra no longer present");
  const Triangle f = make_triangle(site.shared[0], site.shared[1], site.shared[2]);
  const Tet& tet1 = t.tets()[*i1];
  const Tet& tet2 = t.tets()[*i2];
  if (vertex_set(tet1) != vertex_set({f[0], f[1], f[2], site.apex_d}) ||
      vertex_set(tet2) != vertex_set({f[0], f[1], f[2], site.apex_e}))
    throw Error(ErrorKind::SiteStale, "site does not describe two tetrahedra glued along " +
                                          f[0] + f[1] + f[2]);
  const Label& d = site.apex_d;
  const Label& e = site.apex_e;
  if (t.has_edge(make_edge(d, e)))
    throw Error(ErrorKind::EdgeAlreadyPresent, "apex edge " + edge_key(make_edge(d, e)) +
                                                   " already exists");
  const auto [a, b, c] = oriented_face(tet1, d);
  MoveRecord rec{MoveKind::M23,
                 {tet1, tet2},
                 {Tet{a, b, e, d}, Tet{b, c, e, d}, Tet{c, a, e, d}},
                 {},
                 {}};
  return {rewrite(t, rec.consumed, rec.produced, {}, {}), rec};
}

std::pair<Triangulation, MoveRecord> do_32(const Triangulation& t, const Edge& edge) {
  const Label& d = edge[0];
  const Label& e = edge[1];
  if (!t.has_edge(make_edge(d, e))) throw Error(ErrorKind::EdgeNotFound, "no edge " + d + "-" + e);
  const auto star = t.tets_containing(make_edge(d, e));
  if (star.size() != 3)
    throw Error(ErrorKind::WrongValence, "edge " + d + "-" + e + " has valence " +
                                             std::to_string(star.size()) + ", expected 3");

  // Each star tetrahedron is (x, y, E, D) up to an even permutation, giving
  // a directed link edge x -> y; the three must close into a cycle A->B->C->A.
  std::map<Label, Label> next;
  for (std::size_t ti : star) {
    const Tet& tet = t.tets()[ti];
    std::array<Label, 2> xy;
    std::size_t k = 0;
    for (const Label& v : tet)
      if (v != d && v != e) xy[k++] = v;
    if (permutation_sign({xy[0], xy[1], e, d}, tet) < 0) std::swap(xy[0], xy[1]);
    if (!next.emplace(xy[0], xy[1]).second)
      throw Error(ErrorKind::PatternMismatch, "link of " + d + "-" + e + " is not a triangle");
  }
  if (next.size() != 3)
    throw Error(ErrorKind::PatternMismatch, "link of " + d + "-" + e + " is not a triangle");
  const Label a = next.begin()->first;
  if (!next.count(next.at(a)) || !next.count(next.at(next.at(a))) ||
      next.at(next.at(next.at(a))) != a)
    throw Error(ErrorKind::PatternMismatch, "link of " + d + "-" + e + " is not an oriented 3-cycle");
  const Label b = next.at(a);
  const Label c = next.at(b);

  const Tet abcd{a, b, c, d};
  const Tet eabc{e, a, b, c};
  if (t.find_tet(abcd))
    throw Error(ErrorKind::TetAlreadyPresent, "tetrahedron " + tet_name(abcd) + " already exists");
  if (t.find_tet(eabc))
    throw Error(ErrorKind::TetAlreadyPresent, "tetrahedron " + tet_name(eabc) + " already exists");
  if (t.has_triangle(make_triangle(a, b, c)))
    throw Error(ErrorKind::PatternMismatch, "triangle " + a + b + c + " already exists");

  MoveRecord rec{MoveKind::M32, {}, {abcd, eabc}, {}, {}};
  for (std::size_t ti : star) rec.consumed.push_back(t.tets()[ti]);
  return {rewrite(t, rec.consumed, rec.produced, {}, {}), rec};
}

std::pair<Triangulation, MoveRecord> do_14(const Triangulation& t, const Tet& tet,
                                           const Label& label) {
  const auto idx = t.find_tet(tet);
  if (!idx) throw Error(ErrorKind::TetNotFound, "no tetrahedron " + tet_name(tet));
  if (t.has_vertex(label)) throw Error(ErrorKind::LabelInUse, "label '" + label + "' in use");
  const auto& [a, b, c, d] = t.tets()[*idx];
  const Label& e = label;
  MoveRecord rec{MoveKind::M14,
                 {t.tets()[*idx]},
                 {Tet{a, b, c, e}, Tet{a, b, e, d}, Tet{a, e, c, d}, Tet{e, b, c, d}},
                 {label},
                 {}};
  return {rewrite(t, rec.consumed, rec.produced, rec.added_vertices, {}), rec};
}

std::pair<Triangulation, MoveRecord> do_41(const Triangulation& t, const Label& v) {
  t.vertex_index(v);
  const auto star = t.tets_containing(v);
  if (star.size() != 4)
    throw Error(ErrorKind::WrongLinkValence, "vertex '" + v + "' lies in " +
                                                 std::to_string(star.size()) +
                                                 " tetrahedra, expected 4");
  std::set<Label> link;
  for (std::size_t ti : star)
    for (const Label& w : t.tets()[ti])
      if (w != v) link.insert(w);
  if (link.size() != 4)
    throw Error(ErrorKind::PatternMismatch, "link of '" + v + "' is not a tetrahedron boundary");

  // Substituting the missing link vertex for v recovers the parent in place.
  auto parent_from = [&](const Tet& tet) {
    std::set<Label> missing = link;
    for (const Label& w : tet) missing.erase(w);
    Tet p = tet;
    std::replace(p.begin(), p.end(), v, *missing.begin());
    return p;
  };
  const Tet parent = parent_from(t.tets()[star.front()]);
  for (std::size_t ti : star)
    if (permutation_sign(parent_from(t.tets()[ti]), parent) != 1)
      throw Error(ErrorKind::PatternMismatch, "star of '" + v + "' is not coherently oriented");
  if (t.find_tet(parent))
    throw Error(ErrorKind::TetAlreadyPresent, "tetrahedron " + tet_name(parent) + " already exists");

  MoveRecord rec{MoveKind::M41, {}, {parent}, {}, {v}};
  for (std::size_t ti : star) rec.consumed.push_back(t.tets()[ti]);
  return {rewrite(t, rec.consumed, rec.produced, {}, rec.removed_vertices), rec};
}

}  // namespace

Triangulation apply_23(const Triangulation& t, const MoveSite23& site) { return do_23(t, site).first; }
Triangulation apply_32(const Triangulation& t, const Edge& e) { return do_32(t, e).first; }
Triangulation apply_14(const Triangulation& t, const Tet& tet, const Label& label) {
  return do_14(t, tet, label).first;
}
Triangulation apply_41(const Triangulation& t, const Label& v) { return do_41(t, v).first; }

std::pair<Triangulation, MoveRecord> apply_command(const Triangulation& t, const MoveCommand& c) {
  return std::visit(
      [&](const auto& m) -> std::pair<Triangulation, MoveRecord> {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, cmd::Move14>) {
          if (m.tet >= t.tets().size())
            throw Error(ErrorKind::TetNotFound, "tetrahedron index " + std::to_string(m.tet) +
                                                    " out of range");
          return do_14(t, t.tets()[m.tet], m.label);
        } else if constexpr (std::is_same_v<M, cmd::Move23>) {
          const auto sites = find_sites_23(t);
          if (m.site >= sites.size())
            throw Error(ErrorKind::SiteStale, "site index " + std::to_string(m.site) + " of " +
                                                  std::to_string(sites.size()) + " available");
          return do_23(t, sites[m.site]);
        } else if constexpr (std::is_same_v<M, cmd::Move32>) {
          return do_32(t, m.edge);
        } else {
          return do_41(t, m.vertex);
        }
      },
      c);
}

std::pair<Triangulation, MoveLog> apply_sequence(const Triangulation& t, const MoveScript& script) {
  Triangulation current = t;
  MoveLog log;
  for (std::size_t i = 0; i < script.size(); ++i) {
    try {
      auto [next, rec] = apply_command(current, script[i]);
      current = std::move(next);
      log.push_back(std::move(rec));
    } catch (const ScriptError&) {
      throw;
    } catch (const Error& e) {
      throw ScriptError(i, e);
    }
  }
  return {std::move(current), std::move(log)};
}

Triangulation replay(const Triangulation& t, const MoveLog& log) {
  Triangulation current = t;
  for (const MoveRecord& rec : log)
    current = rewrite(current, rec.consumed, rec.produced, rec.added_vertices,
                      rec.removed_vertices);
  return current;
}

}  // namespace pachner
