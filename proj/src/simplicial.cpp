#include "pachner/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace pachner {

Edge make_edge(const Label& a, const Label& b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

Triangle make_triangle(Label a, Label b, Label c) {
  Triangle f{std::move(a), std::move(b), std::move(c)};
  std::sort(f.begin(), f.end());
  return f;
}

std::array<Label, 4> vertex_set(const Tet& t) {
  std::array<Label, 4> s = t;
  std::sort(s.begin(), s.end());
  return s;
}

bool contains(const Tet& t, const Label& v) {
  return std::find(t.begin(), t.end(), v) != t.end();
}

bool contains(const Tet& t, const Edge& e) {
  return contains(t, e[0]) && contains(t, e[1]);
}

namespace {

template <std::size_t N>
int parity_to_sorted(const std::array<Label, N>& seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (seq[j] < seq[i]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

// Face of `t` opposite vertex i, with the orientation induced by the boundary
// operator: sign (-1)^i times the parity of the remaining vertices.
std::pair<Triangle, int> induced_face(const Tet& t, std::size_t i) {
  std::array<Label, 3> face;
  std::size_t k = 0;
  for (std::size_t j = 0; j < 4; ++j)
    if (j != i) face[k++] = t[j];
  int sign = (i % 2 == 0 ? 1 : -1) * parity_to_sorted(face);
  std::sort(face.begin(), face.end());
  return {face, sign};
}

bool valid_label(const Label& v) {
  return !v.empty() && v.find('-') == Label::npos;
}

}  // namespace

int permutation_sign(const std::array<Label, 4>& seq, const std::array<Label, 4>& ref) {
  if (vertex_set(seq) != vertex_set(ref)) return 0;
  return parity_to_sorted(seq) * parity_to_sorted(ref);
}

std::string edge_key(const Edge& e) { return e[0] + "-" + e[1]; }

FDelta operator-(const FVector& after, const FVector& before) {
  auto d = [](std::size_t a, std::size_t b) {
    return static_cast<long>(a) - static_cast<long>(b);
  };
  return {d(after.n0, before.n0), d(after.n1, before.n1), d(after.n2, before.n2),
          d(after.n3, before.n3)};
}

Triangulation Triangulation::build(std::vector<Tet> tets) {
  std::vector<Label> vertices;
  std::set<Label> seen;
  for (const Tet& t : tets)
    for (const Label& v : t)
      if (seen.insert(v).second) vertices.push_back(v);
  return build(std::move(vertices), std::move(tets));
}

Triangulation Triangulation::build(std::vector<Label> vertices, std::vector<Tet> tets) {
  Triangulation tri;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!valid_label(vertices[i]))
      throw Error(ErrorKind::InvalidLabel, "label '" + vertices[i] + "' is empty or contains '-'");
    if (!tri.vertex_index_.emplace(vertices[i], i).second)
      throw Error(ErrorKind::InvalidLabel, "duplicate vertex label '" + vertices[i] + "'");
  }

  std::set<Label> used;
  std::set<Edge> edges;
  std::map<Triangle, std::vector<std::pair<std::size_t, int>>> faces;
  for (std::size_t ti = 0; ti < tets.size(); ++ti) {
    const Tet& t = tets[ti];
    const auto key = vertex_set(t);
    for (std::size_t j = 0; j + 1 < 4; ++j)
      if (key[j] == key[j + 1])
        throw Error(ErrorKind::DegenerateTet, "tetrahedron " + std::to_string(ti) +
                                                  " repeats vertex '" + key[j] + "'");
    for (const Label& v : t) {
      if (!tri.vertex_index_.count(v))
        throw Error(ErrorKind::InvalidLabel, "vertex '" + v + "' not in vertex list");
      used.insert(v);
    }
    if (!tri.tet_index_.emplace(key, ti).second)
      throw Error(ErrorKind::DuplicateTet, "tetrahedron " + std::to_string(ti) +
                                               " duplicates tetrahedron " +
                                               std::to_string(tri.tet_index_.at(key)));
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b) edges.insert(make_edge(t[a], t[b]));
    for (std::size_t i = 0; i < 4; ++i) {
      auto [face, sign] = induced_face(t, i);
      faces[face].emplace_back(ti, sign);
    }
  }
  if (used.size() != vertices.size())
    throw Error(ErrorKind::InvalidLabel, "vertex list contains labels not used by any tetrahedron");

  bool closed = !tets.empty();
  for (const auto& [face, incident] : faces) {
    if (incident.size() > 2)
      throw Error(ErrorKind::NonManifoldTriangle, "triangle " + face[0] + face[1] + face[2] +
                                                      " lies in " +
                                                      std::to_string(incident.size()) +
                                                      " tetrahedra");
    if (incident.size() == 2 && incident[0].second == incident[1].second)
      throw Error(ErrorKind::InconsistentOrientation,
                  "tetrahedra " + std::to_string(incident[0].first) + " and " +
                      std::to_string(incident[1].first) + " induce the same orientation on " +
                      face[0] + face[1] + face[2]);
    if (incident.size() != 2) closed = false;
  }

  tri.vertices_ = std::move(vertices);
  tri.tets_ = std::move(tets);
  tri.edges_.assign(edges.begin(), edges.end());
  for (std::size_t i = 0; i < tri.edges_.size(); ++i) tri.edge_index_.emplace(tri.edges_[i], i);
  for (auto& [face, incident] : faces) {
    tri.triangles_.push_back(face);
    auto& list = tri.triangle_tets_[face];
    for (const auto& [ti, sign] : incident) list.push_back(ti);
  }
  tri.closed_ = closed;
  return tri;
}

std::optional<std::size_t> Triangulation::find_tet(const Tet& t) const {
  auto it = tet_index_.find(vertex_set(t));
  if (it == tet_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Triangulation::vertex_index(const Label& v) const {
  auto it = vertex_index_.find(v);
  if (it == vertex_index_.end()) throw Error(ErrorKind::InvalidLabel, "no vertex '" + v + "'");
  return it->second;
}

std::size_t Triangulation::edge_index(const Edge& e) const {
  auto it = edge_index_.find(make_edge(e[0], e[1]));
  if (it == edge_index_.end()) throw Error(ErrorKind::EdgeNotFound, "no edge " + edge_key(e));
  return it->second;
}

const std::vector<std::size_t>& Triangulation::triangle_tets(const Triangle& f) const {
  static const std::vector<std::size_t> empty;
  auto it = triangle_tets_.find(f);
  return it == triangle_tets_.end() ? empty : it->second;
}

std::vector<std::size_t> Triangulation::tets_containing(const Label& v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tets_.size(); ++i)
    if (contains(tets_[i], v)) out.push_back(i);
  return out;
}

std::vector<std::size_t> Triangulation::tets_containing(const Edge& e) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tets_.size(); ++i)
    if (contains(tets_[i], e)) out.push_back(i);
  return out;
}

FVector f_vector(const Triangulation& t) {
  return {t.vertices().size(), t.edges().size(), t.triangles().size(), t.tets().size()};
}

bool is_closed(const Triangulation& t) { return t.closed(); }

std::vector<std::size_t> edge_star(const Triangulation& t, const Edge& edge) {
  const Edge e = make_edge(edge[0], edge[1]);
  if (!t.has_edge(e)) throw Error(ErrorKind::EdgeNotFound, "no edge " + edge_key(e));
  const auto star = t.tets_containing(e);

  // Each star tetrahedron has two triangles through e; neighbours share one.
  auto others = [&](std::size_t ti) {
    std::array<Label, 2> rest;
    std::size_t k = 0;
    for (const Label& v : t.tets()[ti])
      if (v != e[0] && v != e[1]) rest[k++] = v;
    return rest;
  };
  auto neighbour = [&](std::size_t ti, const Label& x) -> std::optional<std::size_t> {
    for (std::size_t other : t.triangle_tets(make_triangle(e[0], e[1], x)))
      if (other != ti) return other;
    return std::nullopt;
  };

  // Start at a path endpoint if there is one, else at the lowest index.
  std::size_t start = star.front();
  std::optional<Label> entry;
  for (std::size_t ti : star) {
    for (const Label& x : others(ti)) {
      if (!neighbour(ti, x)) {
        start = ti;
        entry = x;
        break;
      }
    }
    if (entry) break;
  }

  std::vector<std::size_t> order{start};
  std::set<std::size_t> visited{start};
  std::size_t current = start;
  Label came_through = entry ? *entry : others(start)[0];
  while (true) {
    const auto rest = others(current);
    const Label& exit = rest[0] == came_through ? rest[1] : rest[0];
    auto next = neighbour(current, exit);
    if (!next || visited.count(*next)) {
      const bool cycle = next && *next == start;
      if (order.size() != star.size() || (t.closed() && !cycle))
        throw Error(ErrorKind::StarNotCyclic, "star of " + edge_key(e) + " is not a single cycle");
      break;
    }
    order.push_back(*next);
    visited.insert(*next);
    came_through = exit;
    current = *next;
  }
  return order;
}

std::size_t edge_valence(const Triangulation& t, const Edge& e) {
  return t.tets_containing(make_edge(e[0], e[1])).size();
}

Triangulation seed_boundary_4simplex() {
  // Boundary of [A,B,C,D,E]; odd terms written with their first two
  // vertices swapped so every tuple is positively oriented.
  return Triangulation::build({{"A", "B", "C", "D", "E"}}, {
                                                              Tet{"A", "B", "C", "D"},
                                                              Tet{"B", "A", "C", "E"},
                                                              Tet{"A", "B", "D", "E"},
                                                              Tet{"C", "A", "D", "E"},
                                                              Tet{"B", "C", "D", "E"},
                                                          });
}

Triangulation seed_by_name(const std::string& name) {
  if (name == "boundary-4-simplex") return seed_boundary_4simplex();
  throw Error(ErrorKind::UnknownSeed, "no seed triangulation named '" + name + "'");
}

namespace {

struct Profile {
  std::vector<std::vector<int>> tets;            // sorted vertex indices
  std::set<std::array<int, 4>> tet_set;
  std::vector<std::set<int>> neighbours;
  std::vector<std::vector<std::size_t>> signature;  // degree, then sorted edge valences

  explicit Profile(const Triangulation& t) {
    const std::size_t n = t.vertices().size();
    neighbours.resize(n);
    signature.resize(n);
    std::vector<std::size_t> degree(n, 0);
    for (const Tet& tet : t.tets()) {
      std::array<int, 4> idx;
      for (int k = 0; k < 4; ++k) idx[k] = static_cast<int>(t.vertex_index(tet[k]));
      std::sort(idx.begin(), idx.end());
      tet_set.insert(idx);
      tets.emplace_back(idx.begin(), idx.end());
      for (int a : idx) {
        ++degree[a];
        for (int b : idx)
          if (a != b) neighbours[a].insert(b);
      }
    }
    std::vector<std::vector<std::size_t>> valences(n);
    for (const Edge& e : t.edges()) {
      const std::size_t val = edge_valence(t, e);
      valences[t.vertex_index(e[0])].push_back(val);
      valences[t.vertex_index(e[1])].push_back(val);
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(valences[v].begin(), valences[v].end());
      signature[v].push_back(degree[v]);
      signature[v].insert(signature[v].end(), valences[v].begin(), valences[v].end());
    }
  }
};

}  // namespace

std::optional<VertexMap> isomorphic(const Triangulation& a, const Triangulation& b) {
  if (f_vector(a) != f_vector(b)) return std::nullopt;
  const Profile pa(a), pb(b);
  const std::size_t n = a.vertices().size();
  if (n == 0) return VertexMap{};

  {
    auto sa = pa.signature, sb = pb.signature;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }

  // Visit vertices of `a` breadth-first so each new vertex touches mapped ones.
  std::vector<int> order;
  std::vector<bool> queued(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (queued[root]) continue;
    std::vector<int> queue{static_cast<int>(root)};
    queued[root] = true;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      order.push_back(queue[q]);
      for (int w : pa.neighbours[queue[q]])
        if (!queued[w]) {
          queued[w] = true;
          queue.push_back(w);
        }
    }
  }

  std::vector<std::vector<std::size_t>> tets_of(n);
  for (std::size_t ti = 0; ti < pa.tets.size(); ++ti)
    for (int v : pa.tets[ti]) tets_of[v].push_back(ti);

  std::vector<int> image(n, -1);
  std::vector<bool> taken(n, false);

  auto consistent = [&](int v) {
    const int w = image[v];
    for (int u : pa.neighbours[v])
      if (image[u] >= 0 && !pb.neighbours[w].count(image[u])) return false;
    for (std::size_t ti : tets_of[v]) {
      std::array<int, 4> mapped;
      bool complete = true;
      for (int k = 0; k < 4; ++k) {
        mapped[k] = image[pa.tets[ti][k]];
        if (mapped[k] < 0) {
          complete = false;
          break;
        }
      }
      if (!complete) continue;
      std::sort(mapped.begin(), mapped.end());
      if (!pb.tet_set.count(mapped)) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const int v = order[depth];
    for (std::size_t w = 0; w < n; ++w) {
      if (taken[w] || pa.signature[v] != pb.signature[w]) continue;
      image[v] = static_cast<int>(w);
      taken[w] = true;
      if (consistent(v) && search(depth + 1)) return true;
      taken[w] = false;
      image[v] = -1;
    }
    return false;
  };

  if (!search(0)) return std::nullopt;
  VertexMap map;
  for (std::size_t v = 0; v < n; ++v) map[a.vertices()[v]] = b.vertices()[image[v]];
  return map;
}

}  // namespace pachner
