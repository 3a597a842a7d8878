#include "pachner/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pachner::io {

namespace {

template <typename F>
auto parsing(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string(what) + ": " + e.what());
  }
}

json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double real_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(real(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw Error(ErrorKind::ShapeMismatch, "matrix has the wrong number of rows");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorKind::ShapeMismatch, "matrix row " + std::to_string(r) + " has the wrong length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = real_from(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Tet tet_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw Error(ErrorKind::ParseError, "a tetrahedron needs exactly 4 labels");
  return {j[0].get<Label>(), j[1].get<Label>(), j[2].get<Label>(), j[3].get<Label>()};
}

json tets_to_json(const std::vector<Tet>& tets) {
  json out = json::array();
  for (const Tet& t : tets) out.push_back(json(t));
  return out;
}

std::vector<Tet> tets_from_json(const json& j) {
  std::vector<Tet> out;
  for (const json& t : j) out.push_back(tet_from_json(t));
  return out;
}

Edge edge_from_key(const std::string& key) {
  const auto dash = key.find('-');
  if (dash == std::string::npos || key.find('-', dash + 1) != std::string::npos)
    throw Error(ErrorKind::ParseError, "edge key '" + key + "' is not of the form A-B");
  return make_edge(key.substr(0, dash), key.substr(dash + 1));
}

MoveKind kind_from(const std::string& s) {
  if (s == "2-3") return MoveKind::M23;
  if (s == "3-2") return MoveKind::M32;
  if (s == "1-4") return MoveKind::M14;
  if (s == "4-1") return MoveKind::M41;
  throw Error(ErrorKind::ParseError, "unknown move '" + s + "'");
}

}  // namespace

json to_json(const Triangulation& t) {
  return json{{"vertices", t.vertices()}, {"tets", tets_to_json(t.tets())}};
}

Triangulation triangulation_from_json(const json& j) {
  return parsing("triangulation", [&] {
    auto tets = tets_from_json(j.at("tets"));
    if (j.contains("vertices"))
      return Triangulation::build(j.at("vertices").get<std::vector<Label>>(), std::move(tets));
    return Triangulation::build(std::move(tets));
  });
}

json to_json(const Decoration& d) {
  json coords = json::object();
  for (const auto& [v, p] : d.coords) coords[v] = {p.x(), p.y(), p.z()};
  return json{{"coords", coords}};
}

Decoration decoration_from_json(const json& j) {
  return parsing("decoration", [&] {
    Decoration d;
    for (const auto& [v, p] : j.at("coords").items()) {
      if (!p.is_array() || p.size() != 3)
        throw Error(ErrorKind::ParseError, "coordinates of '" + v + "' need 3 components");
      d.coords.emplace(v, Point(p[0].get<double>(), p[1].get<double>(), p[2].get<double>()));
    }
    return d;
  });
}

json to_json(const LengthMap& l) {
  json out = json::object();
  for (const auto& [e, len] : l) out[edge_key(e)] = len;
  return out;
}

LengthMap lengths_from_json(const json& j) {
  return parsing("lengths", [&] {
    LengthMap l;
    for (const auto& [key, len] : j.items()) l.emplace(edge_from_key(key), len.get<double>());
    return l;
  });
}

json to_json(const MoveCommand& c) {
  return std::visit(
      [](const auto& m) -> json {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, cmd::Move14>)
          return {{"move", "1-4"}, {"tet", m.tet}, {"label", m.label}};
        else if constexpr (std::is_same_v<M, cmd::Move23>)
          return {{"move", "2-3"}, {"site", m.site}};
        else if constexpr (std::is_same_v<M, cmd::Move32>)
          return {{"move", "3-2"}, {"edge", json::array({m.edge[0], m.edge[1]})}};
        else
          return {{"move", "4-1"}, {"vertex", m.vertex}};
      },
      c);
}

json to_json(const MoveScript& s) {
  json out = json::array();
  for (const auto& c : s) out.push_back(to_json(c));
  return out;
}

MoveScript script_from_json(const json& j) {
  return parsing("move script", [&] {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "a move script is a JSON array");
    MoveScript s;
    for (const json& c : j) {
      switch (kind_from(c.at("move").get<std::string>())) {
        case MoveKind::M14:
          s.push_back(cmd::Move14{c.at("tet").get<std::size_t>(), c.at("label").get<Label>()});
          break;
        case MoveKind::M23:
          s.push_back(cmd::Move23{c.at("site").get<std::size_t>()});
          break;
        case MoveKind::M32: {
          const auto e = c.at("edge").get<std::vector<Label>>();
          if (e.size() != 2) throw Error(ErrorKind::ParseError, "a 3-2 move needs a two-label edge");
          s.push_back(cmd::Move32{Edge{e[0], e[1]}});
          break;
        }
        case MoveKind::M41:
          s.push_back(cmd::Move41{c.at("vertex").get<Label>()});
          break;
      }
    }
    return s;
  });
}

json to_json(const MoveLog& log) {
  json out = json::array();
  for (const auto& r : log)
    out.push_back({{"move", std::string(to_string(r.kind))},
                   {"consumed", tets_to_json(r.consumed)},
                   {"produced", tets_to_json(r.produced)},
                   {"added", r.added_vertices},
                   {"removed", r.removed_vertices}});
  return out;
}

MoveLog log_from_json(const json& j) {
  return parsing("move log", [&] {
    MoveLog log;
    for (const json& r : j)
      log.push_back({kind_from(r.at("move").get<std::string>()), tets_from_json(r.at("consumed")),
                     tets_from_json(r.at("produced")), r.at("added").get<std::vector<Label>>(),
                     r.at("removed").get<std::vector<Label>>()});
    return log;
  });
}

json to_json(const JacobianA& a) {
  json edges = json::array();
  for (const Edge& e : a.edges) edges.push_back(edge_key(e));
  return json{{"edges", edges},
              {"matrix", matrix_to_json(a.matrix)},
              {"fd_step", a.fd_step},
              {"method", a.method},
              {"symmetry_defect", real(a.symmetry_defect())}};
}

JacobianA jacobian_from_json(const json& j) {
  return parsing("jacobian", [&] {
    JacobianA a;
    for (const json& k : j.at("edges")) a.edges.push_back(edge_from_key(k.get<std::string>()));
    const auto n = static_cast<Eigen::Index>(a.edges.size());
    a.matrix = matrix_from_json(j.at("matrix"), n, n);
    a.fd_step = j.at("fd_step").get<double>();
    if (j.contains("method")) a.method = j.at("method").get<std::string>();
    return a;
  });
}

std::string to_csv(const JacobianA& a) {
  std::ostringstream out;
  out << "edge";
  for (const Edge& e : a.edges) out << ',' << edge_key(e);
  out << '\n';
  char buf[40];
  for (Eigen::Index r = 0; r < a.matrix.rows(); ++r) {
    out << edge_key(a.edges[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < a.matrix.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", a.matrix(r, c));
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

JacobianA jacobian_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty CSV");
  const auto header = split(line);
  JacobianA a;
  for (std::size_t k = 1; k < header.size(); ++k) a.edges.push_back(edge_from_key(header[k]));
  const auto n = static_cast<Eigen::Index>(a.edges.size());
  a.matrix = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "CSV has too few rows");
    const auto cells = split(line);
    if (static_cast<Eigen::Index>(cells.size()) != n + 1)
      throw Error(ErrorKind::ParseError, "CSV row " + std::to_string(r) + " has the wrong length");
    for (Eigen::Index c = 0; c < n; ++c)
      a.matrix(r, c) = std::strtod(cells[static_cast<std::size_t>(c) + 1].c_str(), nullptr);
  }
  return a;
}

json to_json(const BasedComplex& c) {
  json boundaries = json::array();
  for (const auto& d : c.boundaries()) boundaries.push_back(matrix_to_json(d));
  return json{{"dims", c.dims()}, {"boundaries", boundaries}, {"chain_tol", c.chain_tol()}};
}

BasedComplex complex_from_json(const json& j) {
  return parsing("complex", [&] {
    const auto dims = j.at("dims").get<std::vector<Eigen::Index>>();
    const json& bj = j.at("boundaries");
    if (!bj.is_array() || bj.size() + 1 != dims.size())
      throw Error(ErrorKind::ShapeMismatch, "need one boundary matrix between consecutive spaces");
    std::vector<Eigen::MatrixXd> boundaries;
    for (std::size_t k = 0; k < bj.size(); ++k) {
      // an empty JSON matrix cannot carry its column count; trust dims there
      boundaries.push_back(matrix_from_json(bj[k], dims[k + 1], dims[k]));
    }
    const double tol = j.contains("chain_tol") ? j.at("chain_tol").get<double>() : 1e-10;
    return BasedComplex::from_matrices(dims, std::move(boundaries), tol);
  });
}

json to_json(const TorsionResult& r) {
  return json{{"tau", real(r.tau)},
              {"abs_tau", real(r.abs_tau)},
              {"choices", r.choices},
              {"ranks", r.ranks},
              {"conditioning",
               {{"min_abs_det", real(r.min_abs_det)}, {"min_singular_value", real(r.min_singular_value)}}}};
}

json to_json(const AcyclicityReport& r) {
  json degrees = json::array();
  for (const auto& d : r.degrees)
    degrees.push_back({{"degree", d.degree},
                       {"dim", d.dim},
                       {"rank_in", d.rank_in},
                       {"rank_out", d.rank_out},
                       {"exact", d.exact()}});
  return json{{"acyclic", r.acyclic}, {"ranks", r.ranks}, {"degrees", degrees}};
}

json to_json(const LocalFormulaReport& r) {
  return json{{"volumes",
               {{"ABCD", r.v_abcd}, {"EABC", r.v_eabc}, {"ABED", r.v_abed}, {"BCED", r.v_bced},
                {"CAED", r.v_caed}}},
              {"de_length", r.de_length},
              {"a", r.a},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"residual", r.residual}};
}

json to_json(const ExperimentReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells)
    cells.push_back({{"script", c.script_index},
                     {"seed_index", c.seed_index},
                     {"seed", c.seed},
                     {"redraws", c.redraws},
                     {"f_vector", {c.f.n0, c.f.n1, c.f.n2, c.f.n3}},
                     {"acyclic", c.acyclic},
                     {"ranks", c.ranks},
                     {"log_abs_tau", real(c.log_abs_tau)},
                     {"log_volume_product", real(c.log_volume_product)},
                     {"log_length_product", real(c.log_length_product)}});
  json rows = json::array();
  for (const auto& row : r.rows) {
    json mean = json::array(), seeds = json::array(), scripts = json::array();
    for (double x : row.mean) mean.push_back(real(x));
    for (double x : row.spread_over_seeds) seeds.push_back(real(x));
    for (double x : row.spread_over_scripts) scripts.push_back(real(x));
    rows.push_back({{"p", row.p},
                    {"q", row.q},
                    {"mean", mean},
                    {"spread_over_seeds", seeds},
                    {"spread_over_scripts", scripts},
                    {"overall_spread", real(row.overall_spread)},
                    {"stable", row.stable}});
  }
  return json{{"experimental", true},
              {"scripts", r.script_names},
              {"seeds", r.seeds},
              {"cells", cells},
              {"candidates", rows}};
}

json to_json(const VerifyReport& r) {
  json trials = json::array();
  for (const auto& t : r.trials) {
    json j{{"index", t.index}, {"seed", t.seed}, {"residual", real(t.residual)}, {"passed", t.passed(r.tol)}};
    if (!t.error.empty()) j["error"] = t.error;
    trials.push_back(std::move(j));
  }
  return json{{"kind", std::string(to_string(r.kind))},
              {"tol", r.tol},
              {"max_residual", real(r.max_residual())},
              {"failures", r.failures()},
              {"passed", r.passed()},
              {"trials", trials}};
}

json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << text;
}

}  // namespace pachner::io
