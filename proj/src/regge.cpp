#include "pachner/regge.hpp"

#include <cmath>
#include <limits>

#include "pachner/random.hpp"

namespace pachner {

namespace {

TetAngles<double> angles_with(TetLengths<double> l, int f, double delta) {
  l(f) += delta;
  return dihedral_angles(l);
}

bool within_tol(double value, double discrepancy, const FdOptions& fd) {
  return discrepancy <= fd.tol * std::max(1.0, std::abs(value));
}

std::string entry_name(int e, int f) {
  return "d theta_" + std::to_string(e) + "/d l_" + std::to_string(f);
}

// Runs `attempt(s)` at s = base, base/10, ... until it reports success.
// A perturbation that leaves the realizable cone is retried at the finer step.
template <typename Attempt>
void refine_step(double base, const FdOptions& fd, const std::string& what, Attempt attempt) {
  double s = base;
  double disc = 0.0;
  for (int level = 0; level <= fd.refinements; ++level, s /= 10.0) {
    try {
      if (attempt(s, disc)) return;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotRealizable || level == fd.refinements) throw;
    }
  }
  throw Error(ErrorKind::StepUnstable,
              what + ": step discrepancy " + std::to_string(disc) + " exceeds tolerance");
}

}  // namespace

TetDerivatives dihedral_jacobian(const TetLengths<double>& l, const FdOptions& fd) {
  TetDerivatives out;
  for (int f = 0; f < 6; ++f) {
    auto central = [&](double step) -> TetAngles<double> {
      return (angles_with(l, f, step) - angles_with(l, f, -step)) / (2.0 * step);
    };
    refine_step(fd.step * l(f), fd, "d theta/d l_" + std::to_string(f), [&](double s, double& worst) {
      const TetAngles<double> d1 = central(s), d2 = central(s / 2), d4 = central(s / 4);
      const TetAngles<double> coarse = (4.0 * d2 - d1) / 3.0;
      const TetAngles<double> fine = (4.0 * d4 - d2) / 3.0;
      worst = 0.0;
      bool ok = true;
      for (int e = 0; e < 6; ++e) {
        const double disc = std::abs(coarse(e) - fine(e));
        worst = std::max(worst, disc);
        ok = ok && within_tol(fine(e), disc, fd);
      }
      if (!ok) return false;
      out.d.col(f) = fine;
      out.max_discrepancy = std::max(out.max_discrepancy, worst);
      out.min_step = std::min(out.min_step, s);
      return true;
    });
  }
  return out;
}

DerivativeReport dtheta_dl(const TetLengths<double>& l, int e, int f, const FdOptions& fd) {
  auto central = [&](double step) {
    TetLengths<double> plus = l, minus = l;
    plus(f) += step;
    minus(f) -= step;
    return (dihedral_angle(plus, e) - dihedral_angle(minus, e)) / (2.0 * step);
  };
  DerivativeReport r;
  refine_step(fd.step * l(f), fd, entry_name(e, f), [&](double s, double& disc) {
    const double d1 = central(s), d2 = central(s / 2), d4 = central(s / 4);
    const double value = (4.0 * d4 - d2) / 3.0;
    disc = std::abs((4.0 * d2 - d1) / 3.0 - value);
    if (!within_tol(value, disc, fd)) return false;
    r = {value, d4, s, disc};
    return true;
  });
  return r;
}

SchlafliResidual schlafli_residual(const TetLengths<double>& l, const FdOptions& fd) {
  const auto jac = dihedral_jacobian(l, fd);
  SchlafliResidual r;
  for (int f = 0; f < 6; ++f) {
    const double sum = l.dot(jac.d.col(f));
    const double scale = l.dot(jac.d.col(f).cwiseAbs());
    r.absolute = std::max(r.absolute, std::abs(sum));
    r.relative = std::max(r.relative, std::abs(sum) / scale);
  }
  return r;
}

double deficit_derivative(const Triangulation& t, const Decoration& dec, const Edge& e,
                          const Edge& f, const FdOptions& fd) {
  const Edge es = make_edge(e[0], e[1]);
  const Edge fs = make_edge(f[0], f[1]);
  t.edge_index(fs);
  if (!is_interior_edge(t, es))
    throw Error(ErrorKind::StarNotCyclic, edge_key(es) + " is not an interior edge");
  double a = 0.0;
  for (std::size_t ti : edge_star(t, es)) {
    const Tet& tet = t.tets()[ti];
    const int jf = local_edge_index(tet, fs);
    if (jf < 0) continue;
    const auto r = dtheta_dl(tet_lengths(dec, tet), local_edge_index(tet, es), jf, fd);
    a -= orientation_sign(dec, tet) * r.value;
  }
  return a;
}

JacobianA assemble_jacobian(const Triangulation& t, const Decoration& dec, const FdOptions& fd) {
  if (!t.closed())
    throw Error(ErrorKind::StarNotCyclic, "the deficit Jacobian needs a closed triangulation");
  JacobianA out;
  out.edges = t.edges();
  out.fd_step = fd.step;
  const auto n = static_cast<Eigen::Index>(out.edges.size());
  out.matrix = Eigen::MatrixXd::Zero(n, n);

  for (const Tet& tet : t.tets()) {
    TetDerivatives local;
    try {
      local = dihedral_jacobian(tet_lengths(dec, tet), fd);
    } catch (const Error& err) {
      throw Error(err.kind(), "tetrahedron " + tet[0] + tet[1] + tet[2] + tet[3] + ": " + err.what());
    }
    const double eps = orientation_sign(dec, tet);
    std::array<Eigen::Index, 6> global;
    for (int k = 0; k < 6; ++k)
      global[k] = static_cast<Eigen::Index>(
          t.edge_index(make_edge(tet[kTetEdges[k][0]], tet[kTetEdges[k][1]])));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) out.matrix(global[i], global[j]) -= eps * local.d(i, j);
  }
  return out;
}

Eigen::MatrixXd length_differential(const Triangulation& t, const Decoration& dec) {
  const auto& edges = t.edges();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(edges.size()),
                                            3 * static_cast<Eigen::Index>(t.vertices().size()));
  for (std::size_t r = 0; r < edges.size(); ++r) {
    const auto u = static_cast<Eigen::Index>(t.vertex_index(edges[r][0]));
    const auto w = static_cast<Eigen::Index>(t.vertex_index(edges[r][1]));
    const Point diff = dec.at(edges[r][0]) - dec.at(edges[r][1]);
    const Point unit = diff / diff.norm();
    const auto row = static_cast<Eigen::Index>(r);
    l.block<1, 3>(row, 3 * u) = unit.transpose();
    l.block<1, 3>(row, 3 * w) = -unit.transpose();
  }
  return l;
}

Eigen::MatrixXd rigid_motion_generators(const Triangulation& t, const Decoration& dec) {
  const auto n = static_cast<Eigen::Index>(t.vertices().size());
  Point centroid = Point::Zero();
  for (const Label& v : t.vertices()) centroid += dec.at(v);
  centroid /= static_cast<double>(n);

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3 * n, 6);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point x = dec.at(t.vertices()[static_cast<std::size_t>(i)]) - centroid;
    for (int c = 0; c < 3; ++c) {
      m(3 * i + c, c) = 1.0;
      const Point omega = Point::Unit(c);
      m.block<3, 1>(3 * i, 3 + c) = omega.cross(x);
    }
  }
  return m;
}

double motion_kernel_check(const JacobianA& a, const Triangulation& t, const Decoration& dec) {
  const Eigen::MatrixXd l = length_differential(t, dec);
  const Eigen::MatrixXd al = a.matrix * l;
  const double norm_a = inf_norm(a.matrix);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < l.cols(); ++k) {
    const double denom = norm_a * l.col(k).norm() + std::numeric_limits<double>::min();
    worst = std::max(worst, al.col(k).cwiseAbs().maxCoeff() / denom);
  }
  return worst;
}

Triangulation bipyramid_triangulation() {
  return Triangulation::build({"A", "B", "C", "D", "E"}, {Tet{"A", "B", "E", "D"},
                                                          Tet{"B", "C", "E", "D"},
                                                          Tet{"C", "A", "E", "D"}});
}

Decoration bipyramid_decoration(const Bipyramid& p) {
  return Decoration{{{"A", p.a}, {"B", p.b}, {"C", p.c}, {"D", p.d}, {"E", p.e}}};
}

LocalFormulaReport local_formula_check(const Bipyramid& p, const FdOptions& fd) {
  LocalFormulaReport r;
  r.v_abcd = signed_volume(p.a, p.b, p.c, p.d);
  r.v_eabc = signed_volume(p.e, p.a, p.b, p.c);
  r.v_abed = signed_volume(p.a, p.b, p.e, p.d);
  r.v_bced = signed_volume(p.b, p.c, p.e, p.d);
  r.v_caed = signed_volume(p.c, p.a, p.e, p.d);

  const std::array<Point, 5> pts{p.a, p.b, p.c, p.d, p.e};
  double diam = 0.0;
  for (const auto& x : pts)
    for (const auto& y : pts) diam = std::max(diam, (x - y).norm());
  const double floor = 1e-10 * diam * diam * diam;
  for (double v : {r.v_abcd, r.v_eabc, r.v_abed, r.v_bced, r.v_caed})
    if (!(std::abs(v) >= floor))
      throw Error(ErrorKind::DegenerateConfiguration, "a tetrahedron of the bipyramid is flat");

  // D and E on opposite sides of ABC; DE meets ABC where the weights of A, B, C
  // are proportional to V_BCED, V_CAED, V_ABED.
  const double total = r.v_abed + r.v_bced + r.v_caed;
  if (r.v_abcd * r.v_eabc <= 0.0 || r.v_bced / total <= 0.0 || r.v_caed / total <= 0.0 ||
      r.v_abed / total <= 0.0)
    throw Error(ErrorKind::NotBipyramid, "segment DE does not cross the interior of ABC");

  const Triangulation star = bipyramid_triangulation();
  const Decoration dec = bipyramid_decoration(p);
  const Edge de = make_edge("D", "E");
  r.de_length = (p.d - p.e).norm();
  r.a = deficit_derivative(star, dec, de, de, fd);
  r.lhs = r.v_abcd * r.v_eabc;
  r.rhs = -6.0 * r.v_abed * r.v_bced * r.v_caed * r.a / (r.de_length * r.de_length);
  r.residual = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), std::abs(r.rhs));
  return r;
}

Bipyramid sample_bipyramid(std::uint64_t seed, double scale) {
  Rng rng(seed);
  auto draw = [&] {
    return Point(uniform(rng, 0.0, scale), uniform(rng, 0.0, scale), uniform(rng, 0.0, scale));
  };
  const double floor = 1e-3 * scale * scale * scale;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Bipyramid p{draw(), draw(), draw(), draw(), draw()};
    const double v_abcd = signed_volume(p.a, p.b, p.c, p.d);
    const double v_abce = signed_volume(p.a, p.b, p.c, p.e);
    if (v_abcd < floor || v_abce > -floor) continue;
    const double v_abed = signed_volume(p.a, p.b, p.e, p.d);
    const double v_bced = signed_volume(p.b, p.c, p.e, p.d);
    const double v_caed = signed_volume(p.c, p.a, p.e, p.d);
    const double total = v_abed + v_bced + v_caed;
    if (std::min({v_abed, v_bced, v_caed}) < 0.05 * total) continue;
    if (std::min({v_abed, v_bced, v_caed}) < floor) continue;
    return p;
  }
  throw Error(ErrorKind::SamplingFailed, "no admissible bipyramid for seed " + std::to_string(seed));
}

}  // namespace pachner
