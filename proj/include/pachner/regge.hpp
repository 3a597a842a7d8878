#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pachner/geometry.hpp"
#include "pachner/norms.hpp"

namespace pachner {

/// Central differences D(s) at s = h, h/2, h/4 (h relative to the length
/// being varied). Richardson pairs give R(h) = (4 D(h/2) - D(h)) / 3 and
/// R(h/2); the reported value is R(h/2) and |R(h) - R(h/2)| bounds its error.
/// When that bound misses `tol`, h is divided by 10, at most `refinements` times.
struct FdOptions {
  double step = 1e-4;
  /// Allowed |R(h) - R(h/2)| relative to max(1, |value|).
  double tol = 1e-6;
  int refinements = 2;
};

struct DerivativeReport {
  double value = 0.0;        // R(h/2)
  double central = 0.0;      // D(h/4)
  double step = 0.0;         // absolute h actually used
  double discrepancy = 0.0;  // |R(h) - R(h/2)|
};

/// d theta_e / d l_f for one tetrahedron. Throws NotRealizable or StepUnstable.
DerivativeReport dtheta_dl(const TetLengths<double>& l, int e, int f, const FdOptions& fd = {});

/// All 36 entries d theta_i / d l_j (row i, column j) of one tetrahedron.
struct TetDerivatives {
  Eigen::Matrix<double, 6, 6> d;
  double max_discrepancy = 0.0;
  double min_step = std::numeric_limits<double>::infinity();  // finest absolute h used
};
TetDerivatives dihedral_jacobian(const TetLengths<double>& l, const FdOptions& fd = {});

struct SchlafliResidual {
  double absolute = 0.0;  // max_f |sum_e l_e d theta_e / d l_f|
  double relative = 0.0;  // same, each f scaled by sum_e l_e |d theta_e / d l_f|
};
SchlafliResidual schlafli_residual(const TetLengths<double>& l, const FdOptions& fd = {});

/// -sum over tetrahedra t around e of eps_t d theta^t_e / d l_f.
double deficit_derivative(const Triangulation& t, const Decoration& dec, const Edge& e,
                          const Edge& f, const FdOptions& fd = {});

/// Edge-indexed matrix of deficit-angle derivatives, a(e, f) = d delta_e / d l_f.
struct JacobianA {
  std::vector<Edge> edges;
  Eigen::MatrixXd matrix;
  double fd_step = 0.0;
  std::string method = "central-richardson";

  double symmetry_defect() const { return pachner::symmetry_defect(matrix); }
};

/// Requires a closed triangulation.
JacobianA assemble_jacobian(const Triangulation& t, const Decoration& dec, const FdOptions& fd = {});

/// Differential of coordinates -> edge lengths: rows edges, columns
/// (x, y, z) of each vertex in vertex order.
Eigen::MatrixXd length_differential(const Triangulation& t, const Decoration& dec);

/// Six infinitesimal rigid motions (translations, then rotations about the
/// centroid) as vertex-velocity columns.
Eigen::MatrixXd rigid_motion_generators(const Triangulation& t, const Decoration& dec);

/// max over unit vertex displacements v of |A L v|_inf / (|A|_inf |L v|_2 + floor).
double motion_kernel_check(const JacobianA& a, const Triangulation& t, const Decoration& dec);

struct Bipyramid {
  Point a, b, c, d, e;
};

/// The three tetrahedra ABED, BCED, CAED around the edge DE.
Triangulation bipyramid_triangulation();
Decoration bipyramid_decoration(const Bipyramid& p);

struct LocalFormulaReport {
  double v_abcd = 0, v_eabc = 0, v_abed = 0, v_bced = 0, v_caed = 0;
  double de_length = 0;
  double a = 0;  // d delta_DE / d l_DE, the other nine lengths fixed
  double lhs = 0, rhs = 0;
  double residual = 0;
};

/// Compares V_ABCD V_EABC with -6 V_ABED V_BCED V_CAED a / |DE|^2.
/// Throws DegenerateConfiguration or NotBipyramid.
LocalFormulaReport local_formula_check(const Bipyramid& p, const FdOptions& fd = {});

/// Random bipyramid with D above and E below ABC and DE meeting ABC at
/// barycentric weights >= 0.05. Throws SamplingFailed.
Bipyramid sample_bipyramid(std::uint64_t seed, double scale = 1.0);

}  // namespace pachner
