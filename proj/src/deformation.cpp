#include "pachner/deformation.hpp"

#include <Eigen/QR>

#include "pachner/random.hpp"

namespace pachner {

namespace {

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

double relative_composite(const Eigen::MatrixXd& second, const Eigen::MatrixXd& first) {
  const double denom = inf_norm(second) * inf_norm(first);
  return denom > 0.0 ? inf_norm(second * first) / denom : 0.0;
}

}  // namespace

Eigen::MatrixXd motion_complement(const Triangulation& t, const Decoration& dec, std::uint64_t seed) {
  const Eigen::MatrixXd motions = thin_q(rigid_motion_generators(t, dec));
  const Eigen::Index n = motions.rows();
  Rng rng(seed);
  Eigen::MatrixXd g(n, n - motions.cols());
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = gaussian(rng);
  // project twice: one pass leaves O(eps) motion components behind
  for (int pass = 0; pass < 2; ++pass) g -= motions * (motions.transpose() * g);
  return thin_q(g);
}

DeformationComplex build_deformation_complex(const Triangulation& t, const Decoration& dec,
                                             const DeformationOptions& opts) {
  DeformationComplex out;
  out.jacobian = assemble_jacobian(t, dec, opts.fd);
  out.motion_complement = motion_complement(t, dec, opts.basis_seed);
  out.length_map = length_differential(t, dec) * out.motion_complement;

  const Eigen::MatrixXd& a = out.jacobian.matrix;
  const Eigen::MatrixXd lt = out.length_map.transpose();
  out.composite_al = relative_composite(a, out.length_map);
  out.composite_lta = relative_composite(lt, a);
  if (out.composite_al > opts.chain_tol)
    throw Error(ErrorKind::ChainConditionFailed,
                "A L has relative norm " + std::to_string(out.composite_al));
  if (out.composite_lta > opts.chain_tol)
    throw Error(ErrorKind::ChainConditionFailed,
                "L^T A has relative norm " + std::to_string(out.composite_lta));

  const Eigen::Index motion_free = out.length_map.cols();
  const Eigen::Index edges = a.rows();
  out.complex = BasedComplex::from_matrices({motion_free, edges, edges, motion_free},
                                            {out.length_map, a, lt}, opts.chain_tol);
  return out;
}

}  // namespace pachner
