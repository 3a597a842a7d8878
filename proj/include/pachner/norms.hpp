#pragma once

#include <Eigen/Core>

namespace pachner {

/// Maximum absolute row sum.
template <typename Derived>
double inf_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

/// ||A - A^T||_inf / ||A||_inf; zero for the zero matrix.
template <typename Derived>
double symmetry_defect(const Eigen::MatrixBase<Derived>& a) {
  const double n = inf_norm(a);
  if (n == 0.0) return 0.0;
  return inf_norm(a - a.transpose()) / n;
}

}  // namespace pachner
