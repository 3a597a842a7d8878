#pragma once

// Experimental reconstruction of a deformation complex around the deficit
// Jacobian. Its exactness and torsion are measured quantities, not
// guaranteed properties.

#include <cstdint>

#include "pachner/complex.hpp"
#include "pachner/regge.hpp"

namespace pachner {

struct DeformationOptions {
  FdOptions fd;
  /// Seed for the orthonormal complement of the rigid motions.
  std::uint64_t basis_seed = 0;
  /// Relative tolerance for A L and L^T A; they vanish only to FD accuracy.
  double chain_tol = 1e-6;
};

/// 0 -> R^{3V}/motions --L Q--> R^E --A--> R^E --(L Q)^T--> (R^{3V}/motions)^* -> 0
struct DeformationComplex {
  static constexpr bool experimental = true;

  BasedComplex complex;
  JacobianA jacobian;
  Eigen::MatrixXd length_map;         // L Q, E x (3V - 6)
  Eigen::MatrixXd motion_complement;  // Q, 3V x (3V - 6), orthonormal
  double composite_al = 0.0;          // ||A L Q|| / (||A|| ||L Q||)
  double composite_lta = 0.0;         // ||(L Q)^T A|| / (||(L Q)^T|| ||A||)
};

/// Orthonormal basis of the complement of the rigid-motion velocities.
Eigen::MatrixXd motion_complement(const Triangulation& t, const Decoration& dec, std::uint64_t seed);

/// Requires a closed triangulation and a generic decoration. Throws
/// ChainConditionFailed naming the composite that does not vanish.
DeformationComplex build_deformation_complex(const Triangulation& t, const Decoration& dec,
                                             const DeformationOptions& opts = {});

}  // namespace pachner
