#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "pachner/error.hpp"

namespace pachner {

/// Finite chain complex of based real vector spaces
///
///   0 -> C_m -> C_{m-1} -> ... -> C_0 -> 0,
///
/// each C_i identified with R^{dim C_i} and its standard basis.
///
/// The external (file) convention lists the spaces in the order the maps
/// run: dims = (dim C_m, ..., dim C_0) and boundaries[k] : C_{m-k} -> C_{m-k-1},
/// a dims[k+1] x dims[k] matrix. Accessors taking a degree `i` use the
/// usual bottom-up numbering.
class BasedComplex {
 public:
  BasedComplex() = default;

  /// Throws ShapeMismatch or NotAChainComplex (when some composite exceeds
  /// chain_tol * ||d_{i-1}||_inf ||d_i||_inf).
  static BasedComplex from_matrices(std::vector<Eigen::Index> dims,
                                    std::vector<Eigen::MatrixXd> boundaries,
                                    double chain_tol = 1e-10);

  int length() const { return static_cast<int>(dims_.size()) - 1; }
  Eigen::Index dim(int i) const;
  /// d_i : C_i -> C_{i-1}, 1 <= i <= length().
  const Eigen::MatrixXd& d(int i) const;

  const std::vector<Eigen::Index>& dims() const { return dims_; }
  const std::vector<Eigen::MatrixXd>& boundaries() const { return boundaries_; }

  /// Largest ||d_{i-1} d_i||_inf / (||d_{i-1}||_inf ||d_i||_inf).
  double chain_residual() const;
  double chain_tol() const { return chain_tol_; }

  friend bool operator==(const BasedComplex& a, const BasedComplex& b);

 private:
  std::vector<Eigen::Index> dims_;
  std::vector<Eigen::MatrixXd> boundaries_;
  double chain_tol_ = 1e-10;
};

/// Singular values at or below tol * sigma_max count as zero.
Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double tol = 1e-9);

/// r[i] = rank d_i for 1 <= i <= m, with r[0] = r[m+1] = 0.
std::vector<Eigen::Index> ranks(const BasedComplex& c, double tol = 1e-9);

struct DegreeReport {
  int degree = 0;
  Eigen::Index dim = 0;
  Eigen::Index rank_in = 0;   // rank of d_{i+1}
  Eigen::Index rank_out = 0;  // rank of d_i
  bool exact() const { return rank_in + rank_out == dim; }
};

struct AcyclicityReport {
  bool acyclic = false;
  std::vector<Eigen::Index> ranks;
  std::vector<DegreeReport> degrees;  // bottom-up
};

AcyclicityReport is_acyclic(const BasedComplex& c, double tol = 1e-9);

enum class TorsionStrategy { Greedy, SeededRandom };

struct TorsionResult {
  /// Product of det(M_i)^((-1)^(i+1)); the sign depends on `choices`.
  double tau = 0.0;
  double abs_tau = 0.0;
  /// choices[i] = Gamma_i, the basis indices of C_i used as minor columns.
  std::vector<std::vector<Eigen::Index>> choices;
  std::vector<Eigen::Index> ranks;
  double min_abs_det = 0.0;
  double min_singular_value = 0.0;
};

/// Torsion from square minors M_i = d_i[rows outside Gamma_{i-1}, cols Gamma_i].
/// Throws NotAcyclic or SingularMinor.
TorsionResult torsion(const BasedComplex& c, TorsionStrategy strategy = TorsionStrategy::Greedy,
                      std::uint64_t seed = 0, double rank_tol = 1e-9);

}  // namespace pachner
