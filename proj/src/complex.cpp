#include "pachner/complex.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pachner/random.hpp"
#include "pachner/norms.hpp"

namespace pachner {

BasedComplex BasedComplex::from_matrices(std::vector<Eigen::Index> dims,
                                         std::vector<Eigen::MatrixXd> boundaries,
                                         double chain_tol) {
  if (dims.empty()) throw Error(ErrorKind::ShapeMismatch, "a complex needs at least one space");
  if (boundaries.size() + 1 != dims.size())
    throw Error(ErrorKind::ShapeMismatch, std::to_string(dims.size()) + " spaces need " +
                                              std::to_string(dims.size() - 1) + " boundary maps, got " +
                                              std::to_string(boundaries.size()));
  for (std::size_t k = 0; k < boundaries.size(); ++k) {
    if (dims[k] < 0 || dims[k + 1] < 0)
      throw Error(ErrorKind::ShapeMismatch, "negative dimension");
    if (boundaries[k].rows() != dims[k + 1] || boundaries[k].cols() != dims[k])
      throw Error(ErrorKind::ShapeMismatch,
                  "boundary " + std::to_string(k) + " is " + std::to_string(boundaries[k].rows()) +
                      "x" + std::to_string(boundaries[k].cols()) + ", expected " +
                      std::to_string(dims[k + 1]) + "x" + std::to_string(dims[k]));
  }

  BasedComplex c;
  c.dims_ = std::move(dims);
  c.boundaries_ = std::move(boundaries);
  c.chain_tol_ = chain_tol;
  for (std::size_t k = 0; k + 1 < c.boundaries_.size(); ++k) {
    const auto& first = c.boundaries_[k];
    const auto& second = c.boundaries_[k + 1];
    const double norm = inf_norm(second * first);
    if (norm > chain_tol * inf_norm(second) * inf_norm(first)) {
      const int i = c.length() - static_cast<int>(k);
      throw Error(ErrorKind::NotAChainComplex,
                  "d_" + std::to_string(i - 1) + " d_" + std::to_string(i) + " has norm " +
                      std::to_string(norm));
    }
  }
  return c;
}

Eigen::Index BasedComplex::dim(int i) const {
  return dims_.at(static_cast<std::size_t>(length() - i));
}

const Eigen::MatrixXd& BasedComplex::d(int i) const {
  return boundaries_.at(static_cast<std::size_t>(length() - i));
}

double BasedComplex::chain_residual() const {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < boundaries_.size(); ++k) {
    const double denom = inf_norm(boundaries_[k + 1]) * inf_norm(boundaries_[k]);
    if (denom > 0.0) worst = std::max(worst, inf_norm(boundaries_[k + 1] * boundaries_[k]) / denom);
  }
  return worst;
}

bool operator==(const BasedComplex& a, const BasedComplex& b) {
  if (a.dims_ != b.dims_ || a.boundaries_.size() != b.boundaries_.size()) return false;
  for (std::size_t k = 0; k < a.boundaries_.size(); ++k)
    if (a.boundaries_[k] != b.boundaries_[k]) return false;
  return true;
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return (s.array() > tol * s(0)).count();
}

std::vector<Eigen::Index> ranks(const BasedComplex& c, double tol) {
  std::vector<Eigen::Index> r(static_cast<std::size_t>(c.length()) + 2, 0);
  for (int i = 1; i <= c.length(); ++i) r[static_cast<std::size_t>(i)] = numerical_rank(c.d(i), tol);
  return r;
}

AcyclicityReport is_acyclic(const BasedComplex& c, double tol) {
  AcyclicityReport rep;
  rep.ranks = ranks(c, tol);
  rep.acyclic = true;
  for (int i = 0; i <= c.length(); ++i) {
    DegreeReport d{i, c.dim(i), rep.ranks[static_cast<std::size_t>(i) + 1],
                   rep.ranks[static_cast<std::size_t>(i)]};
    rep.acyclic = rep.acyclic && d.exact();
    rep.degrees.push_back(d);
  }
  return rep;
}

namespace {

Eigen::MatrixXd select(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& rows,
                       const std::vector<Eigen::Index>& cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t k = 0; k < cols.size(); ++k)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = m(rows[r], cols[k]);
  return out;
}

double min_singular(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues().minCoeff();
}

double max_singular(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

std::vector<Eigen::Index> greedy_columns(const Eigen::MatrixXd& sub, Eigen::Index count) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < count; ++k) cols.push_back(qr.colsPermutation().indices()(k));
  std::sort(cols.begin(), cols.end());
  return cols;
}

// Columns taken in a seeded random order, each kept only while the selection
// stays well conditioned relative to the whole row block.
std::vector<Eigen::Index> random_columns(const Eigen::MatrixXd& sub, Eigen::Index count, Rng& rng) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(sub.cols()));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t k = order.size(); k > 1; --k)
    std::swap(order[k - 1], order[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(k))]);
  const double scale = max_singular(sub);
  const std::vector<Eigen::Index> all_rows = [&] {
    std::vector<Eigen::Index> r(static_cast<std::size_t>(sub.rows()));
    std::iota(r.begin(), r.end(), 0);
    return r;
  }();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j : order) {
    if (static_cast<Eigen::Index>(cols.size()) == count) break;
    cols.push_back(j);
    const Eigen::MatrixXd trial = select(sub, all_rows, cols);
    const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(trial).singularValues();
    if (s(s.size() - 1) < 1e-6 * scale) cols.pop_back();
  }
  std::sort(cols.begin(), cols.end());
  return cols;
}

}  // namespace

TorsionResult torsion(const BasedComplex& c, TorsionStrategy strategy, std::uint64_t seed,
                      double rank_tol) {
  const AcyclicityReport acyc = is_acyclic(c, rank_tol);
  if (!acyc.acyclic) {
    std::string detail;
    for (const auto& d : acyc.degrees)
      if (!d.exact())
        detail += " C_" + std::to_string(d.degree) + ": dim " + std::to_string(d.dim) + ", ranks " +
                  std::to_string(d.rank_in) + "+" + std::to_string(d.rank_out) + ";";
    throw Error(ErrorKind::NotAcyclic, "complex is not acyclic:" + detail);
  }

  Rng rng(seed);
  TorsionResult res;
  res.ranks = acyc.ranks;
  res.choices.assign(static_cast<std::size_t>(c.length()) + 1, {});
  res.min_abs_det = std::numeric_limits<double>::infinity();
  res.min_singular_value = std::numeric_limits<double>::infinity();
  double tau = 1.0;

  for (int i = 1; i <= c.length(); ++i) {
    const auto& prev = res.choices[static_cast<std::size_t>(i) - 1];
    std::vector<Eigen::Index> rows;
    for (Eigen::Index r = 0; r < c.dim(i - 1); ++r)
      if (!std::binary_search(prev.begin(), prev.end(), r)) rows.push_back(r);
    std::vector<Eigen::Index> all_cols(static_cast<std::size_t>(c.dim(i)));
    std::iota(all_cols.begin(), all_cols.end(), 0);
    const Eigen::MatrixXd sub = select(c.d(i), rows, all_cols);
    const Eigen::Index r_i = res.ranks[static_cast<std::size_t>(i)];

    auto cols = strategy == TorsionStrategy::Greedy ? greedy_columns(sub, r_i)
                                                    : random_columns(sub, r_i, rng);
    if (static_cast<Eigen::Index>(cols.size()) != r_i ||
        static_cast<Eigen::Index>(rows.size()) != r_i)
      throw Error(ErrorKind::SingularMinor, "no nonsingular minor found for d_" + std::to_string(i));

    const Eigen::MatrixXd minor = select(c.d(i), rows, cols);
    const double det = minor.size() == 0 ? 1.0 : minor.determinant();
    const double smin = min_singular(minor);
    if (minor.size() != 0 && !(smin > rank_tol * max_singular(c.d(i))))
      throw Error(ErrorKind::SingularMinor, "minor of d_" + std::to_string(i) + " is singular");
    res.min_abs_det = std::min(res.min_abs_det, std::abs(det));
    res.min_singular_value = std::min(res.min_singular_value, smin);
    tau = (i % 2 == 1) ? tau * det : tau / det;
    res.choices[static_cast<std::size_t>(i)] = std::move(cols);
  }
  if (std::isinf(res.min_abs_det)) res.min_abs_det = 1.0;  // no nonempty minors
  if (std::isinf(res.min_singular_value)) res.min_singular_value = 1.0;
  res.tau = tau;
  res.abs_tau = std::abs(tau);
  return res;
}

}  // namespace pachner
