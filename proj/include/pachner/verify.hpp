#pragma once

// Seeded verification suites shared by the command-line front end and the
// acceptance runner. Trial i draws its randomness from derive_seed(seed, i).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pachner/regge.hpp"

namespace pachner {

enum class VerifyKind { LocalFormula, Schlafli, Symmetry, Kernel };

std::string_view to_string(VerifyKind kind);
/// Accepts "local-formula", "schlafli", "symmetry", "kernel".
std::optional<VerifyKind> verify_kind_from(std::string_view name);

/// Default tolerance: 1e-5 for the local formula, 1e-6 for the rest.
double default_tolerance(VerifyKind kind);

struct VerifyConfig {
  std::uint64_t seed = 0;
  int trials = 100;
  std::optional<double> tol;
  FdOptions fd;
  double scale = 1.0;
  /// Genericity floor for the random tetrahedra and decorations, relative to scale^3.
  double vol_floor = 1e-3;
  /// Triangulation for the symmetry and kernel suites; the 4-simplex boundary if unset.
  std::optional<Triangulation> triangulation;
};

struct TrialResult {
  int index = 0;
  std::uint64_t seed = 0;
  double residual = 0.0;
  std::string error;  // non-empty when the trial threw

  bool passed(double tol) const { return error.empty() && residual <= tol; }
};

struct VerifyReport {
  VerifyKind kind = VerifyKind::LocalFormula;
  double tol = 0.0;
  std::vector<TrialResult> trials;

  double max_residual() const;
  int failures() const;
  bool passed() const { return failures() == 0; }
};

VerifyReport run_verify(VerifyKind kind, const VerifyConfig& cfg);

}  // namespace pachner
