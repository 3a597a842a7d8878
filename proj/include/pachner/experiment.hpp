#pragma once

// Exploratory scan over normalizations of the deformation-complex torsion.
// Nothing here asserts move invariance; the report records what was measured.

#include <cstdint>
#include <string>
#include <vector>

#include "pachner/deformation.hpp"
#include "pachner/moves.hpp"

namespace pachner {

struct ExperimentOptions {
  DecorateOptions decorate{1.0, 1e-3, 1000};
  /// Base decorations tried per seed before giving up.
  int max_redraws = 100;
  DeformationOptions deformation;
  double rank_tol = 1e-6;
  /// Candidates whose overall relative spread is below this are flagged stable.
  double stable_threshold = 1e-4;
};

struct ExperimentCell {
  std::size_t script_index = 0;
  std::size_t seed_index = 0;
  std::uint64_t seed = 0;  // the base seed after redraws
  int redraws = 0;
  FVector f;
  bool acyclic = false;
  std::vector<Eigen::Index> ranks;
  double log_abs_tau = 0.0;         // NaN when not acyclic
  double log_volume_product = 0.0;  // sum_t log(6 |V_t|)
  double log_length_product = 0.0;  // sum_e log(l_e^2)
};

struct CandidateRow {
  int p = 0;  // exponent of prod 6|V_t|
  int q = 0;  // exponent of prod l_e^2
  /// Geometric mean over seeds, one entry per script.
  std::vector<double> mean;
  /// (max - min) / max over seeds, one entry per script.
  std::vector<double> spread_over_seeds;
  /// (max - min) / max over scripts, one entry per seed.
  std::vector<double> spread_over_scripts;
  double overall_spread = 0.0;
  bool stable = false;
};

struct ExperimentReport {
  std::vector<std::string> script_names;
  std::vector<std::uint64_t> seeds;
  std::vector<ExperimentCell> cells;  // script-major
  std::vector<CandidateRow> rows;     // (p, q) in {-1, 0, 1}^2, p-major

  /// Aligned-column text rendering of `rows`.
  std::string table() const;
};

/// Decorates `t` once per seed, carries the decoration through every script
/// (1-4 moves place the new vertex inside its tetrahedron), and tabulates
/// |tau| * prod(6|V|)^p * prod(l^2)^q for each cell. A seed whose decoration
/// degenerates in some cell is replaced by derive_seed(seed, 2^20 + attempt).
ExperimentReport invariance_experiment(const Triangulation& t, const std::vector<std::uint64_t>& seeds,
                                       const std::vector<MoveScript>& scripts,
                                       const std::vector<std::string>& script_names = {},
                                       const ExperimentOptions& opts = {});

/// The decoration the experiment uses for one (seed, script) cell.
std::pair<Triangulation, Decoration> decorate_along(const Triangulation& t, const MoveScript& script,
                                                    std::uint64_t seed, const DecorateOptions& opts);

}  // namespace pachner
