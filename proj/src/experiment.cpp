#include "pachner/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "pachner/random.hpp"

namespace pachner {

std::pair<Triangulation, Decoration> decorate_along(const Triangulation& t, const MoveScript& script,
                                                    std::uint64_t seed, const DecorateOptions& opts) {
  Triangulation current = t;
  Decoration dec = decorate_random(t, derive_seed(seed, 0), opts);
  for (std::size_t k = 0; k < script.size(); ++k) {
    MoveRecord rec;
    try {
      auto [next, r] = apply_command(current, script[k]);
      current = std::move(next);
      rec = std::move(r);
    } catch (const Error& e) {
      throw ScriptError(k, e);
    }
    if (rec.kind == MoveKind::M14)
      dec = decorate_extend(dec, rec.added_vertices.front(), rec.consumed.front(),
                            derive_seed(seed, k + 1), opts);
    for (const Label& v : rec.removed_vertices) dec.coords.erase(v);
  }
  if (min_abs_volume(current, dec) < opts.absolute_floor())
    throw Error(ErrorKind::GenericityFailed, "decoration degenerates after the move script");
  return {std::move(current), std::move(dec)};
}

namespace {

double relative_spread(const std::vector<double>& logs) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t n = 0;
  for (double x : logs)
    if (std::isfinite(x)) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      ++n;
    }
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  return 1.0 - std::exp(lo - hi);  // (max - min) / max for positive values
}

constexpr std::uint64_t kRedrawStream = 1u << 20;

bool redrawable(ErrorKind k) {
  return k == ErrorKind::GenericityFailed || k == ErrorKind::StepUnstable ||
         k == ErrorKind::NotRealizable || k == ErrorKind::DegenerateFace ||
         k == ErrorKind::ChainConditionFailed;
}

ExperimentCell measure_cell(const Triangulation& t, const MoveScript& script, std::size_t s,
                            std::size_t k, std::uint64_t seed, const ExperimentOptions& opts) {
  ExperimentCell cell;
  cell.script_index = s;
  cell.seed_index = k;
  cell.seed = seed;
  try {
    const auto [tri, dec] = decorate_along(t, script, seed, opts.decorate);
    cell.f = f_vector(tri);
    const auto def = build_deformation_complex(tri, dec, opts.deformation);
    const auto acyc = is_acyclic(def.complex, opts.rank_tol);
    cell.acyclic = acyc.acyclic;
    cell.ranks = acyc.ranks;
    cell.log_abs_tau =
        cell.acyclic ? std::log(torsion(def.complex, TorsionStrategy::Greedy, 0, opts.rank_tol).abs_tau)
                     : std::numeric_limits<double>::quiet_NaN();
    for (const Tet& tet : tri.tets()) cell.log_volume_product += std::log(6.0 * std::abs(volume_signed(dec, tet)));
    for (const auto& [e, len] : lengths_of(tri, dec)) cell.log_length_product += 2.0 * std::log(len);
  } catch (const ScriptError&) {
    throw;
  } catch (const Error& e) {
    throw Error(e.kind(), "script " + std::to_string(s) + ": " + e.what());
  }
  return cell;
}

double geometric_mean(const std::vector<double>& logs) {
  double sum = 0.0;
  std::size_t n = 0;
  for (double x : logs)
    if (std::isfinite(x)) {
      sum += x;
      ++n;
    }
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : std::exp(sum / static_cast<double>(n));
}

}  // namespace

ExperimentReport invariance_experiment(const Triangulation& t, const std::vector<std::uint64_t>& seeds,
                                       const std::vector<MoveScript>& scripts,
                                       const std::vector<std::string>& script_names,
                                       const ExperimentOptions& opts) {
  ExperimentReport rep;
  rep.seeds = seeds;
  for (std::size_t s = 0; s < scripts.size(); ++s)
    rep.script_names.push_back(s < script_names.size() ? script_names[s]
                                                       : "script" + std::to_string(s));

  const std::size_t ns = scripts.size(), nk = seeds.size();
  rep.cells.resize(ns * nk);
  for (std::size_t k = 0; k < nk; ++k) {
    // Every script starts from the same base decoration of this seed; a seed
    // whose decoration is too degenerate for any cell is redrawn as a whole.
    for (int attempt = 0;; ++attempt) {
      const std::uint64_t seed =
          attempt == 0 ? seeds[k] : derive_seed(seeds[k], kRedrawStream + static_cast<std::uint64_t>(attempt));
      std::vector<ExperimentCell> row;
      try {
        for (std::size_t s = 0; s < ns; ++s) row.push_back(measure_cell(t, scripts[s], s, k, seed, opts));
      } catch (const Error& e) {
        if (!redrawable(e.kind()) || attempt + 1 >= opts.max_redraws)
          throw Error(e.kind(), "seed index " + std::to_string(k) + ": " + e.what());
        continue;
      }
      for (std::size_t s = 0; s < ns; ++s) {
        row[s].redraws = attempt;
        rep.cells[s * nk + k] = std::move(row[s]);
      }
      break;
    }
  }

  auto cell_at = [&](std::size_t s, std::size_t k) -> const ExperimentCell& {
    return rep.cells[s * nk + k];
  };
  for (int p = -1; p <= 1; ++p) {
    for (int q = -1; q <= 1; ++q) {
      CandidateRow row{p, q, {}, {}, {}, 0.0, false};
      auto log_value = [&](const ExperimentCell& c) {
        return c.log_abs_tau + p * c.log_volume_product + q * c.log_length_product;
      };
      std::vector<double> all;
      for (std::size_t s = 0; s < ns; ++s) {
        std::vector<double> logs;
        for (std::size_t k = 0; k < nk; ++k) logs.push_back(log_value(cell_at(s, k)));
        row.mean.push_back(geometric_mean(logs));
        row.spread_over_seeds.push_back(relative_spread(logs));
        all.insert(all.end(), logs.begin(), logs.end());
      }
      for (std::size_t k = 0; k < nk; ++k) {
        std::vector<double> logs;
        for (std::size_t s = 0; s < ns; ++s) logs.push_back(log_value(cell_at(s, k)));
        row.spread_over_scripts.push_back(relative_spread(logs));
      }
      row.overall_spread = relative_spread(all);
      row.stable = std::isfinite(row.overall_spread) && row.overall_spread < opts.stable_threshold;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

std::string ExperimentReport::table() const {
  auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return std::string(buf);
  };
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{"p", "q"};
  for (const auto& name : script_names) {
    header.push_back(name + ":mean");
    header.push_back(name + ":spread");
  }
  header.push_back("overall_spread");
  header.push_back("stable");
  grid.push_back(header);
  for (const auto& r : rows) {
    std::vector<std::string> line{std::to_string(r.p), std::to_string(r.q)};
    for (std::size_t s = 0; s < r.mean.size(); ++s) {
      line.push_back(num(r.mean[s]));
      line.push_back(num(r.spread_over_seeds[s]));
    }
    line.push_back(num(r.overall_spread));
    line.push_back(r.stable ? "yes" : "no");
    grid.push_back(line);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : grid)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  std::ostringstream out;
  for (const auto& line : grid) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) out << "  ";
      out << std::string(width[c] - line[c].size(), ' ') << line[c];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pachner
