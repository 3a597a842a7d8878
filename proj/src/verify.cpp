#include "pachner/verify.hpp"

#include <algorithm>
#include <limits>

#include "pachner/random.hpp"

namespace pachner {

std::string_view to_string(VerifyKind kind) {
  switch (kind) {
    case VerifyKind::LocalFormula: return "local-formula";
    case VerifyKind::Schlafli: return "schlafli";
    case VerifyKind::Symmetry: return "symmetry";
    case VerifyKind::Kernel: return "kernel";
  }
  return "?";
}

std::optional<VerifyKind> verify_kind_from(std::string_view name) {
  for (VerifyKind k : {VerifyKind::LocalFormula, VerifyKind::Schlafli, VerifyKind::Symmetry,
                       VerifyKind::Kernel})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

double default_tolerance(VerifyKind kind) { return kind == VerifyKind::LocalFormula ? 1e-5 : 1e-6; }

double VerifyReport::max_residual() const {
  double worst = 0.0;
  for (const auto& t : trials) {
    if (!t.error.empty()) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, t.residual);
  }
  return worst;
}

int VerifyReport::failures() const {
  return static_cast<int>(
      std::count_if(trials.begin(), trials.end(), [&](const TrialResult& t) { return !t.passed(tol); }));
}

namespace {

double trial_residual(VerifyKind kind, std::uint64_t seed, const VerifyConfig& cfg,
                      const Triangulation& t) {
  DecorateOptions dopt;
  dopt.scale = cfg.scale;
  dopt.vol_floor = cfg.vol_floor;
  switch (kind) {
    case VerifyKind::LocalFormula:
      return local_formula_check(sample_bipyramid(seed, cfg.scale), cfg.fd).residual;
    case VerifyKind::Schlafli: {
      static const Triangulation single = Triangulation::build({Tet{"A", "B", "C", "D"}});
      const Decoration dec = decorate_random(single, seed, dopt);
      return schlafli_residual(tet_lengths(dec, single.tets().front()), cfg.fd).relative;
    }
    case VerifyKind::Symmetry:
      return assemble_jacobian(t, decorate_random(t, seed, dopt), cfg.fd).symmetry_defect();
    case VerifyKind::Kernel: {
      const Decoration dec = decorate_random(t, seed, dopt);
      return motion_kernel_check(assemble_jacobian(t, dec, cfg.fd), t, dec);
    }
  }
  return 0.0;
}

}  // namespace

VerifyReport run_verify(VerifyKind kind, const VerifyConfig& cfg) {
  VerifyReport rep;
  rep.kind = kind;
  rep.tol = cfg.tol.value_or(default_tolerance(kind));
  const Triangulation t = cfg.triangulation.value_or(seed_boundary_4simplex());
  for (int i = 0; i < cfg.trials; ++i) {
    TrialResult r;
    r.index = i;
    r.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    try {
      r.residual = trial_residual(kind, r.seed, cfg, t);
    } catch (const Error& e) {
      r.residual = std::numeric_limits<double>::infinity();
      r.error = e.what();
    }
    rep.trials.push_back(std::move(r));
  }
  return rep;
}

}  // namespace pachner
