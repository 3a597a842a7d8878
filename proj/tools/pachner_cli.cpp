#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pachner/experiment.hpp"
#include "pachner/io.hpp"
#include "pachner/random.hpp"
#include "pachner/verify.hpp"

namespace fs = std::filesystem;
using namespace pachner;
using io::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kMoveError = 3, kNotAcyclic = 4 };

struct RunConfig {
  std::uint64_t seed = 0;
  int trials = 100;
  std::optional<double> tol;
  double fd_step = 1e-4;
  double scale = 1.0;
  std::string in, out, decoration, complex, format = "json";
  std::vector<std::string> scripts;
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    io::write_text(out, text);
}

void emit(const std::string& out, const json& j) { emit(out, j.dump(2) + "\n"); }

Triangulation load_triangulation(const std::string& path) {
  if (path.empty()) return seed_boundary_4simplex();
  return io::triangulation_from_json(io::read_json(path));
}

FdOptions fd_options(const RunConfig& cfg) {
  FdOptions fd;
  fd.step = cfg.fd_step;
  return fd;
}

std::string fvec(const FVector& f) {
  return "(" + std::to_string(f.n0) + "," + std::to_string(f.n1) + "," + std::to_string(f.n2) + "," +
         std::to_string(f.n3) + ")";
}

int cmd_seed(const std::string& name, const RunConfig& cfg) {
  emit(cfg.out, io::to_json(seed_by_name(name)));
  return kOk;
}

int cmd_moves(const RunConfig& cfg, const std::string& log_path) {
  const Triangulation t = load_triangulation(cfg.in);
  MoveScript script;
  for (const auto& s : cfg.scripts) {
    const MoveScript part = io::script_from_json(io::read_json(s));
    script.insert(script.end(), part.begin(), part.end());
  }
  Triangulation current = t;
  MoveLog log;
  std::cerr << "f " << fvec(f_vector(current)) << "\n";
  for (std::size_t k = 0; k < script.size(); ++k) {
    try {
      auto [next, rec] = apply_command(current, script[k]);
      current = std::move(next);
      std::cerr << to_string(rec.kind) << " -> f " << fvec(f_vector(current)) << "\n";
      log.push_back(std::move(rec));
    } catch (const Error& e) {
      throw ScriptError(k, e);
    }
  }
  emit(cfg.out, io::to_json(current));
  if (!log_path.empty()) io::write_json(log_path, io::to_json(log));
  return kOk;
}

int cmd_decorate(const RunConfig& cfg, double vol_floor) {
  const Triangulation t = load_triangulation(cfg.in);
  DecorateOptions opts;
  opts.scale = cfg.scale;
  opts.vol_floor = vol_floor;
  emit(cfg.out, io::to_json(decorate_random(t, cfg.seed, opts)));
  return kOk;
}

int cmd_verify(const std::string& kind, const RunConfig& cfg, double vol_floor) {
  VerifyConfig vc;
  vc.seed = cfg.seed;
  vc.trials = cfg.trials;
  vc.tol = cfg.tol;
  vc.fd = fd_options(cfg);
  vc.scale = cfg.scale;
  vc.vol_floor = vol_floor;
  if (!cfg.in.empty()) vc.triangulation = load_triangulation(cfg.in);

  std::vector<VerifyKind> kinds;
  if (kind == "all")
    kinds = {VerifyKind::LocalFormula, VerifyKind::Schlafli, VerifyKind::Symmetry, VerifyKind::Kernel};
  else if (auto k = verify_kind_from(kind))
    kinds = {*k};
  else
    throw CLI::ValidationError("verify", "unknown suite '" + kind + "'");

  json suites = json::array();
  bool ok = true;
  for (VerifyKind k : kinds) {
    const VerifyReport rep = run_verify(k, vc);
    std::printf("%-14s trials %d  max residual %.3e  tol %.1e  failures %d  %s\n",
                std::string(to_string(k)).c_str(), vc.trials, rep.max_residual(), rep.tol,
                rep.failures(), rep.passed() ? "ok" : "FAILED");
    ok = ok && rep.passed();
    suites.push_back(io::to_json(rep));
  }
  const json report{{"passed", ok}, {"seed", cfg.seed}, {"fd_step", cfg.fd_step}, {"suites", suites}};
  if (!cfg.out.empty()) io::write_json(cfg.out, report);
  return ok ? kOk : kVerifyFailed;
}

Decoration load_decoration(const std::string& path) {
  if (path.empty()) throw CLI::RequiredError("--decoration");
  return io::decoration_from_json(io::read_json(path));
}

int cmd_jacobian(const RunConfig& cfg) {
  const Triangulation t = load_triangulation(cfg.in);
  const Decoration dec = load_decoration(cfg.decoration);
  const JacobianA a = assemble_jacobian(t, dec, fd_options(cfg));
  if (cfg.format == "csv")
    emit(cfg.out, io::to_csv(a));
  else
    emit(cfg.out, io::to_json(a));
  std::fprintf(stderr, "%zux%zu, symmetry defect %.3e\n", a.edges.size(), a.edges.size(),
               a.symmetry_defect());
  return kOk;
}

int cmd_torsion(const RunConfig& cfg, bool deformation, const std::string& strategy) {
  const auto strat = strategy == "random" ? TorsionStrategy::SeededRandom : TorsionStrategy::Greedy;
  json report;
  std::optional<BasedComplex> complex;
  double rank_tol = 1e-9;
  if (deformation) {
    const Triangulation t = load_triangulation(cfg.in);
    DeformationOptions opts;
    opts.fd = fd_options(cfg);
    opts.basis_seed = cfg.seed;
    const DeformationComplex def = build_deformation_complex(t, load_decoration(cfg.decoration), opts);
    complex = def.complex;
    rank_tol = 1e-6;
    report["experimental"] = true;
    report["composites"] = {{"A_L", def.composite_al}, {"Lt_A", def.composite_lta}};
  } else {
    if (cfg.complex.empty()) throw CLI::RequiredError("--complex or --deformation");
    complex = io::complex_from_json(io::read_json(cfg.complex));
  }
  rank_tol = cfg.tol.value_or(rank_tol);
  const AcyclicityReport acyc = is_acyclic(*complex, rank_tol);
  report["acyclicity"] = io::to_json(acyc);
  report["rank_tol"] = rank_tol;
  int code = kOk;
  if (acyc.acyclic) {
    const TorsionResult r = torsion(*complex, strat, cfg.seed, rank_tol);
    report["torsion"] = io::to_json(r);
    std::fprintf(stderr, "abs_tau %.17g\n", r.abs_tau);
  } else {
    std::fprintf(stderr, "not acyclic\n");
    code = kNotAcyclic;
  }
  emit(cfg.out.empty() ? std::string("-") : cfg.out, report);
  return code;
}

int cmd_experiment(const RunConfig& cfg, int seeds, double vol_floor) {
  const Triangulation t = load_triangulation(cfg.in);
  std::vector<MoveScript> scripts{{}};
  std::vector<std::string> names{"base"};
  for (const auto& s : cfg.scripts) {
    scripts.push_back(io::script_from_json(io::read_json(s)));
    names.push_back(fs::path(s).stem().string());
  }
  std::vector<std::uint64_t> seed_list;
  for (int k = 0; k < seeds; ++k) seed_list.push_back(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
  ExperimentOptions opts;
  opts.deformation.fd = fd_options(cfg);
  opts.decorate.scale = cfg.scale;
  opts.decorate.vol_floor = vol_floor;
  const ExperimentReport rep = invariance_experiment(t, seed_list, scripts, names, opts);
  std::cout << rep.table();
  if (!cfg.out.empty()) io::write_json(cfg.out, io::to_json(rep));
  return kOk;
}

bool is_move_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::ScriptError:
    case ErrorKind::EdgeAlreadyPresent:
    case ErrorKind::SiteStale:
    case ErrorKind::WrongValence:
    case ErrorKind::PatternMismatch:
    case ErrorKind::TetAlreadyPresent:
    case ErrorKind::LabelInUse:
    case ErrorKind::TetNotFound:
    case ErrorKind::WrongLinkValence:
    case ErrorKind::EdgeNotFound:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pachner moves, Regge deficit Jacobians and torsion of based complexes"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--in", cfg.in, "triangulation JSON (default: boundary of the 4-simplex)");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "base seed"); };
  auto add_fd = [&](CLI::App* sub) {
    sub->add_option("--fd-step", cfg.fd_step, "relative finite-difference step")
        ->check(CLI::Validator(
            [](std::string& s) {
              const double h = std::stod(s);
              return h > 0.0 && h < 1e-2 ? std::string{} : "must lie in (0, 1e-2)";
            },
            "(0, 1e-2)"));
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
  };

  auto* seed = app.add_subcommand("seed", "write a named seed triangulation");
  std::string seed_name;
  seed->add_option("name", seed_name, "boundary-4-simplex")->required();
  seed->add_option("--out", cfg.out, "output file (default: stdout)");

  auto* moves = app.add_subcommand("moves", "apply a move script");
  std::string log_path;
  add_common(moves);
  moves->add_option("--script", cfg.scripts, "move script JSON (repeatable)");
  moves->add_option("--log", log_path, "write the replayable move log here");

  auto* decorate = app.add_subcommand("decorate", "random generic coordinates");
  double vol_floor = 1e-6;
  add_common(decorate);
  add_seed(decorate);
  decorate->add_option("--scale", cfg.scale)->check(CLI::PositiveNumber);
  decorate->add_option("--vol-floor", vol_floor, "min |V| relative to scale^3")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "seeded residual suites");
  std::string kind;
  double verify_floor = 1e-3;
  verify->add_option("kind", kind, "local-formula | schlafli | symmetry | kernel | all")->required();
  add_common(verify);
  add_seed(verify);
  add_fd(verify);
  add_tol(verify);
  verify->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  verify->add_option("--scale", cfg.scale)->check(CLI::PositiveNumber);
  verify->add_option("--vol-floor", verify_floor, "min |V| relative to scale^3")
      ->check(CLI::PositiveNumber);

  auto* jacobian = app.add_subcommand("jacobian", "deficit Jacobian A");
  add_common(jacobian);
  add_fd(jacobian);
  jacobian->add_option("--decoration", cfg.decoration, "decoration JSON")->required();
  jacobian->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));

  auto* torsion_cmd = app.add_subcommand("torsion", "torsion of a based acyclic complex");
  bool deformation = false;
  std::string strategy = "greedy";
  add_common(torsion_cmd);
  add_seed(torsion_cmd);
  add_fd(torsion_cmd);
  torsion_cmd->add_option("--tol", cfg.tol, "rank tolerance")->check(CLI::PositiveNumber);
  torsion_cmd->add_option("--complex", cfg.complex, "complex JSON");
  torsion_cmd->add_flag("--deformation", deformation, "use the deformation complex of --in/--decoration");
  torsion_cmd->add_option("--decoration", cfg.decoration, "decoration JSON");
  torsion_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"greedy", "random"}));

  auto* experiment = app.add_subcommand("experiment", "normalization scan of the deformation torsion");
  int seeds = 5;
  add_common(experiment);
  add_seed(experiment);
  add_fd(experiment);
  experiment->add_option("--trials", seeds, "number of seeds")->check(CLI::PositiveNumber);
  experiment->add_option("--script", cfg.scripts, "move script JSON (repeatable)");
  experiment->add_option("--scale", cfg.scale)->check(CLI::PositiveNumber);
  double experiment_floor = 1e-3;
  experiment->add_option("--vol-floor", experiment_floor, "min |V| relative to scale^3")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (seed->parsed()) return cmd_seed(seed_name, cfg);
    if (moves->parsed()) return cmd_moves(cfg, log_path);
    if (decorate->parsed()) return cmd_decorate(cfg, vol_floor);
    if (verify->parsed()) return cmd_verify(kind, cfg, verify_floor);
    if (jacobian->parsed()) return cmd_jacobian(cfg);
    if (torsion_cmd->parsed()) return cmd_torsion(cfg, deformation, strategy);
    if (experiment->parsed()) return cmd_experiment(cfg, seeds, experiment_floor);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::NotAcyclic) return kNotAcyclic;
    return is_move_error(e.kind()) ? kMoveError : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
