// Command line front end: kernel search, modal classification, branch
// solves, continuation sweeps, and surface rendering. All artifacts are
// deterministic: the same invocation produces byte-identical files.

#include <array>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trimodal/dispersion.hpp"
#include "trimodal/errors.hpp"
#include "trimodal/grid.hpp"
#include "trimodal/io.hpp"
#include "trimodal/kernel.hpp"
#include "trimodal/modal.hpp"
#include "trimodal/operators.hpp"
#include "trimodal/solver.hpp"

namespace {

using namespace trimodal;

enum ExitCode {
  kOk = 0,
  kGeneralError = 1,
  kNoThirdMode = 2,
  kTransversalityFailed = 3,
  kNewtonDiverged = 4,
  kUsage = 64,
  kDegenerate = 65,
};

int log_verbosity() {
  const char* env = std::getenv("TRIMODAL_LOG");
  if (!env) return 1;
  const std::string v(env);
  if (v == "quiet") return 0;
  if (v == "debug") return 2;
  return 1;
}

void log_info(const std::string& msg) {
  if (log_verbosity() >= 1) std::cerr << "[trimodal] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_verbosity() >= 2) std::cerr << "[trimodal:debug] " << msg << "\n";
}

struct RunConfig {
  double tol = 1e-10;
  int grid_modes = 64;
  int grid_s = 64;
  double delta = 0.05;
  std::string out_dir = ".";
  unsigned seed = 0;
};

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

int run_find_kernel(const RunConfig& cfg, int k1, int k2, int k3) {
  KernelSpec spec;
  try {
    spec = attach_third_mode(k1, k2, k3);
  } catch (const NoThirdMode& e) {
    std::cerr << "find-kernel: " << e.what() << "\n";
    return kNoThirdMode;
  }
  const TransversalityReport rep = transversality(spec);

  const std::string file =
      out_path(cfg, "kernel_" + std::to_string(k1) + "_" + std::to_string(k2) +
                        "_" + std::to_string(k3) + ".json");
  write_text_file(file, kernel_spec_to_json(spec, rep));

  std::cout << "kernel (" << k1 << "," << k2 << "," << k3
            << "): a=" << format_g17(spec.a)
            << " xi=" << format_g17(spec.params.xi)
            << " alpha=" << format_g17(spec.params.alpha)
            << " mu=" << format_g17(spec.params.mu) << "\n";
  for (int j = 0; j < 3; ++j) {
    const auto& tv = spec.thetas[static_cast<size_t>(j)];
    std::cout << "  theta_" << tv.k << "=" << format_g17(tv.theta) << " ("
              << regime_name(tv.regime)
              << ") residual=" << format_g17(spec.residuals[static_cast<size_t>(j)])
              << "\n";
  }
  std::cout << "  exact_dimension=" << spec.exact_dimension
            << " (scanned k=1.." << spec.k_max_scanned << ")\n";
  std::cout << "  transversality " << (rep.passed() ? "passed" : "FAILED")
            << ": bracketed_sum=" << format_g17(rep.bracketed_sum) << "\n";
  std::cout << "wrote " << file << "\n";

  if (!rep.passed()) return kTransversalityFailed;
  return kOk;
}

int run_classify(const RunConfig& cfg, int m1, int m2, int m3) {
  (void)cfg;
  const ModalClass mc = classify({m1, m2, m3});
  std::cout << "triple (" << m1 << "," << m2 << "," << m3 << "): case "
            << case_name(mc.tag) << "\n";
  std::cout << "  reduced: (" << mc.reduced[0] << "," << mc.reduced[1] << ","
            << mc.reduced[2] << "), common divisor " << mc.divisor << "\n";
  std::cout << "  region: " << region_formula(mc.tag) << "\n";
  return kOk;
}

Grid make_grid_or_throw(const RunConfig& cfg) {
  log_debug("building grid n_modes=" + std::to_string(cfg.grid_modes) +
            " n_s=" + std::to_string(cfg.grid_s));
  return build_grid(cfg.grid_modes, cfg.grid_s);
}

int run_solve(const RunConfig& cfg, const std::string& spec_file,
              const std::vector<double>& t_in) {
  const KernelSpec spec = kernel_spec_from_json(read_text_file(spec_file));
  const std::array<double, 3> t = {t_in[0], t_in[1], t_in[2]};
  const Grid grid = make_grid_or_throw(cfg);

  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.delta = cfg.delta;

  if (!amplitude_admissible(spec, t, cfg.delta))
    log_info("warning: amplitude triple lies outside the admissible region "
             "for case " +
             std::string(case_name(classify(spec.k).tag)) +
             "; solving anyway");

  BranchPoint bp;
  try {
    bp = solve_branch_point(spec, t, grid, opts);
  } catch (const NewtonDivergence& e) {
    std::cerr << "solve: " << e.what() << "\n";
    return kNewtonDiverged;
  }

  const std::string bp_file = out_path(cfg, "branch_point.json");
  write_text_file(bp_file, branch_point_to_json(bp));
  const std::string profile_file = out_path(cfg, "branch_profile.csv");
  write_text_file(profile_file, profile_to_csv(surface_profile(bp, 2048)));

  std::cout << "solved t=(" << format_g17(t[0]) << "," << format_g17(t[1])
            << "," << format_g17(t[2]) << "): iters=" << bp.newton_iters
            << " residual=" << format_g17(bp.residual_norm)
            << " admissible=" << (bp.admissible ? "true" : "false") << "\n";
  std::cout << "  params: mu=" << format_g17(bp.params.mu)
            << " alpha=" << format_g17(bp.params.alpha)
            << " xi=" << format_g17(bp.params.xi) << "\n";
  std::cout << "wrote " << bp_file << "\n";
  std::cout << "wrote " << profile_file << "\n";
  return kOk;
}

int run_render(const RunConfig& cfg, const std::vector<std::string>& inputs,
               int samples) {
  for (const std::string& input : inputs) {
    const BranchPoint bp = branch_point_from_json(read_text_file(input));
    const std::string stem = std::filesystem::path(input).stem().string();
    const std::string file = out_path(cfg, stem + "_profile.csv");
    write_text_file(file, profile_to_csv(surface_profile(bp, samples)));
    std::cout << "wrote " << file << "\n";
  }
  return kOk;
}

int run_sweep(const RunConfig& cfg, const std::string& spec_file,
              const std::vector<double>& dir_in, double h_max, int n_steps) {
  const KernelSpec spec = kernel_spec_from_json(read_text_file(spec_file));
  const std::array<double, 3> direction = {dir_in[0], dir_in[1], dir_in[2]};
  const Grid grid = make_grid_or_throw(cfg);

  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.delta = cfg.delta;

  const ContinuationResult res =
      continue_in_amplitude(spec, direction, h_max, n_steps, grid, opts);

  std::string summary = "{\n  \"direction\": [" + format_g17(direction[0]) +
                        "," + format_g17(direction[1]) + "," +
                        format_g17(direction[2]) + "],\n";
  summary += "  \"h_max\": " + format_g17(h_max) + ",\n";
  summary += "  \"n_steps\": " + std::to_string(n_steps) + ",\n";
  summary += "  \"completed\": " + std::to_string(res.points.size()) + ",\n";
  summary += std::string("  \"truncated\": ") +
             (res.truncated ? "true" : "false") + ",\n";
  summary += "  \"points\": [";
  for (size_t i = 0; i < res.points.size(); ++i) {
    const BranchPoint& bp = res.points[i];
    char name[32];
    std::snprintf(name, sizeof name, "sweep_%03zu.json", i + 1);
    write_text_file(out_path(cfg, name), branch_point_to_json(bp));
    if (i) summary += ",";
    summary += "\n    {\"file\": \"" + std::string(name) + "\", \"t\": [" +
               format_g17(bp.t[0]) + "," + format_g17(bp.t[1]) + "," +
               format_g17(bp.t[2]) + "], \"mu\": " + format_g17(bp.params.mu) +
               ", \"alpha\": " + format_g17(bp.params.alpha) +
               ", \"xi\": " + format_g17(bp.params.xi) +
               ", \"residual_norm\": " + format_g17(bp.residual_norm) +
               ", \"newton_iters\": " + std::to_string(bp.newton_iters) +
               ", \"admissible\": " + (bp.admissible ? "true" : "false") +
               "}";
  }
  summary += "\n  ]\n}\n";
  write_text_file(out_path(cfg, "sweep_summary.json"), summary);

  std::cout << "sweep: completed " << res.points.size() << "/" << n_steps
            << " steps" << (res.truncated ? " (truncated)" : "") << "\n";
  std::cout << "wrote " << out_path(cfg, "sweep_summary.json") << "\n";
  if (res.truncated) {
    std::cerr << "sweep: " << res.message << "\n";
    return kNewtonDiverged;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-mode bifurcation kernels of rotational steady water "
               "waves with affine vorticity"};
  app.require_subcommand(1);
  // Global options may trail the subcommand: let unmatched subcommand
  // arguments fall back to the parent parser.
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "solver tolerance (sup norm)");
  app.add_option("--grid-modes", cfg.grid_modes, "cosine modes in q");
  app.add_option("--grid-s", cfg.grid_s, "vertical intervals");
  app.add_option("--delta", cfg.delta, "admissible-region aperture");
  app.add_option("--out-dir", cfg.out_dir, "artifact output directory");
  app.add_option("--seed", cfg.seed, "seed for randomized harnesses");

  int k1 = 0, k2 = 0, k3 = 0;
  auto* fk = app.add_subcommand("find-kernel",
                                "locate a three-mode kernel point");
  fk->add_option("k1", k1, "first wavenumber")->required();
  fk->add_option("k2", k2, "second wavenumber")->required();
  fk->add_option("k3", k3, "third wavenumber")->required();

  int m1 = 0, m2 = 0, m3 = 0;
  auto* cl = app.add_subcommand("classify", "arithmetic class of a triple");
  cl->add_option("m1", m1)->required();
  cl->add_option("m2", m2)->required();
  cl->add_option("m3", m3)->required();

  std::string spec_file;
  std::vector<double> t_vals;
  auto* sv = app.add_subcommand("solve", "solve one pinned branch point");
  sv->add_option("spec", spec_file, "kernel spec JSON file")->required();
  sv->add_option("--t", t_vals, "amplitude triple")->expected(3)->required();

  std::vector<std::string> render_inputs;
  int samples = 2048;
  auto* rd = app.add_subcommand("render", "sample surface profiles");
  rd->add_option("inputs", render_inputs, "branch point JSON files")
      ->required();
  rd->add_option("--samples", samples, "profile sample count");

  std::string sweep_spec;
  std::vector<double> dir_vals;
  double h_max = 1e-3;
  int n_steps = 10;
  auto* sw = app.add_subcommand("sweep", "amplitude continuation");
  sw->add_option("spec", sweep_spec, "kernel spec JSON file")->required();
  sw->add_option("--direction", dir_vals, "amplitude direction")
      ->expected(3)
      ->required();
  sw->add_option("--h-max", h_max, "largest amplitude along the direction");
  sw->add_option("--steps", n_steps, "number of continuation steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  if (cfg.seed) log_debug("seed=" + std::to_string(cfg.seed));

  try {
    if (fk->parsed()) return run_find_kernel(cfg, k1, k2, k3);
    if (cl->parsed()) return run_classify(cfg, m1, m2, m3);
    if (sv->parsed()) return run_solve(cfg, spec_file, t_vals);
    if (rd->parsed()) return run_render(cfg, render_inputs, samples);
    if (sw->parsed()) return run_sweep(cfg, sweep_spec, dir_vals, h_max,
                                       n_steps);
  } catch (const DegenerateTriple& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDegenerate;
  } catch (const NewtonDivergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNewtonDiverged;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGeneralError;
  }
  return kOk;
}
