// fixopt: run the geodesic-ball feasibility benchmark grid.
//
//   fixopt run --config <path> [--out-dir <path>] [--seed <u64>] [--svg] [--bounds]
//   fixopt presets
//   fixopt validate --config <path>
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 numerical
// integrity failure (NaN or a violated theorem bound).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fixopt/bound_report.hpp"
#include "fixopt/emit.hpp"
#include "fixopt/errors.hpp"
#include "fixopt/experiment.hpp"

namespace {

enum ExitCode : int { ok = 0, config_error = 2, io_error = 3, numerical_error = 4 };

std::string describe(const fixopt::Schedule& s) {
  if (s.kind == fixopt::Schedule::Kind::constant) return fmt::format("{}", s.base);
  return fmt::format("{}/n^{}", s.base, s.exponent);
}

std::string describe(const fixopt::BetaSchedule& s) {
  if (s.kind == fixopt::BetaSchedule::Kind::constant) return fmt::format("{}", s.base);
  return fmt::format("{}^n", s.ratio);
}

void print_presets() {
  std::cout << "name  engine   alpha_n      beta_n  hat_beta  bar_beta  alpha_relax\n";
  for (const auto& p : fixopt::presets()) {
    std::cout << fmt::format("{:<5} {:<8} {:<12} {:<7} {:<9} {:<9} {}\n", p.name, fixopt::to_string(p.engine),
                             describe(p.alpha), describe(p.beta), p.hat_beta, p.bar_beta, p.alpha_relax);
  }
}

int run(const std::string& config_path, const std::optional<std::string>& out_dir,
        const std::optional<std::uint64_t>& seed, bool svg, bool bounds) {
  fixopt::RunConfig cfg = fixopt::load_config(config_path);
  if (out_dir) cfg.out_dir = *out_dir;
  if (seed) cfg.master_seed = *seed;
  cfg.emit_svg = cfg.emit_svg || svg;
  cfg.bound_diagnostics = cfg.bound_diagnostics || bounds;

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw fixopt::IoError("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message());

  const fixopt::ExperimentResult result = fixopt::run_experiment(cfg);
  fixopt::emit_csv(result.records, cfg.out_dir / "raw.csv");
  fixopt::emit_aggregate(result.aggregate, cfg.out_dir / "aggregate.csv");
  fixopt::emit_summary(result, cfg.out_dir / "summary.json");
  if (cfg.emit_svg) {
    fixopt::emit_svg(fixopt::d_series(result.aggregate), "D_n vs. iteration", true, cfg.out_dir / "D_n.svg");
    fixopt::emit_svg(fixopt::f_series(result.aggregate), "F_n vs. iteration", false, cfg.out_dir / "F_n.svg");
  }
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

  fixopt::check_finite(result.records);

  for (const auto& row : result.aggregate) {
    if (row.n + 1 == result.records.front().rows.size()) {
      std::cout << fmt::format("{:<6} D_N = {:.6e}  F_N = {:.6f}\n", row.algorithm, row.d_n, row.f_n);
    }
  }

  if (cfg.bound_diagnostics) {
    const fixopt::BoundReport report = fixopt::bound_report(cfg, result.records);
    const auto path = cfg.out_dir / "bounds.csv";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw fixopt::IoError("cannot write " + path.string());
    fixopt::write_bound_csv(out, report);
    if (!out) throw fixopt::IoError("write failed for " + path.string());
    if (report.any_violation()) {
      for (const auto& c : report.checks) {
        if (c.violated()) {
          throw fixopt::NumericalIntegrityError(fmt::format("{} {} exceeds its bound at n = {}: {} > {}",
                                                            c.algorithm, c.quantity, c.n, c.empirical, c.bound));
        }
      }
    }
    std::cout << "theorem bounds: all " << report.checks.size() << " checks hold\n";
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemannian stochastic fixed point optimization benchmark"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run the configured experiment grid");
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  bool svg = false, bounds = false;
  run_cmd->add_option("--config", config_path, "JSON run configuration")->required();
  run_cmd->add_option("--out-dir", out_dir, "Output directory (overrides the config)");
  run_cmd->add_option("--seed", seed, "Master seed (overrides the config)");
  run_cmd->add_flag("--svg", svg, "Emit D_n and F_n SVG plots");
  run_cmd->add_flag("--bounds", bounds, "Check theorem bounds; exit 4 on violation");

  app.add_subcommand("presets", "List the built-in algorithm presets");

  auto* validate_cmd = app.add_subcommand("validate", "Check a configuration file without running it");
  std::string validate_path;
  validate_cmd->add_option("--config", validate_path, "JSON run configuration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    if (app.got_subcommand("presets")) {
      print_presets();
      return ok;
    }
    if (app.got_subcommand("validate")) {
      const fixopt::RunConfig cfg = fixopt::load_config(validate_path);
      std::cout << "config ok: " << cfg.algorithms.size() << " algorithms, " << cfg.samplings << " samplings, "
                << cfg.iterations << " iterations\n";
      return ok;
    }
    return run(config_path, out_dir, seed, svg, bounds);
  } catch (const fixopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const fixopt::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return io_error;
  } catch (const fixopt::NumericalIntegrityError& e) {
    std::cerr << "numerical integrity failure: " << e.what() << '\n';
    return numerical_error;
  } catch (const fixopt::ContractViolation& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  }
}
