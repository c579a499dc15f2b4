#pragma once

// Experiment driver: named algorithm presets, run configuration, the seeded
// (algorithm x sampling) run grid, and aggregation into D_n / F_n series.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fixopt/optimizer.hpp"
#include "fixopt/problems.hpp"
#include "fixopt/run_record.hpp"

namespace fixopt {

struct AlgorithmSpec {
  std::string name;
  EngineKind engine = EngineKind::sgd;
  Schedule alpha;
  BetaSchedule beta;
  double hat_beta = 0.0;
  double bar_beta = 0.999;
  double alpha_relax = 0.5;

  bool constant_steps() const {
    return alpha.kind == Schedule::Kind::constant && beta.kind == BetaSchedule::Kind::constant;
  }
};

/// The twelve named presets, in table order (CSD ... CAD2, DSD ... DAD2).
const std::vector<AlgorithmSpec>& presets();
std::vector<std::string> preset_names();
/// Throws ConfigError listing the valid names for an unknown preset.
AlgorithmSpec resolve_preset(std::string_view name);

std::string_view to_string(EngineKind kind);
EngineKind parse_engine(std::string_view name);

struct RunConfig {
  Consistency consistency = Consistency::consistent;
  int dim = 2;
  std::size_t factors = 5;
  std::size_t balls_per_factor = 5;
  std::size_t iterations = 500;
  std::size_t samplings = 10;
  std::uint64_t master_seed = 0;
  std::vector<AlgorithmSpec> algorithms;
  std::filesystem::path out_dir = "out";
  bool emit_svg = false;
  bool bound_diagnostics = false;
};

/// Default iteration budget by disk dimension: 500 (m <= 2), 1000 (m <= 10), 1500 otherwise.
std::size_t default_iterations(int dim);

/// Parse and validate a flat JSON configuration. Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Everything one sampling shares across algorithms.
struct SamplingProblem {
  std::size_t sampling = 0;
  std::uint64_t seed = 0;
  BallSystem system;
  ProductPoint x0;
  std::vector<std::size_t> xi;  // factor index per iteration
};

SamplingProblem make_sampling_problem(const RunConfig& cfg, std::size_t sampling);

/// Run one algorithm on one sampling problem.
RunRecord run_single(const RunConfig& cfg, const AlgorithmSpec& algorithm, const SamplingProblem& problem);

enum class Execution { serial, parallel };

struct AggregateRow {
  std::string algorithm;
  std::size_t n = 0;
  double d_n = 0.0;
  double f_n = 0.0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // sorted by (algorithm order, sampling)
  std::vector<AggregateRow> aggregate;
  std::vector<std::string> warnings;
};

/// The full grid. Serial and parallel execution produce identical records.
ExperimentResult run_experiment(const RunConfig& cfg, Execution execution = Execution::parallel);

/// Group records by algorithm (in first-appearance order) and compute D_n, F_n.
std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records);

/// Throws NumericalIntegrityError if any recorded value is NaN or infinite.
void check_finite(const std::vector<RunRecord>& records);

}  // namespace fixopt
