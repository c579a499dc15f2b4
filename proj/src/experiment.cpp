#include "fixopt/experiment.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include <algorithm>
#include <exception>

#include "fixopt/errors.hpp"

namespace fixopt {

namespace {

// Sub-stream tags under the per-sampling seed.
enum Stream : std::uint64_t { system_stream = 1, start_stream = 2, sample_stream = 3 };

constexpr double kStartRadius = 0.8;
constexpr double kClampStormFraction = 0.01;

std::vector<double> residuals_at(const std::vector<FixedPointMap>& targets, const ProductPoint& x) {
  std::vector<double> r(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) r[i] = residual(targets[i], x.parts[i]);
  return r;
}

}  // namespace

SamplingProblem make_sampling_problem(const RunConfig& cfg, std::size_t sampling) {
  SamplingProblem p;
  p.sampling = sampling;
  p.seed = derive_seed(cfg.master_seed, sampling);

  Rng system_rng(derive_seed(p.seed, system_stream));
  p.system = cfg.consistency == Consistency::consistent
                 ? sample_consistent_system(system_rng, cfg.factors, cfg.balls_per_factor, cfg.dim)
                 : sample_inconsistent_system(system_rng, cfg.factors, cfg.dim);

  const PoincareDisk disk(cfg.dim);
  Rng start_rng(derive_seed(p.seed, start_stream));
  for (std::size_t i = 0; i < cfg.factors; ++i) p.x0.parts.push_back(disk.point(start_rng.in_ball(cfg.dim, kStartRadius)));

  Rng sample_rng(derive_seed(p.seed, sample_stream));
  p.xi.resize(cfg.iterations);
  for (auto& v : p.xi) v = static_cast<std::size_t>(sample_rng.index(cfg.factors));
  return p;
}

RunRecord run_single(const RunConfig& cfg, const AlgorithmSpec& algorithm, const SamplingProblem& problem) {
  const auto started = std::chrono::steady_clock::now();
  const PoincareDisk disk(cfg.dim);
  const ProductManifold manifold(cfg.factors, disk);
  const GeodesicBall superset = usable_disk(disk);
  const CouplingObjective objective(cfg.factors, cfg.dim);

  std::vector<FixedPointMap> targets, maps;
  for (std::size_t i = 0; i < cfg.factors; ++i) {
    targets.push_back(build_target_map(disk, problem.system, i));
    maps.push_back(projected_relax(targets.back(), algorithm.alpha_relax, superset));
  }

  OptimizerState state(manifold, problem.x0, maps, EngineSpec{algorithm.engine, algorithm.bar_beta, kDefaultVInit},
                       algorithm.hat_beta);
  state.targets = targets;

  RunRecord rec;
  rec.algorithm = algorithm.name;
  rec.sampling = problem.sampling;
  rec.seed = problem.seed;
  rec.rows.reserve(cfg.iterations + 1);

  RunRow first;
  first.n = 0;
  first.residuals = residuals_at(targets, state.x);
  first.f_value = objective.value(state.x);
  rec.rows.push_back(std::move(first));

  for (std::size_t k = 1; k <= cfg.iterations; ++k) {
    const ProductTangent g = objective.stochastic_gradient(manifold, state.x, problem.xi[k - 1]);
    const StepReport report = step(state, g, algorithm.alpha.at(k), algorithm.beta.at(k));

    RunRow row;
    row.n = k;
    row.residuals = residuals_at(targets, state.x);
    row.f_value = objective.value(state.x);
    for (const auto& f : report.factors) {
      row.clamps += f.clamped ? 1 : 0;
      row.residuals_y.push_back(f.residual_y);
      row.grad_norms.push_back(f.grad_norm);
      row.h.push_back(f.h);
    }
    rec.rows.push_back(std::move(row));
  }
  rec.final_digest = digest(state.x);
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return rec;
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records) {
  std::vector<std::string> order;
  for (const auto& r : records) {
    if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) order.push_back(r.algorithm);
  }
  std::vector<AggregateRow> rows;
  for (const auto& name : order) {
    std::vector<RunRecord> group;
    for (const auto& r : records) {
      if (r.algorithm == name) group.push_back(r);
    }
    const std::size_t length = group.front().rows.size();
    for (std::size_t n = 0; n < length; ++n) {
      const PerformanceMeasures pm = performance_measures(group, n);
      rows.push_back({name, n, pm.d_n, pm.f_n});
    }
  }
  return rows;
}

ExperimentResult run_experiment(const RunConfig& cfg, Execution execution) {
  require(!cfg.algorithms.empty(), "run_experiment: no algorithms configured");
  std::vector<SamplingProblem> problems;
  problems.reserve(cfg.samplings);
  for (std::size_t s = 0; s < cfg.samplings; ++s) problems.push_back(make_sampling_problem(cfg, s));

  const std::size_t samplings = cfg.samplings;
  const std::size_t tasks = cfg.algorithms.size() * samplings;
  ExperimentResult result;
  result.records.resize(tasks);

  if (execution == Execution::serial) {
    for (std::size_t t = 0; t < tasks; ++t) {
      result.records[t] = run_single(cfg, cfg.algorithms[t / samplings], problems[t % samplings]);
    }
  } else {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t t = 0; t < tasks; ++t) {
      try {
        result.records[t] = run_single(cfg, cfg.algorithms[t / samplings], problems[t % samplings]);
      } catch (...) {
#pragma omp critical(fixopt_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  result.aggregate = aggregate(result.records);
  for (const auto& r : result.records) {
    std::size_t clamps = 0;
    for (const auto& row : r.rows) clamps += row.clamps;
    const double budget = kClampStormFraction * static_cast<double>(cfg.iterations * cfg.factors);
    if (static_cast<double>(clamps) > budget) {
      result.warnings.push_back(r.algorithm + " sampling " + std::to_string(r.sampling) + ": " +
                                std::to_string(clamps) + " boundary clamps (> 1% of factor steps)");
    }
  }
  return result;
}

void check_finite(const std::vector<RunRecord>& records) {
  for (const auto& r : records) {
    for (const auto& row : r.rows) {
      bool ok = std::isfinite(row.f_value);
      for (double v : row.residuals) ok = ok && std::isfinite(v);
      for (double v : row.residuals_y) ok = ok && std::isfinite(v);
      for (double v : row.h) ok = ok && std::isfinite(v);
      if (!ok) {
        throw NumericalIntegrityError("non-finite value in " + r.algorithm + " sampling " +
                                      std::to_string(r.sampling) + " at n = " + std::to_string(row.n));
      }
    }
  }
}

}  // namespace fixopt
