#include "fixopt/bound_report.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "fixopt/errors.hpp"

namespace fixopt {

namespace {

constexpr double kGradientSafety = 1.5;

}  // namespace

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::residual_average_constant: return "residual_average_constant";
    case BoundKind::objective_average_constant: return "objective_average_constant";
    case BoundKind::nonexpansive_residual_constant: return "nonexpansive_residual_constant";
    case BoundKind::residual_average_diminishing: return "residual_average_diminishing";
    case BoundKind::objective_average_diminishing: return "objective_average_diminishing";
    case BoundKind::nonexpansive_residual_diminishing: return "nonexpansive_residual_diminishing";
    case BoundKind::step_distance_diminishing: return "step_distance_diminishing";
  }
  return "unknown";
}

bool BoundReport::any_violation() const {
  return std::any_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.violated(); });
}

BoundInputs estimate_constants(const RunConfig& cfg, const AlgorithmSpec& algorithm,
                               const std::vector<const RunRecord*>& runs) {
  require(!runs.empty(), "estimate_constants: no runs");
  const PoincareDisk disk(cfg.dim);
  const double diameter = 2.0 * usable_disk(disk).radius;

  BoundInputs in;
  in.hat_beta = algorithm.hat_beta;
  in.alpha = algorithm.alpha;
  in.beta = algorithm.beta;
  in.factors.resize(cfg.factors);
  for (std::size_t i = 0; i < cfg.factors; ++i) {
    double g_max = 0.0, h_max = 0.0, h0 = std::numeric_limits<double>::infinity();
    for (const RunRecord* r : runs) {
      require(r->rows.size() >= 2 && r->rows[1].h.size() == cfg.factors,
              "estimate_constants: records carry no step diagnostics");
      h0 = std::min(h0, r->rows[1].h[i]);
      for (std::size_t k = 1; k < r->rows.size(); ++k) {
        g_max = std::max(g_max, r->rows[k].grad_norms[i]);
        h_max = std::max(h_max, r->rows[k].h[i]);
      }
    }
    FactorConstants& c = in.factors[i];
    c.diameter = diameter;
    c.zeta = zeta(PoincareDisk::kCurvature, diameter);
    c.b_tilde = kGradientSafety * g_max;
    c.h0 = h0;
    c.b_hat = kGradientSafety * h_max;
    c.alpha_relax = algorithm.alpha_relax;
  }
  return in;
}

std::vector<double> running_residual_average(const std::vector<const RunRecord*>& runs, bool at_y) {
  require(!runs.empty(), "running_residual_average: no runs");
  const std::size_t length = runs.front()->rows.size();
  std::vector<double> avg(length, 0.0);
  for (const RunRecord* r : runs) {
    require(r->rows.size() == length, "running_residual_average: ragged runs");
    double cumulative = 0.0;
    for (std::size_t k = 1; k < length; ++k) {
      const auto& values = at_y ? r->rows[k].residuals_y : r->rows[k].residuals;
      require(!values.empty(), "running_residual_average: records carry no step diagnostics");
      for (double v : values) cumulative += v * v;
      avg[k] += cumulative / static_cast<double>(k);
    }
  }
  for (double& v : avg) v /= static_cast<double>(runs.size());
  return avg;
}

BoundReport bound_report(const RunConfig& cfg, const std::vector<RunRecord>& records) {
  BoundReport report;
  for (const auto& algorithm : cfg.algorithms) {
    std::vector<const RunRecord*> runs;
    for (const auto& r : records) {
      if (r.algorithm == algorithm.name) runs.push_back(&r);
    }
    if (runs.empty()) continue;
    for (const RunRecord* r : runs) {
      if (r->rows.size() < 2 || r->rows[1].residuals_y.empty()) {
        throw ConfigError("bound report needs step diagnostics; rerun with bound diagnostics enabled");
      }
    }
    const BoundInputs constants = estimate_constants(cfg, algorithm, runs);
    const bool constant = algorithm.constant_steps();
    const std::pair<const char*, BoundKind> targets[] = {
        {"residual_y", constant ? BoundKind::residual_average_constant : BoundKind::residual_average_diminishing},
        {"residual_x",
         constant ? BoundKind::nonexpansive_residual_constant : BoundKind::nonexpansive_residual_diminishing},
    };
    for (const auto& [quantity, kind] : targets) {
      const std::vector<double> empirical = running_residual_average(runs, quantity == std::string("residual_y"));
      for (std::size_t n = 1; n < empirical.size(); ++n) {
        report.checks.push_back({algorithm.name, quantity, kind, n, empirical[n], theorem_bound_rhs(constants, n, kind)});
      }
    }
  }
  return report;
}

void write_bound_csv(std::ostream& out, const BoundReport& report) {
  out << "algorithm,quantity,bound_kind,n,empirical,bound,violated\n";
  for (const auto& c : report.checks) {
    out << fmt::format("{},{},{},{},{},{},{}\n", c.algorithm, c.quantity, to_string(c.kind), c.n, c.empirical,
                       c.bound, c.violated() ? 1 : 0);
  }
}

}  // namespace fixopt
