#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fixopt/bounds.hpp"
#include "fixopt/experiment.hpp"

namespace fixopt {

struct BoundCheck {
  std::string algorithm;
  std::string quantity;  // "residual_y" or "residual_x"
  BoundKind kind;
  std::size_t n = 0;
  double empirical = 0.0;
  double bound = 0.0;
  bool violated() const { return empirical > bound; }
};

struct BoundReport {
  std::vector<BoundCheck> checks;
  bool any_violation() const;
};

/// Estimated constants for one algorithm's runs: D^i is the diameter of the
/// superset C, B~^i is 1.5 x the largest observed gradient norm, h_0^i the
/// smallest first-step h over the samplings.
BoundInputs estimate_constants(const RunConfig& cfg, const AlgorithmSpec& algorithm,
                               const std::vector<const RunRecord*>& runs);

/// Empirical sampling-mean of (1/n) sum_{k=1}^n sum_i d(T(y_k), y_k)^2; index n of
/// the returned vector holds the average over k = 1..n (index 0 unused).
std::vector<double> running_residual_average(const std::vector<const RunRecord*>& runs, bool at_y);

/// Compare empirical averages with the matching constant- or diminishing-step
/// bound at every n. Requires step diagnostics in the records.
BoundReport bound_report(const RunConfig& cfg, const std::vector<RunRecord>& records);

void write_bound_csv(std::ostream& out, const BoundReport& report);

std::string_view to_string(BoundKind kind);

}  // namespace fixopt
