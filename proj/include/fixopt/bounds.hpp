#pragma once

// Closed-form right-hand sides of the convergence guarantees for the
// stochastic fixed point iteration. Used as diagnostic ceilings for the
// empirical residual and objective averages of a run.

#include <cstddef>
#include <vector>

#include "fixopt/optimizer.hpp"

namespace fixopt {

struct FactorConstants {
  double zeta = 1.0;         // zeta(kappa^i, D^i)
  double b_tilde = 0.0;      // max(||tau_{-1}||, B^i)
  double diameter = 0.0;     // D^i
  double h0 = 1.0;           // h_0^i
  double alpha_relax = 0.5;  // alpha^i; hat_alpha = alpha^i (1 - alpha^i)
  double b_hat = 1.0;        // bound on E[h_n^i]
};

struct BoundInputs {
  std::vector<FactorConstants> factors;
  double hat_beta = 0.0;
  Schedule alpha;
  BetaSchedule beta;
};

enum class BoundKind {
  /// (1/n) sum_k sum_i d(T(y_k), y_k)^2, constant steps.
  residual_average_constant,
  /// f(xbar_n) - f_star, constant steps.
  objective_average_constant,
  /// (1/n) sum_k sum_i d(T(x_k), x_k)^2 for nonexpansive T, constant steps.
  nonexpansive_residual_constant,
  /// Diminishing-step analogues of the three above.
  residual_average_diminishing,
  objective_average_diminishing,
  nonexpansive_residual_diminishing,
  /// (1/n) sum_k sum_i d(y_k, x_k)^2, diminishing steps.
  step_distance_diminishing,
};

double theorem_bound_rhs(const BoundInputs& in, std::size_t n, BoundKind which);

}  // namespace fixopt
