#include "fixopt/bounds.hpp"

#include "fixopt/errors.hpp"

namespace fixopt {

namespace {

struct StepAverages {
  double alpha = 0.0;     // (1/n) sum_{k=1}^n alpha_k
  double alpha_sq = 0.0;  // (1/n) sum alpha_k^2
  double beta = 0.0;      // (1/n) sum beta_k
};

StepAverages averages(const BoundInputs& in, std::size_t n) {
  StepAverages a;
  for (std::size_t k = 1; k <= n; ++k) {
    const double ak = in.alpha.at(k);
    a.alpha += ak;
    a.alpha_sq += ak * ak;
    a.beta += in.beta.at(k);
  }
  const double inv = 1.0 / static_cast<double>(n);
  a.alpha *= inv;
  a.alpha_sq *= inv;
  a.beta *= inv;
  return a;
}

double hat_alpha(const FactorConstants& c) { return c.alpha_relax * (1.0 - c.alpha_relax); }

// Per-factor residual bound with step terms a1 (~alpha) and a2 (~alpha^2).
double residual_term(const FactorConstants& c, double hat_beta, double inv_n, double a1, double a2) {
  const double ha = hat_alpha(c);
  const double h0 = (1.0 - hat_beta) * c.h0;
  return c.diameter / ha * inv_n + 2.0 * c.b_tilde * c.diameter / (ha * h0) * a1 +
         c.zeta * c.b_tilde * c.b_tilde / (ha * h0 * h0) * a2;
}

double nonexpansive_term(const FactorConstants& c, double hat_beta, double inv_n, double a1, double a2) {
  const double ha = hat_alpha(c);
  const double h0 = (1.0 - hat_beta) * c.h0;
  const double tail = c.zeta / ha + 4.0 / ((1.0 - hat_beta) * (1.0 - hat_beta));
  return 2.0 * c.diameter / ha * inv_n + 4.0 * c.b_tilde * c.diameter / (ha * h0) * a1 +
         2.0 * c.b_tilde * c.b_tilde / (h0 * h0) * tail * a2;
}

double objective_bound(const BoundInputs& in, double inv_alpha_n, double a1, double b1) {
  const double beta1 = in.beta.at(1);
  double s_hat = 0.0, s_zeta = 0.0, s_bd = 0.0;
  for (const auto& c : in.factors) {
    s_hat += c.b_hat * c.diameter * c.diameter;
    s_zeta += c.zeta * c.b_tilde * c.b_tilde / c.h0;
    s_bd += c.b_tilde * c.diameter;
  }
  return s_hat / (2.0 * (1.0 - beta1)) * inv_alpha_n +
         s_zeta / (2.0 * (1.0 - in.hat_beta) * (1.0 - beta1)) * a1 + s_bd / (1.0 - beta1) * b1;
}

}  // namespace

double theorem_bound_rhs(const BoundInputs& in, std::size_t n, BoundKind which) {
  require(n >= 1, "theorem_bound_rhs: n must be >= 1");
  require(!in.factors.empty(), "theorem_bound_rhs: no factor constants");
  require(in.hat_beta >= 0.0 && in.hat_beta < 1.0, "theorem_bound_rhs: hat_beta must lie in [0, 1)");
  for (const auto& c : in.factors) {
    require(c.alpha_relax > 0.0 && c.alpha_relax < 1.0 && c.h0 > 0.0 && c.diameter >= 0.0 &&
                c.b_tilde >= 0.0 && c.zeta > 0.0,
            "theorem_bound_rhs: invalid factor constants");
  }
  const double inv_n = 1.0 / static_cast<double>(n);

  double total = 0.0;
  switch (which) {
    case BoundKind::residual_average_constant: {
      const double a = in.alpha.at(1);
      for (const auto& c : in.factors) total += residual_term(c, in.hat_beta, inv_n, a, a * a);
      return total;
    }
    case BoundKind::nonexpansive_residual_constant: {
      const double a = in.alpha.at(1);
      for (const auto& c : in.factors) total += nonexpansive_term(c, in.hat_beta, inv_n, a, a * a);
      return total;
    }
    case BoundKind::objective_average_constant: {
      const double a = in.alpha.at(1);
      return objective_bound(in, inv_n / a, a, in.beta.at(1));
    }
    case BoundKind::residual_average_diminishing: {
      const StepAverages s = averages(in, n);
      for (const auto& c : in.factors) total += residual_term(c, in.hat_beta, inv_n, s.alpha, s.alpha_sq);
      return total;
    }
    case BoundKind::nonexpansive_residual_diminishing: {
      const StepAverages s = averages(in, n);
      for (const auto& c : in.factors) total += nonexpansive_term(c, in.hat_beta, inv_n, s.alpha, s.alpha_sq);
      return total;
    }
    case BoundKind::objective_average_diminishing: {
      const StepAverages s = averages(in, n);
      return objective_bound(in, inv_n / in.alpha.at(n), s.alpha, s.beta);
    }
    case BoundKind::step_distance_diminishing: {
      const StepAverages s = averages(in, n);
      for (const auto& c : in.factors) {
        const double h0 = (1.0 - in.hat_beta) * c.h0;
        total += c.b_tilde * c.b_tilde / ((1.0 - in.hat_beta) * (1.0 - in.hat_beta) * h0 * h0) * s.alpha_sq;
      }
      return total;
    }
  }
  return total;
}

}  // namespace fixopt
