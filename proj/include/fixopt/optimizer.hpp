#pragma once

// Riemannian stochastic fixed point optimization on a product of Poincare
// disks. One call to step() performs, for every factor i,
//
//   m_n   = beta_n tau_{n-1} + (1 - beta_n) G(x_n, xi_n)
//   mhat  = m_n / (1 - hat_beta^{n+1})
//   d_n   = -mhat / h_n
//   y_n   = exp_{x_n}(alpha_n d_n)
//   x_n+1 = Q(y_n)
//   tau_n = transport_{x_n -> x_n+1}(m_n)
//
// where h_n comes from a per-factor RateEngine and Q is a projected
// relaxation of the factor's quasinonexpansive map.

#include <cstddef>
#include <optional>
#include <vector>

#include "fixopt/fixmaps.hpp"
#include "fixopt/manifold.hpp"

namespace fixopt {

/// Step size alpha_n, evaluated at a 1-based step index.
struct Schedule {
  enum class Kind { constant, power };
  Kind kind = Kind::constant;
  double base = 1e-2;
  double exponent = 0.0;

  static Schedule constant(double value) { return {Kind::constant, value, 0.0}; }
  /// base / n^exponent.
  static Schedule power(double base, double exponent) { return {Kind::power, base, exponent}; }

  double at(std::size_t n) const;
};

/// Momentum weight beta_n, evaluated at a 1-based step index.
struct BetaSchedule {
  enum class Kind { constant, geometric };
  Kind kind = Kind::constant;
  double base = 0.0;
  double ratio = 0.5;

  static BetaSchedule constant(double value) { return {Kind::constant, value, 0.0}; }
  /// ratio^n.
  static BetaSchedule geometric(double ratio) { return {Kind::geometric, 0.0, ratio}; }

  double at(std::size_t n) const;
};

enum class EngineKind { sgd, adagrad, adam, amsgrad };

inline constexpr double kDefaultVInit = 1e-16;

/// Produces the scalar h_n^i of one factor from its squared gradient norms.
class RateEngine {
 public:
  explicit RateEngine(EngineKind kind, double bar_beta = 0.999, double v_init = kDefaultVInit);

  /// Feed ||G^i(x_n, xi_n)||^2 for iteration n (0-based); returns h_n > 0.
  double update(double grad_sq_norm, std::size_t n);

  EngineKind kind() const { return kind_; }
  double v() const { return v_; }
  double v_hat() const { return v_hat_; }

 private:
  EngineKind kind_;
  double bar_beta_;
  double v_;
  double v_hat_;
};

struct EngineSpec {
  EngineKind kind = EngineKind::sgd;
  double bar_beta = 0.999;
  double v_init = kDefaultVInit;
};

struct FactorStepReport {
  Point y;                 // exp_{x_n}(alpha_n d_n), before Q
  double dist_y_x = 0.0;   // d(y_n, x_n)
  double momentum_norm = 0.0;  // ||m_n||_{x_n}
  double grad_norm = 0.0;  // ||G^i(x_n, xi_n)||_{x_n}
  double h = 0.0;
  double residual_y = 0.0;  // d(T(y_n), y_n) when targets are set, else 0
  bool clamped = false;
};

struct StepReport {
  std::size_t n = 0;  // index of the step just taken
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<FactorStepReport> factors;
};

/// Complete mutable state of one optimization run. Single owner.
struct OptimizerState {
  OptimizerState(ProductManifold manifold, ProductPoint x0, std::vector<FixedPointMap> maps,
                 EngineSpec engine, double hat_beta);

  ProductManifold manifold;
  std::size_t n = 0;
  ProductPoint x;
  ProductTangent tau_prev;
  std::vector<RateEngine> engines;
  double hat_beta;
  std::vector<FixedPointMap> maps;     // Q^i
  std::vector<FixedPointMap> targets;  // optional T^i for residual_y diagnostics
  ProductPoint avg;
  std::size_t clamp_count = 0;
};

StepReport step(OptimizerState& state, const ProductTangent& gradient, double alpha_n, double beta_n);

/// Geodesic running mean: exp_{avg}((1/n) log_{avg}(x)), n >= 1.
ProductPoint average_update(const ProductManifold& manifold, const ProductPoint& avg, const ProductPoint& x,
                            std::size_t n);

}  // namespace fixopt
