#include "fixopt/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "fixopt/errors.hpp"

namespace fixopt {

double Schedule::at(std::size_t n) const {
  require(n >= 1, "Schedule::at: step index is 1-based");
  switch (kind) {
    case Kind::constant: return base;
    case Kind::power: return base / std::pow(static_cast<double>(n), exponent);
  }
  return base;
}

double BetaSchedule::at(std::size_t n) const {
  require(n >= 1, "BetaSchedule::at: step index is 1-based");
  switch (kind) {
    case Kind::constant: return base;
    case Kind::geometric: return std::pow(ratio, static_cast<double>(n));
  }
  return base;
}

RateEngine::RateEngine(EngineKind kind, double bar_beta, double v_init)
    : kind_(kind), bar_beta_(bar_beta), v_(v_init), v_hat_(v_init) {
  require(bar_beta >= 0.0 && bar_beta < 1.0, "RateEngine: bar_beta must lie in [0, 1)");
  require(v_init >= 0.0, "RateEngine: v_init must be nonnegative");
}

double RateEngine::update(double grad_sq_norm, std::size_t n) {
  require(grad_sq_norm >= 0.0, "RateEngine::update: squared norm must be nonnegative");
  switch (kind_) {
    case EngineKind::sgd:
      return 1.0;
    case EngineKind::adagrad:
      v_ += grad_sq_norm;
      v_hat_ = v_;
      break;
    case EngineKind::adam: {
      v_ = bar_beta_ * v_ + (1.0 - bar_beta_) * grad_sq_norm;
      const double corrected = v_ / (1.0 - std::pow(bar_beta_, static_cast<double>(n + 1)));
      v_hat_ = std::max(v_hat_, corrected);
      break;
    }
    case EngineKind::amsgrad:
      v_ = bar_beta_ * v_ + (1.0 - bar_beta_) * grad_sq_norm;
      v_hat_ = std::max(v_hat_, v_);
      break;
  }
  const double h = std::sqrt(v_hat_);
  if (!(h > 0.0)) throw NumericalIntegrityError("RateEngine: h_n is not positive (v_init = 0 and zero gradients)");
  return h;
}

OptimizerState::OptimizerState(ProductManifold m, ProductPoint x0, std::vector<FixedPointMap> q,
                               EngineSpec engine, double hat_beta_in)
    : manifold(std::move(m)), x(std::move(x0)), hat_beta(hat_beta_in), maps(std::move(q)) {
  require(x.size() == manifold.size(), "OptimizerState: initial point has the wrong number of factors");
  require(maps.size() == manifold.size(), "OptimizerState: need one map per factor");
  require(hat_beta >= 0.0 && hat_beta < 1.0, "OptimizerState: hat_beta must lie in [0, 1)");
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(manifold.factor(i).contains(x.parts[i].coords), "OptimizerState: x0 is outside the disk");
  }
  tau_prev = manifold.zero(x);
  engines.assign(manifold.size(), RateEngine(engine.kind, engine.bar_beta, engine.v_init));
  avg = x;
}

StepReport step(OptimizerState& s, const ProductTangent& gradient, double alpha_n, double beta_n) {
  const std::size_t count = s.manifold.size();
  require(gradient.size() == count, "step: gradient has the wrong number of factors");
  require(alpha_n > 0.0 && alpha_n < 1.0, "step: alpha_n must lie in (0, 1)");
  require(beta_n >= 0.0 && beta_n < 1.0, "step: beta_n must lie in [0, 1)");
  require(s.targets.empty() || s.targets.size() == count, "step: targets must be empty or one per factor");

  StepReport report;
  report.n = s.n;
  report.alpha = alpha_n;
  report.beta = beta_n;
  report.factors.resize(count);

  const double bias = 1.0 - std::pow(s.hat_beta, static_cast<double>(s.n + 1));
  ProductPoint next;
  next.parts.reserve(count);
  ProductTangent tau;
  tau.parts.reserve(count);

  for (std::size_t i = 0; i < count; ++i) {
    const PoincareDisk& disk = s.manifold.factor(i);
    const Point& xi = s.x.parts[i];
    const Tangent& g = gradient.parts[i];
    require(g.base == xi, "step: gradient is not anchored at the current iterate");

    const Tangent m = beta_n * s.tau_prev.parts[i] + (1.0 - beta_n) * g;
    const double grad_norm = disk.norm(g);
    const double h = s.engines[i].update(grad_norm * grad_norm, s.n);
    const Tangent direction = (-1.0 / (bias * h)) * m;

    ExpResult y = disk.exp_checked(xi, alpha_n * direction);
    if (y.clamped) ++s.clamp_count;
    Point x_next = s.maps[i](y.point);

    FactorStepReport& fr = report.factors[i];
    fr.dist_y_x = disk.dist(y.point, xi);
    fr.momentum_norm = disk.norm(m);
    fr.grad_norm = grad_norm;
    fr.h = h;
    fr.clamped = y.clamped;
    if (!s.targets.empty()) fr.residual_y = residual(s.targets[i], y.point);
    fr.y = std::move(y.point);

    tau.parts.push_back(disk.transport(xi, x_next, m));
    next.parts.push_back(std::move(x_next));
  }

  s.x = std::move(next);
  s.tau_prev = std::move(tau);
  ++s.n;
  s.avg = average_update(s.manifold, s.avg, s.x, s.n);
  return report;
}

ProductPoint average_update(const ProductManifold& manifold, const ProductPoint& avg, const ProductPoint& x,
                            std::size_t n) {
  require(n >= 1, "average_update: n must be >= 1");
  if (n == 1) return x;
  const double w = 1.0 / static_cast<double>(n);
  ProductPoint out;
  out.parts.reserve(avg.size());
  for (std::size_t i = 0; i < avg.size(); ++i) {
    const PoincareDisk& disk = manifold.factor(i);
    out.parts.push_back(disk.exp(avg.parts[i], w * disk.log(avg.parts[i], x.parts[i])));
  }
  return out;
}

}  // namespace fixopt
