#include <gtest/gtest.h>

#include <cmath>

#include "fixopt/errors.hpp"
#include "fixopt/optimizer.hpp"
#include "fixopt/problems.hpp"
#include "oracles.hpp"

using namespace fixopt;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

const PoincareDisk disk2(2);

// A consistent two-factor problem driven by the coupling objective.
struct Fixture {
  ProductManifold manifold{3, disk2};
  BallSystem system;
  std::vector<FixedPointMap> maps;
  std::vector<FixedPointMap> targets;
  GeodesicBall superset;
  ProductPoint x0;

  explicit Fixture(std::uint64_t seed, double superset_radius = 0.0) {
    Rng rng(seed);
    system = sample_consistent_system(rng, 3, 3, 2);
    superset = superset_radius > 0.0 ? make_ball(disk2, disk2.origin(), superset_radius) : usable_disk(disk2);
    for (std::size_t i = 0; i < 3; ++i) {
      maps.push_back(build_constraint_map(disk2, system, i, 0.5, superset));
      targets.push_back(build_target_map(disk2, system, i));
      x0.parts.push_back(Point(rng.in_ball(2, 0.8)));
    }
  }
};

}  // namespace

TEST(Schedule, Values) {
  EXPECT_EQ(Schedule::constant(0.01).at(1), 0.01);
  EXPECT_EQ(Schedule::constant(0.01).at(700), 0.01);
  EXPECT_NEAR(Schedule::power(0.1, 0.5).at(4), 0.05, 1e-15);
  EXPECT_THROW(Schedule::constant(0.01).at(0), ContractViolation);
  const Schedule p = Schedule::power(0.1, 0.5);
  for (std::size_t n = 1; n < 100; ++n) EXPECT_GE(p.at(n), p.at(n + 1));
  EXPECT_NEAR(BetaSchedule::geometric(0.5).at(3), 0.125, 1e-15);
  EXPECT_EQ(BetaSchedule::constant(0.9).at(10), 0.9);
  for (std::size_t n = 1; n < 200; ++n) {
    const double b = BetaSchedule::geometric(0.9).at(n);
    EXPECT_GE(b, 0.0);
    EXPECT_LT(b, 1.0);
  }
}

TEST(RateEngine, Examples) {
  RateEngine adam(EngineKind::adam, 0.999, 0.0);
  EXPECT_NEAR(adam.update(4.0, 0), 2.0, 1e-12);
  EXPECT_NEAR(adam.v(), 0.004, 1e-15);
  RateEngine ams(EngineKind::amsgrad, 0.999, 0.0);
  EXPECT_NEAR(ams.update(4.0, 0), std::sqrt(0.004), 1e-15);
  EXPECT_NEAR(std::sqrt(0.004), 0.063246, 1e-6);
  RateEngine sgd(EngineKind::sgd);
  EXPECT_EQ(sgd.update(123.0, 0), 1.0);
  EXPECT_EQ(sgd.update(0.0, 1), 1.0);
  RateEngine ada(EngineKind::adagrad, 0.999, 0.0);
  ada.update(9.0, 0);
  EXPECT_NEAR(ada.update(16.0, 1), 5.0, 1e-15);
}

TEST(RateEngine, PositivityAndGuards) {
  RateEngine guarded(EngineKind::amsgrad);
  EXPECT_GT(guarded.update(0.0, 0), 0.0);
  RateEngine unguarded(EngineKind::adam, 0.999, 0.0);
  EXPECT_THROW(unguarded.update(0.0, 0), NumericalIntegrityError);
  EXPECT_THROW(RateEngine(EngineKind::adam, 1.0), ContractViolation);
  EXPECT_THROW(guarded.update(-1.0, 1), ContractViolation);
}

TEST(RateEngine, MonotoneForAdaptiveKinds) {
  Rng rng(31);
  for (EngineKind kind : {EngineKind::adagrad, EngineKind::adam, EngineKind::amsgrad}) {
    RateEngine e(kind);
    double prev = 0.0;
    for (std::size_t n = 0; n < 2000; ++n) {
      // Heavy-tailed squared norms, including long runs of zeros.
      const double g = n % 300 < 150 ? std::pow(rng.uniform(), 4) * 50 : 0.0;
      const double h = e.update(g, n);
      EXPECT_GE(h, prev);
      EXPECT_GT(h, 0.0);
      prev = h;
    }
  }
}

TEST(Step, OriginExample) {
  const ProductManifold single(1, disk2);
  const ProductPoint x0{{disk2.origin()}};
  OptimizerState s(single, x0, {identity_map(disk2)}, {EngineKind::sgd}, 0.0);
  const ProductTangent g{{Tangent(disk2.origin(), vec2(1, 0))}};
  const StepReport r = step(s, g, 0.01, 0.0);
  EXPECT_EQ(r.n, 0u);
  EXPECT_NEAR(r.factors[0].y.coords[0], -std::tanh(0.01), 1e-15);
  EXPECT_NEAR(r.factors[0].y.coords[0], -0.0099997, 1e-7);
  EXPECT_EQ(r.factors[0].y.coords[1], 0.0);
  EXPECT_EQ(s.x.parts[0], r.factors[0].y);
  EXPECT_EQ(s.n, 1u);
  EXPECT_EQ(s.tau_prev.parts[0].base, s.x.parts[0]);
}

TEST(Step, StationaryAtFixedPoint) {
  Fixture f(32);
  OptimizerState s(f.manifold, *f.system.witness, f.maps, {EngineKind::adam}, 0.9);
  const ProductPoint w = *f.system.witness;
  for (int k = 0; k < 5; ++k) step(s, f.manifold.zero(s.x), 0.01, 0.9);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LT((s.x.parts[i].coords - w.parts[i].coords).norm(), 1e-12);
}

TEST(Step, Contracts) {
  Fixture f(33);
  OptimizerState s(f.manifold, f.x0, f.maps, {EngineKind::sgd}, 0.0);
  const ProductTangent z = f.manifold.zero(s.x);
  EXPECT_THROW(step(s, z, 0.0, 0.0), ContractViolation);
  EXPECT_THROW(step(s, z, 1.0, 0.0), ContractViolation);
  EXPECT_THROW(step(s, z, 0.1, 1.0), ContractViolation);
  EXPECT_THROW(step(s, ProductTangent{{z.parts[0]}}, 0.1, 0.0), ContractViolation);
  EXPECT_THROW(OptimizerState(f.manifold, f.x0, f.maps, {EngineKind::sgd}, 1.0), ContractViolation);
}

// Runs the coupling objective with the given engine and checks the per-step
// run invariants.
void check_run_invariants(EngineKind kind, double hat_beta, const Schedule& alpha, const BetaSchedule& beta) {
  Fixture f(34, 1.2);
  const CouplingObjective obj(3, 2);
  OptimizerState s(f.manifold, f.x0, f.maps, {kind}, hat_beta);
  s.targets = f.targets;
  Rng rng(35);
  std::vector<double> prev_h(3, 0.0);
  std::vector<double> max_g(3, 0.0);
  for (std::size_t n = 0; n < 400; ++n) {
    const ProductTangent g = obj.stochastic_gradient(f.manifold, s.x, rng.index(3));
    const double a = alpha.at(n + 1), b = beta.at(n + 1);
    const double bias = 1.0 - std::pow(hat_beta, static_cast<double>(n + 1));
    const StepReport r = step(s, g, a, b);
    for (std::size_t i = 0; i < 3; ++i) {
      const FactorStepReport& fr = r.factors[i];
      max_g[i] = std::max(max_g[i], fr.grad_norm);
      EXPECT_NEAR(fr.dist_y_x, a * fr.momentum_norm / (bias * fr.h), 1e-9);
      if (kind != EngineKind::sgd) {
        EXPECT_GE(fr.h, prev_h[i]);
      }
      prev_h[i] = fr.h;
      EXPECT_LE(fr.momentum_norm, max_g[i] + 1e-9);
      EXPECT_LE(disk2.dist(f.superset.center, s.x.parts[i]), f.superset.radius + 1e-12);
      EXPECT_NEAR(fr.residual_y, residual(f.targets[i], fr.y), 0.0);
      EXPECT_EQ(s.tau_prev.parts[i].base, s.x.parts[i]);
    }
  }
}

TEST(Step, RunInvariantsAdam) {
  check_run_invariants(EngineKind::adam, 0.9, Schedule::constant(0.01), BetaSchedule::constant(0.9));
}
TEST(Step, RunInvariantsAmsgrad) {
  check_run_invariants(EngineKind::amsgrad, 0.0, Schedule::power(0.1, 0.5), BetaSchedule::geometric(0.9));
}
TEST(Step, RunInvariantsAdagrad) {
  check_run_invariants(EngineKind::adagrad, 0.0, Schedule::constant(0.01), BetaSchedule::constant(0.0));
}
TEST(Step, RunInvariantsSgd) {
  check_run_invariants(EngineKind::sgd, 0.0, Schedule::power(0.1, 0.5), BetaSchedule::constant(0.0));
}

TEST(Step, ReducesToPlainRiemannianSgd) {
  // Independent loop: x <- exp_x(-alpha G) written directly from the Mobius
  // formulas, with no constraint (identity map).
  const ProductManifold single(1, disk2);
  const CouplingObjective obj(1, 2);
  Rng start(36);
  const ProductPoint x0{{Point(start.in_ball(2, 0.6))}};
  OptimizerState s(single, x0, {identity_map(disk2)}, {EngineKind::sgd}, 0.0);
  Vector ref = x0.parts[0].coords;
  for (std::size_t n = 1; n <= 300; ++n) {
    const double a = 0.1 / std::sqrt(static_cast<double>(n));
    const ProductTangent g = obj.stochastic_gradient(single, s.x, 0);
    // Reference gradient: F(x) = exp(|x|^2) + |x|^2, egrad = 2(e^{|x|^2} + 1) x.
    const double q = ref.squaredNorm();
    const Vector egrad = 2.0 * (std::exp(q) + 1.0) * ref;
    const double lam = 1.0 / (1.0 - q);
    const Vector rgrad = egrad / (lam * lam);
    const Vector v = -a * rgrad;
    const double vn = v.norm();
    if (vn > 0.0) {
      const Vector u = std::tanh(lam * vn) * v / vn;
      const double xy = ref.dot(u), uu = u.squaredNorm();
      ref = ((1 + 2 * xy + uu) * ref + (1 - q) * u) / (1 + 2 * xy + q * uu);
    }
    step(s, g, a, 0.0);
    EXPECT_LT((s.x.parts[0].coords - ref).norm(), 1e-12) << "step " << n;
  }
}

TEST(AverageUpdate, Examples) {
  const ProductManifold single(1, disk2);
  const ProductPoint a{{Point(vec2(0.3, 0.1))}}, b{{Point(vec2(-0.2, 0.5))}};
  EXPECT_EQ(average_update(single, a, b, 1), b);
  const ProductPoint same = average_update(single, a, a, 7);
  EXPECT_LT((same.parts[0].coords - a.parts[0].coords).norm(), 1e-15);
  EXPECT_THROW(average_update(single, a, b, 0), ContractViolation);
  const ProductPoint mid = average_update(single, a, b, 2);
  EXPECT_NEAR(disk2.dist(a.parts[0], mid.parts[0]), 0.5 * disk2.dist(a.parts[0], b.parts[0]), 1e-12);
}

TEST(AverageUpdate, RadialArithmeticMean) {
  // Points on one diameter; the signed arc-length coordinate from the origin
  // is found by quadrature and the running average must be its mean.
  const ProductManifold single(1, disk2);
  Rng rng(37);
  const Vector dir = rng.unit_vector(2);
  auto coord = [&](const Vector& p) {
    const double s = oracle::segment_length(Vector::Zero(2), p, 4000);
    return p.dot(dir) >= 0 ? s : -s;
  };
  ProductPoint avg;
  double sum = 0.0;
  for (std::size_t n = 1; n <= 40; ++n) {
    const ProductPoint x{{Point(rng.uniform(-0.95, 0.95) * dir)}};
    sum += coord(x.parts[0].coords);
    avg = n == 1 ? x : average_update(single, avg, x, n);
    EXPECT_NEAR(coord(avg.parts[0].coords), sum / static_cast<double>(n), 1e-6);
  }
}

TEST(Step, RunningAverageTracked) {
  Fixture f(38);
  const CouplingObjective obj(3, 2);
  OptimizerState s(f.manifold, f.x0, f.maps, {EngineKind::sgd}, 0.0);
  Rng rng(39);
  ProductPoint expected = f.x0;
  for (std::size_t n = 1; n <= 20; ++n) {
    step(s, obj.stochastic_gradient(f.manifold, s.x, rng.index(3)), 0.05, 0.0);
    expected = average_update(f.manifold, expected, s.x, n);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s.avg.parts[i], expected.parts[i]);
  }
}
