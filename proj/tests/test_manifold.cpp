#include <gtest/gtest.h>

#include <cmath>

#include "fixopt/errors.hpp"
#include "fixopt/fixmaps.hpp"
#include "fixopt/manifold.hpp"
#include "oracles.hpp"

using namespace fixopt;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// A point with |x|^2 = 0.5.
Point half_point() { return Point(vec2(std::sqrt(0.5), 0.0)); }

const PoincareDisk disk2(2);

}  // namespace

TEST(PoincareDisk, RejectsInvalidConstruction) {
  EXPECT_THROW(PoincareDisk(0), ContractViolation);
  EXPECT_THROW(PoincareDisk(2, 0.0), ContractViolation);
  EXPECT_THROW(PoincareDisk(2, 1.0), ContractViolation);
  EXPECT_THROW(disk2.point(vec2(1.0, 0.0)), ContractViolation);
  EXPECT_THROW(disk2.point(Vector::Zero(3)), ContractViolation);
  EXPECT_NO_THROW(disk2.point(vec2(0.99, 0.0)));
}

TEST(PoincareDisk, InnerProduct) {
  const Point o = disk2.origin();
  EXPECT_DOUBLE_EQ(disk2.inner(Tangent(o, vec2(1, 0)), Tangent(o, vec2(1, 0))), 1.0);
  const Point h = half_point();
  EXPECT_NEAR(disk2.inner(Tangent(h, vec2(1, 0)), Tangent(h, vec2(1, 0))), 4.0, 1e-12);
  EXPECT_EQ(disk2.inner(Tangent(h, vec2(0, 0)), Tangent(h, vec2(0.3, -2))), 0.0);
  EXPECT_THROW(disk2.inner(Tangent(o, vec2(1, 0)), Tangent(h, vec2(1, 0))), ContractViolation);
}

TEST(PoincareDisk, Norm) {
  EXPECT_DOUBLE_EQ(disk2.norm(Tangent(disk2.origin(), vec2(3, 4))), 5.0);
  EXPECT_NEAR(disk2.norm(Tangent(half_point(), vec2(3, 4))), 10.0, 1e-12);
  EXPECT_EQ(disk2.norm(disk2.zero(half_point())), 0.0);
}

TEST(PoincareDisk, DistanceMatchesRadialQuadrature) {
  const Point o = disk2.origin();
  EXPECT_EQ(disk2.dist(half_point(), half_point()), 0.0);
  for (double r : {0.6, 0.9}) {
    const Point p(vec2(r, 0));
    const double quad = oracle::segment_length(o.coords, p.coords);
    EXPECT_NEAR(disk2.dist(o, p), quad, 1e-6);
  }
  EXPECT_NEAR(disk2.dist(o, Point(vec2(0.6, 0))), 0.693147, 1e-6);
  EXPECT_NEAR(disk2.dist(o, Point(vec2(0.9, 0))), 1.472219, 1e-6);
}

TEST(PoincareDisk, DistanceOnLinesThroughOriginAgreesWithQuadrature) {
  // Two points on the same diameter: the straight segment is the geodesic.
  Rng rng(11);
  for (int k = 0; k < 50; ++k) {
    const Vector dir = rng.unit_vector(3);
    const Point p(rng.uniform(-0.9, 0.9) * dir);
    const Point q(rng.uniform(-0.9, 0.9) * dir);
    const PoincareDisk d3(3);
    EXPECT_NEAR(d3.dist(p, q), oracle::segment_length(p.coords, q.coords, 4000), 1e-6);
  }
}

TEST(PoincareDisk, ExpExamples) {
  const Point h = half_point();
  EXPECT_EQ(disk2.exp(h, disk2.zero(h)), h);
  const Point y = disk2.exp(disk2.origin(), Tangent(disk2.origin(), vec2(0.5, 0)));
  EXPECT_NEAR(y.coords[0], std::tanh(0.5), 1e-15);
  EXPECT_NEAR(y.coords[0], 0.462117, 1e-6);
  EXPECT_EQ(y.coords[1], 0.0);
  EXPECT_THROW(disk2.exp(h, disk2.zero(disk2.origin())), ContractViolation);
}

TEST(PoincareDisk, ExpMatchesGeodesicOde) {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const Point x = oracle::random_point(rng, 2, 0.7);
    const Tangent v = oracle::random_tangent(rng, x, 2.0);
    const auto s = oracle::integrate_geodesic(x.coords, v.vec, Vector::Zero(2));
    EXPECT_LT((disk2.exp(x, v).coords - s.x).norm(), 1e-9);
  }
}

TEST(PoincareDisk, ExpPreservesLength) {
  Rng rng(6);
  for (int k = 0; k < 200; ++k) {
    const Point x = oracle::random_point(rng, 2, 0.9);
    const Tangent v = oracle::random_tangent(rng, x, 5.0);
    EXPECT_NEAR(disk2.dist(x, disk2.exp(x, v)), disk2.norm(v), 1e-9);
  }
}

TEST(PoincareDisk, ExpClampsNearBoundary) {
  const Point o = disk2.origin();
  const ExpResult r = disk2.exp_checked(o, Tangent(o, vec2(40.0, 0.0)));
  EXPECT_TRUE(r.clamped);
  EXPECT_NEAR(r.point.coords.norm(), 1.0 - kDefaultBoundaryEps, 1e-15);
  EXPECT_TRUE(r.point.coords.allFinite());
  EXPECT_FALSE(disk2.exp_checked(o, Tangent(o, vec2(1.0, 0.0))).clamped);
}

TEST(PoincareDisk, LogExamples) {
  const Point h = half_point();
  EXPECT_EQ(disk2.log(h, h).vec.norm(), 0.0);
  const Tangent l = disk2.log(disk2.origin(), Point(vec2(std::tanh(0.5), 0)));
  EXPECT_NEAR(l.vec[0], 0.5, 1e-12);
  EXPECT_NEAR(l.vec[1], 0.0, 1e-15);
}

TEST(PoincareDisk, LogNormIsDistance) {
  Rng rng(7);
  for (int k = 0; k < 200; ++k) {
    const Point x = oracle::random_point(rng, 4, 0.9);
    const Point y = oracle::random_point(rng, 4, 0.9);
    const PoincareDisk d4(4);
    EXPECT_NEAR(d4.norm(d4.log(x, y)), d4.dist(x, y), 1e-10);
  }
}

TEST(PoincareDisk, ExpLogRoundTrip) {
  Rng rng(8);
  for (int k = 0; k < 1000; ++k) {
    const int dim = 1 + static_cast<int>(rng.index(5));
    const PoincareDisk d(dim);
    const Point x = oracle::random_point(rng, dim, 0.9);
    const Tangent v = oracle::random_tangent(rng, x, 5.0);
    EXPECT_LE((d.log(x, d.exp(x, v)).vec - v.vec).norm(), 1e-9);
  }
}

TEST(PoincareDisk, TriangleInequality) {
  Rng rng(9);
  for (int k = 0; k < 1000; ++k) {
    const Point a = oracle::random_point(rng, 3, 0.95);
    const Point b = oracle::random_point(rng, 3, 0.95);
    const Point c = oracle::random_point(rng, 3, 0.95);
    const PoincareDisk d(3);
    EXPECT_LE(d.dist(a, c), d.dist(a, b) + d.dist(b, c) + 1e-12);
  }
}

TEST(PoincareDisk, MobiusAndGyrationIdentities) {
  Rng rng(10);
  for (int k = 0; k < 100; ++k) {
    const Vector a = rng.in_ball(3, 0.9), b = rng.in_ball(3, 0.9), w = rng.in_ball(3, 0.9);
    // Left cancellation and the defining gyro-associative law.
    EXPECT_LT((mobius_add(-a, mobius_add(a, b)) - b).norm(), 1e-12);
    const Vector lhs = mobius_add(a, mobius_add(b, w));
    const Vector rhs = mobius_add(mobius_add(a, b), gyration(a, b, w));
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
    EXPECT_NEAR(gyration(a, b, w).norm(), w.norm(), 1e-12);
  }
}

TEST(PoincareDisk, TransportIdentityAndIsometry) {
  Rng rng(12);
  const PoincareDisk d(3);
  for (int k = 0; k < 1000; ++k) {
    const Point x = oracle::random_point(rng, 3, 0.9);
    const Point y = oracle::random_point(rng, 3, 0.9);
    const Tangent u = oracle::random_tangent(rng, x, 3.0);
    const Tangent v = oracle::random_tangent(rng, x, 3.0);
    const Tangent pu = d.transport(x, y, u);
    const Tangent pv = d.transport(x, y, v);
    EXPECT_EQ(pu.base, y);
    EXPECT_NEAR(d.norm(pu), d.norm(u), 1e-9);
    EXPECT_NEAR(d.inner(pu, pv), d.inner(u, v), 1e-9);
    EXPECT_LE((d.transport(y, x, pu).vec - u.vec).norm(), 1e-9);
  }
  const Point x = oracle::random_point(rng, 3, 0.5);
  const Tangent u = oracle::random_tangent(rng, x, 1.0);
  EXPECT_EQ(d.transport(x, x, u).vec, u.vec);
}

TEST(PoincareDisk, TransportMatchesParallelTransportOde) {
  Rng rng(13);
  const PoincareDisk d(3);
  for (int k = 0; k < 20; ++k) {
    const Point x = oracle::random_point(rng, 3, 0.7);
    const Tangent v = oracle::random_tangent(rng, x, 2.0);
    const Tangent u = oracle::random_tangent(rng, x, 1.0);
    const auto s = oracle::integrate_geodesic(x.coords, v.vec, u.vec);
    const Point y = d.exp(x, v);
    EXPECT_LT((d.transport(x, y, u).vec - s.w).norm(), 1e-8);
  }
}

TEST(PoincareDisk, EuclideanToRiemannianGradient) {
  const Point o = disk2.origin();
  EXPECT_EQ(disk2.egrad_to_rgrad(o, vec2(1, 0)).vec, vec2(1, 0));
  const Tangent r = disk2.egrad_to_rgrad(half_point(), vec2(1, 0));
  EXPECT_NEAR(r.vec[0], 0.25, 1e-15);
  EXPECT_EQ(disk2.egrad_to_rgrad(o, vec2(0, 0)).vec.norm(), 0.0);
  // <rgrad, v>_x = <g, v>_E.
  Rng rng(14);
  for (int k = 0; k < 50; ++k) {
    const Point x = oracle::random_point(rng, 2, 0.9);
    const Vector g = rng.unit_vector(2);
    const Tangent v = oracle::random_tangent(rng, x, 1.0);
    EXPECT_NEAR(disk2.inner(disk2.egrad_to_rgrad(x, g), v), g.dot(v.vec), 1e-12);
  }
}

TEST(PoincareDisk, ZetaComparisonInequality) {
  // d(z,y)^2 <= zeta d(z,x)^2 + d(x,y)^2 - 2 <log_x z, log_x y>_x with kappa = -4,
  // for triangles in a ball of diameter D.
  Rng rng(15);
  for (double diameter : {0.5, 1.0, 2.0}) {
    const PoincareDisk d(2);
    const double z = zeta(PoincareDisk::kCurvature, diameter);
    const Point c = oracle::random_point(rng, 2, 0.3);
    auto draw = [&] { return d.exp(c, oracle::random_tangent(rng, c, diameter / 2.0)); };
    for (int k = 0; k < 1000; ++k) {
      const Point x = draw(), y = draw(), zz = draw();
      const double lhs = std::pow(d.dist(zz, y), 2);
      const double rhs = z * std::pow(d.dist(zz, x), 2) + std::pow(d.dist(x, y), 2) -
                         2.0 * d.inner(d.log(x, zz), d.log(x, y));
      EXPECT_LE(lhs, rhs + 1e-10);
    }
  }
}

TEST(ProductManifold, LiftsFactorOperations) {
  Rng rng(16);
  const PoincareDisk d(2);
  const ProductManifold single(1, d);
  const Point a = oracle::random_point(rng, 2, 0.8), b = oracle::random_point(rng, 2, 0.8);
  EXPECT_DOUBLE_EQ(single.dist(ProductPoint{{a}}, ProductPoint{{b}}), d.dist(a, b));

  const ProductManifold triple(3, d);
  const ProductPoint aa{{a, a, a}}, bb{{b, b, b}};
  EXPECT_NEAR(triple.dist(aa, bb), std::sqrt(3.0) * d.dist(a, b), 1e-14);

  ProductPoint x, y;
  ProductTangent u, v;
  for (int i = 0; i < 3; ++i) {
    x.parts.push_back(oracle::random_point(rng, 2, 0.8));
    y.parts.push_back(oracle::random_point(rng, 2, 0.8));
    u.parts.push_back(oracle::random_tangent(rng, x.parts.back(), 2.0));
    v.parts.push_back(oracle::random_tangent(rng, x.parts.back(), 2.0));
  }
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += d.inner(u.parts[i], v.parts[i]);
  EXPECT_NEAR(triple.inner(u, v), sum, 1e-14);

  const ProductPoint ex = triple.exp(x, u);
  const ProductTangent lg = triple.log(x, ex);
  for (int i = 0; i < 3; ++i) EXPECT_LT((lg.parts[i].vec - u.parts[i].vec).norm(), 1e-9);
  EXPECT_NEAR(triple.norm(triple.transport(x, y, u)), triple.norm(u), 1e-9);

  EXPECT_THROW(triple.dist(aa, ProductPoint{{a}}), ContractViolation);
  EXPECT_THROW(ProductManifold(std::vector<PoincareDisk>{}), ContractViolation);
}
