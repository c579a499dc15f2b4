#include "fixopt/fixmaps.hpp"

#include <cmath>
#include <string>

#include "fixopt/errors.hpp"

namespace fixopt {

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::identity: return "identity";
    case MapKind::projection: return "projection";
    case MapKind::composition: return "composition";
    case MapKind::relaxation: return "relaxation";
    case MapKind::projected_relaxation: return "projected_relaxation";
    case MapKind::subgradient_projection: return "subgradient_projection";
    case MapKind::resolvent_dist_sq: return "resolvent_dist_sq";
  }
  return "unknown";
}

FixedPointMap::FixedPointMap(PoincareDisk disk, MapKind kind, Action action)
    : disk_(disk), kind_(kind), action_(std::make_shared<const Action>(std::move(action))) {}

GeodesicBall make_ball(const PoincareDisk& disk, Point center, double radius) {
  require(radius > 0.0 && std::isfinite(radius), "geodesic ball radius must be positive");
  require(disk.contains(center.coords), "geodesic ball center must lie inside the disk");
  return GeodesicBall{std::move(center), radius};
}

GeodesicBall usable_disk(const PoincareDisk& disk) {
  return GeodesicBall{disk.origin(), std::atanh(1.0 - 1e-5)};
}

double zeta(double curvature, double diameter) {
  const double t = std::sqrt(std::abs(curvature)) * diameter;
  if (t == 0.0) return 1.0;
  return t / std::tanh(t);
}

ConvexFunctionOracle ball_constraint_oracle(const PoincareDisk& disk, const GeodesicBall& ball) {
  ConvexFunctionOracle g;
  g.evaluate = [disk, ball](const Point& x) { return disk.dist(x, ball.center) - ball.radius; };
  // grad d(., c) = -log_x(c) / d(x, c) away from c; 0 is a subgradient at c.
  g.subgradient = [disk, ball](const Point& x) {
    const double d = disk.dist(x, ball.center);
    if (d == 0.0) return disk.zero(x);
    return (-1.0 / d) * disk.log(x, ball.center);
  };
  return g;
}

Point project_ball(const PoincareDisk& disk, const GeodesicBall& ball, const Point& x) {
  const Tangent toward = disk.log(ball.center, x);
  const double d = disk.norm(toward);
  if (d <= ball.radius) return x;
  return disk.exp(ball.center, (ball.radius / d) * toward);
}

FixedPointMap identity_map(const PoincareDisk& disk) {
  return FixedPointMap(disk, MapKind::identity, [](const Point& x) { return x; });
}

FixedPointMap projection(const PoincareDisk& disk, GeodesicBall ball) {
  return FixedPointMap(disk, MapKind::projection,
                       [disk, ball = std::move(ball)](const Point& x) { return project_ball(disk, ball, x); });
}

FixedPointMap compose(std::vector<FixedPointMap> maps) {
  require(!maps.empty(), "compose: empty list of maps");
  const PoincareDisk disk = maps.front().disk();
  for (const auto& m : maps) require(m.disk() == disk, "compose: maps act on different disks");
  return FixedPointMap(disk, MapKind::composition, [maps = std::move(maps)](const Point& x) {
    Point y = x;
    for (auto it = maps.rbegin(); it != maps.rend(); ++it) y = (*it)(y);
    return y;
  });
}

FixedPointMap relax(FixedPointMap map, double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "relax: alpha must lie in (0, 1)");
  const PoincareDisk disk = map.disk();
  return FixedPointMap(disk, MapKind::relaxation, [disk, map = std::move(map), alpha](const Point& x) {
    const Point tx = map(x);
    if (tx == x) return x;
    return disk.exp(x, (1.0 - alpha) * disk.log(x, tx));
  });
}

FixedPointMap projected_relax(FixedPointMap map, double alpha, GeodesicBall superset) {
  const PoincareDisk disk = map.disk();
  require(disk.contains(superset.center.coords) && superset.radius > 0.0,
          "projected_relax: invalid superset ball");
  FixedPointMap relaxed = relax(std::move(map), alpha);
  return FixedPointMap(disk, MapKind::projected_relaxation,
                       [disk, relaxed = std::move(relaxed), superset = std::move(superset)](const Point& x) {
                         return project_ball(disk, superset, relaxed(x));
                       });
}

FixedPointMap projected_relax(FixedPointMap map, double alpha) {
  const GeodesicBall c = usable_disk(map.disk());
  return projected_relax(std::move(map), alpha, c);
}

FixedPointMap subgradient_projection(const PoincareDisk& disk, ConvexFunctionOracle g, double lambda,
                                     double working_diameter, SubgradientStep step) {
  require(working_diameter >= 0.0, "subgradient_projection: working diameter must be nonnegative");
  const double upper = 2.0 / zeta(PoincareDisk::kCurvature, working_diameter);
  require(lambda > 0.0 && lambda < upper,
          "subgradient_projection: lambda must lie in (0, " + std::to_string(upper) + ")");
  return FixedPointMap(disk, MapKind::subgradient_projection,
                       [disk, g = std::move(g), lambda, step](const Point& x) {
                         const double value = g.evaluate(x);
                         if (value <= 0.0) return x;
                         const Tangent u = g.subgradient(x);
                         const double un = disk.norm(u);
                         if (un == 0.0) {
                           throw OracleError("subgradient projection: zero subgradient where g(x) > 0");
                         }
                         const double denom = step == SubgradientStep::squared_norm ? un * un : un;
                         return disk.exp(x, (-lambda * value / denom) * u);
                       });
}

FixedPointMap resolvent_dist_sq(const PoincareDisk& disk, Point anchor, double lambda) {
  require(lambda > 0.0, "resolvent_dist_sq: lambda must be positive");
  require(disk.contains(anchor.coords), "resolvent_dist_sq: anchor must lie inside the disk");
  const double t = lambda / (1.0 + lambda);
  return FixedPointMap(disk, MapKind::resolvent_dist_sq, [disk, anchor = std::move(anchor), t](const Point& x) {
    if (x == anchor) return x;
    return disk.exp(x, t * disk.log(x, anchor));
  });
}

double residual(const FixedPointMap& map, const Point& x) { return map.disk().dist(x, map(x)); }

}  // namespace fixopt
