#pragma once

// Quasinonexpansive self-maps of a single Poincare disk and the constructions
// that preserve the property: metric projections onto geodesic balls, finite
// compositions, geodesic relaxation, projected relaxation, subgradient
// projections and the resolvent of (1/2) d(., p)^2.

#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "fixopt/manifold.hpp"

namespace fixopt {

enum class MapKind {
  identity,
  projection,
  composition,
  relaxation,
  projected_relaxation,
  subgradient_projection,
  resolvent_dist_sq,
};

std::string_view to_string(MapKind kind);

/// An immutable, cheaply copyable point-to-point map on one disk.
class FixedPointMap {
 public:
  using Action = std::function<Point(const Point&)>;

  FixedPointMap(PoincareDisk disk, MapKind kind, Action action);

  Point operator()(const Point& x) const { return (*action_)(x); }
  MapKind kind() const { return kind_; }
  const PoincareDisk& disk() const { return disk_; }

 private:
  PoincareDisk disk_;
  MapKind kind_;
  std::shared_ptr<const Action> action_;
};

/// Closed ball {x : d(center, x) <= radius} in disk-metric units.
struct GeodesicBall {
  Point center;
  double radius;
};

GeodesicBall make_ball(const PoincareDisk& disk, Point center, double radius);

/// ball(0, artanh(1 - 1e-5)): the whole usable disk, used as the default
/// bounded superset C in projected_relax.
GeodesicBall usable_disk(const PoincareDisk& disk);

/// zeta(kappa, D) = sqrt|kappa| D / tanh(sqrt|kappa| D), with zeta(kappa, 0) = 1.
double zeta(double curvature, double diameter);

struct ConvexFunctionOracle {
  std::function<double(const Point&)> evaluate;
  /// Any element of the subdifferential at the argument.
  std::function<Tangent(const Point&)> subgradient;
};

/// g(x) = d(x, center) - radius, whose zero sublevel set is the geodesic ball.
ConvexFunctionOracle ball_constraint_oracle(const PoincareDisk& disk, const GeodesicBall& ball);

/// Which denominator the subgradient step uses: g(x) / |u|^2 (default) or g(x) / |u|.
enum class SubgradientStep { squared_norm, norm };

Point project_ball(const PoincareDisk& disk, const GeodesicBall& ball, const Point& x);

FixedPointMap identity_map(const PoincareDisk& disk);
FixedPointMap projection(const PoincareDisk& disk, GeodesicBall ball);

/// T = P_1 P_2 ... P_J evaluated right to left: T(x) = P_1(P_2(...P_J(x))).
FixedPointMap compose(std::vector<FixedPointMap> maps);

/// S_alpha(x) = exp_x((1 - alpha) log_x T(x)), alpha in (0, 1).
FixedPointMap relax(FixedPointMap map, double alpha);

/// Q_alpha = P_C S_alpha. The caller guarantees Fix(T) is contained in C.
FixedPointMap projected_relax(FixedPointMap map, double alpha, GeodesicBall superset);
FixedPointMap projected_relax(FixedPointMap map, double alpha);

/// P_{g,lambda}(x) = x if g(x) <= 0, else exp_x(-lambda g(x) / |u_x|^2 u_x).
/// Requires lambda in (0, 2 / zeta(-4, working_diameter)).
FixedPointMap subgradient_projection(const PoincareDisk& disk, ConvexFunctionOracle g, double lambda,
                                     double working_diameter,
                                     SubgradientStep step = SubgradientStep::squared_norm);

/// J_lambda(x) = exp_x(lambda / (1 + lambda) log_x p).
FixedPointMap resolvent_dist_sq(const PoincareDisk& disk, Point anchor, double lambda);

/// d(x, T(x)).
double residual(const FixedPointMap& map, const Point& x);

}  // namespace fixopt
