#pragma once

// Random geodesic-ball feasibility systems on (D^m)^I, the pairwise coupling
// objective f(x) = (1/I) sum_i {exp(<x^i, x^j>) + <x^i, x^j>}, j = i + 1 mod I,
// its single-summand stochastic gradient, and the D_n / F_n measures.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fixopt/fixmaps.hpp"
#include "fixopt/manifold.hpp"
#include "fixopt/rng.hpp"
#include "fixopt/run_record.hpp"

namespace fixopt {

enum class Consistency { consistent, inconsistent };

/// Sampling law constants for the ball systems (geodesic-distance units; the
/// witness radius is Euclidean).
struct SamplingGeometry {
  double witness_radius = 0.5;
  double center_spread = 0.4;
  double slack_min = 0.05;
  double slack_max = 0.5;
  double separation_min = 1.0;
  double separation_max = 1.5;
  double radius_min = 0.1;
  double margin = 0.1;
};

struct BallSystem {
  std::vector<std::vector<GeodesicBall>> balls;  // balls[i] lists factor i's J^i balls
  Consistency consistency = Consistency::consistent;
  std::optional<ProductPoint> witness;  // present iff consistent
};

BallSystem sample_consistent_system(Rng& rng, std::size_t factors, std::size_t balls_per_factor, int dim,
                                    const SamplingGeometry& geometry = {});
BallSystem sample_inconsistent_system(Rng& rng, std::size_t factors, int dim,
                                      const SamplingGeometry& geometry = {});

/// T^i = P_1 P_2 ... P_J for factor i.
FixedPointMap build_target_map(const PoincareDisk& disk, const BallSystem& system, std::size_t factor);

/// Q^i = projected_relax(T^i, alpha, superset).
FixedPointMap build_constraint_map(const PoincareDisk& disk, const BallSystem& system, std::size_t factor,
                                   double alpha, const GeodesicBall& superset);

/// FNV-1a over the raw bytes of every center and radius.
std::uint64_t digest(const BallSystem& system);
std::uint64_t digest(const ProductPoint& x);

class CouplingObjective {
 public:
  CouplingObjective(std::size_t factors, int dim);

  std::size_t factors() const { return factors_; }
  int dim() const { return dim_; }

  /// Coupling partner of factor i (0-based): (i + 1) mod I.
  std::size_t partner(std::size_t i) const { return (i + 1) % factors_; }

  /// F(x, i) = exp(<x^i, x^j>) + <x^i, x^j>.
  double summand(const ProductPoint& x, std::size_t i) const;
  double value(const ProductPoint& x) const;

  /// Riemannian gradient of F(., xi); nonzero only in blocks xi and partner(xi).
  ProductTangent stochastic_gradient(const ProductManifold& manifold, const ProductPoint& x,
                                     std::size_t xi) const;
  /// Riemannian gradient of f.
  ProductTangent gradient(const ProductManifold& manifold, const ProductPoint& x) const;

 private:
  void check(const ProductPoint& x) const;

  std::size_t factors_;
  int dim_;
};

struct PerformanceMeasures {
  double d_n = 0.0;
  double f_n = 0.0;
};

/// D_n = (1/S) sum_s sqrt(sum_i residual^2), F_n = (I/S) sum_s f. Sums run
/// over sorted terms, so the result does not depend on sampling order.
PerformanceMeasures performance_measures(std::span<const RunRecord> runs, std::size_t n);

/// sqrt(sum_i residual_i^2) for one row.
double residual_norm(const RunRow& row);

}  // namespace fixopt
