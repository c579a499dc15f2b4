#include "fixopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "fixopt/errors.hpp"

namespace fixopt {

namespace {

Point random_point_at_distance(const PoincareDisk& disk, Rng& rng, const Point& from, double distance) {
  const Vector dir = rng.unit_vector(disk.dim());
  // Unit Riemannian-norm direction at `from`, scaled to the requested length.
  const Tangent v(from, (distance / PoincareDisk::conformal_factor(from)) * dir);
  return disk.exp(from, v);
}

class Fnv1a {
 public:
  void add(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < size; ++k) {
      hash_ ^= p[k];
      hash_ *= 0x100000001B3ULL;
    }
  }
  void add(double v) { add(&v, sizeof v); }
  void add(const Vector& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k) add(v[k]);
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xCBF29CE484222325ULL;
};

double sorted_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

}  // namespace

BallSystem sample_consistent_system(Rng& rng, std::size_t factors, std::size_t balls_per_factor, int dim,
                                    const SamplingGeometry& g) {
  require(factors >= 1, "sample_consistent_system: need at least one factor");
  require(balls_per_factor >= 1, "sample_consistent_system: need at least one ball per factor");
  const PoincareDisk disk(dim);
  BallSystem sys;
  sys.consistency = Consistency::consistent;
  sys.balls.resize(factors);
  ProductPoint witness;
  for (std::size_t i = 0; i < factors; ++i) {
    const Point p = disk.point(rng.in_ball(dim, g.witness_radius));
    for (std::size_t j = 0; j < balls_per_factor; ++j) {
      const Point c = random_point_at_distance(disk, rng, p, rng.uniform(0.0, g.center_spread));
      const double d = disk.dist(c, p);
      const double r = rng.uniform(d + g.slack_min, d + g.slack_max);
      sys.balls[i].push_back(make_ball(disk, c, r));
    }
    witness.parts.push_back(p);
  }
  sys.witness = std::move(witness);
  return sys;
}

BallSystem sample_inconsistent_system(Rng& rng, std::size_t factors, int dim, const SamplingGeometry& g) {
  require(factors >= 1, "sample_inconsistent_system: need at least one factor");
  const PoincareDisk disk(dim);
  BallSystem sys;
  sys.consistency = Consistency::inconsistent;
  sys.balls.resize(factors);
  for (std::size_t i = 0; i < factors; ++i) {
    const Point c1 = disk.point(rng.in_ball(dim, g.witness_radius));
    const double sep = rng.uniform(g.separation_min, g.separation_max);
    const Point c2 = random_point_at_distance(disk, rng, c1, sep);
    // Certify with the distance as evaluated, not the requested one.
    const double d = disk.dist(c1, c2);
    const double r_max = (d - g.margin) / 2.0;
    const double r1 = rng.uniform(g.radius_min, r_max);
    const double r2 = rng.uniform(g.radius_min, r_max);
    sys.balls[i].push_back(make_ball(disk, c1, r1));
    sys.balls[i].push_back(make_ball(disk, c2, r2));
  }
  return sys;
}

FixedPointMap build_target_map(const PoincareDisk& disk, const BallSystem& system, std::size_t factor) {
  require(factor < system.balls.size(), "build_target_map: factor index out of range");
  std::vector<FixedPointMap> projections;
  for (const auto& ball : system.balls[factor]) projections.push_back(projection(disk, ball));
  return compose(std::move(projections));
}

FixedPointMap build_constraint_map(const PoincareDisk& disk, const BallSystem& system, std::size_t factor,
                                   double alpha, const GeodesicBall& superset) {
  return projected_relax(build_target_map(disk, system, factor), alpha, superset);
}

std::uint64_t digest(const BallSystem& system) {
  Fnv1a h;
  for (const auto& factor : system.balls) {
    for (const auto& b : factor) {
      h.add(b.center.coords);
      h.add(b.radius);
    }
  }
  return h.value();
}

std::uint64_t digest(const ProductPoint& x) {
  Fnv1a h;
  for (const auto& p : x.parts) h.add(p.coords);
  return h.value();
}

CouplingObjective::CouplingObjective(std::size_t factors, int dim) : factors_(factors), dim_(dim) {
  require(factors >= 1, "CouplingObjective: need at least one factor");
  require(dim >= 1, "CouplingObjective: dim must be >= 1");
}

void CouplingObjective::check(const ProductPoint& x) const {
  require(x.size() == factors_, "CouplingObjective: wrong number of factors");
  for (const auto& p : x.parts) require(p.dim() == dim_, "CouplingObjective: wrong factor dimension");
}

double CouplingObjective::summand(const ProductPoint& x, std::size_t i) const {
  check(x);
  require(i < factors_, "CouplingObjective::summand: index out of range");
  const double t = x.parts[i].coords.dot(x.parts[partner(i)].coords);
  return std::exp(t) + t;
}

double CouplingObjective::value(const ProductPoint& x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < factors_; ++i) s += summand(x, i);
  return s / static_cast<double>(factors_);
}

ProductTangent CouplingObjective::stochastic_gradient(const ProductManifold& manifold, const ProductPoint& x,
                                                      std::size_t xi) const {
  check(x);
  require(xi < factors_, "stochastic_gradient: sample index out of range");
  const std::size_t j = partner(xi);
  const Vector& a = x.parts[xi].coords;
  const Vector& b = x.parts[j].coords;
  const double w = std::exp(a.dot(b)) + 1.0;

  std::vector<Vector> egrad(factors_);
  for (auto& e : egrad) e = Vector::Zero(dim_);
  egrad[xi] += w * b;
  egrad[j] += w * a;

  ProductTangent g;
  g.parts.reserve(factors_);
  for (std::size_t i = 0; i < factors_; ++i) {
    g.parts.push_back(manifold.factor(i).egrad_to_rgrad(x.parts[i], egrad[i]));
  }
  return g;
}

ProductTangent CouplingObjective::gradient(const ProductManifold& manifold, const ProductPoint& x) const {
  check(x);
  std::vector<Vector> egrad(factors_);
  for (auto& e : egrad) e = Vector::Zero(dim_);
  const double inv = 1.0 / static_cast<double>(factors_);
  for (std::size_t i = 0; i < factors_; ++i) {
    const std::size_t j = partner(i);
    const Vector& a = x.parts[i].coords;
    const Vector& b = x.parts[j].coords;
    const double w = inv * (std::exp(a.dot(b)) + 1.0);
    egrad[i] += w * b;
    egrad[j] += w * a;
  }
  ProductTangent g;
  for (std::size_t i = 0; i < factors_; ++i) {
    g.parts.push_back(manifold.factor(i).egrad_to_rgrad(x.parts[i], egrad[i]));
  }
  return g;
}

double residual_norm(const RunRow& row) {
  double s = 0.0;
  for (double r : row.residuals) s += r * r;
  return std::sqrt(s);
}

PerformanceMeasures performance_measures(std::span<const RunRecord> runs, std::size_t n) {
  require(!runs.empty(), "performance_measures: no runs");
  const std::size_t length = runs.front().rows.size();
  const std::size_t factors = runs.front().rows.empty() ? 0 : runs.front().rows.front().residuals.size();
  std::vector<double> d_terms, f_terms;
  for (const auto& run : runs) {
    require(run.rows.size() == length, "performance_measures: ragged run lengths");
    require(n < run.rows.size(), "performance_measures: iteration index beyond run length");
    d_terms.push_back(residual_norm(run.rows[n]));
    f_terms.push_back(run.rows[n].f_value);
  }
  const double samplings = static_cast<double>(runs.size());
  return {sorted_sum(std::move(d_terms)) / samplings,
          static_cast<double>(factors) * sorted_sum(std::move(f_terms)) / samplings};
}

}  // namespace fixopt
