#pragma once

// Closed-form geometry of the Poincare disk D^m = {x : |x| < 1} with metric
//   <u, v>_x = lambda_x^2 <u, v>_E,   lambda_x = 1 / (1 - |x|^2),
// and of finite Cartesian products of such disks.
//
// This conformal factor is half the usual 2 / (1 - |x|^2), so the sectional
// curvature is -4 and every distance is half the textbook Poincare distance.
// Geodesics (as coordinate curves) are unchanged by the constant rescaling.

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace fixopt {

using Vector = Eigen::VectorXd;

inline constexpr double kDefaultBoundaryEps = 1e-10;

struct Point {
  Vector coords;

  Point() = default;
  explicit Point(Vector c) : coords(std::move(c)) {}

  Eigen::Index dim() const { return coords.size(); }
  friend bool operator==(const Point& a, const Point& b) {
    return a.coords.size() == b.coords.size() && a.coords == b.coords;
  }
};

/// A tangent vector together with the point it is anchored at.
struct Tangent {
  Point base;
  Vector vec;

  Tangent() = default;
  Tangent(Point b, Vector v) : base(std::move(b)), vec(std::move(v)) {}
};

/// Same-base arithmetic on tangents. Mismatched bases throw ContractViolation.
Tangent operator+(const Tangent& a, const Tangent& b);
Tangent operator*(double s, const Tangent& u);

struct ExpResult {
  Point point;
  bool clamped = false;
};

/// Mobius addition a (+) b on the unit ball.
Vector mobius_add(const Vector& a, const Vector& b);

/// Gyration gyr[a, b] w, the rotation with a (+) (b (+) w) = (a (+) b) (+) gyr[a,b]w.
Vector gyration(const Vector& a, const Vector& b, const Vector& w);

/// Inverse hyperbolic tangent, saturated so that r >= 1 - eps maps to a finite value.
double artanh_guarded(double r, double eps = kDefaultBoundaryEps);

class PoincareDisk {
 public:
  static constexpr double kCurvature = -4.0;

  explicit PoincareDisk(int dim, double boundary_eps = kDefaultBoundaryEps);

  int dim() const { return dim_; }
  double boundary_eps() const { return boundary_eps_; }

  /// Validating constructor: throws unless |coords| < 1 - boundary_eps.
  Point point(Vector coords) const;
  Point origin() const { return Point(Vector::Zero(dim_)); }
  bool contains(const Vector& coords) const;

  Tangent tangent(const Point& base, Vector vec) const;
  Tangent zero(const Point& base) const { return Tangent(base, Vector::Zero(dim_)); }

  /// lambda_x = 1 / (1 - |x|^2).
  static double conformal_factor(const Point& x);

  double inner(const Tangent& u, const Tangent& v) const;
  double norm(const Tangent& u) const;
  double dist(const Point& x, const Point& y) const;

  /// Exponential map. Results that land within boundary_eps of the unit
  /// sphere are pulled back radially and reported through `clamped`.
  ExpResult exp_checked(const Point& x, const Tangent& v) const;
  Point exp(const Point& x, const Tangent& v) const { return exp_checked(x, v).point; }

  Tangent log(const Point& x, const Point& y) const;

  /// Levi-Civita parallel transport along the geodesic from x to y.
  Tangent transport(const Point& x, const Point& y, const Tangent& u) const;

  /// Riemannian gradient from a Euclidean one: (1 - |x|^2)^2 g.
  Tangent egrad_to_rgrad(const Point& x, const Vector& g) const;

  friend bool operator==(const PoincareDisk&, const PoincareDisk&) = default;

 private:
  void check_dim(const Vector& v) const;
  void check_base(const Point& x, const Tangent& u) const;

  int dim_;
  double boundary_eps_;
};

struct ProductPoint {
  std::vector<Point> parts;
  std::size_t size() const { return parts.size(); }
  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

struct ProductTangent {
  std::vector<Tangent> parts;
  std::size_t size() const { return parts.size(); }
};

/// M = M^1 x ... x M^I with the sum-of-factors metric.
class ProductManifold {
 public:
  explicit ProductManifold(std::vector<PoincareDisk> factors);
  /// I copies of the same disk.
  ProductManifold(std::size_t count, const PoincareDisk& factor);

  std::size_t size() const { return factors_.size(); }
  const PoincareDisk& factor(std::size_t i) const { return factors_.at(i); }
  const std::vector<PoincareDisk>& factors() const { return factors_; }

  ProductTangent zero(const ProductPoint& x) const;

  double inner(const ProductTangent& u, const ProductTangent& v) const;
  double norm(const ProductTangent& u) const;
  double dist(const ProductPoint& x, const ProductPoint& y) const;
  ProductPoint exp(const ProductPoint& x, const ProductTangent& v) const;
  ProductTangent log(const ProductPoint& x, const ProductPoint& y) const;
  ProductTangent transport(const ProductPoint& x, const ProductPoint& y,
                           const ProductTangent& u) const;

 private:
  void check_size(std::size_t n) const;

  std::vector<PoincareDisk> factors_;
};

}  // namespace fixopt
