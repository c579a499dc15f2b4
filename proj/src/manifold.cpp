#include "fixopt/manifold.hpp"

#include <cmath>
#include <string>

#include "fixopt/errors.hpp"

namespace fixopt {

Tangent operator+(const Tangent& a, const Tangent& b) {
  require(a.base == b.base, "tangent addition: base points differ");
  return Tangent(a.base, a.vec + b.vec);
}

Tangent operator*(double s, const Tangent& u) { return Tangent(u.base, s * u.vec); }

Vector mobius_add(const Vector& a, const Vector& b) {
  const double ab = a.dot(b);
  const double aa = a.squaredNorm();
  const double bb = b.squaredNorm();
  const double den = 1.0 + 2.0 * ab + aa * bb;
  return ((1.0 + 2.0 * ab + bb) * a + (1.0 - aa) * b) / den;
}

Vector gyration(const Vector& a, const Vector& b, const Vector& w) {
  const double ab = a.dot(b);
  const double aw = a.dot(w);
  const double bw = b.dot(w);
  const double aa = a.squaredNorm();
  const double bb = b.squaredNorm();
  const double coef_a = -aw * bb + bw + 2.0 * ab * bw;
  const double coef_b = -bw * aa - aw;
  const double den = 1.0 + 2.0 * ab + aa * bb;
  return w + (2.0 / den) * (coef_a * a + coef_b * b);
}

double artanh_guarded(double r, double eps) {
  if (r <= 0.0) return 0.0;
  if (r > 1.0 - eps) r = 1.0 - eps;
  return 0.5 * std::log1p(2.0 * r / (1.0 - r));
}

PoincareDisk::PoincareDisk(int dim, double boundary_eps) : dim_(dim), boundary_eps_(boundary_eps) {
  require(dim >= 1, "PoincareDisk: dim must be >= 1");
  require(boundary_eps > 0.0 && boundary_eps < 1.0, "PoincareDisk: boundary_eps must lie in (0, 1)");
}

void PoincareDisk::check_dim(const Vector& v) const {
  if (v.size() != dim_) {
    throw ContractViolation("PoincareDisk: expected dimension " + std::to_string(dim_) + ", got " +
                            std::to_string(v.size()));
  }
}

void PoincareDisk::check_base(const Point& x, const Tangent& u) const {
  require(u.base == x, "tangent is not anchored at the given point");
}

bool PoincareDisk::contains(const Vector& coords) const {
  return coords.size() == dim_ && coords.allFinite() && coords.norm() < 1.0 - boundary_eps_;
}

Point PoincareDisk::point(Vector coords) const {
  check_dim(coords);
  require(contains(coords), "point is not strictly inside the disk");
  return Point(std::move(coords));
}

Tangent PoincareDisk::tangent(const Point& base, Vector vec) const {
  check_dim(base.coords);
  check_dim(vec);
  require(vec.allFinite(), "tangent vector must be finite");
  return Tangent(base, std::move(vec));
}

double PoincareDisk::conformal_factor(const Point& x) { return 1.0 / (1.0 - x.coords.squaredNorm()); }

double PoincareDisk::inner(const Tangent& u, const Tangent& v) const {
  require(u.base == v.base, "inner: tangents anchored at different points");
  const double lambda = conformal_factor(u.base);
  return lambda * lambda * u.vec.dot(v.vec);
}

double PoincareDisk::norm(const Tangent& u) const { return conformal_factor(u.base) * u.vec.norm(); }

double PoincareDisk::dist(const Point& x, const Point& y) const {
  // |(-x) (+) y|^2 = |x - y|^2 / (|x - y|^2 + (1 - |x|^2)(1 - |y|^2)), which
  // avoids cancellation for nearby points.
  const double d2 = (x.coords - y.coords).squaredNorm();
  if (d2 == 0.0) return 0.0;
  const double den = d2 + (1.0 - x.coords.squaredNorm()) * (1.0 - y.coords.squaredNorm());
  return artanh_guarded(std::sqrt(d2 / den), boundary_eps_);
}

ExpResult PoincareDisk::exp_checked(const Point& x, const Tangent& v) const {
  check_base(x, v);
  const double euclid = v.vec.norm();
  if (euclid == 0.0) return {x, false};
  const double length = conformal_factor(x) * euclid;
  Vector y = mobius_add(x.coords, (std::tanh(length) / euclid) * v.vec);
  const double radius = y.norm();
  const double limit = 1.0 - boundary_eps_;
  if (radius >= limit) {
    y *= limit / radius;
    return {Point(std::move(y)), true};
  }
  return {Point(std::move(y)), false};
}

Tangent PoincareDisk::log(const Point& x, const Point& y) const {
  const double d2 = (x.coords - y.coords).squaredNorm();
  if (d2 == 0.0) return zero(x);
  const double xx = x.coords.squaredNorm();
  const double den = d2 + (1.0 - xx) * (1.0 - y.coords.squaredNorm());
  const double r = std::sqrt(d2 / den);
  const Vector w = mobius_add(-x.coords, y.coords);
  const double wn = w.norm();
  if (wn == 0.0) return zero(x);
  return Tangent(x, ((1.0 - xx) * artanh_guarded(r, boundary_eps_) / wn) * w);
}

Tangent PoincareDisk::transport(const Point& x, const Point& y, const Tangent& u) const {
  check_base(x, u);
  if (x == y) return u;
  const double ratio = (1.0 - y.coords.squaredNorm()) / (1.0 - x.coords.squaredNorm());
  return Tangent(y, ratio * gyration(y.coords, -x.coords, u.vec));
}

Tangent PoincareDisk::egrad_to_rgrad(const Point& x, const Vector& g) const {
  check_dim(g);
  const double s = 1.0 - x.coords.squaredNorm();
  return Tangent(x, (s * s) * g);
}

ProductManifold::ProductManifold(std::vector<PoincareDisk> factors) : factors_(std::move(factors)) {
  require(!factors_.empty(), "ProductManifold needs at least one factor");
}

ProductManifold::ProductManifold(std::size_t count, const PoincareDisk& factor)
    : ProductManifold(std::vector<PoincareDisk>(count, factor)) {}

void ProductManifold::check_size(std::size_t n) const {
  if (n != factors_.size()) {
    throw ContractViolation("product manifold has " + std::to_string(factors_.size()) +
                            " factors, argument has " + std::to_string(n));
  }
}

ProductTangent ProductManifold::zero(const ProductPoint& x) const {
  check_size(x.size());
  ProductTangent out;
  out.parts.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.parts.push_back(factors_[i].zero(x.parts[i]));
  return out;
}

double ProductManifold::inner(const ProductTangent& u, const ProductTangent& v) const {
  check_size(u.size());
  check_size(v.size());
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += factors_[i].inner(u.parts[i], v.parts[i]);
  return s;
}

double ProductManifold::norm(const ProductTangent& u) const { return std::sqrt(inner(u, u)); }

double ProductManifold::dist(const ProductPoint& x, const ProductPoint& y) const {
  check_size(x.size());
  check_size(y.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = factors_[i].dist(x.parts[i], y.parts[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

ProductPoint ProductManifold::exp(const ProductPoint& x, const ProductTangent& v) const {
  check_size(x.size());
  check_size(v.size());
  ProductPoint out;
  out.parts.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.parts.push_back(factors_[i].exp(x.parts[i], v.parts[i]));
  return out;
}

ProductTangent ProductManifold::log(const ProductPoint& x, const ProductPoint& y) const {
  check_size(x.size());
  check_size(y.size());
  ProductTangent out;
  out.parts.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.parts.push_back(factors_[i].log(x.parts[i], y.parts[i]));
  return out;
}

ProductTangent ProductManifold::transport(const ProductPoint& x, const ProductPoint& y,
                                          const ProductTangent& u) const {
  check_size(x.size());
  check_size(y.size());
  check_size(u.size());
  ProductTangent out;
  out.parts.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.parts.push_back(factors_[i].transport(x.parts[i], y.parts[i], u.parts[i]));
  }
  return out;
}

}  // namespace fixopt
