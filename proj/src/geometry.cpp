#include "cat0/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cat0 {

namespace {

constexpr double kDomainSlack = 1e-9;     // clamp window at metric-domain edges
constexpr double kConstraintTol = 1e-12;  // point validation threshold

double sinh_over_x(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

double sin_over_x(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

void require_same_ambient(const ModelSpace& s, const Vec& x, const char* what) {
  if (x.size() != s.ambient_dim()) {
    std::ostringstream os;
    os << what << ": expected " << s.ambient_dim() << " coordinates, got "
       << x.size();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

double minkowski_inner(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("minkowski_inner: length mismatch");
  }
  if (u.size() < 2) {
    throw std::invalid_argument("minkowski_inner: need at least 2 coordinates");
  }
  return -u[0] * v[0] + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

ModelSpace ModelSpace::hyperbolic(int n, double kappa) {
  if (n < 1) throw std::invalid_argument("hyperbolic: dim must be >= 1");
  if (kappa >= 0.0) throw std::invalid_argument("hyperbolic: kappa must be < 0");
  return ModelSpace{kappa, n};
}

ModelSpace ModelSpace::spherical(int n, double kappa) {
  if (n < 1) throw std::invalid_argument("spherical: dim must be >= 1");
  if (kappa <= 0.0) throw std::invalid_argument("spherical: kappa must be > 0");
  return ModelSpace{kappa, n};
}

Vec ModelSpace::base_point() const {
  Vec p = Vec::Zero(ambient_dim());
  if (!is_flat()) p[0] = 1.0;
  return p;
}

double ModelSpace::dist(const Vec& x, const Vec& y) const {
  require_same_ambient(*this, x, "dist(x)");
  require_same_ambient(*this, y, "dist(y)");
  if (is_flat()) return (x - y).norm();

  if (kappa < 0.0) {
    // cosh d = -<x,y>_L; evaluated through the chord identity
    // <x-y,x-y>_L = 4 sinh^2(d/2), which is stable for nearby points.
    const double m = -minkowski_inner(x, y);
    if (m < 1.0 - kDomainSlack) {
      throw std::domain_error("dist: arcosh argument below 1 (invalid hyperboloid points)");
    }
    double chord2 = minkowski_inner(x - y, x - y);
    if (chord2 < 0.0) chord2 = 0.0;  // roundoff for coincident points
    const double d_unit = 2.0 * std::asinh(0.5 * std::sqrt(chord2));
    return d_unit / std::sqrt(-kappa);
  }

  // Sphere: d = arccos(<x,y>) via the chord identity ||x-y|| = 2 sin(d/2).
  const double c = x.dot(y);
  if (c > 1.0 + kDomainSlack || c < -1.0 - kDomainSlack) {
    throw std::domain_error("dist: arccos argument outside [-1,1] (invalid sphere points)");
  }
  double half_chord = 0.5 * (x - y).norm();
  if (half_chord > 1.0) half_chord = 1.0;
  const double d_unit = 2.0 * std::asin(half_chord);
  return d_unit / std::sqrt(kappa);
}

Vec ModelSpace::combine(const Vec& x, const Vec& y, double t) const {
  require_same_ambient(*this, x, "combine(x)");
  require_same_ambient(*this, y, "combine(y)");
  if (is_flat()) return x + t * (y - x);

  if (kappa < 0.0) {
    const double m = -minkowski_inner(x, y);  // cosh of unit distance
    double chord2 = minkowski_inner(x - y, x - y);
    if (chord2 < 0.0) chord2 = 0.0;
    const double d_unit = 2.0 * std::asinh(0.5 * std::sqrt(chord2));
    if (d_unit == 0.0) return x;
    const Vec w = y - m * x;  // tangent at x with ||w||_L = sinh(d_unit)
    const double s = t * d_unit;
    // sinh(s)/sinh(d) through sinh(x)/x, stable for small arcs
    const double factor =
        (t * sinh_over_x(s)) / sinh_over_x(d_unit);
    Vec z = std::cosh(s) * x + factor * w;
    return renormalized(std::move(z));
  }

  // Sphere: slerp along the unique minor arc.
  double half_chord = 0.5 * (x - y).norm();
  if (half_chord > 1.0) half_chord = 1.0;
  const double theta = 2.0 * std::asin(half_chord);
  if (theta >= M_PI - 1e-12) {
    throw std::domain_error("combine: antipodal sphere points have no unique geodesic");
  }
  if (theta == 0.0) return x;
  const double st = std::sin(theta);
  Vec z = (std::sin((1.0 - t) * theta) / st) * x + (std::sin(t * theta) / st) * y;
  return renormalized(std::move(z));
}

Vec ModelSpace::exp_map(const Vec& x, const Vec& v) const {
  require_same_ambient(*this, x, "exp_map(x)");
  require_same_ambient(*this, v, "exp_map(v)");
  if (is_flat()) return x + v;

  if (kappa < 0.0) {
    double v2 = minkowski_inner(v, v);
    if (v2 <= 0.0) return x;  // zero (or numerically null) tangent
    const double s = std::sqrt(v2);  // arc length on the unit hyperboloid
    Vec z = std::cosh(s) * x + sinh_over_x(s) * v;
    return renormalized(std::move(z));
  }

  const double s = v.norm();
  if (s == 0.0) return x;
  Vec z = std::cos(s) * x + sin_over_x(s) * v;
  return renormalized(std::move(z));
}

Vec ModelSpace::log_map(const Vec& x, const Vec& y) const {
  require_same_ambient(*this, x, "log_map(x)");
  require_same_ambient(*this, y, "log_map(y)");
  if (is_flat()) return y - x;

  if (kappa < 0.0) {
    const double m = -minkowski_inner(x, y);
    const Vec w = y - m * x;  // tangent at x, ||w||_L = sinh(d)
    double chord2 = minkowski_inner(x - y, x - y);
    if (chord2 < 0.0) chord2 = 0.0;
    const double d_unit = 2.0 * std::asinh(0.5 * std::sqrt(chord2));
    if (d_unit == 0.0) return Vec::Zero(ambient_dim());
    return (1.0 / sinh_over_x(d_unit)) * w;  // = w * d/sinh(d)
  }

  double c = x.dot(y);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  double half_chord = 0.5 * (x - y).norm();
  if (half_chord > 1.0) half_chord = 1.0;
  const double theta = 2.0 * std::asin(half_chord);
  if (theta == 0.0) return Vec::Zero(ambient_dim());
  const Vec w = y - c * x;  // ||w|| = sin(theta)
  return (1.0 / sin_over_x(theta)) * w;
}

double ModelSpace::tangent_inner(const Vec& v, const Vec& w) const {
  if (is_flat()) return v.dot(w);
  if (kappa < 0.0) return minkowski_inner(v, w) / (-kappa);
  return v.dot(w) / kappa;
}

double ModelSpace::tangent_norm(const Vec& v) const {
  const double q = tangent_inner(v, v);
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

double ModelSpace::tangent_residual(const Vec& x, const Vec& v) const {
  if (is_flat()) return 0.0;
  if (kappa < 0.0) return std::abs(minkowski_inner(x, v));
  return std::abs(x.dot(v));
}

Vec ModelSpace::renormalized(Vec p) const {
  if (is_flat()) return p;
  if (kappa < 0.0) {
    const double q = -minkowski_inner(p, p);
    if (q <= 0.0) {
      throw std::domain_error("renormalized: vector is not timelike");
    }
    p /= std::sqrt(q);
    if (p[0] < 0.0) {
      throw std::domain_error("renormalized: point is on the lower sheet");
    }
    return p;
  }
  const double n = p.norm();
  if (n == 0.0) throw std::domain_error("renormalized: zero vector");
  return p / n;
}

PointCheck ModelSpace::validate(const Vec& p) const {
  PointCheck out;
  if (p.size() != ambient_dim()) {
    out.residual = std::numeric_limits<double>::infinity();
    out.pass = false;
    return out;
  }
  if (is_flat()) return out;
  if (kappa < 0.0) {
    out.residual = std::abs(minkowski_inner(p, p) + 1.0);
    out.pass = out.residual <= kConstraintTol && p[0] > 0.0;
    return out;
  }
  out.residual = std::abs(p.norm() - 1.0);
  out.pass = out.residual <= kConstraintTol;
  return out;
}

std::string ModelSpace::describe() const {
  std::ostringstream os;
  os << "M(kappa=" << kappa << ", dim=" << dim << ")";
  return os.str();
}

Eigen::Vector2d ComparisonTriangle::point_on_side(int i, int j, double t) const {
  return vertices[i] + t * (vertices[j] - vertices[i]);
}

ComparisonTriangle comparison_triangle(double a, double b, double c) {
  if (a < 0.0 || b < 0.0 || c < 0.0) {
    throw std::domain_error("comparison_triangle: negative side length");
  }
  const double slack = 1e-12;
  if (a > b + c + slack || b > a + c + slack || c > a + b + slack) {
    throw std::domain_error("comparison_triangle: triangle inequality violated");
  }
  ComparisonTriangle tri;
  tri.side_lengths = {a, b, c};
  tri.vertices[0] = {0.0, 0.0};
  tri.vertices[1] = {a, 0.0};
  if (a == 0.0) {
    // |AB| = 0: place C on the y axis.
    tri.vertices[2] = {0.0, b};
    return tri;
  }
  const double cx = (a * a + b * b - c * c) / (2.0 * a);
  double cy2 = b * b - cx * cx;
  if (cy2 < 0.0) cy2 = 0.0;  // degenerate triangles, up to roundoff
  tri.vertices[2] = {cx, std::sqrt(cy2)};
  return tri;
}

}  // namespace cat0
