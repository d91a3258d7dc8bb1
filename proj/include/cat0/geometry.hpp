#pragma once

#include <Eigen/Dense>

#include <array>
#include <limits>
#include <string>

namespace cat0 {

using Vec = Eigen::VectorXd;

/// Minkowski (Lorentz) inner product <u,v>_L = -u0*v0 + sum_{i>=1} ui*vi.
/// Throws std::invalid_argument on length mismatch or length < 2.
double minkowski_inner(const Vec& u, const Vec& v);

struct PointCheck {
  double residual = 0.0;  // |<u,u>_L + 1|, |  ||u|| - 1 |, or 0 for flat space
  bool pass = true;       // residual <= 1e-12 (and u0 > 0 on the hyperboloid)
};

/// Constant-curvature model space M_kappa^n realized as
///   kappa < 0 : upper unit hyperboloid in R^{n+1}, distances scaled by 1/sqrt(-kappa)
///   kappa = 0 : Euclidean R^n
///   kappa > 0 : unit sphere in R^{n+1}, distances scaled by 1/sqrt(kappa)
///
/// Points are plain coordinate vectors (ambient_dim entries); all operations on
/// curved spaces renormalize their outputs back onto the model constraint.
/// Everything here is a pure function of its inputs and safe to call concurrently.
struct ModelSpace {
  double kappa = 0.0;
  int dim = 2;  // geometric dimension n >= 1

  static ModelSpace euclidean(int n) { return ModelSpace{0.0, n}; }
  static ModelSpace hyperbolic(int n, double kappa = -1.0);
  static ModelSpace spherical(int n, double kappa = 1.0);

  /// D_kappa: diameter bound pi/sqrt(kappa) for kappa > 0, +infinity otherwise.
  double d_kappa() const {
    return kappa > 0.0 ? M_PI / std::sqrt(kappa)
                       : std::numeric_limits<double>::infinity();
  }

  int ambient_dim() const { return kappa == 0.0 ? dim : dim + 1; }
  bool is_flat() const { return kappa == 0.0; }

  /// Reference point: origin (flat) or (1,0,...,0) (curved).
  Vec base_point() const;

  /// Geodesic distance. Curved spaces use the stable chord form of
  /// arcosh(-<x,y>_L) / arccos(<x,y>); arguments out of the metric domain by
  /// more than 1e-9 raise std::domain_error, smaller excursions are clamped.
  double dist(const Vec& x, const Vec& y) const;

  /// z = (1-t)x (+) t y: the point on [x,y] with dist(z,x) = t*dist(x,y).
  /// t may lie outside [0,1] (geodesic extension); combine(x,x,t) = x.
  /// kappa > 0 requires dist(x,y) < pi/sqrt(kappa); antipodal inputs raise
  /// std::domain_error (no unique geodesic).
  Vec combine(const Vec& x, const Vec& y, double t) const;

  /// Exponential map at x of a tangent vector v (Minkowski/Euclidean-orthogonal
  /// to x on curved spaces). dist(exp_map(x,v), x) equals the model norm of v.
  Vec exp_map(const Vec& x, const Vec& v) const;

  /// Inverse of exp_map: tangent at x pointing to y with model norm dist(x,y).
  Vec log_map(const Vec& x, const Vec& y) const;

  /// Model-metric inner product and norm of tangent vectors at x.
  double tangent_inner(const Vec& v, const Vec& w) const;
  double tangent_norm(const Vec& v) const;

  /// |<x,v>_L| resp. |<x,v>|: how far v is from the tangent space at x.
  double tangent_residual(const Vec& x, const Vec& v) const;

  /// Rescale p onto the model constraint (<p,p>_L = -1 resp. ||p|| = 1).
  Vec renormalized(Vec p) const;

  /// Constraint diagnostic; never throws.
  PointCheck validate(const Vec& p) const;

  std::string describe() const;
};

/// Euclidean comparison triangle for side lengths (a,b,c): vertices
/// A=(0,0), B=(a,0), C with |AC|=b, |BC|=c and C_y >= 0.
struct ComparisonTriangle {
  std::array<Eigen::Vector2d, 3> vertices;
  std::array<double, 3> side_lengths;  // (|AB|, |AC|, |BC|) = (a, b, c)

  /// Planar point at parameter t along side (i -> j), i,j in {0,1,2}.
  Eigen::Vector2d point_on_side(int i, int j, double t) const;
};

/// Throws std::domain_error if (a,b,c) violate the triangle inequality by
/// more than 1e-12.
ComparisonTriangle comparison_triangle(double a, double b, double c);

}  // namespace cat0
