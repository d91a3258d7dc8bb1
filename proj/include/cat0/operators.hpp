#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "cat0/metric.hpp"
#include "cat0/sampling.hpp"

namespace cat0 {

/// A self-map of a space, used as the target of the fixed-point iterations.
class Operator {
 public:
  virtual ~Operator() = default;
  virtual Vec apply(const Vec& x) const = 0;
  virtual std::string describe() const = 0;
};

/// Identity map (any space).
class Identity final : public Operator {
 public:
  Vec apply(const Vec& x) const override { return x; }
  std::string describe() const override { return "identity"; }
};

/// Counterclockwise rotation of R^2 about the origin.
class PlanarRotation final : public Operator {
 public:
  explicit PlanarRotation(double angle) : angle_(angle) {}
  Vec apply(const Vec& x) const override;
  std::string describe() const override;
  double angle() const { return angle_; }

 private:
  double angle_;
};

/// Rotation of the hyperboloid about the base point (1,0,...,0): rotates the
/// spatial coordinates (u1,u2) and fixes u0 and the rest. A Minkowski
/// isometry, hence a nonexpansive map with fixed point at the base.
class EllipticRotation final : public Operator {
 public:
  EllipticRotation(ModelSpace space, double angle);
  Vec apply(const Vec& x) const override;
  std::string describe() const override;
  const ModelSpace& space() const { return space_; }

 private:
  ModelSpace space_;
  double angle_;
};

/// Right shift on a finite l1 prefix: (x1,...,xN) -> (0,x1,...,x_{N-1}).
/// Throws std::length_error if the shift would push mass past the end, so the
/// finite window never silently truncates the l1 norm.
class RightShift final : public Operator {
 public:
  explicit RightShift(int length);
  Vec apply(const Vec& x) const override;
  std::string describe() const override;

 private:
  int length_;
};

/// x -> (1-beta) c (+) beta x: a beta-Lipschitz contraction toward `center`
/// (metric convexity applied twice), with fixed point `center`.
class GeodesicContraction final : public Operator {
 public:
  GeodesicContraction(ModelSpace space, Vec center, double beta);
  Vec apply(const Vec& x) const override;
  std::string describe() const override;
  double beta() const { return beta_; }
  const Vec& center() const { return center_; }

 private:
  ModelSpace space_;
  Vec center_;
  double beta_;
};

/// Geodesic dilation about a center by an arbitrary factor >= 0. Factors > 1
/// make it expansive; used to exercise the bound-violation paths.
class GeodesicScaling final : public Operator {
 public:
  GeodesicScaling(ModelSpace space, Vec center, double factor);
  Vec apply(const Vec& x) const override;
  std::string describe() const override;

 private:
  ModelSpace space_;
  Vec center_;
  double factor_;
};

/// Forward operator F = I - beta * grad f on Euclidean space. Averaged
/// nonexpansive for convex f with L-Lipschitz gradient and beta in (0, 2/L);
/// the constructor enforces that range.
class ForwardOperator final : public Operator {
 public:
  ForwardOperator(std::function<Vec(const Vec&)> gradient, double beta,
                  double lipschitz);
  Vec apply(const Vec& x) const override;
  std::string describe() const override;

 private:
  std::function<Vec(const Vec&)> gradient_;
  double beta_;
  double lipschitz_;
};

/// Constant map x -> u.
class ConstantAnchor final : public Operator {
 public:
  explicit ConstantAnchor(Vec u) : u_(std::move(u)) {}
  Vec apply(const Vec&) const override { return u_; }
  std::string describe() const override { return "constant_anchor"; }

 private:
  Vec u_;
};

struct NonexpansiveReport {
  int trials = 0;
  double tol = 0.0;
  double max_excess = -std::numeric_limits<double>::infinity();
  // max of d(Tx,Ty) - beta*d(x,y) when a contraction factor is being checked
  double max_contraction_excess = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
};

/// Samples `trials` point pairs and reports the worst observed violation of
/// d(Tx,Ty) <= d(x,y) (and of the beta-contraction inequality when `beta` is
/// given). Purely diagnostic; never throws on failures.
NonexpansiveReport check_nonexpansive(const Metric& metric, const Operator& op,
                                      const PairSampler& sampler, int trials,
                                      double tol, uint64_t seed,
                                      std::optional<double> beta = {});

}  // namespace cat0
