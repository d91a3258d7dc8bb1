#include "cat0/operators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cat0 {

Vec PlanarRotation::apply(const Vec& x) const {
  if (x.size() != 2) {
    throw std::invalid_argument("planar_rotation: expects 2-d points");
  }
  const double c = std::cos(angle_), s = std::sin(angle_);
  Vec y(2);
  y[0] = c * x[0] - s * x[1];
  y[1] = s * x[0] + c * x[1];
  return y;
}

std::string PlanarRotation::describe() const {
  std::ostringstream os;
  os << "planar_rotation(" << angle_ << ")";
  return os.str();
}

EllipticRotation::EllipticRotation(ModelSpace space, double angle)
    : space_(space), angle_(angle) {
  if (space_.kappa >= 0.0) {
    throw std::invalid_argument("elliptic_rotation: hyperboloid spaces only");
  }
  if (space_.dim < 2) {
    throw std::invalid_argument("elliptic_rotation: needs dim >= 2");
  }
}

Vec EllipticRotation::apply(const Vec& x) const {
  if (x.size() != space_.ambient_dim()) {
    throw std::invalid_argument("elliptic_rotation: wrong ambient dimension");
  }
  const double c = std::cos(angle_), s = std::sin(angle_);
  Vec y = x;
  y[1] = c * x[1] - s * x[2];
  y[2] = s * x[1] + c * x[2];
  return space_.renormalized(std::move(y));
}

std::string EllipticRotation::describe() const {
  std::ostringstream os;
  os << "elliptic_rotation(" << angle_ << ")";
  return os.str();
}

RightShift::RightShift(int length) : length_(length) {
  if (length_ < 2) throw std::invalid_argument("right_shift: length < 2");
}

Vec RightShift::apply(const Vec& x) const {
  if (x.size() != length_) {
    throw std::invalid_argument("right_shift: wrong vector length");
  }
  if (x[length_ - 1] != 0.0) {
    throw std::length_error(
        "right_shift: shift would push l1 mass past the window end");
  }
  Vec y = Vec::Zero(length_);
  y.tail(length_ - 1) = x.head(length_ - 1);
  return y;
}

std::string RightShift::describe() const {
  std::ostringstream os;
  os << "right_shift(" << length_ << ")";
  return os.str();
}

GeodesicContraction::GeodesicContraction(ModelSpace space, Vec center,
                                         double beta)
    : space_(space), center_(std::move(center)), beta_(beta) {
  if (!(beta_ >= 0.0 && beta_ < 1.0)) {
    throw std::invalid_argument("geodesic_contraction: beta must be in [0,1)");
  }
}

Vec GeodesicContraction::apply(const Vec& x) const {
  return space_.combine(center_, x, beta_);
}

std::string GeodesicContraction::describe() const {
  std::ostringstream os;
  os << "geodesic_contraction(beta=" << beta_ << ")";
  return os.str();
}

GeodesicScaling::GeodesicScaling(ModelSpace space, Vec center, double factor)
    : space_(space), center_(std::move(center)), factor_(factor) {
  if (factor_ < 0.0) {
    throw std::invalid_argument("geodesic_scaling: factor must be >= 0");
  }
}

Vec GeodesicScaling::apply(const Vec& x) const {
  return space_.combine(center_, x, factor_);
}

std::string GeodesicScaling::describe() const {
  std::ostringstream os;
  os << "geodesic_scaling(factor=" << factor_ << ")";
  return os.str();
}

ForwardOperator::ForwardOperator(std::function<Vec(const Vec&)> gradient,
                                 double beta, double lipschitz)
    : gradient_(std::move(gradient)), beta_(beta), lipschitz_(lipschitz) {
  if (!(lipschitz_ > 0.0)) {
    throw std::invalid_argument("forward: Lipschitz constant must be > 0");
  }
  if (!(beta_ > 0.0 && beta_ < 2.0 / lipschitz_)) {
    throw std::invalid_argument("forward: beta must be in (0, 2/L)");
  }
}

Vec ForwardOperator::apply(const Vec& x) const { return x - beta_ * gradient_(x); }

std::string ForwardOperator::describe() const {
  std::ostringstream os;
  os << "forward(beta=" << beta_ << ", L=" << lipschitz_ << ")";
  return os.str();
}

NonexpansiveReport check_nonexpansive(const Metric& metric, const Operator& op,
                                      const PairSampler& sampler, int trials,
                                      double tol, uint64_t seed,
                                      std::optional<double> beta) {
  if (trials < 1) throw std::invalid_argument("check_nonexpansive: trials < 1");
  NonexpansiveReport report;
  report.trials = trials;
  report.tol = tol;
  if (beta) report.max_contraction_excess = -std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    const auto [x, y] = sampler(rng);
    const double dxy = metric.dist(x, y);
    const double dT = metric.dist(op.apply(x), op.apply(y));
    report.max_excess = std::max(report.max_excess, dT - dxy);
    if (beta) {
      report.max_contraction_excess =
          std::max(report.max_contraction_excess, dT - *beta * dxy);
    }
  }
  report.pass = report.max_excess <= tol &&
                (!beta || report.max_contraction_excess <= tol);
  return report;
}

}  // namespace cat0
