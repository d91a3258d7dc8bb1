#pragma once

#include "cat0/geometry.hpp"

namespace cat0 {

/// What the iteration drivers need from a space: a distance and geodesic
/// convex combination. Implemented by the model spaces and by the finite
/// l1 sequence space used for the shift example.
class Metric {
 public:
  virtual ~Metric() = default;
  virtual double dist(const Vec& x, const Vec& y) const = 0;
  virtual Vec combine(const Vec& x, const Vec& y, double t) const = 0;
};

class ModelMetric final : public Metric {
 public:
  explicit ModelMetric(ModelSpace space) : space_(space) {}
  double dist(const Vec& x, const Vec& y) const override {
    return space_.dist(x, y);
  }
  Vec combine(const Vec& x, const Vec& y, double t) const override {
    return space_.combine(x, y, t);
  }
  const ModelSpace& space() const { return space_; }

 private:
  ModelSpace space_;
};

/// Finite prefix of l1: linear segments are geodesics and the metric is
/// convex, so the geodesic-form iterations run unchanged here.
class L1Metric final : public Metric {
 public:
  double dist(const Vec& x, const Vec& y) const override {
    return (x - y).lpNorm<1>();
  }
  Vec combine(const Vec& x, const Vec& y, double t) const override {
    return x + t * (y - x);
  }
};

}  // namespace cat0
