#pragma once

#include <functional>
#include <optional>

#include "cat0/iteration.hpp"

namespace cat0 {

/// Geodesically convex objective with a geodesic-gradient oracle.
/// Gradients are tangent vectors in the model metric; for a squared-distance
/// term w/2 * d(y,a)^2 the gradient at y is -w * log_map(y, a).
class Objective {
 public:
  enum class Kind { HalfSqDist, Frechet, Custom };

  static Objective half_sq_dist(ModelSpace space, Vec anchor);
  /// weights >= 0 and summing to 1 within 1e-12.
  static Objective frechet(ModelSpace space, std::vector<Vec> anchors,
                           std::vector<double> weights);
  static Objective custom(ModelSpace space,
                          std::function<double(const Vec&)> value,
                          std::function<Vec(const Vec&)> gradient);

  double value(const Vec& y) const;
  Vec gradient(const Vec& y) const;

  Kind kind() const { return kind_; }
  const ModelSpace& space() const { return space_; }
  const std::vector<Vec>& anchors() const { return anchors_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  Objective(Kind kind, ModelSpace space) : kind_(kind), space_(space) {}
  Kind kind_;
  ModelSpace space_;
  std::vector<Vec> anchors_;
  std::vector<double> weights_;
  std::function<double(const Vec&)> value_;
  std::function<Vec(const Vec&)> gradient_;
};

struct ResolventOptions {
  int max_iter = 10000;
  double tol = 1e-10;  // gradient-norm stopping threshold
};

enum class ResolventInner { ClosedForm, Numeric };

/// J_lambda(x) = argmin_y { f(y) + d(x,y)^2 / (2 lambda) } on a Hadamard
/// model space (kappa <= 0).
struct ResolventSpec {
  Objective objective;
  double lambda = 1.0;
  ResolventInner inner = ResolventInner::Numeric;
  ResolventOptions options;
};

/// Resolvent of w/2 d(.,a)^2 with w = 1: the minimizer sits on [x,a] at
/// parameter t = lambda/(1+lambda). Throws std::domain_error for kappa > 0.
Vec resolvent_closed_form(const ModelSpace& space, const Vec& x, const Vec& anchor,
                          double lambda);

/// Geodesic gradient descent on the Moreau objective with base step
/// lambda/(1+lambda) and halving backtracking; stops at gradient norm <=
/// options.tol. Throws std::runtime_error (with the last gradient norm in the
/// message) when max_iter is exhausted.
Vec resolvent_numeric(const ResolventSpec& spec, const Vec& x);

/// Dispatch on spec.inner; ClosedForm requires a HalfSqDist objective.
Vec resolvent(const ResolventSpec& spec, const Vec& x);

struct OptRun {
  Trace trace;  // residual column: d(x_k, J x_k) (gradient norm for rsgd)
  Vec final;
  std::vector<double> objective_values;
  bool converged = false;

  /// CSV columns k,residual,objective,dist_to_oracle (17 significant digits);
  /// dist_to_oracle is the trace's dist_to_fix column.
  void write_csv(std::ostream& os) const;
  void write_csv(const std::filesystem::path& path) const;
  nlohmann::json summary() const;
};

struct HalpernGDConfig {
  Vec u;   // anchor
  Vec x0;
  Schedule alphas = Schedule::harmonic();
  int horizon = 1000;
  std::optional<Vec> oracle;  // fills dist_to_oracle
  bool store_points = false;
  double conv_tol = 1e-6;  // "converged" = final residual below this
};

/// x_{k+1} = alpha_{k+1} u (+) (1-alpha_{k+1}) J_lambda(x_k).
/// Requires alpha_k in (0,1) and kappa <= 0.
OptRun hyperbolic_halpern_gd(const ResolventSpec& spec, const HalpernGDConfig& cfg);

struct RsgdConfig {
  Vec x0;
  double step = 0.5;                      // used when step_schedule is absent
  std::optional<Schedule> step_schedule;  // step_k = schedule.at(k)
  int horizon = 1000;
  std::optional<Vec> oracle;
  bool store_points = false;
  double conv_tol = 1e-8;  // "converged" = final gradient norm below this
};

/// Full-gradient descent x_{k+1} = exp_{x_k}(-step_k * grad f(x_k)).
/// Requires step > 0.
OptRun rsgd_run(const Objective& objective, const RsgdConfig& cfg);

/// Independent brute-force minimizer for Frechet objectives (kappa <= 0):
/// gradient descent with halving steps, certified by gradient norm <= tol.
/// m = 1 returns the anchor directly.
Vec frechet_oracle(const Objective& objective, double tol = 1e-12);

}  // namespace cat0
