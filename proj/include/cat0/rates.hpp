#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cat0/iteration.hpp"

namespace cat0 {

/// pi^n_k = lambda_k * prod_{j=k+1}^n (1 - lambda_j), with lambda_0 := 1.
/// The weights are a probability vector: sum_k pi^n_k = 1.
struct PiWeights {
  int n = 0;
  std::vector<double> values;  // k = 0..n
  double sum() const;
};

PiWeights pi_weights(const Schedule& schedule, int n);

/// diam / sqrt(pi * sum_{i=1}^n lambda_i (1 - lambda_i)), n >= 1.
/// Throws std::domain_error when the partial sum vanishes.
double km_bound(const Schedule& schedule, double diam, int n);

/// The recursive majorants c_{m,n} (for diam-normalized iterations):
///   c_{-1,n} = 1,
///   c_{m,n}  = sum_{j=0}^m sum_{k=m+1}^n pi^m_j pi^n_k c_{j-1,k-1}.
/// Filled with cached inner partial sums (O(N^3)); N is capped because the
/// table is a verification oracle, not a production path.
class CTable {
 public:
  CTable(const Schedule& schedule, int N, int limit = 60);
  int size() const { return N_; }
  /// c_{m,n} for -1 <= m < n <= N.
  double at(int m, int n) const;
  /// P_n = c_{n,n+1} / lambda_{n+1}, n <= N-1.
  double p(int n) const;
  double lambda(int k) const { return lambdas_.at(k - 1); }

 private:
  int N_;
  std::vector<double> lambdas_;        // lambda_1..lambda_N
  std::vector<std::vector<double>> c_; // c_[m+1][n]
};

/// P_n together with the products sqrt(sum_{i=1}^n lambda_i(1-lambda_i)) P_n,
/// each expected to stay below 1/sqrt(pi).
struct PnReport {
  int N = 0;
  std::vector<double> p;             // n = 0..N-1
  std::vector<double> probabilistic; // n = 0..N-1
};

PnReport p_n_report(const Schedule& schedule, int N);

/// gamma = 1 - beta, J = ceil(2/gamma), and
/// C_xbar = max{ d(x0, xbar), d(f(xbar), xbar) / (1-beta) }.
struct ViscosityConstants {
  double beta = 0.0;
  double gamma = 1.0;
  int J = 2;
  double c_xbar = 0.0;
};

ViscosityConstants visc_constants(const Metric& metric, const Vec& x0,
                                  const Vec& xbar, const Operator& f,
                                  double beta);

/// One observed quantity against its theoretical bound. margin is the slack:
/// bound - observed for upper bounds, observed - bound for lower bounds.
struct BoundRow {
  int step = 0;
  double observed = 0.0;
  double bound = 0.0;
  double margin = 0.0;
};

struct BoundReport {
  std::string check;
  double tol = 1e-9;
  std::vector<BoundRow> rows;
  bool violated = false;      // some margin < -tol
  double worst_margin = std::numeric_limits<double>::infinity();
  std::optional<std::string> convention_selected;

  void finalize();  // recompute violated / worst_margin from rows
  void write_csv(std::ostream& os) const;  // columns n,observed,bound,margin
  nlohmann::json summary() const;
};

/// residual_n <= km_bound(schedule, diam, n) for n = 1..horizon.
BoundReport km_bound_report(const Trace& trace, const Schedule& schedule,
                            double diam, double tol = 1e-9);

/// d(x_n, x_m)/diam <= c_{m,n} over all 0 <= m < n <= min(N, horizon).
/// Requires the trace to carry its iterates.
BoundReport pairwise_cmn_report(const Metric& metric, const Trace& trace,
                                const CTable& table, double diam,
                                double tol = 1e-9);

/// residual_n/diam <= P_n for n = 0..N-1.
BoundReport residual_pn_report(const Trace& trace, const CTable& table,
                               double diam, double tol = 1e-9);

/// sqrt(sum_{i<=n} lambda_i(1-lambda_i)) * P_n <= 1/sqrt(pi), n = 0..N-1.
BoundReport probabilistic_report(const Schedule& schedule, int N,
                                 double tol = 1e-10);

/// d(x_m, q) <= sum_j pi^m_j d(T x_{j-1}, q) with T x_{-1} := x_0, for
/// m = 0..max_m. Requires stored iterates; re-applies T to recover T x_j.
BoundReport representation_report(const Metric& metric, const Operator& T,
                                  const Trace& trace, const Schedule& schedule,
                                  const Vec& q, int max_m, double tol = 1e-9);

/// The two O(1/k) viscosity estimates, checked against a trace generated
/// with alpha_k = min{2/((1-beta)k), 1}:
///   step:     d(x_k, x_{k-1})      <= 2 J C / ((1-beta) k)
///   residual: d(T x_{k-1}, x_{k-1}) <= 2 C (J+2) / ((1-beta) k)
/// The residual rows pair trace row k-1 with bound index k.
/// Refuses (std::invalid_argument) traces whose recorded schedule differs.
struct ViscosityBoundReport {
  BoundReport step;
  BoundReport residual;
  bool violated() const { return step.violated || residual.violated; }
};

ViscosityBoundReport visc_bound_report(const Trace& trace,
                                       const ViscosityConstants& consts,
                                       double tol = 1e-9);

enum class LiteratureBound { Lieder, Sabach };

/// Lieder: 2 dist0/(k+1); Sabach-Shtern: 4 dist0/(k+1).
double literature_bound(LiteratureBound kind, int k, double dist0);

/// Lower-bound certificate for the l1 right shift: residual >= 1/sqrt(n+1).
struct ShiftSharpness {
  int horizon = 0;
  double min_slack = 0.0;  // min_n residual_n - 1/sqrt(n+1)
  bool pass = false;
};

/// For each n, runs the anchored iteration against the rotation by pi/(n+1)
/// under both anchor conventions and finds which one reproduces the residual
/// equality 2/(n+1). At n = 1 the two conventions produce the same iterate
/// (lambda_1 = 1/2), so per-n uniqueness is only meaningful where they differ.
struct RotationSharpness {
  int max_n = 0;
  std::string selected;            // convention matching the equality at every n
  bool unique_where_distinct = false;  // other convention never matches for n >= 2
  double max_dev_selected = 0.0;
  double min_dev_other = 0.0;      // over n >= 2
  std::vector<int> ambiguous_ns;   // n where both conventions matched
  bool pass = false;
};

struct SharpnessReport {
  ShiftSharpness shift;
  RotationSharpness rotation;
  bool pass = false;
  nlohmann::json summary() const;
};

SharpnessReport sharpness_suite(int shift_horizon = 500, int rotation_max_n = 200,
                                double rotation_tol = 1e-9,
                                double shift_tol = 1e-12);

}  // namespace cat0
