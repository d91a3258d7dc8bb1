#include "cat0/rates.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cat0 {

double PiWeights::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

PiWeights pi_weights(const Schedule& schedule, int n) {
  if (n < 0) throw std::invalid_argument("pi_weights: n must be >= 0");
  PiWeights out;
  out.n = n;
  out.values.assign(n + 1, 0.0);
  // Backward tail products: tail_k = prod_{j=k+1}^n (1 - lambda_j).
  double tail = 1.0;
  for (int k = n; k >= 0; --k) {
    const double lam_k = k == 0 ? 1.0 : schedule.at(k);
    out.values[k] = lam_k * tail;
    tail *= 1.0 - lam_k;
  }
  return out;
}

double km_bound(const Schedule& schedule, double diam, int n) {
  if (n < 1) throw std::invalid_argument("km_bound: n must be >= 1");
  if (diam < 0.0) throw std::invalid_argument("km_bound: negative diameter");
  double s = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double l = schedule.at(i);
    s += l * (1.0 - l);
  }
  if (s <= 0.0) {
    throw std::domain_error("km_bound: sum lambda_i(1-lambda_i) vanishes");
  }
  return diam / std::sqrt(M_PI * s);
}

CTable::CTable(const Schedule& schedule, int N, int limit) : N_(N) {
  if (N < 1) throw std::invalid_argument("c_table: N must be >= 1");
  if (N > limit) {
    throw std::length_error("c_table: N exceeds the configured limit");
  }
  lambdas_.reserve(N);
  for (int k = 1; k <= N; ++k) lambdas_.push_back(schedule.at(k));

  std::vector<PiWeights> pis;
  pis.reserve(N + 1);
  for (int n = 0; n <= N; ++n) pis.push_back(pi_weights(schedule, n));

  // c_[m+1][n] = c_{m,n}; row 0 is the boundary c_{-1,n} = 1.
  c_.assign(N + 2, std::vector<double>(N + 1, 0.0));
  for (int n = 0; n <= N; ++n) c_[0][n] = 1.0;

  std::vector<double> inner(N + 1, 0.0);  // inner[j] = sum_{k=m+1}^n pi^n_k c_{j-1,k-1}
  for (int n = 1; n <= N; ++n) {
    const auto& pin = pis[n].values;
    for (int j = 0; j <= n - 1; ++j) inner[j] = pin[n] * c_[j][n - 1];
    for (int m = n - 1; m >= 0; --m) {
      if (m < n - 1) {
        for (int j = 0; j <= m; ++j) inner[j] += pin[m + 1] * c_[j][m];
      }
      const auto& pim = pis[m].values;
      double s = 0.0;
      for (int j = 0; j <= m; ++j) s += pim[j] * inner[j];
      c_[m + 1][n] = s;
    }
  }
}

double CTable::at(int m, int n) const {
  if (m < -1 || n > N_ || m >= n || n < 0) {
    throw std::out_of_range("c_table: index outside -1 <= m < n <= N");
  }
  return c_[m + 1][n];
}

double CTable::p(int n) const {
  if (n < 0 || n > N_ - 1) throw std::out_of_range("c_table: P_n needs n <= N-1");
  return at(n, n + 1) / lambdas_[n];
}

PnReport p_n_report(const Schedule& schedule, int N) {
  CTable table(schedule, N);
  PnReport out;
  out.N = N;
  double s = 0.0;  // sum_{i=1}^n lambda_i (1 - lambda_i)
  for (int n = 0; n <= N - 1; ++n) {
    if (n >= 1) {
      const double l = schedule.at(n);
      s += l * (1.0 - l);
    }
    const double pn = table.p(n);
    out.p.push_back(pn);
    out.probabilistic.push_back(std::sqrt(s) * pn);
  }
  return out;
}

ViscosityConstants visc_constants(const Metric& metric, const Vec& x0,
                                  const Vec& xbar, const Operator& f,
                                  double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw std::invalid_argument("visc_constants: beta must be in [0,1)");
  }
  ViscosityConstants out;
  out.beta = beta;
  out.gamma = 1.0 - beta;
  out.J = static_cast<int>(std::ceil(2.0 / out.gamma));
  const Vec z = f.apply(xbar);
  out.c_xbar =
      std::max(metric.dist(x0, xbar), metric.dist(z, xbar) / (1.0 - beta));
  return out;
}

void BoundReport::finalize() {
  worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) worst_margin = std::min(worst_margin, row.margin);
  violated = worst_margin < -tol;
}

void BoundReport::write_csv(std::ostream& os) const {
  auto g17 = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  std::string out = "n,observed,bound,margin\n";
  for (const auto& row : rows) {
    out += std::to_string(row.step);
    out += ',' + g17(row.observed) + ',' + g17(row.bound) + ',' + g17(row.margin) + '\n';
  }
  os << out;
}

nlohmann::json BoundReport::summary() const {
  nlohmann::json j = {{"check", check},
                      {"violated", violated},
                      {"worst_margin", worst_margin},
                      {"rows", rows.size()},
                      {"tol", tol}};
  if (convention_selected) j["convention_selected"] = *convention_selected;
  return j;
}

BoundReport km_bound_report(const Trace& trace, const Schedule& schedule,
                            double diam, double tol) {
  BoundReport report;
  report.check = "km_bound";
  report.tol = tol;
  double s = 0.0;
  for (size_t n = 1; n < trace.rows.size(); ++n) {
    const double l = schedule.at(static_cast<int>(n));
    s += l * (1.0 - l);
    if (s <= 0.0) throw std::domain_error("km_bound_report: vanishing sum");
    BoundRow row;
    row.step = static_cast<int>(n);
    row.observed = trace.rows[n].residual;
    row.bound = diam / std::sqrt(M_PI * s);
    row.margin = row.bound - row.observed;
    report.rows.push_back(row);
  }
  report.finalize();
  return report;
}

BoundReport pairwise_cmn_report(const Metric& metric, const Trace& trace,
                                const CTable& table, double diam, double tol) {
  if (trace.points.size() != trace.rows.size()) {
    throw std::invalid_argument("pairwise_cmn_report: trace lacks stored iterates");
  }
  if (diam <= 0.0) throw std::invalid_argument("pairwise_cmn_report: diam <= 0");
  const int N = std::min<int>(table.size(), static_cast<int>(trace.rows.size()) - 1);
  BoundReport report;
  report.check = "cmn";
  report.tol = tol;
  for (int n = 1; n <= N; ++n) {
    for (int m = 0; m < n; ++m) {
      BoundRow row;
      row.step = n;
      row.observed = metric.dist(trace.points[n], trace.points[m]) / diam;
      row.bound = table.at(m, n);
      row.margin = row.bound - row.observed;
      report.rows.push_back(row);
    }
  }
  report.finalize();
  return report;
}

BoundReport residual_pn_report(const Trace& trace, const CTable& table,
                               double diam, double tol) {
  if (diam <= 0.0) throw std::invalid_argument("residual_pn_report: diam <= 0");
  const int N = std::min<int>(table.size(), static_cast<int>(trace.rows.size()));
  BoundReport report;
  report.check = "pn";
  report.tol = tol;
  for (int n = 0; n <= N - 1; ++n) {
    BoundRow row;
    row.step = n;
    row.observed = trace.rows[n].residual / diam;
    row.bound = table.p(n);
    row.margin = row.bound - row.observed;
    report.rows.push_back(row);
  }
  report.finalize();
  return report;
}

BoundReport probabilistic_report(const Schedule& schedule, int N, double tol) {
  const PnReport pn = p_n_report(schedule, N);
  BoundReport report;
  report.check = "probabilistic";
  report.tol = tol;
  const double limit = 1.0 / std::sqrt(M_PI);
  for (int n = 0; n <= N - 1; ++n) {
    BoundRow row;
    row.step = n;
    row.observed = pn.probabilistic[n];
    row.bound = limit;
    row.margin = row.bound - row.observed;
    report.rows.push_back(row);
  }
  report.finalize();
  return report;
}

BoundReport representation_report(const Metric& metric, const Operator& T,
                                  const Trace& trace, const Schedule& schedule,
                                  const Vec& q, int max_m, double tol) {
  if (trace.points.size() != trace.rows.size()) {
    throw std::invalid_argument("representation_report: trace lacks stored iterates");
  }
  const int M = std::min<int>(max_m, static_cast<int>(trace.points.size()) - 1);
  // d(T x_{j-1}, q) for j = 0..M, with T x_{-1} := x_0.
  std::vector<double> dtq(M + 1);
  dtq[0] = metric.dist(trace.points[0], q);
  for (int j = 1; j <= M; ++j) dtq[j] = metric.dist(T.apply(trace.points[j - 1]), q);

  BoundReport report;
  report.check = "representation";
  report.tol = tol;
  for (int m = 0; m <= M; ++m) {
    const PiWeights pw = pi_weights(schedule, m);
    double bound = 0.0;
    for (int j = 0; j <= m; ++j) bound += pw.values[j] * dtq[j];
    BoundRow row;
    row.step = m;
    row.observed = metric.dist(trace.points[m], q);
    row.bound = bound;
    row.margin = row.bound - row.observed;
    report.rows.push_back(row);
  }
  report.finalize();
  return report;
}

ViscosityBoundReport visc_bound_report(const Trace& trace,
                                       const ViscosityConstants& consts,
                                       double tol) {
  const double gamma = 1.0 - consts.beta;
  // The estimates hold for the schedule alpha_k = min{2/((1-beta)k), 1};
  // refuse traces that were generated with anything else.
  for (size_t k = 1; k < trace.rows.size(); ++k) {
    const double expected = std::min(2.0 / (gamma * static_cast<double>(k)), 1.0);
    if (std::abs(trace.rows[k].lambda - expected) > 1e-12) {
      throw std::invalid_argument(
          "visc_bound_report: trace schedule is not min{2/((1-beta)k), 1}");
    }
  }

  ViscosityBoundReport out;
  out.step.check = "viscosity_step";
  out.step.tol = tol;
  out.residual.check = "viscosity_residual";
  out.residual.tol = tol;
  const double step_c = 2.0 * consts.J * consts.c_xbar / gamma;
  const double res_c = 2.0 * consts.c_xbar * (consts.J + 2) / gamma;
  for (size_t k = 1; k < trace.rows.size(); ++k) {
    const double kk = static_cast<double>(k);
    BoundRow srow;
    srow.step = static_cast<int>(k);
    srow.observed = trace.rows[k].step_dist;
    srow.bound = step_c / kk;
    srow.margin = srow.bound - srow.observed;
    out.step.rows.push_back(srow);

    BoundRow rrow;  // observed residual at k-1 against the bound at k
    rrow.step = static_cast<int>(k);
    rrow.observed = trace.rows[k - 1].residual;
    rrow.bound = res_c / kk;
    rrow.margin = rrow.bound - rrow.observed;
    out.residual.rows.push_back(rrow);
  }
  out.step.finalize();
  out.residual.finalize();
  return out;
}

double literature_bound(LiteratureBound kind, int k, double dist0) {
  if (k < 0) throw std::invalid_argument("literature_bound: k must be >= 0");
  if (dist0 < 0.0) throw std::invalid_argument("literature_bound: dist0 < 0");
  const double c = kind == LiteratureBound::Lieder ? 2.0 : 4.0;
  return c * dist0 / (k + 1.0);
}

nlohmann::json SharpnessReport::summary() const {
  return {{"pass", pass},
          {"shift",
           {{"horizon", shift.horizon},
            {"min_slack", shift.min_slack},
            {"pass", shift.pass}}},
          {"rotation",
           {{"max_n", rotation.max_n},
            {"convention_selected", rotation.selected},
            {"unique_where_distinct", rotation.unique_where_distinct},
            {"max_dev_selected", rotation.max_dev_selected},
            {"min_dev_other", rotation.min_dev_other},
            {"ambiguous_ns", rotation.ambiguous_ns},
            {"pass", rotation.pass}}}};
}

SharpnessReport sharpness_suite(int shift_horizon, int rotation_max_n,
                                double rotation_tol, double shift_tol) {
  SharpnessReport report;

  // (a) KM with lambda = 1/2 on the right shift from e1: the residual
  // dominates 1/sqrt(n+1) at every step.
  {
    const int len = shift_horizon + 2;
    L1Metric l1;
    RightShift shift(len);
    IterationConfig cfg;
    cfg.x0 = Vec::Zero(len);
    cfg.x0[0] = 1.0;
    cfg.horizon = shift_horizon;
    cfg.schedule = Schedule::constant(0.5);
    const Trace trace = km_run(l1, shift, cfg);
    report.shift.horizon = shift_horizon;
    report.shift.min_slack = std::numeric_limits<double>::infinity();
    for (const auto& row : trace.rows) {
      const double lower = 1.0 / std::sqrt(row.n + 1.0);
      report.shift.min_slack =
          std::min(report.shift.min_slack, row.residual - lower);
    }
    report.shift.pass = report.shift.min_slack >= -shift_tol;
  }

  // (b) For each n, the rotation by pi/(n+1) with schedule k/(k+1) and
  // u = x0 = (1,0) attains the equality residual_n = 2/(n+1) under exactly
  // one anchor convention (the conventions coincide at n = 1).
  {
    auto& rot = report.rotation;
    rot.max_n = rotation_max_n;
    rot.min_dev_other = std::numeric_limits<double>::infinity();
    ModelMetric plane(ModelSpace::euclidean(2));
    Vec start(2);
    start << 1.0, 0.0;

    int matched_a = 0, matched_b = 0;
    bool every_n_matched = true;
    for (int n = 1; n <= rotation_max_n; ++n) {
      PlanarRotation T(M_PI / (n + 1.0));
      double dev[2];
      for (int c = 0; c < 2; ++c) {
        IterationConfig cfg;
        cfg.x0 = start;
        cfg.anchor = start;
        cfg.horizon = n;
        cfg.schedule = Schedule::km_ratio();
        cfg.convention = c == 0 ? HalpernConvention::AnchorWeightLambda
                                : HalpernConvention::AnchorWeightOneMinusLambda;
        const Trace trace = halpern_run(plane, T, cfg);
        dev[c] = std::abs(trace.rows[n].residual - 2.0 / (n + 1.0));
      }
      const bool ma = dev[0] <= rotation_tol;
      const bool mb = dev[1] <= rotation_tol;
      if (ma && mb) rot.ambiguous_ns.push_back(n);
      if (!ma && !mb) every_n_matched = false;
      if (ma) ++matched_a;
      if (mb) ++matched_b;
      if (n >= 2) {
        // Track how far the non-selected convention stays from the equality.
        rot.min_dev_other = std::min(rot.min_dev_other, std::max(dev[0], dev[1]));
      }
      rot.max_dev_selected = std::max(rot.max_dev_selected, std::min(dev[0], dev[1]));
    }

    const bool a_all = matched_a == rotation_max_n;
    const bool b_all = matched_b == rotation_max_n;
    if (a_all == b_all) {
      rot.selected = "none";
      rot.pass = false;
    } else {
      rot.selected = a_all ? to_string(HalpernConvention::AnchorWeightLambda)
                           : to_string(HalpernConvention::AnchorWeightOneMinusLambda);
      // Uniqueness where the conventions actually differ: the other
      // convention must match nowhere beyond the degenerate n = 1.
      const int other = a_all ? matched_b : matched_a;
      rot.unique_where_distinct =
          other == static_cast<int>(rot.ambiguous_ns.size()) &&
          rot.ambiguous_ns.size() <= 1;
      rot.pass = every_n_matched && rot.unique_where_distinct;
    }
  }

  report.pass = report.shift.pass && report.rotation.pass;
  return report;
}

}  // namespace cat0
