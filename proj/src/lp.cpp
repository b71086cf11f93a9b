#include "lpbound/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpbound {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

void LinearProgram::validate() const {
  const std::size_t n = num_variables();
  auto check_rows = [n](const std::vector<std::vector<double>>& rows, const std::vector<double>& rhs,
                        const char* what) {
    if (rows.size() != rhs.size()) throw std::invalid_argument(std::string(what) + ": row/rhs count mismatch");
    for (const auto& row : rows) {
      if (row.size() != n) throw std::invalid_argument(std::string(what) + ": row width differs from variable count");
      for (double v : row) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite coefficient");
      }
    }
    for (double v : rhs) {
      if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite right-hand side");
    }
  };
  for (double v : objective) {
    if (!std::isfinite(v)) throw std::invalid_argument("objective: non-finite coefficient");
  }
  check_rows(ub_rows, ub_rhs, "inequality rows");
  check_rows(eq_rows, eq_rhs, "equality rows");
  if (!lower.empty() && lower.size() != n) throw std::invalid_argument("lower bounds: size mismatch");
  if (!upper.empty() && upper.size() != n) throw std::invalid_argument("upper bounds: size mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    const double l = lower_bound(j);
    if (std::isnan(l) || l == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("lower bounds must be finite or -infinity");
    }
    if (auto u = upper_bound(j)) {
      if (!std::isfinite(*u)) throw std::invalid_argument("upper bounds must be finite when present");
      if (std::isfinite(l) && *u < l) throw std::invalid_argument("upper bound below lower bound");
    }
  }
}

namespace {

enum class RowOrigin { inequality, upper_bound, equality };

struct StandardRow {
  std::vector<double> coefficients;  // over structural columns
  double rhs = 0.0;
  bool has_slack = false;
  RowOrigin origin = RowOrigin::inequality;
  std::size_t source = 0;
};

// Dense tableau over [structural | slack | artificial] columns.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0), rhs_(rows, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& rhs(std::size_t i) { return rhs_[i]; }
  double rhs(std::size_t i) const { return rhs_[i]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t r, std::size_t c, std::vector<std::vector<double>*> cost_rows) {
    const double p = at(r, c);
    for (std::size_t j = 0; j < cols_; ++j) at(r, j) /= p;
    rhs_[r] /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) at(i, j) -= f * at(r, j);
      rhs_[i] -= f * rhs_[r];
      at(i, c) = 0.0;
    }
    for (auto* cost : cost_rows) {
      const double f = (*cost)[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) (*cost)[j] -= f * at(r, j);
      (*cost)[c] = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<double> rhs_;
};

struct Column {
  std::size_t original;
  double sign;  // x_original = offset + sign * column value
};

void audit(const LinearProgram& lp, LpSolution& sol) {
  const std::size_t n = lp.num_variables();
  auto& cert = sol.certificate;
  const auto& x = sol.x;
  double primal = 0.0;
  for (std::size_t i = 0; i < lp.ub_rows.size(); ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) ax += lp.ub_rows[i][j] * x[j];
    primal = std::max(primal, ax - lp.ub_rhs[i]);
  }
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) ax += lp.eq_rows[i][j] * x[j];
    primal = std::max(primal, std::abs(ax - lp.eq_rhs[i]));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isfinite(lp.lower_bound(j))) primal = std::max(primal, lp.lower_bound(j) - x[j]);
    if (auto u = lp.upper_bound(j)) primal = std::max(primal, x[j] - *u);
  }
  cert.max_primal_residual = primal;

  double infeas = 0.0;
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < lp.ub_rows.size(); ++i) {
    infeas = std::max(infeas, -cert.ub_duals[i]);
    dual_obj += lp.ub_rhs[i] * cert.ub_duals[i];
  }
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) dual_obj += lp.eq_rhs[i] * cert.eq_duals[i];
  for (std::size_t j = 0; j < n; ++j) {
    double reduced = lp.objective[j] - cert.upper_duals[j];
    for (std::size_t i = 0; i < lp.ub_rows.size(); ++i) reduced -= lp.ub_rows[i][j] * cert.ub_duals[i];
    for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) reduced -= lp.eq_rows[i][j] * cert.eq_duals[i];
    infeas = std::max(infeas, -cert.upper_duals[j]);
    if (auto u = lp.upper_bound(j)) dual_obj += *u * cert.upper_duals[j];
    const double l = lp.lower_bound(j);
    if (std::isfinite(l)) {
      infeas = std::max(infeas, reduced);
      // reduced <= 0 and x >= l give reduced * x <= reduced * l.
      dual_obj += reduced * l;
    } else {
      infeas = std::max(infeas, std::abs(reduced));
    }
  }
  cert.max_dual_infeasibility = infeas;
  cert.dual_objective = dual_obj;
  cert.duality_gap = dual_obj - sol.objective_value;
}

}  // namespace

LpSolution solve(const LinearProgram& lp, const SimplexOptions& options) {
  lp.validate();
  const std::size_t n = lp.num_variables();

  // Shift finite lower bounds to zero and split free variables.
  std::vector<Column> columns;
  std::vector<double> offset(n, 0.0);
  std::vector<std::vector<std::size_t>> columns_of(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double l = lp.lower_bound(j);
    if (std::isfinite(l)) {
      offset[j] = l;
      columns_of[j].push_back(columns.size());
      columns.push_back({j, 1.0});
    } else {
      columns_of[j].push_back(columns.size());
      columns.push_back({j, 1.0});
      columns_of[j].push_back(columns.size());
      columns.push_back({j, -1.0});
    }
  }
  const std::size_t n_struct = columns.size();

  auto to_standard = [&](const std::vector<double>& row, double rhs) {
    StandardRow out;
    out.coefficients.assign(n_struct, 0.0);
    out.rhs = rhs;
    for (std::size_t c = 0; c < n_struct; ++c) out.coefficients[c] = row[columns[c].original] * columns[c].sign;
    for (std::size_t j = 0; j < n; ++j) out.rhs -= row[j] * offset[j];
    return out;
  };

  std::vector<StandardRow> rows;
  for (std::size_t i = 0; i < lp.ub_rows.size(); ++i) {
    auto r = to_standard(lp.ub_rows[i], lp.ub_rhs[i]);
    r.has_slack = true;
    r.origin = RowOrigin::inequality;
    r.source = i;
    rows.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (auto u = lp.upper_bound(j)) {
      std::vector<double> unit(n, 0.0);
      unit[j] = 1.0;
      auto r = to_standard(unit, *u);
      r.has_slack = true;
      r.origin = RowOrigin::upper_bound;
      r.source = j;
      rows.push_back(std::move(r));
    }
  }
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) {
    auto r = to_standard(lp.eq_rows[i], lp.eq_rhs[i]);
    r.origin = RowOrigin::equality;
    r.source = i;
    rows.push_back(std::move(r));
  }

  const std::size_t m = rows.size();
  std::size_t n_slack = 0;
  for (const auto& r : rows) n_slack += r.has_slack ? 1 : 0;
  const std::size_t art0 = n_struct + n_slack;
  const std::size_t n_cols = art0 + m;

  Tableau t(m, n_cols);
  std::vector<double> row_sign(m, 1.0);
  std::vector<std::size_t> basis(m);
  {
    std::size_t slack = n_struct;
    for (std::size_t i = 0; i < m; ++i) {
      const double s = rows[i].rhs < 0.0 ? -1.0 : 1.0;
      row_sign[i] = s;
      for (std::size_t c = 0; c < n_struct; ++c) t.at(i, c) = s * rows[i].coefficients[c];
      if (rows[i].has_slack) t.at(i, slack++) = s;
      t.at(i, art0 + i) = 1.0;
      t.rhs(i) = s * rows[i].rhs;
      basis[i] = art0 + i;
    }
  }

  // Reduced costs c_j - c_B B^-1 A_j for both phases.
  std::vector<double> phase1(n_cols, 0.0);
  std::vector<double> phase2(n_cols, 0.0);
  for (std::size_t j = 0; j < art0; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += t.at(i, j);
    phase1[j] = s;
  }
  for (std::size_t c = 0; c < n_struct; ++c) phase2[c] = lp.objective[columns[c].original] * columns[c].sign;

  LpSolution sol;
  const std::size_t limit = options.max_iterations ? options.max_iterations : 200 * (m + n_cols) + 1000;
  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(t.rhs(i)));

  // Returns false when the iteration limit is hit; sets unbounded on an unbounded ray.
  auto run = [&](std::vector<double>& cost, std::size_t allowed_cols, bool& unbounded) {
    unbounded = false;
    while (true) {
      if (sol.iterations >= limit) return false;
      // Bland: lowest-index improving column.
      std::size_t enter = n_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (cost[j] > options.pivot_tol) {
          enter = j;
          break;
        }
      }
      if (enter == n_cols) return true;
      std::size_t leave = m;
      double best = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double a = t.at(i, enter);
        if (a <= options.pivot_tol) continue;
        const double ratio = t.rhs(i) / a;
        if (leave == m || ratio < best - 1e-12 * (1.0 + std::abs(best)) ||
            (std::abs(ratio - best) <= 1e-12 * (1.0 + std::abs(best)) && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) {
        unbounded = true;
        return true;
      }
      if (best <= options.feasibility_tol) sol.degenerate = true;
      t.pivot(leave, enter, {&phase1, &phase2});
      basis[leave] = enter;
      ++sol.iterations;
    }
  };

  bool unbounded = false;
  if (!run(phase1, art0, unbounded)) {
    sol.status = LpStatus::iteration_limit;
    sol.degenerate = true;
    return sol;
  }
  double infeasibility = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= art0) infeasibility += std::max(0.0, t.rhs(i));
  }
  if (infeasibility > options.feasibility_tol * scale) {
    sol.status = LpStatus::infeasible;
    return sol;
  }
  // Drive zero-level artificials out of the basis; rows that cannot be
  // pivoted are redundant and keep their artificial at zero.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < art0) continue;
    for (std::size_t j = 0; j < art0; ++j) {
      if (std::abs(t.at(i, j)) > options.pivot_tol) {
        t.pivot(i, j, {&phase1, &phase2});
        basis[i] = j;
        break;
      }
    }
  }

  if (!run(phase2, art0, unbounded)) {
    sol.status = LpStatus::iteration_limit;
    sol.degenerate = true;
    return sol;
  }
  if (unbounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  std::vector<double> value(n_cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    value[basis[i]] = t.rhs(i);
    if (basis[i] < art0 && std::abs(t.rhs(i)) <= options.feasibility_tol) sol.degenerate = true;
  }
  sol.x = offset;
  for (std::size_t c = 0; c < n_struct; ++c) sol.x[columns[c].original] += columns[c].sign * value[c];
  sol.objective_value = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective_value += lp.objective[j] * sol.x[j];
  sol.status = LpStatus::optimal;

  // Row duals: y'_i = -(reduced cost of artificial i); undo the sign flip.
  auto& cert = sol.certificate;
  cert.ub_duals.assign(lp.ub_rows.size(), 0.0);
  cert.eq_duals.assign(lp.eq_rows.size(), 0.0);
  cert.upper_duals.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double y = -phase2[art0 + i] * row_sign[i];
    switch (rows[i].origin) {
      case RowOrigin::inequality: cert.ub_duals[rows[i].source] = y; break;
      case RowOrigin::upper_bound: cert.upper_duals[rows[i].source] = y; break;
      case RowOrigin::equality: cert.eq_duals[rows[i].source] = y; break;
    }
  }
  audit(lp, sol);
  return sol;
}

}  // namespace lpbound
