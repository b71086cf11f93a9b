#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lpbound {

// maximize objective.x
// s.t.     ub_rows.x <= ub_rhs,  eq_rows.x == eq_rhs,  lower <= x <= upper.
//
// An empty `lower` means all lower bounds are 0; a lower bound of -infinity
// makes the variable free. `upper` entries are optional.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> ub_rows;
  std::vector<double> ub_rhs;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<double> lower;
  std::vector<std::optional<double>> upper;

  std::size_t num_variables() const { return objective.size(); }
  double lower_bound(std::size_t j) const { return lower.empty() ? 0.0 : lower[j]; }
  std::optional<double> upper_bound(std::size_t j) const { return upper.empty() ? std::nullopt : upper[j]; }

  // Throws std::invalid_argument on ragged rows or non-finite data.
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

std::string to_string(LpStatus status);

// Dual multipliers for the original rows and the audit computed from them.
struct LpCertificate {
  std::vector<double> ub_duals;     // >= 0
  std::vector<double> eq_duals;     // free
  std::vector<double> upper_duals;  // >= 0, one per variable (0 when unbounded above)
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  double max_primal_residual = 0.0;
  double max_dual_infeasibility = 0.0;
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  LpCertificate certificate;
  bool degenerate = false;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-10;
  double feasibility_tol = 1e-9;
  std::size_t max_iterations = 0;  // 0: scale with problem size
};

// Dense two-phase primal simplex with Bland's rule. Deterministic.
LpSolution solve(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace lpbound
