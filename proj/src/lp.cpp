#include "ifcdms/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ifcdms/errors.hpp"

namespace ifcdms {

LpResult lp_feasibility(const DenseMatrix& a_eq, std::span<const double> b_eq, std::size_t n_vars,
                        const LpOptions& opts) {
  const std::size_t m = a_eq.rows;
  if (a_eq.cols != n_vars) throw InvalidInput("lp_feasibility: matrix has wrong column count");
  if (b_eq.size() != m) throw InvalidInput("lp_feasibility: rhs has wrong length");
  if (m == 0) return LpFeasible{std::vector<double>(n_vars, 0.0), 0.0};

  // Tableau columns: [x (n_vars) | artificials (m) | rhs]. Rows with negative
  // rhs are negated; the all-artificial basis is then primal feasible.
  const std::size_t n_total = n_vars + m;
  const std::size_t width = n_total + 1;
  std::vector<double> t(m * width, 0.0);
  auto cell = [&](std::size_t r, std::size_t c) -> double& { return t[r * width + c]; };
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    const double sign = b_eq[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n_vars; ++c) cell(r, c) = sign * a_eq(r, c);
    cell(r, n_vars + r) = 1.0;
    cell(r, n_total) = sign * b_eq[r];
    basis[r] = n_vars + r;
  }

  // Reduced costs of min sum(artificials): d_j = c_j - sum_r t(r, j).
  std::vector<double> cost(width, 0.0);
  for (std::size_t c = n_vars; c < n_total; ++c) cost[c] = 1.0;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < width; ++c) cost[c] -= cell(r, c);
  // cost[n_total] now holds -objective.

  std::size_t iter = 0;
  for (;; ++iter) {
    if (iter >= opts.max_iterations) throw LpFailure("lp_feasibility: iteration limit reached");

    // Bland: lowest-index column with negative reduced cost.
    std::size_t enter = n_total;
    for (std::size_t c = 0; c < n_total; ++c)
      if (cost[c] < -opts.pivot_tol) {
        enter = c;
        break;
      }
    if (enter == n_total) break;

    // Ratio test; ties go to the lowest basic variable index.
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = cell(r, enter);
      if (a <= opts.pivot_tol) continue;
      const double ratio = cell(r, n_total) / a;
      const bool tie = leave < m && std::abs(ratio - best) <= 1e-15;
      if (leave == m || ratio < best - 1e-15 || (tie && basis[r] < basis[leave])) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    // Minimization of a nonnegative objective is bounded below.
    if (leave == m) throw LpFailure("lp_feasibility: unbounded phase-1 direction");

    const double piv = cell(leave, enter);
    for (std::size_t c = 0; c < width; ++c) cell(leave, c) /= piv;
    cell(leave, enter) = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double f = cell(r, enter);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) cell(r, c) -= f * cell(leave, c);
      cell(r, enter) = 0.0;
    }
    const double f = cost[enter];
    for (std::size_t c = 0; c < width; ++c) cost[c] -= f * cell(leave, c);
    cost[enter] = 0.0;
    basis[leave] = enter;
  }

  double objective = 0.0;
  std::vector<double> x(n_vars, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const double v = std::max(cell(r, n_total), 0.0);
    if (basis[r] < n_vars)
      x[basis[r]] = v;
    else
      objective += v;
  }
  if (objective > opts.feasibility_tol) return LpInfeasible{objective};

  double residual = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    double s = -b_eq[r];
    for (std::size_t c = 0; c < n_vars; ++c) s += a_eq(r, c) * x[c];
    residual = std::max(residual, std::abs(s));
  }
  if (residual > opts.feasibility_tol) {
    std::ostringstream msg;
    msg << "lp_feasibility: phase-1 reached zero but residual is " << residual;
    throw LpFailure(msg.str());
  }
  return LpFeasible{std::move(x), residual};
}

}  // namespace ifcdms
