#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace ifcdms {

/// Dense row-major matrix for small LP systems.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct LpOptions {
  double feasibility_tol = 1e-9;  // phase-1 optimum and final residual
  double pivot_tol = 1e-12;
  std::size_t max_iterations = 50000;
};

struct LpFeasible {
  std::vector<double> x;
  double residual = 0.0;  // ||A x - b||_inf
};

struct LpInfeasible {
  double phase1_objective = 0.0;  // sum of artificials at the phase-1 optimum
};

using LpResult = std::variant<LpFeasible, LpInfeasible>;

/// Finds x >= 0 with A x = b by phase-1 simplex (Bland's rule, one artificial
/// per row). Reports Infeasible when the phase-1 optimum exceeds
/// feasibility_tol. Throws LpFailure on iteration exhaustion or when the
/// recovered x misses the residual tolerance.
LpResult lp_feasibility(const DenseMatrix& a_eq, std::span<const double> b_eq, std::size_t n_vars,
                        const LpOptions& opts = {});

}  // namespace ifcdms
