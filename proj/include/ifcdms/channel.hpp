#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ifcdms/info.hpp"

namespace ifcdms {

/// Row-stochastic matrix P(out | in), row-major. Used for marginal channel
/// kernels P(y_t | x1, x2) (inputs indexed x1 * nx2 + x2) and for degrading
/// kernels.
class StochasticMatrix {
 public:
  StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> p);

  static StochasticMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] double operator()(std::size_t r, std::size_t c) const { return p_[r * cols_ + c]; }
  [[nodiscard]] std::span<const double> row(std::size_t r) const {
    return std::span<const double>(p_).subspan(r * cols_, cols_);
  }
  [[nodiscard]] std::span<const double> data() const { return p_; }

  /// Largest |sum_c P(r,c) - 1| over rows.
  [[nodiscard]] double max_row_error() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> p_;
};

/// Discrete memoryless interference channel P(y1, y2 | x1, x2), flat index
/// ((x1 * nx2 + x2) * ny1 + y1) * ny2 + y2. Never renormalized: every
/// (x1, x2) slice must already sum to one within 1e-12.
class IFCChannel {
 public:
  IFCChannel(std::size_t nx1, std::size_t nx2, std::size_t ny1, std::size_t ny2,
             std::vector<double> p);

  /// Channel whose outputs are conditionally independent given the inputs.
  static IFCChannel from_marginals(std::size_t nx1, std::size_t nx2, const StochasticMatrix& k1,
                                   const StochasticMatrix& k2);

  [[nodiscard]] std::size_t nx1() const { return nx1_; }
  [[nodiscard]] std::size_t nx2() const { return nx2_; }
  [[nodiscard]] std::size_t ny1() const { return ny1_; }
  [[nodiscard]] std::size_t ny2() const { return ny2_; }
  [[nodiscard]] std::span<const double> data() const { return p_; }

  [[nodiscard]] double operator()(std::size_t x1, std::size_t x2, std::size_t y1,
                                  std::size_t y2) const {
    return p_[((x1 * nx2_ + x2) * ny1_ + y1) * ny2_ + y2];
  }

 private:
  std::size_t nx1_, nx2_, ny1_, ny2_;
  std::vector<double> p_;
};

struct MarginalKernels {
  StochasticMatrix k1;  // P(y1 | x1, x2)
  StochasticMatrix k2;  // P(y2 | x1, x2)
};

MarginalKernels marginal_kernels(const IFCChannel& ch);

/// Independent input laws p1(x1), p2(x2).
struct ProductInput {
  std::vector<double> p1;
  std::vector<double> p2;

  static ProductInput uniform(std::size_t nx1, std::size_t nx2);
};

/// Joint over (X1, X2, Y1, Y2) for independent inputs.
JointDistribution induced_joint(const IFCChannel& ch, const ProductInput& input);

/// Joint over (U, X1, X2, Y1, Y2) from a three-axis input law p(u, x1, x2).
JointDistribution induced_joint(const IFCChannel& ch, const JointDistribution& p_ux1x2);

}  // namespace ifcdms
