#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ifcdms/channel.hpp"
#include "ifcdms/exec.hpp"

namespace ifcdms {

/// Signed sum of mutual informations sum_k sign_k * I(W_k; Y_k) as a function
/// of an input law over states s = (u, x1, x2). Each term groups the states
/// (W_k = g_k(s)) and observes one marginal output kernel.
///
/// Two parameterizations are supported: a free joint p(u, x1, x2) (one
/// simplex block), or a product p1(x1) p2(x2) with |U| = 1 (two blocks).
/// Gradients are analytic: dI/dp(s) = sum_y K(y|s) log p(w,y)/(p(w)p(y)) - 1.
class MiGapObjective {
 public:
  enum class Param { joint, product };
  enum class Output { y1, y2 };

  struct Term {
    double sign;
    Output output;
    std::vector<std::size_t> group_of_state;  // size |U| nx1 nx2
    std::size_t n_groups;
  };

  MiGapObjective(const IFCChannel& ch, Param param, std::size_t nu, std::vector<Term> terms);

  [[nodiscard]] const std::vector<std::size_t>& block_sizes() const { return blocks_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] Param param() const { return param_; }
  [[nodiscard]] std::size_t nu() const { return nu_; }

  [[nodiscard]] double value(std::span<const double> x) const;
  /// Value plus gradient w.r.t. the block coordinates.
  double value_and_gradient(std::span<const double> x, std::span<double> grad) const;

  /// Builds the state law p(u, x1, x2) from block coordinates.
  void state_law(std::span<const double> x, std::span<double> pi) const;

 private:
  double term_value(const Term& t, std::span<const double> pi, std::span<double> dpi) const;

  Param param_;
  std::size_t nu_, nx1_, nx2_, n_states_;
  MarginalKernels kernels_;
  std::vector<Term> terms_;
  std::vector<std::size_t> blocks_;
  std::size_t dim_;
};

struct AscentConfig {
  double step = 0.1;
  int iterations = 200;
};

struct SearchOutcome {
  double best_value;
  std::vector<double> best_point;
  std::size_t best_index;     // position in the candidate list (grid, then restarts)
  std::size_t points_tested;  // grid points + restarts
};

/// Gap values at a batch of points stored row-major (points.size() = n * dim).
void evaluate_points(const MiGapObjective& obj, std::span<const double> points,
                     std::span<double> values, ExecPolicy policy);

/// Projected gradient ascent from each start; starts are overwritten with
/// the best point found along each trajectory, values with its gap.
void ascend_points(const MiGapObjective& obj, std::span<double> starts, std::span<double> values,
                   const AscentConfig& cfg, ExecPolicy policy);

struct FalsifyConfig {
  int resolution = 8;
  int restarts = 64;
  AscentConfig ascent{};
  std::size_t max_grid_points = 20000;
  std::uint64_t seed = 0;
  ExecPolicy policy = ExecPolicy::parallel;
};

/// Maximizes the gap over the product of simplex blocks: the full lattice
/// when it has at most max_grid_points points (otherwise that many seeded
/// lattice draws), then seeded random restarts refined by ascent. Ties in
/// the maximum go to the lowest candidate index.
SearchOutcome falsify(const MiGapObjective& obj, const FalsifyConfig& cfg);

}  // namespace ifcdms
