#pragma once

#include <cstddef>

#include "ifcdms/exec.hpp"
#include "ifcdms/geometry.hpp"

namespace ifcdms {

/// Y1 = X1 + a X2 + Z1, Y2 = b X1 + X2 + Z2 with unit-variance noise and
/// average powers p1, p2.
struct GaussianParams {
  double p1 = 0.0;
  double p2 = 0.0;
  double a = 0.0;
  double b = 0.0;

  /// Throws InvalidInput on negative or non-finite values.
  void validate() const;
};

/// Capacity corner with transmitter 1 knowing both messages; alpha is the
/// share of P1 spent on W1. Requires |b| <= 1.
RatePair capacity_t1_corner(const GaussianParams& g, double alpha);

/// The r2 coordinate of capacity_t1_corner evaluated through
/// 1/2 log2(1 + h S h^T / (1 + b^2 alpha P1)) with the optimal cross-covariance.
double capacity_t1_r2_covariance(const GaussianParams& g, double alpha);

/// Mirror image with transmitter 2 knowing both messages. Requires |a| <= 1.
RatePair capacity_t2_corner(const GaussianParams& g, double beta);

/// Dirty-paper region corner with W1 encoded against the W2 codeword.
RatePair dpc12_corner(const GaussianParams& g, double alpha);

/// Dirty-paper region corner with the encoding order reversed.
RatePair dpc21_corner(const GaussianParams& g, double alpha);

enum class GaussCurve { t1, t2, dpc12, dpc21 };

/// Evaluates a corner family on steps evenly spaced parameters in [0, 1].
CornerCurve sweep(const GaussianParams& g, GaussCurve curve, std::size_t steps = 1001,
                  ExecPolicy policy = ExecPolicy::parallel);

/// Capacity region under strong interference. Requires a^2 >= 1 and b^2 >= 1.
Polytope strong_capacity_polytope(const GaussianParams& g);

/// Kramer's outer bound for the non-cooperative channel.
Polytope kramer_polytope(const GaussianParams& g);

/// Intersection of the convexified t1 and t2 capacity regions.
/// Requires |a| <= 1 and |b| <= 1.
RateRegion intersection_region(const GaussianParams& g, std::size_t steps = 1001);

/// b^2 (1 - alpha) P1 + 2 b gamma + P2.
double h_sigma_h(const GaussianParams& g, double alpha, double gamma);

/// Grid maximizer of h_sigma_h over |gamma| <= sqrt((1 - alpha) P1 P2);
/// grid_n >= 2 points, ties resolved toward gamma = 0.
double optimize_gamma(const GaussianParams& g, double alpha, std::size_t grid_n);

struct BoundPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// For a zero-mean Gaussian pair with covariance [[c11, c12], [c12, c22]]:
/// lhs = E[X1 X2], rhs = sqrt(E[E[X1|X2]^2] E[X2^2]). Throws InvalidInput
/// when the matrix is not positive semidefinite.
BoundPair cauchy_corr_bound_check(double c11, double c12, double c22);

struct EpiCheck {
  double lower_bound = 0.0;  // 1/2 log2(b^2 2^{2 h1} + 1 - b^2)
  double achieved = 0.0;     // 1/2 log2 Var(Y2 | X2, common part of X1)
};

/// Compares the entropy-power lower bound on the receiver-2 conditional
/// entropy with the value attained by the dirty-paper scheme (both without
/// the 2 pi e offset). Requires |b| <= 1.
EpiCheck epi_corner_check(const GaussianParams& g, double alpha);

}  // namespace ifcdms
