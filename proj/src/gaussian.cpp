#include "ifcdms/gaussian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "ifcdms/errors.hpp"

namespace ifcdms {

namespace {

double half_log2(double x) { return 0.5 * std::log2(x); }

void check_fraction(double f, const char* name) {
  if (!(f >= 0.0 && f <= 1.0)) throw DomainError(std::string(name) + " must lie in [0, 1]");
}

void require_weak_b(const GaussianParams& g, const char* what) {
  if (std::abs(g.b) > 1.0) throw DomainError(std::string(what) + " requires |b|≤1");
}

void require_weak_a(const GaussianParams& g, const char* what) {
  if (std::abs(g.a) > 1.0) throw DomainError(std::string(what) + " requires |a|≤1");
}

// Shared by the t1 capacity corner and dpc12: r2 numerator with full
// coherent combining of the W2 components.
RatePair t1_form(const GaussianParams& g, double alpha) {
  const double b2 = g.b * g.b;
  const double coh = 2.0 * std::abs(g.b) * std::sqrt((1.0 - alpha) * g.p1 * g.p2);
  return {half_log2(1.0 + alpha * g.p1),
          half_log2((1.0 + b2 * g.p1 + coh + g.p2) / (1.0 + b2 * alpha * g.p1))};
}

RatePair corner(const GaussianParams& g, GaussCurve c, double t) {
  switch (c) {
    case GaussCurve::t1: return capacity_t1_corner(g, t);
    case GaussCurve::t2: return capacity_t2_corner(g, t);
    case GaussCurve::dpc12: return dpc12_corner(g, t);
    case GaussCurve::dpc21: return dpc21_corner(g, t);
  }
  return {};
}

}  // namespace

void GaussianParams::validate() const {
  for (double v : {p1, p2, a, b})
    if (!std::isfinite(v)) throw InvalidInput("Gaussian parameters must be finite");
  if (p1 < 0.0 || p2 < 0.0) throw InvalidInput("powers must be nonnegative");
}

RatePair capacity_t1_corner(const GaussianParams& g, double alpha) {
  g.validate();
  require_weak_b(g, "capacity_t1");
  check_fraction(alpha, "alpha");
  return t1_form(g, alpha);
}

double capacity_t1_r2_covariance(const GaussianParams& g, double alpha) {
  g.validate();
  require_weak_b(g, "capacity_t1");
  check_fraction(alpha, "alpha");
  const double gamma = std::copysign(std::sqrt((1.0 - alpha) * g.p1 * g.p2), g.b);
  return half_log2(1.0 + h_sigma_h(g, alpha, gamma) / (1.0 + g.b * g.b * alpha * g.p1));
}

RatePair capacity_t2_corner(const GaussianParams& g, double beta) {
  g.validate();
  require_weak_a(g, "capacity_t2");
  check_fraction(beta, "beta");
  const RatePair m = t1_form({g.p2, g.p1, g.b, g.a}, beta);
  return {m.r2, m.r1};
}

RatePair dpc12_corner(const GaussianParams& g, double alpha) {
  g.validate();
  check_fraction(alpha, "alpha");
  return t1_form(g, alpha);
}

RatePair dpc21_corner(const GaussianParams& g, double alpha) {
  g.validate();
  check_fraction(alpha, "alpha");
  const double coh = 2.0 * std::abs(g.b) * std::sqrt((1.0 - alpha) * g.p1 * g.p2);
  return {half_log2((1.0 + g.p1) / (1.0 + (1.0 - alpha) * g.p1)),
          half_log2(1.0 + g.b * g.b * g.p1 + coh + g.p2)};
}

CornerCurve sweep(const GaussianParams& g, GaussCurve curve, std::size_t steps, ExecPolicy policy) {
  if (steps < 2) throw InvalidInput("sweep needs at least 2 steps");
  // Parameter checks run here, outside the parallel loop.
  (void)corner(g, curve, 0.0);
  std::vector<CornerCurve::Point> pts(steps);
  const auto n = static_cast<long>(steps);
  const double denom = static_cast<double>(steps - 1);
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) / denom;
      pts[static_cast<std::size_t>(k)] = {t, corner(g, curve, t)};
    }
  } else {
    for (long k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) / denom;
      pts[static_cast<std::size_t>(k)] = {t, corner(g, curve, t)};
    }
  }
  return CornerCurve{std::move(pts)};
}

Polytope strong_capacity_polytope(const GaussianParams& g) {
  g.validate();
  if (g.a * g.a < 1.0 || g.b * g.b < 1.0)
    throw DomainError("strong interference capacity requires a²≥1 and b²≥1");
  return {{{1.0, 0.0, half_log2(1.0 + g.p1), "R1"},
           {0.0, 1.0, half_log2(1.0 + g.p2), "R2"},
           {1.0, 1.0, half_log2(g.p1 + g.a * g.a * g.p2 + 1.0), "sum via receiver 1"},
           {1.0, 1.0, half_log2(g.b * g.b * g.p1 + g.p2 + 1.0), "sum via receiver 2"}}};
}

Polytope kramer_polytope(const GaussianParams& g) {
  g.validate();
  const double a2 = g.a * g.a;
  const double b2 = g.b * g.b;
  return {{{1.0, 0.0, half_log2(1.0 + g.p1), "R1"},
           {0.0, 1.0, half_log2(1.0 + g.p2), "R2"},
           {1.0, 1.0, half_log2((g.p1 + a2 * g.p2 + 1.0) * (g.p2 + 1.0) / (std::min(a2, 1.0) * g.p2 + 1.0)),
            "sum genie at receiver 1"},
           {1.0, 1.0, half_log2((g.p2 + b2 * g.p1 + 1.0) * (g.p1 + 1.0) / (std::min(b2, 1.0) * g.p1 + 1.0)),
            "sum genie at receiver 2"}}};
}

RateRegion intersection_region(const GaussianParams& g, std::size_t steps) {
  g.validate();
  require_weak_a(g, "intersection region");
  require_weak_b(g, "intersection region");
  return intersect(convex_downset_hull(sweep(g, GaussCurve::t1, steps)),
                   convex_downset_hull(sweep(g, GaussCurve::t2, steps)));
}

double h_sigma_h(const GaussianParams& g, double alpha, double gamma) {
  return g.b * g.b * (1.0 - alpha) * g.p1 + 2.0 * g.b * gamma + g.p2;
}

double optimize_gamma(const GaussianParams& g, double alpha, std::size_t grid_n) {
  g.validate();
  check_fraction(alpha, "alpha");
  if (grid_n < 2) throw InvalidInput("optimize_gamma needs at least 2 grid points");
  const double lim = std::sqrt((1.0 - alpha) * g.p1 * g.p2);
  double best_gamma = 0.0;
  double best_value = -INFINITY;
  for (std::size_t k = 0; k < grid_n; ++k) {
    const double gamma = -lim + 2.0 * lim * static_cast<double>(k) / static_cast<double>(grid_n - 1);
    const double v = h_sigma_h(g, alpha, gamma);
    if (v > best_value || (v == best_value && std::abs(gamma) < std::abs(best_gamma))) {
      best_value = v;
      best_gamma = gamma;
    }
  }
  return best_gamma;
}

BoundPair cauchy_corr_bound_check(double c11, double c12, double c22) {
  if (!std::isfinite(c11) || !std::isfinite(c12) || !std::isfinite(c22))
    throw InvalidInput("covariance entries must be finite");
  const double big = std::max({1.0, std::abs(c11), std::abs(c22)});
  if (c11 < -1e-12 * big || c22 < -1e-12 * big || c11 * c22 - c12 * c12 < -1e-12 * big * big)
    throw InvalidInput("covariance matrix is not positive semidefinite");
  // E[X1 | X2] = (c12 / c22) X2, so E[E[X1|X2]^2] E[X2^2] = c12^2.
  const double rhs = c22 > 0.0 ? std::sqrt((c12 * c12 / c22) * c22) : 0.0;
  return {c12, rhs};
}

EpiCheck epi_corner_check(const GaussianParams& g, double alpha) {
  g.validate();
  require_weak_b(g, "the entropy-power step");
  check_fraction(alpha, "alpha");
  const double b2 = g.b * g.b;
  const double h1 = half_log2(1.0 + alpha * g.p1);
  EpiCheck out;
  out.lower_bound = half_log2(b2 * std::exp2(2.0 * h1) + 1.0 - b2);

  // X1 = S + T with S ~ N(0, alpha P1) private and T ~ N(0, (1-alpha) P1)
  // fully correlated with X2. Vector order (Y2, X2, T).
  const double pt = (1.0 - alpha) * g.p1;
  const double gamma = std::copysign(std::sqrt(pt * g.p2), g.b);
  Eigen::Matrix3d cov;
  const double var_y2 = b2 * g.p1 + 2.0 * g.b * gamma + g.p2 + 1.0;
  const double cov_y2_x2 = g.b * gamma + g.p2;
  const double cov_y2_t = g.b * pt + gamma;
  cov << var_y2, cov_y2_x2, cov_y2_t,
         cov_y2_x2, g.p2, gamma,
         cov_y2_t, gamma, pt;
  const Eigen::Matrix2d m = cov.bottomRightCorner<2, 2>();
  const Eigen::Vector2d c = cov.block<2, 1>(1, 0);
  Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix2d> cod(m);
  cod.setThreshold(1e-10);
  const double cond_var = var_y2 - c.dot(cod.pseudoInverse() * c);
  out.achieved = half_log2(cond_var);
  return out;
}

}  // namespace ifcdms
