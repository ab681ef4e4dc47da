#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ifcdms {

/// Rate pair in bits per channel use.
struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;

  friend bool operator==(const RatePair&, const RatePair&) = default;
};

/// Sampled boundary points with the parameter that generated each one
/// (e.g. the power split alpha, or a chain index).
struct CornerCurve {
  struct Point {
    double param = 0.0;
    RatePair rate;
  };
  std::vector<Point> points;

  void add(double param, RatePair r) { points.push_back({param, r}); }
  [[nodiscard]] bool empty() const { return points.empty(); }
  [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// Halfspace c1 r1 + c2 r2 <= d with c1, c2 >= 0.
struct Halfspace {
  double c1 = 0.0;
  double c2 = 0.0;
  double d = 0.0;
  std::string label;
};

/// Intersection of halfspaces with the nonnegative quadrant.
struct Polytope {
  std::vector<Halfspace> halfspaces;
};

/// Convex, down-closed region stored as the vertices of its upper-right
/// boundary: r1 strictly ascending, r2 strictly descending. The boundary is
/// flat from r1 = 0 to the first vertex and drops vertically after the last.
/// A region reduced to the origin has the single vertex (0, 0).
class RateRegion {
 public:
  RateRegion() : vertices_{{0.0, 0.0}} {}
  /// Takes vertices already in canonical form (checked).
  explicit RateRegion(std::vector<RatePair> frontier);

  [[nodiscard]] const std::vector<RatePair>& vertices() const { return vertices_; }
  [[nodiscard]] double max_r1() const { return vertices_.back().r1; }
  [[nodiscard]] double max_r2() const { return vertices_.front().r2; }

  /// Height of the boundary at r1 (for r1 in [0, max_r1()]).
  [[nodiscard]] double frontier(double r1) const;

  /// Largest r1 + r2 over the region.
  [[nodiscard]] double max_sum_rate() const;

  /// Largest r with (r, r) in the region.
  [[nodiscard]] double symmetric_rate() const;

  /// Boundary polyline from (0, max_r2) through the vertices down to (max_r1, 0).
  [[nodiscard]] std::vector<RatePair> boundary_polyline() const;

 private:
  std::vector<RatePair> vertices_;
};

/// Drops points dominated by another (<= in both, < in one) and exact
/// duplicates; result sorted by r1 ascending. Throws InvalidInput on empty input.
CornerCurve pareto_frontier(const CornerCurve& points);

/// Convex hull of the points, their axis projections and the origin.
RateRegion convex_downset_hull(const CornerCurve& points);
RateRegion convex_downset_hull(const std::vector<RatePair>& points);

/// Exact vertex form of a polytope (bounded, nonempty).
RateRegion to_region(const Polytope& poly);

/// Intersection of two convex down-closed regions.
RateRegion intersect(const RateRegion& a, const RateRegion& b);

/// Signed distance-like violation: <= 0 inside, > 0 outside. For regions it is
/// the shift d for which p - d (1, 1) lies on the boundary, so a point within
/// tol of the region in both coordinates passes at tol; for polytopes the
/// largest c . p - d over halfspaces.
double violation(const RateRegion& region, RatePair p);
double violation(const Polytope& poly, RatePair p);

bool contains(const RateRegion& region, RatePair p, double tol = 1e-6);
bool contains(const Polytope& poly, RatePair p, double tol = 1e-6);

struct SubsetReport {
  bool ok = true;
  double max_violation = 0.0;
  RatePair witness;
};

/// Tests the vertices of `a` plus n_samples points interpolated along its
/// boundary polyline for membership in `b`.
SubsetReport subset_check(const RateRegion& a, const RateRegion& b, double tol = 1e-6,
                          std::size_t n_samples = 1000);
SubsetReport subset_check(const RateRegion& a, const Polytope& b, double tol = 1e-6,
                          std::size_t n_samples = 1000);

struct Crossing {
  enum class State { inside, on, outside };
  double t_lo, t_hi;   // boundary parameter bracket, t in [0, 1] by arc length
  RatePair p_lo, p_hi;
  State from, to;
};

std::string to_string(Crossing::State s);

/// Walks `a`'s boundary polyline at sweep_n + 1 evenly spaced arc-length
/// positions, classifies each against `b` as inside (violation < -tol), on
/// (|violation| <= tol) or outside, and brackets every change of class.
std::vector<Crossing> boundary_crossings(const RateRegion& a, const RateRegion& b,
                                         std::size_t sweep_n = 10000, double tol = 1e-9);
std::vector<Crossing> boundary_crossings(const RateRegion& a, const Polytope& b,
                                         std::size_t sweep_n = 10000, double tol = 1e-9);

}  // namespace ifcdms
