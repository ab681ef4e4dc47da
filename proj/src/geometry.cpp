#include "ifcdms/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ifcdms/errors.hpp"

namespace ifcdms {

namespace {

void check_rate(const RatePair& p) {
  if (!std::isfinite(p.r1) || !std::isfinite(p.r2) || p.r1 < 0.0 || p.r2 < 0.0)
    throw InvalidInput("rate pairs must be finite and nonnegative");
}

double cross(const RatePair& a, const RatePair& b, const RatePair& c) {
  return (b.r1 - a.r1) * (c.r2 - a.r2) - (b.r2 - a.r2) * (c.r1 - a.r1);
}

// Point at arc-length fraction t along a polyline.
struct Polyline {
  std::vector<RatePair> pts;
  std::vector<double> cum;  // cumulative length at each vertex

  explicit Polyline(std::vector<RatePair> p) : pts(std::move(p)), cum(pts.size(), 0.0) {
    for (std::size_t i = 1; i < pts.size(); ++i)
      cum[i] = cum[i - 1] + std::hypot(pts[i].r1 - pts[i - 1].r1, pts[i].r2 - pts[i - 1].r2);
  }

  [[nodiscard]] RatePair at(double t) const {
    if (pts.size() == 1 || cum.back() == 0.0) return pts.front();
    const double s = std::clamp(t, 0.0, 1.0) * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), s);
    std::size_t i = it == cum.end() ? pts.size() - 1 : static_cast<std::size_t>(it - cum.begin());
    if (i == 0) return pts.front();
    const double seg = cum[i] - cum[i - 1];
    const double f = seg > 0.0 ? (s - cum[i - 1]) / seg : 0.0;
    return {pts[i - 1].r1 + f * (pts[i].r1 - pts[i - 1].r1), pts[i - 1].r2 + f * (pts[i].r2 - pts[i - 1].r2)};
  }
};

template <typename Region>
SubsetReport subset_impl(const RateRegion& a, const Region& b, double tol, std::size_t n_samples) {
  SubsetReport rep{true, -std::numeric_limits<double>::infinity(), {}};
  auto probe = [&](RatePair p) {
    const double v = violation(b, p);
    if (v > rep.max_violation) {
      rep.max_violation = v;
      rep.witness = p;
    }
  };
  for (const auto& v : a.vertices()) probe(v);
  const Polyline line(a.boundary_polyline());
  for (std::size_t k = 0; k < n_samples; ++k)
    probe(line.at(n_samples == 1 ? 0.5 : static_cast<double>(k) / static_cast<double>(n_samples - 1)));
  rep.ok = rep.max_violation <= tol;
  return rep;
}

template <typename Region>
std::vector<Crossing> crossings_impl(const RateRegion& a, const Region& b, std::size_t sweep_n, double tol) {
  using State = Crossing::State;
  auto classify = [&](RatePair p) {
    const double v = violation(b, p);
    if (v < -tol) return State::inside;
    if (v > tol) return State::outside;
    return State::on;
  };
  const Polyline line(a.boundary_polyline());
  if (sweep_n == 0) sweep_n = 1;
  std::vector<Crossing> out;
  double t_prev = 0.0;
  RatePair p_prev = line.at(0.0);
  State s_prev = classify(p_prev);
  for (std::size_t k = 1; k <= sweep_n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(sweep_n);
    const RatePair p = line.at(t);
    const State s = classify(p);
    if (s != s_prev) out.push_back({t_prev, t, p_prev, p, s_prev, s});
    t_prev = t;
    p_prev = p;
    s_prev = s;
  }
  return out;
}

}  // namespace

RateRegion::RateRegion(std::vector<RatePair> frontier) : vertices_(std::move(frontier)) {
  if (vertices_.empty()) throw InvalidInput("region needs at least one vertex");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    check_rate(vertices_[i]);
    if (i > 0 && !(vertices_[i].r1 > vertices_[i - 1].r1 && vertices_[i].r2 < vertices_[i - 1].r2))
      throw InvalidInput("region vertices must ascend in r1 and descend in r2");
  }
}

double RateRegion::frontier(double r1) const {
  if (r1 <= vertices_.front().r1) return vertices_.front().r2;
  if (r1 >= vertices_.back().r1) return vertices_.back().r2;
  auto it = std::upper_bound(vertices_.begin(), vertices_.end(), r1,
                             [](double x, const RatePair& v) { return x < v.r1; });
  const RatePair& hi = *it;
  const RatePair& lo = *(it - 1);
  const double f = (r1 - lo.r1) / (hi.r1 - lo.r1);
  return lo.r2 + f * (hi.r2 - lo.r2);
}

double RateRegion::max_sum_rate() const {
  double best = 0.0;
  for (const auto& v : vertices_) best = std::max(best, v.r1 + v.r2);
  return best;
}

double RateRegion::symmetric_rate() const {
  // frontier(t) - t is strictly decreasing on [0, max_r1]
  const double hi_end = max_r1();
  if (frontier(hi_end) >= hi_end) return hi_end;
  double lo = 0.0, hi = hi_end;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (frontier(mid) >= mid ? lo : hi) = mid;
  }
  return lo;
}

std::vector<RatePair> RateRegion::boundary_polyline() const {
  std::vector<RatePair> out;
  if (vertices_.front().r1 > 0.0) out.push_back({0.0, vertices_.front().r2});
  out.insert(out.end(), vertices_.begin(), vertices_.end());
  if (vertices_.back().r2 > 0.0) out.push_back({vertices_.back().r1, 0.0});
  return out;
}

CornerCurve pareto_frontier(const CornerCurve& points) {
  if (points.empty()) throw InvalidInput("pareto_frontier: empty input");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  // r1 descending, then r2 descending; stable keeps the earliest generator first
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const auto& a = points.points[i].rate;
    const auto& b = points.points[j].rate;
    if (a.r1 != b.r1) return a.r1 > b.r1;
    return a.r2 > b.r2;
  });
  CornerCurve out;
  double best_r2 = -std::numeric_limits<double>::infinity();
  for (auto i : order) {
    const auto& p = points.points[i];
    check_rate(p.rate);
    if (p.rate.r2 > best_r2) {
      out.points.push_back(p);
      best_r2 = p.rate.r2;
    }
  }
  std::reverse(out.points.begin(), out.points.end());
  return out;
}

RateRegion convex_downset_hull(const std::vector<RatePair>& points) {
  if (points.empty()) throw InvalidInput("convex_downset_hull: empty input");
  double xmax = 0.0, ymax = 0.0;
  for (const auto& p : points) {
    check_rate(p);
    xmax = std::max(xmax, p.r1);
    ymax = std::max(ymax, p.r2);
  }
  if (xmax == 0.0 && ymax == 0.0) return RateRegion();

  std::vector<RatePair> cand(points);
  cand.push_back({0.0, ymax});
  cand.push_back({xmax, 0.0});
  std::sort(cand.begin(), cand.end(), [](const RatePair& a, const RatePair& b) {
    if (a.r1 != b.r1) return a.r1 < b.r1;
    return a.r2 > b.r2;
  });
  // Keep only the highest point at each r1.
  std::vector<RatePair> col;
  for (const auto& p : cand)
    if (col.empty() || p.r1 != col.back().r1) col.push_back(p);

  std::vector<RatePair> hull;
  for (const auto& p : col) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0) hull.pop_back();
    hull.push_back(p);
  }
  // Canonical form: strictly descending r2 (drops the flat lead-in and any
  // trailing axis point below the last vertex).
  std::vector<RatePair> out;
  for (const auto& p : hull) {
    if (!out.empty() && p.r2 >= out.back().r2) {
      // flat: the later point dominates
      out.back() = p;
      continue;
    }
    out.push_back(p);
  }
  while (out.size() > 1 && out.back().r2 == 0.0 && out[out.size() - 2].r1 == out.back().r1) out.pop_back();
  return RateRegion(std::move(out));
}

RateRegion convex_downset_hull(const CornerCurve& points) {
  std::vector<RatePair> pts;
  pts.reserve(points.size());
  for (const auto& p : points.points) pts.push_back(p.rate);
  return convex_downset_hull(pts);
}

RateRegion to_region(const Polytope& poly) {
  bool bounds_r1 = false, bounds_r2 = false;
  for (const auto& h : poly.halfspaces) {
    if (h.c1 < 0.0 || h.c2 < 0.0) throw InvalidInput("polytope halfspaces need nonnegative coefficients");
    if (h.d < 0.0) throw InvalidInput("polytope is empty");
    bounds_r1 = bounds_r1 || h.c1 > 0.0;
    bounds_r2 = bounds_r2 || h.c2 > 0.0;
  }
  if (!bounds_r1 || !bounds_r2) throw InvalidInput("polytope is unbounded");

  std::vector<Halfspace> lines = poly.halfspaces;
  lines.push_back({1.0, 0.0, 0.0, "r1=0"});
  lines.push_back({0.0, 1.0, 0.0, "r2=0"});
  std::vector<RatePair> verts;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& a = lines[i];
      const auto& b = lines[j];
      const double det = a.c1 * b.c2 - a.c2 * b.c1;
      if (std::abs(det) < 1e-300) continue;
      RatePair p{(a.d * b.c2 - a.c2 * b.d) / det, (a.c1 * b.d - a.d * b.c1) / det};
      const double scale = 1e-12 * (1.0 + std::abs(p.r1) + std::abs(p.r2));
      if (p.r1 < -scale || p.r2 < -scale) continue;
      p.r1 = std::max(p.r1, 0.0);
      p.r2 = std::max(p.r2, 0.0);
      if (violation(poly, p) > scale) continue;
      verts.push_back(p);
    }
  return convex_downset_hull(verts);
}

RateRegion intersect(const RateRegion& a, const RateRegion& b) {
  const double xend = std::min(a.max_r1(), b.max_r1());
  std::vector<double> xs{0.0, xend};
  for (const auto* r : {&a, &b})
    for (const auto& v : r->vertices())
      if (v.r1 < xend) xs.push_back(v.r1);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<RatePair> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    pts.push_back({x, std::min(a.frontier(x), b.frontier(x))});
    if (i + 1 < xs.size()) {
      const double x1 = xs[i + 1];
      const double d0 = a.frontier(x) - b.frontier(x);
      const double d1 = a.frontier(x1) - b.frontier(x1);
      if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
        const double xc = x + (x1 - x) * d0 / (d0 - d1);
        pts.push_back({xc, std::min(a.frontier(xc), b.frontier(xc))});
      }
    }
  }
  return convex_downset_hull(pts);
}

double violation(const RateRegion& region, RatePair p) {
  // Find t* where p + t (1, 1) meets the boundary; the violation is -t*.
  const auto& v = region.vertices();
  const double t_right = region.max_r1() - p.r1;
  if (p.r2 + t_right <= v.back().r2) return -t_right;
  // psi(r1) = frontier(r1) - r1 is strictly decreasing; solve psi = c.
  const double c = p.r2 - p.r1;
  auto psi = [](const RatePair& q) { return q.r2 - q.r1; };
  double r1 = 0.0;
  if (c >= psi(v.front())) {
    r1 = v.front().r2 - c;
  } else {
    const auto it = std::partition_point(v.begin(), v.end(), [&](const RatePair& q) { return psi(q) > c; });
    const std::size_t i = static_cast<std::size_t>(it - v.begin()) - 1;
    const double f = (psi(v[i]) - c) / (psi(v[i]) - psi(v[i + 1]));
    r1 = v[i].r1 + f * (v[i + 1].r1 - v[i].r1);
  }
  return p.r1 - r1;
}

double violation(const Polytope& poly, RatePair p) {
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& h : poly.halfspaces) v = std::max(v, h.c1 * p.r1 + h.c2 * p.r2 - h.d);
  return v;
}

bool contains(const RateRegion& region, RatePair p, double tol) { return violation(region, p) <= tol; }
bool contains(const Polytope& poly, RatePair p, double tol) { return violation(poly, p) <= tol; }

SubsetReport subset_check(const RateRegion& a, const RateRegion& b, double tol, std::size_t n_samples) {
  return subset_impl(a, b, tol, n_samples);
}
SubsetReport subset_check(const RateRegion& a, const Polytope& b, double tol, std::size_t n_samples) {
  return subset_impl(a, b, tol, n_samples);
}

std::string to_string(Crossing::State s) {
  switch (s) {
    case Crossing::State::inside: return "inside";
    case Crossing::State::on: return "on";
    case Crossing::State::outside: return "outside";
  }
  return "?";
}

std::vector<Crossing> boundary_crossings(const RateRegion& a, const RateRegion& b, std::size_t sweep_n,
                                         double tol) {
  return crossings_impl(a, b, sweep_n, tol);
}
std::vector<Crossing> boundary_crossings(const RateRegion& a, const Polytope& b, std::size_t sweep_n,
                                         double tol) {
  return crossings_impl(a, b, sweep_n, tol);
}

}  // namespace ifcdms
