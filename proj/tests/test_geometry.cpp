#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ifcdms/errors.hpp"
#include "ifcdms/geometry.hpp"
#include "ifcdms/simplex.hpp"

using namespace ifcdms;

namespace {

bool dominates(RatePair a, RatePair b) {
  return a.r1 >= b.r1 && a.r2 >= b.r2 && (a.r1 > b.r1 || a.r2 > b.r2);
}

CornerCurve random_points(SplitMix64& rng, std::size_t n) {
  CornerCurve c;
  for (std::size_t i = 0; i < n; ++i) c.add(static_cast<double>(i), {3 * rng.uniform(), 3 * rng.uniform()});
  return c;
}

}  // namespace

TEST_CASE("pareto frontier examples") {
  CornerCurve one;
  one.add(0, {1, 1});
  REQUIRE(pareto_frontier(one).size() == 1);

  CornerCurve three;
  three.add(0, {1, 2});
  three.add(1, {2, 1});
  three.add(2, {1, 1});
  const auto f = pareto_frontier(three);
  REQUIRE(f.size() == 2);
  CHECK(f.points[0].rate == RatePair{1, 2});
  CHECK(f.points[1].rate == RatePair{2, 1});
  CHECK_THROWS_AS(pareto_frontier(CornerCurve{}), InvalidInput);
}

TEST_CASE("pareto frontier matches brute-force dominance") {
  SplitMix64 rng(51);
  const auto pts = random_points(rng, 1000);
  const auto f = pareto_frontier(pts);
  for (const auto& a : f.points)
    for (const auto& b : f.points) CHECK_FALSE(dominates(a.rate, b.rate));
  for (const auto& p : pts.points) {
    bool covered = false;
    for (const auto& q : f.points) covered = covered || q.rate == p.rate || dominates(q.rate, p.rate);
    CHECK(covered);
  }
  for (std::size_t i = 1; i < f.size(); ++i) CHECK(f.points[i].rate.r1 > f.points[i - 1].rate.r1);
}

TEST_CASE("hull of simple corner sets") {
  const auto sq = convex_downset_hull(std::vector<RatePair>{{1, 1}});
  REQUIRE(sq.vertices().size() == 1);
  CHECK(sq.vertices()[0] == RatePair{1, 1});
  CHECK(sq.frontier(0.3) == 1.0);
  CHECK(sq.max_sum_rate() == doctest::Approx(2.0));
  CHECK(sq.symmetric_rate() == doctest::Approx(1.0));

  const auto seg = convex_downset_hull(std::vector<RatePair>{{2, 0}, {0, 2}});
  CHECK(seg.frontier(0.5) == doctest::Approx(1.5));
  CHECK(seg.max_r1() == 2.0);
  CHECK(seg.max_r2() == 2.0);
  CHECK(seg.symmetric_rate() == doctest::Approx(1.0));

  const auto origin = convex_downset_hull(std::vector<RatePair>{{0, 0}});
  CHECK(origin.vertices().size() == 1);
  CHECK(contains(origin, {0, 0}, 0.0));
  CHECK_THROWS_AS(convex_downset_hull(std::vector<RatePair>{{-1, 0}}), InvalidInput);
}

TEST_CASE("hull contains every convex combination and is concave") {
  SplitMix64 rng(52);
  for (int t = 0; t < 20; ++t) {
    const auto pts = random_points(rng, 3 + rng.below(30));
    const auto h = convex_downset_hull(pts);
    const auto& v = h.vertices();
    for (std::size_t i = 1; i < v.size(); ++i) {
      CHECK(v[i].r1 > v[i - 1].r1);
      CHECK(v[i].r2 < v[i - 1].r2);
    }
    // slopes decrease along the boundary polyline
    const auto poly = h.boundary_polyline();
    double prev = 0.0;
    for (std::size_t i = 1; i < poly.size(); ++i) {
      if (poly[i].r1 == poly[i - 1].r1) continue;
      const double s = (poly[i].r2 - poly[i - 1].r2) / (poly[i].r1 - poly[i - 1].r1);
      CHECK(s <= prev + 1e-12);
      prev = s;
    }
    std::vector<double> w(pts.size());
    for (int k = 0; k < 50; ++k) {
      random_simplex_point(rng, w);
      RatePair c{};
      for (std::size_t i = 0; i < pts.size(); ++i) {
        c.r1 += w[i] * pts.points[i].rate.r1;
        c.r2 += w[i] * pts.points[i].rate.r2;
      }
      CHECK(contains(h, c, 1e-12));
    }
    for (const auto& p : pts.points) CHECK(contains(h, p.rate, 1e-12));
    // every vertex is an input point
    for (const auto& x : v) {
      bool found = false;
      for (const auto& p : pts.points) found = found || p.rate == x;
      CHECK(found);
    }
    // idempotent
    CHECK(convex_downset_hull(v).vertices() == v);
  }
}

TEST_CASE("containment and violation") {
  const RateRegion r({{1, 2}, {2, 1}});
  CHECK(contains(r, {0, 0}));
  CHECK(contains(r, {1, 2}, 0.0));
  CHECK(contains(r, {2, 1}, 0.0));
  CHECK(violation(r, {1.5, 1.5}) == doctest::Approx(0.0));
  CHECK_FALSE(contains(r, {1.5, 1.5 + 1e-3}));
  CHECK(violation(r, {3, 0}) == doctest::Approx(1.0));
  CHECK(violation(r, {0.5, 0.5}) < 0);
  // a near-vertical edge does not hide points just past it
  const RateRegion steep({{1 - 1e-15, 1}, {1, 0}});
  CHECK(contains(steep, {1, 1}, 1e-12));
  CHECK(violation(steep, {1.5, 0.5}) == doctest::Approx(0.5));

  SplitMix64 rng(53);
  for (int t = 0; t < 50; ++t) {
    const auto h = convex_downset_hull(random_points(rng, 10));
    const auto& v = h.vertices();
    if (v.size() < 2) continue;
    const std::size_t i = rng.below(v.size() - 1);
    const RatePair mid{(v[i].r1 + v[i + 1].r1) / 2, (v[i].r2 + v[i + 1].r2) / 2 + 1e-3};
    CHECK_FALSE(contains(h, mid, 1e-6));
  }

  const Polytope box{{{1, 0, 1, "r1"}, {0, 1, 2, "r2"}, {1, 1, 2.5, "sum"}}};
  CHECK(contains(box, {0.5, 2}));
  CHECK(violation(box, {1, 2}) == doctest::Approx(0.5));
  CHECK_FALSE(contains(box, {1, 1.6}));
}

TEST_CASE("polytope vertex form") {
  const Polytope box{{{1, 0, 1, "r1"}, {0, 1, 2, "r2"}, {1, 1, 2.5, "sum"}}};
  const auto r = to_region(box);
  REQUIRE(r.vertices().size() == 2);
  CHECK(r.vertices()[0].r1 == doctest::Approx(0.5));
  CHECK(r.vertices()[0].r2 == doctest::Approx(2.0));
  CHECK(r.vertices()[1].r1 == doctest::Approx(1.0));
  CHECK(r.vertices()[1].r2 == doctest::Approx(1.5));
  CHECK(r.max_sum_rate() == doctest::Approx(2.5));

  // a redundant sum constraint leaves the rectangle
  const auto rect = to_region(Polytope{{{1, 0, 1, ""}, {0, 1, 1, ""}, {1, 1, 5, ""}}});
  REQUIRE(rect.vertices().size() == 1);
  CHECK(rect.vertices()[0] == RatePair{1, 1});

  const auto seg = to_region(Polytope{{{1, 0, 0, ""}, {0, 1, 3, ""}}});
  CHECK(seg.max_r1() == 0.0);
  CHECK(seg.max_r2() == 3.0);

  CHECK_THROWS_AS(to_region(Polytope{{{1, 0, 1, ""}}}), InvalidInput);
  CHECK_THROWS_AS(to_region(Polytope{{{1, 0, -1, ""}, {0, 1, 1, ""}}}), InvalidInput);
  CHECK_THROWS_AS(to_region(Polytope{{{-1, 0, 1, ""}, {0, 1, 1, ""}}}), InvalidInput);

  // vertex form agrees with the halfspace test on random polytopes
  SplitMix64 rng(54);
  for (int t = 0; t < 30; ++t) {
    Polytope p{{{1, 0, 0.5 + rng.uniform(), ""}, {0, 1, 0.5 + rng.uniform(), ""}}};
    for (int k = 0; k < 3; ++k) p.halfspaces.push_back({rng.uniform(), rng.uniform(), 0.2 + rng.uniform(), ""});
    const auto reg = to_region(p);
    for (int k = 0; k < 200; ++k) {
      const RatePair q{1.6 * rng.uniform(), 1.6 * rng.uniform()};
      const double vp = violation(p, q);
      if (std::abs(vp) < 1e-6) continue;
      CHECK(contains(reg, q, 0.0) == (vp < 0));
    }
  }
}

TEST_CASE("intersection agrees with pointwise membership") {
  SplitMix64 rng(55);
  for (int t = 0; t < 30; ++t) {
    const auto a = convex_downset_hull(random_points(rng, 8));
    const auto b = convex_downset_hull(random_points(rng, 8));
    const auto c = intersect(a, b);
    for (int k = 0; k < 300; ++k) {
      const RatePair q{3 * rng.uniform(), 3 * rng.uniform()};
      const double va = violation(a, q), vb = violation(b, q);
      if (std::min(std::abs(va), std::abs(vb)) < 1e-7) continue;
      CHECK(contains(c, q, 1e-9) == (va < 0 && vb < 0));
    }
    CHECK(subset_check(c, a, 1e-9).ok);
    CHECK(subset_check(c, b, 1e-9).ok);
  }
  const RateRegion sq({{1, 1}});
  CHECK(intersect(sq, sq).vertices() == sq.vertices());
}

TEST_CASE("subset checks") {
  const RateRegion b({{0.5, 2.0}, {1.0, 1.5}, {1.5, 0.5}});
  auto rep = subset_check(b, b);
  CHECK(rep.ok);
  CHECK(rep.max_violation <= 1e-12);

  std::vector<RatePair> shrunk, grown;
  for (const auto& v : b.vertices()) {
    shrunk.push_back({v.r1, 0.9 * v.r2});
    grown.push_back({v.r1, v.r2 + 1e-3});
  }
  CHECK(subset_check(RateRegion(shrunk), b).ok);
  rep = subset_check(RateRegion(grown), b);
  CHECK_FALSE(rep.ok);
  CHECK(rep.max_violation == doctest::Approx(1e-3).epsilon(1e-6));

  const Polytope pb{{{1, 0, 1.5, ""}, {0, 1, 2, ""}, {1, 1, 2.5, ""}}};
  CHECK(subset_check(b, pb).ok);
  CHECK_FALSE(subset_check(RateRegion({{1.5, 1.5}}), pb).ok);
}

TEST_CASE("boundary crossings") {
  const RateRegion outer({{2, 2}});
  const RateRegion inner({{1, 1}});
  CHECK(boundary_crossings(inner, outer).empty());
  CHECK(boundary_crossings(outer, outer).empty());

  // two staircases that cross twice
  const RateRegion a({{0.5, 2.0}, {2.0, 0.5}});
  const RateRegion b({{1.5, 1.5}});
  const auto xs = boundary_crossings(a, b);
  CHECK(xs.size() >= 2);
  for (const auto& x : xs) {
    CHECK(x.t_lo <= x.t_hi);
    CHECK(x.from != x.to);
  }
  CHECK(to_string(Crossing::State::outside) == "outside");

  const Polytope pb{{{1, 0, 1.5, ""}, {0, 1, 1.5, ""}}};
  CHECK(boundary_crossings(a, pb).size() == xs.size());
}

TEST_CASE("region construction checks") {
  CHECK_THROWS_AS(RateRegion({{1, 1}, {0.5, 0.5}}), InvalidInput);
  CHECK_THROWS_AS(RateRegion(std::vector<RatePair>{}), InvalidInput);
  const RateRegion r({{1, 3}, {2, 1}});
  CHECK(r.frontier(1.5) == doctest::Approx(2.0));
  CHECK(r.frontier(0.0) == 3.0);
  CHECK(r.max_sum_rate() == doctest::Approx(4.0));
  CHECK(r.symmetric_rate() == doctest::Approx(5.0 / 3.0).epsilon(1e-9));
  const auto pl = r.boundary_polyline();
  CHECK(pl.front() == RatePair{0, 3});
  CHECK(pl.back() == RatePair{2, 0});
}
