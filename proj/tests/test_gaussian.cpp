#include <doctest.h>

#include <cmath>

#include "ifcdms/errors.hpp"
#include "ifcdms/gaussian.hpp"
#include "ifcdms/simplex.hpp"

using namespace ifcdms;
using ld = long double;

namespace {

const GaussianParams kSym{6.0, 6.0, std::sqrt(0.3), std::sqrt(0.3)};

ld hl(ld x) { return 0.5L * std::log2(x); }

// Extended-precision corner formulas.
std::pair<ld, ld> t1_oracle(ld p1, ld p2, ld b, ld al) {
  const ld coh = 2 * std::fabs(b) * std::sqrt((1 - al) * p1 * p2);
  return {hl(1 + al * p1), hl((1 + b * b * p1 + coh + p2) / (1 + b * b * al * p1))};
}

std::pair<ld, ld> dpc21_oracle(ld p1, ld p2, ld b, ld al) {
  const ld coh = 2 * std::fabs(b) * std::sqrt((1 - al) * p1 * p2);
  return {hl((1 + p1) / (1 + (1 - al) * p1)), hl(1 + b * b * p1 + coh + p2)};
}

// Height of the convex down-closed hull of the points at abscissa x, by
// brute force over all pairs.
ld hull_height(const std::vector<std::pair<ld, ld>>& pts, ld x) {
  std::vector<std::pair<ld, ld>> all = pts;
  ld ymax = 0;
  for (const auto& p : pts) {
    ymax = std::max(ymax, p.second);
    all.push_back({p.first, 0});
  }
  all.push_back({0, ymax});
  ld best = -1;
  for (const auto& a : all)
    for (const auto& c : all) {
      if (a.first > x || c.first < x) continue;
      const ld y = a.first == c.first ? std::max(a.second, c.second)
                                      : a.second + (c.second - a.second) * (x - a.first) / (c.first - a.first);
      best = std::max(best, y);
    }
  return best;
}

}  // namespace

TEST_CASE("capacity corners at the reference parameters") {
  auto c = capacity_t1_corner(kSym, 1.0);
  CHECK(std::abs(c.r1 - static_cast<double>(hl(7))) < 1e-12);
  CHECK(std::abs(c.r2 - static_cast<double>(hl(8.8L / 2.8L))) < 1e-12);
  CHECK(std::abs(c.r1 - 1.403677461028802) < 1e-12);
  CHECK(std::abs(c.r2 - 0.8260383482898466) < 1e-12);

  c = capacity_t1_corner(kSym, 0.0);
  CHECK(c.r1 == 0.0);
  CHECK(std::abs(c.r2 - 1.971147960361381) < 1e-12);
  CHECK(std::abs(c.r2 - static_cast<double>(hl(8.8L + 12 * std::sqrt(0.3L)))) < 1e-12);

  c = capacity_t1_corner(kSym, 0.5);
  CHECK(std::abs(c.r1 - 1.0) < 1e-15);
  CHECK(std::abs(c.r2 - 1.411637624785748) < 1e-12);

  const auto d = dpc21_corner(kSym, 0.5);
  CHECK(std::abs(d.r1 - 0.4036774610288021) < 1e-12);
  CHECK(std::abs(d.r2 - 1.874637334063859) < 1e-12);

  const auto t2 = capacity_t2_corner(kSym, 1.0);
  CHECK(std::abs(t2.r1 - 0.8260383482898466) < 1e-12);
  CHECK(std::abs(t2.r2 - 1.403677461028802) < 1e-12);
}

TEST_CASE("corners match extended-precision formulas on random parameters") {
  SplitMix64 rng(71);
  for (int t = 0; t < 200; ++t) {
    const GaussianParams g{20 * rng.uniform(), 20 * rng.uniform(), 2 * rng.uniform() - 1, 2 * rng.uniform() - 1};
    const double al = rng.uniform();
    const auto [o1, o2] = t1_oracle(g.p1, g.p2, g.b, al);
    const auto c = capacity_t1_corner(g, al);
    CHECK(std::abs(c.r1 - static_cast<double>(o1)) < 1e-12);
    CHECK(std::abs(c.r2 - static_cast<double>(o2)) < 1e-12);
    CHECK(std::abs(capacity_t1_r2_covariance(g, al) - static_cast<double>(o2)) < 1e-12);
    const auto d12 = dpc12_corner(g, al);
    CHECK(d12 == c);
    const auto [q1, q2] = dpc21_oracle(g.p1, g.p2, g.b, al);
    const auto d21 = dpc21_corner(g, al);
    CHECK(std::abs(d21.r1 - static_cast<double>(q1)) < 1e-12);
    CHECK(std::abs(d21.r2 - static_cast<double>(q2)) < 1e-12);
    // t2 is the mirror image of t1
    const auto m = capacity_t1_corner({g.p2, g.p1, g.b, g.a}, al);
    const auto t2 = capacity_t2_corner(g, al);
    CHECK(t2.r1 == m.r2);
    CHECK(t2.r2 == m.r1);
  }
}

TEST_CASE("degenerate powers") {
  for (double al : {0.0, 0.3, 1.0}) {
    const auto c = capacity_t1_corner({0.0, 5.0, 0.2, 0.5}, al);
    CHECK(c.r1 == 0.0);
    CHECK(c.r2 == doctest::Approx(0.5 * std::log2(6.0)));
    const auto t = capacity_t2_corner({5.0, 0.0, 0.5, 0.2}, al);
    CHECK(t.r1 == doctest::Approx(0.5 * std::log2(6.0)));
    CHECK(t.r2 == 0.0);
  }
  const auto d = dpc12_corner(kSym, 1.0);
  CHECK(d.r2 == doctest::Approx(static_cast<double>(hl((1 + 1.8L + 6) / (1 + 1.8L)))).epsilon(1e-14));
  const auto e0 = dpc21_corner(kSym, 0.0);
  CHECK(e0.r1 == 0.0);
  CHECK(e0.r2 == doctest::Approx(static_cast<double>(hl(1 + 1.8L + 2 * std::sqrt(0.3L * 36) + 6))));
  const auto e1 = dpc21_corner(kSym, 1.0);
  CHECK(e1.r1 == doctest::Approx(static_cast<double>(hl(7))));
  CHECK(e1.r2 == doctest::Approx(static_cast<double>(hl(8.8L))));
}

TEST_CASE("sweeps") {
  const auto s = sweep(kSym, GaussCurve::t1, 1001);
  REQUIRE(s.size() == 1001);
  CHECK(s.points.front().param == 0.0);
  CHECK(s.points.back().param == 1.0);
  CHECK(s.points[500].rate == capacity_t1_corner(kSym, 0.5));
  for (std::size_t k = 1; k < s.size(); ++k) {
    CHECK(s.points[k].rate.r1 > s.points[k - 1].rate.r1);
    CHECK(s.points[k].rate.r2 < s.points[k - 1].rate.r2);
  }
  // the t1 and dpc12 families coincide exactly
  const auto d = sweep(kSym, GaussCurve::dpc12, 1001);
  double worst = 0;
  for (std::size_t k = 0; k < s.size(); ++k)
    worst = std::max({worst, std::abs(s.points[k].rate.r1 - d.points[k].rate.r1),
                      std::abs(s.points[k].rate.r2 - d.points[k].rate.r2)});
  CHECK(worst == 0.0);
  CHECK_THROWS_AS(sweep(kSym, GaussCurve::t1, 1), InvalidInput);
  CHECK_THROWS_AS(sweep({6, 6, 0.5, 1.5}, GaussCurve::t1, 11), DomainError);
}

TEST_CASE("strong and Kramer polytopes") {
  const double p = 4.0;
  auto poly = strong_capacity_polytope({p, p, 1.0, -1.0});
  CHECK(to_region(poly).max_sum_rate() == doctest::Approx(0.5 * std::log2(1 + 2 * p)));
  poly = strong_capacity_polytope({6, 6, std::sqrt(2.0), std::sqrt(2.0)});
  CHECK(std::abs(to_region(poly).max_sum_rate() - 2.123963756721793) < 1e-12);
  const auto seg = to_region(strong_capacity_polytope({0, 3, 2, 2}));
  CHECK(seg.max_r1() == 0.0);
  CHECK(seg.max_r2() == doctest::Approx(1.0));
  CHECK_THROWS_AS(strong_capacity_polytope({6, 6, 0.5, 0.5}), DomainError);

  const auto k = to_region(kramer_polytope(kSym));
  CHECK(std::abs(k.max_sum_rate() - 2.229715809318649) < 1e-12);
  CHECK(std::abs(k.max_sum_rate() - static_cast<double>(hl(22))) < 1e-12);
  // unit cross gains reduce to the strong-interference sum bounds
  const auto unit = to_region(kramer_polytope({3, 5, 1, 1}));
  CHECK(unit.max_sum_rate() == doctest::Approx(to_region(strong_capacity_polytope({3, 5, 1, 1})).max_sum_rate()));
  const auto flat = to_region(kramer_polytope({6, 0, 0.5, 0.5}));
  CHECK(flat.max_r2() == 0.0);
  CHECK(flat.max_r1() == doctest::Approx(0.5 * std::log2(7.0)));
}

TEST_CASE("intersection region") {
  const auto r = intersection_region(kSym, 1001);
  // symmetric parameters give a region symmetric under coordinate swap
  for (const auto& v : r.vertices()) CHECK(contains(r, {v.r2, v.r1}, 1e-9));

  // symmetric rate against a brute-force hull of the t1 corners
  std::vector<std::pair<ld, ld>> pts;
  const auto s = sweep(kSym, GaussCurve::t1, 201);
  for (const auto& p : s.points) pts.push_back({p.rate.r1, p.rate.r2});
  const auto r201 = intersection_region(kSym, 201);
  const double sym = r201.symmetric_rate();
  CHECK(std::abs(static_cast<double>(hull_height(pts, sym)) - sym) < 1e-9);

  const auto z = intersection_region({0, 5, 0.3, 0.3}, 101);
  CHECK(z.max_r1() == 0.0);
  CHECK(z.max_r2() == doctest::Approx(0.5 * std::log2(6.0)));

  // no interference: every region is the same rectangle
  const GaussianParams free{3, 5, 0, 0};
  const auto rect = intersection_region(free, 101);
  REQUIRE(rect.vertices().size() == 1);
  CHECK(rect.vertices()[0].r1 == doctest::Approx(1.0));
  CHECK(rect.vertices()[0].r2 == doctest::Approx(0.5 * std::log2(6.0)));
  CHECK(subset_check(rect, kramer_polytope(free), 1e-12).ok);
}

TEST_CASE("DPC12 against DPC21") {
  const auto d12 = convex_downset_hull(sweep(kSym, GaussCurve::dpc12));
  const auto d21 = convex_downset_hull(sweep(kSym, GaussCurve::dpc21));
  CHECK(subset_check(d12, d21).ok);

  // For weak cross gains the containment fails; the brute-force hull height
  // confirms a gap of more than 0.02 bit.
  const GaussianParams g{18.97, 6.24, 0.0, -0.153};
  std::vector<std::pair<ld, ld>> pts;
  for (int k = 0; k <= 1000; ++k) pts.push_back(dpc21_oracle(g.p1, g.p2, g.b, k / 1000.0L));
  const auto [x, y] = t1_oracle(g.p1, g.p2, g.b, 0.05L);
  CHECK(y - hull_height(pts, x) > 0.02L);
  const auto rep = subset_check(convex_downset_hull(sweep(g, GaussCurve::dpc12)),
                                convex_downset_hull(sweep(g, GaussCurve::dpc21)));
  CHECK_FALSE(rep.ok);
}

TEST_CASE("gamma optimization") {
  CHECK(optimize_gamma(kSym, 1.0, 101) == 0.0);
  CHECK(optimize_gamma({6, 6, 0.5, 0.0}, 0.3, 101) == 0.0);
  for (double al : {0.0, 0.25, 0.5, 0.75}) {
    const double want = std::sqrt((1 - al) * 36);
    const double step = 2 * want / 10000;
    CHECK(std::abs(optimize_gamma(kSym, al, 10001) - want) <= step);
  }
  CHECK(optimize_gamma({6, 6, 0.5, -0.5}, 0.5, 1001) == doctest::Approx(-std::sqrt(18.0)));
  CHECK(h_sigma_h(kSym, 0.5, 0.0) == doctest::Approx(0.3 * 3 + 6));
  CHECK_THROWS_AS(optimize_gamma(kSym, 0.5, 1), InvalidInput);
}

TEST_CASE("correlation bound") {
  auto b = cauchy_corr_bound_check(2.0, 0.0, 3.0);
  CHECK(b.lhs == 0.0);
  CHECK(b.rhs == 0.0);
  b = cauchy_corr_bound_check(4.0, -6.0, 9.0);
  CHECK(b.lhs == doctest::Approx(-6.0));
  CHECK(b.rhs == doctest::Approx(6.0));

  SplitMix64 rng(72);
  for (int t = 0; t < 100; ++t) {
    // A A^T is PSD
    const double a11 = 4 * rng.uniform() - 2, a12 = 4 * rng.uniform() - 2;
    const double a21 = 4 * rng.uniform() - 2, a22 = 4 * rng.uniform() - 2;
    const double c11 = a11 * a11 + a12 * a12, c12 = a11 * a21 + a12 * a22, c22 = a21 * a21 + a22 * a22;
    const auto r = cauchy_corr_bound_check(c11, c12, c22);
    CHECK(r.lhs <= r.rhs + 1e-12);
    // E[X1|X2] = (c12/c22) X2 gives rhs = |c12|
    CHECK(std::abs(r.rhs - std::fabs(c12)) < 1e-12 * std::max(1.0, std::fabs(c12)));
  }
  CHECK_THROWS_AS(cauchy_corr_bound_check(1.0, 2.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(cauchy_corr_bound_check(-1.0, 0.0, 1.0), InvalidInput);
}

TEST_CASE("entropy-power step") {
  auto e = epi_corner_check(kSym, 0.0);
  CHECK(std::abs(e.lower_bound) < 1e-15);
  CHECK(std::abs(e.achieved - e.lower_bound) < 1e-9);

  e = epi_corner_check({6, 6, 0.3, 1.0}, 0.4);
  CHECK(e.lower_bound == doctest::Approx(0.5 * std::log2(1 + 0.4 * 6)));

  for (int k = 0; k <= 100; ++k) {
    const double al = k / 100.0;
    e = epi_corner_check(kSym, al);
    CHECK(std::abs(e.achieved - e.lower_bound) < 1e-9);
    CHECK(std::abs(e.lower_bound - static_cast<double>(hl(1 + 0.3L * al * 6))) < 1e-12);
  }
  CHECK_THROWS_AS(epi_corner_check({6, 6, 0.3, 1.5}, 0.5), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(capacity_t1_corner({-1, 6, 0.5, 0.5}, 0.5), InvalidInput);
  CHECK_THROWS_AS(capacity_t1_corner({6, 6, 0.5, NAN}, 0.5), InvalidInput);
  CHECK_THROWS_AS(capacity_t1_corner(kSym, 1.5), DomainError);
  CHECK_THROWS_AS(capacity_t1_corner({6, 6, 0.5, 1.2}, 0.5), DomainError);
  CHECK_THROWS_AS(capacity_t2_corner({6, 6, 1.2, 0.5}, 0.5), DomainError);
  CHECK_NOTHROW(dpc12_corner({6, 6, 0.5, 1.2}, 0.5));
}
