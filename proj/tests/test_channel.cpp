#include <doctest.h>

#include <cmath>

#include "ifcdms/channel.hpp"
#include "ifcdms/errors.hpp"
#include "ifcdms/simplex.hpp"
#include "ifcdms/testbed.hpp"

using namespace ifcdms;

TEST_CASE("stochastic matrix validation") {
  CHECK_NOTHROW(StochasticMatrix(2, 2, {0.5, 0.5, 1.0, 0.0}));
  CHECK_THROWS_AS(StochasticMatrix(2, 2, {0.5, 0.6, 1.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(StochasticMatrix(2, 2, {0.5, 0.5}), InvalidInput);
  const auto id = StochasticMatrix::identity(3);
  CHECK(id(1, 1) == 1.0);
  CHECK(id(1, 2) == 0.0);
  CHECK(id.max_row_error() == 0.0);
}

TEST_CASE("channel validation") {
  CHECK_THROWS_AS(IFCChannel(1, 1, 2, 1, {0.5, 0.6}), InvalidInput);
  CHECK_THROWS_AS(IFCChannel(1, 1, 2, 1, {1.0}), InvalidInput);
  CHECK_THROWS_AS(IFCChannel(1, 1, 2, 1, {1.5, -0.5}), InvalidInput);
  CHECK_NOTHROW(IFCChannel(1, 1, 2, 1, {0.25, 0.75}));
}

TEST_CASE("marginal kernels of a random channel") {
  SplitMix64 rng(21);
  const auto ch = random_channel(rng, 2, 3, 3, 2);
  const auto mk = marginal_kernels(ch);
  REQUIRE(mk.k1.rows() == 6);
  REQUIRE(mk.k2.cols() == 2);
  for (std::size_t x1 = 0; x1 < 2; ++x1)
    for (std::size_t x2 = 0; x2 < 3; ++x2) {
      for (std::size_t y1 = 0; y1 < 3; ++y1) {
        double s = 0;
        for (std::size_t y2 = 0; y2 < 2; ++y2) s += ch(x1, x2, y1, y2);
        CHECK(mk.k1(x1 * 3 + x2, y1) == doctest::Approx(s).epsilon(1e-15));
      }
      for (std::size_t y2 = 0; y2 < 2; ++y2) {
        double s = 0;
        for (std::size_t y1 = 0; y1 < 3; ++y1) s += ch(x1, x2, y1, y2);
        CHECK(mk.k2(x1 * 3 + x2, y2) == doctest::Approx(s).epsilon(1e-15));
      }
    }
  CHECK(mk.k1.max_row_error() < 1e-14);
}

TEST_CASE("from_marginals builds a product channel") {
  const StochasticMatrix k1(2, 2, {0.9, 0.1, 0.2, 0.8});
  const StochasticMatrix k2(2, 2, {0.3, 0.7, 0.6, 0.4});
  const auto ch = IFCChannel::from_marginals(2, 1, k1, k2);
  CHECK(ch(1, 0, 0, 1) == doctest::Approx(0.2 * 0.4));
  const auto mk = marginal_kernels(ch);
  CHECK(mk.k1(0, 0) == doctest::Approx(0.9));
  CHECK(mk.k2(1, 1) == doctest::Approx(0.4));
}

TEST_CASE("induced joints") {
  const auto ch = parallel_noiseless_channel(2);
  const auto j = induced_joint(ch, ProductInput::uniform(2, 2));
  REQUIRE(j.rank() == 4);
  CHECK(j.at({1, 0, 1, 0}) == doctest::Approx(0.25));
  CHECK(j.at({1, 0, 0, 0}) == 0.0);
  CHECK(mutual_information(j.marginal(Axes{0, 2})).bits() == doctest::Approx(1.0));

  SplitMix64 rng(22);
  const auto p = random_joint(rng, {2, 2, 2});
  const auto ju = induced_joint(ch, p);
  REQUIRE(ju.rank() == 5);
  const auto back = ju.marginal(Axes{0, 1, 2});
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(back.probs()[i] == doctest::Approx(p.probs()[i]).epsilon(1e-14));
  CHECK_THROWS_AS(induced_joint(ch, JointDistribution::uniform({2, 3, 2})), InvalidInput);
}

TEST_CASE("simplex lattice utilities") {
  CHECK(lattice_count(3, 4) == 15);
  CHECK(lattice_count(1, 7) == 1);
  const auto pts = lattice_points(3, 2);
  REQUIRE(pts.size() == 6);
  CHECK(pts.front() == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(pts.back() == std::vector<double>{0.0, 0.0, 1.0});
  for (const auto& v : pts) CHECK(v[0] + v[1] + v[2] == doctest::Approx(1.0));
  CHECK_THROWS_AS(lattice_points(2, 0), InvalidInput);

  SplitMix64 rng(23);
  std::vector<double> d(4);
  for (int t = 0; t < 100; ++t) {
    random_lattice_point(rng, 5, d);
    double s = 0;
    for (double v : d) {
      CHECK(std::abs(v * 5 - std::round(v * 5)) < 1e-12);
      s += v;
    }
    CHECK(s == doctest::Approx(1.0));
    random_simplex_point(rng, d);
    s = 0;
    for (double v : d) s += v;
    CHECK(s == doctest::Approx(1.0));
  }

  std::vector<double> v{0.8, 0.6, -0.2};
  project_to_simplex(v);
  CHECK(v[0] == doctest::Approx(0.6));
  CHECK(v[1] == doctest::Approx(0.4));
  CHECK(v[2] == 0.0);
}

TEST_CASE("splitmix streams are reproducible and distinct") {
  SplitMix64 a(5, 1), b(5, 1), c(5, 2);
  const auto va = a.next();
  CHECK(va == b.next());
  CHECK(va != c.next());
  SplitMix64 r(9);
  for (int t = 0; t < 1000; ++t) {
    const double u = r.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK(r.below(7) < 7);
  }
}
