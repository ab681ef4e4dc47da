#include "ifcdms/testbed.hpp"

namespace ifcdms {

StochasticMatrix random_stochastic(SplitMix64& rng, std::size_t rows, std::size_t cols) {
  std::vector<double> p(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) random_simplex_point(rng, std::span<double>(p).subspan(r * cols, cols));
  return StochasticMatrix(rows, cols, std::move(p));
}

JointDistribution random_joint(SplitMix64& rng, std::vector<std::size_t> shape) {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  std::vector<double> p(n);
  random_simplex_point(rng, p);
  return JointDistribution(std::move(shape), std::move(p));
}

IFCChannel random_channel(SplitMix64& rng, std::size_t nx1, std::size_t nx2, std::size_t ny1, std::size_t ny2) {
  const auto m = random_stochastic(rng, nx1 * nx2, ny1 * ny2);
  return IFCChannel(nx1, nx2, ny1, ny2, {m.data().begin(), m.data().end()});
}

ComposedChannel composed_degraded_channel(SplitMix64& rng, std::size_t nx1, std::size_t nx2, std::size_t ny1,
                                          std::size_t ny2) {
  const auto k1 = random_stochastic(rng, nx1 * nx2, ny1);
  auto q = random_stochastic(rng, ny1, ny2);
  std::vector<double> p(nx1 * nx2 * ny1 * ny2);
  for (std::size_t x = 0; x < nx1 * nx2; ++x)
    for (std::size_t y1 = 0; y1 < ny1; ++y1)
      for (std::size_t y2 = 0; y2 < ny2; ++y2) p[(x * ny1 + y1) * ny2 + y2] = k1(x, y1) * q(y1, y2);
  return {IFCChannel(nx1, nx2, ny1, ny2, std::move(p)), std::move(q)};
}

IFCChannel anti_degraded_channel(SplitMix64& rng, std::size_t n) {
  std::vector<double> p(n * n * n * n, 0.0);
  std::vector<double> d(n);
  for (std::size_t x1 = 0; x1 < n; ++x1)
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      const double eps = 0.1 + 0.4 * rng.uniform();
      random_simplex_point(rng, d);
      for (std::size_t y1 = 0; y1 < n; ++y1) {
        // keep every entry strictly positive
        const double k = (1.0 - eps) * (y1 == x1 ? 1.0 : 0.0) + eps * (0.5 * d[y1] + 0.5 / static_cast<double>(n));
        p[((x1 * n + x2) * n + y1) * n + x1] = k;
      }
    }
  return IFCChannel(n, n, n, n, std::move(p));
}

IFCChannel parallel_noiseless_channel(std::size_t n) {
  std::vector<double> p(n * n * n * n, 0.0);
  for (std::size_t x1 = 0; x1 < n; ++x1)
    for (std::size_t x2 = 0; x2 < n; ++x2) p[((x1 * n + x2) * n + x1) * n + x2] = 1.0;
  return IFCChannel(n, n, n, n, std::move(p));
}

}  // namespace ifcdms
