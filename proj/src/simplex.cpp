#include "ifcdms/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "ifcdms/errors.hpp"

namespace ifcdms {

std::size_t lattice_count(std::size_t dim, int resolution) {
  if (dim == 0) return 0;
  if (resolution < 1) throw InvalidInput("lattice resolution must be >= 1");
  // C(n + k, k) with k = dim - 1, n = resolution, computed incrementally.
  const std::size_t k = dim - 1;
  const auto n = static_cast<std::size_t>(resolution);
  constexpr std::size_t cap = std::numeric_limits<std::size_t>::max();
  std::size_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t num = n + i;
    if (c > cap / num) return cap;
    c = c * num / i;
  }
  return c;
}

std::vector<std::vector<double>> lattice_points(std::size_t dim, int resolution) {
  if (dim == 0) return {};
  if (resolution < 1) throw InvalidInput("lattice resolution must be >= 1");
  std::vector<std::vector<double>> out;
  std::vector<int> counts(dim, 0);
  const double step = 1.0 / resolution;
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k + 1 == dim) {
      counts[k] = left;
      std::vector<double> p(dim);
      for (std::size_t i = 0; i < dim; ++i) p[i] = counts[i] * step;
      out.push_back(std::move(p));
      return;
    }
    for (int c = left; c >= 0; --c) {
      counts[k] = c;
      rec(k + 1, left - c);
    }
  };
  rec(0, resolution);
  return out;
}

void random_lattice_point(SplitMix64& rng, int resolution, std::span<double> out) {
  const std::size_t dim = out.size();
  if (dim == 0) return;
  if (dim == 1) {
    out[0] = 1.0;
    return;
  }
  // Choose dim-1 bar positions among resolution + dim - 1 slots.
  const std::size_t slots = static_cast<std::size_t>(resolution) + dim - 1;
  std::vector<std::size_t> pos(slots);
  std::iota(pos.begin(), pos.end(), 0);
  for (std::size_t i = 0; i + 1 < dim; ++i) {
    const std::size_t j = i + rng.below(slots - i);
    std::swap(pos[i], pos[j]);
  }
  std::vector<std::size_t> bars(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(dim - 1));
  std::sort(bars.begin(), bars.end());
  std::size_t prev = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t end = i + 1 < dim ? bars[i] : slots;
    out[i] = static_cast<double>(end - prev) / resolution;
    prev = end + 1;
  }
}

void random_simplex_point(SplitMix64& rng, std::span<double> out) {
  double sum = 0.0;
  for (double& v : out) {
    v = -std::log1p(-rng.uniform());
    sum += v;
  }
  for (double& v : out) v /= sum;
}

void project_to_simplex(std::span<double> v) {
  const std::size_t n = v.size();
  if (n == 0) return;
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cum += s[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (s[i] - t > 0.0) theta = t;
  }
  double sum = 0.0;
  for (double& x : v) {
    x = std::max(x - theta, 0.0);
    sum += x;
  }
  for (double& x : v) x /= sum;
}

}  // namespace ifcdms
