#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ifcdms {

/// splitmix64 stream: small deterministic RNG whose output does not depend
/// on the standard library's distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  SplitMix64(std::uint64_t seed, std::uint64_t stream) : state_(seed ^ mix(stream + 0x632be59bd9b4e019ULL)) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    return mix(z);
  }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

/// Number of points of the lattice {k / resolution} on the (dim-1)-simplex,
/// C(resolution + dim - 1, dim - 1), saturating at SIZE_MAX.
std::size_t lattice_count(std::size_t dim, int resolution);

/// All lattice points of the simplex in lexicographic order.
std::vector<std::vector<double>> lattice_points(std::size_t dim, int resolution);

/// Uniformly drawn lattice point (stars and bars).
void random_lattice_point(SplitMix64& rng, int resolution, std::span<double> out);

/// Uniform draw from the simplex (flat Dirichlet).
void random_simplex_point(SplitMix64& rng, std::span<double> out);

/// Euclidean projection onto the probability simplex.
void project_to_simplex(std::span<double> v);

}  // namespace ifcdms
