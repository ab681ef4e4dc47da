#pragma once

#include <cstddef>
#include <vector>

#include "ifcdms/channel.hpp"
#include "ifcdms/info.hpp"
#include "ifcdms/simplex.hpp"

namespace ifcdms {

// Seeded generators of test channels and distributions.

StochasticMatrix random_stochastic(SplitMix64& rng, std::size_t rows, std::size_t cols);

JointDistribution random_joint(SplitMix64& rng, std::vector<std::size_t> shape);

/// Every (x1, x2) slice drawn uniformly from the simplex over (y1, y2).
IFCChannel random_channel(SplitMix64& rng, std::size_t nx1, std::size_t nx2, std::size_t ny1, std::size_t ny2);

struct ComposedChannel {
  IFCChannel channel;
  StochasticMatrix q;  // degrading kernel q(y2 | y1), the same for every x2
};

/// P(y1, y2 | x1, x2) = k1(y1 | x1, x2) q(y2 | y1) with random k1 and q.
ComposedChannel composed_degraded_channel(SplitMix64& rng, std::size_t nx1, std::size_t nx2, std::size_t ny1,
                                          std::size_t ny2);

/// nx1 = nx2 = n, Y2 = X1 noiselessly and Y1 a strictly noisy view of X1.
IFCChannel anti_degraded_channel(SplitMix64& rng, std::size_t n);

/// Y1 = X1 and Y2 = X2 noiselessly.
IFCChannel parallel_noiseless_channel(std::size_t n);

}  // namespace ifcdms
