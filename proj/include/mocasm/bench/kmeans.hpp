#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mocasm/dataset.hpp"
#include "mocasm/simd/kernels.hpp"

namespace mocasm::bench {

struct KMeansResult {
    std::vector<int> assignment;
    std::vector<double> centers;  // k x d, row-major
    std::size_t iterations = 0;
    bool converged = false;
};

/// Lloyd's algorithm from k distinct seeded objects. A cluster that empties
/// is reseeded with the point farthest from its current center.
/// Throws ParameterError unless 1 <= k <= m.
KMeansResult kmeans_baseline(const Dataset& data, std::size_t k, std::uint64_t seed, std::size_t max_iters = 100,
                             simd::Level level = simd::active());

}  // namespace mocasm::bench
