#include "mocasm/bench/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "mocasm/error.hpp"

namespace mocasm::bench {

KMeansResult kmeans_baseline(const Dataset& data, std::size_t k, std::uint64_t seed, std::size_t max_iters,
                             simd::Level level) {
    const std::size_t m = data.size();
    const std::size_t d = data.dims();
    if (k < 1 || k > m) {
        throw ParameterError("k=" + std::to_string(k) + " out of range [1, " + std::to_string(m) + "]");
    }
    const auto& kern = simd::kernels(level);
    const std::vector<double> cols = data.columns();

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    KMeansResult res;
    res.centers.resize(k * d);
    for (std::size_t c = 0; c < k; ++c) {
        const auto row = data.row(order[c]);
        std::copy(row.begin(), row.end(), res.centers.begin() + static_cast<std::ptrdiff_t>(c * d));
    }

    res.assignment.assign(m, -1);
    std::vector<double> best(m);
    std::vector<double> dist(m);
    std::vector<std::size_t> counts(k);
    for (res.iterations = 0; res.iterations < max_iters; ++res.iterations) {
        std::fill(best.begin(), best.end(), std::numeric_limits<double>::infinity());
        std::vector<int> next(m, 0);
        for (std::size_t c = 0; c < k; ++c) {
            kern.squared_distances(cols.data(), m, m, res.centers.data() + c * d, d, dist.data());
            for (std::size_t i = 0; i < m; ++i) {
                if (dist[i] < best[i]) {
                    best[i] = dist[i];
                    next[i] = static_cast<int>(c);
                }
            }
        }
        if (next == res.assignment) {
            res.converged = true;
            break;
        }
        res.assignment = std::move(next);

        std::fill(res.centers.begin(), res.centers.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            const auto c = static_cast<std::size_t>(res.assignment[i]);
            ++counts[c];
            for (std::size_t a = 0; a < d; ++a) res.centers[c * d + a] += data.at(i, a);
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                for (std::size_t a = 0; a < d; ++a) res.centers[c * d + a] /= static_cast<double>(counts[c]);
                continue;
            }
            // Reseed from the point farthest from its own center, then take it
            // out of contention for other empty clusters this pass.
            const auto far = static_cast<std::size_t>(std::max_element(best.begin(), best.end()) - best.begin());
            const auto row = data.row(far);
            std::copy(row.begin(), row.end(), res.centers.begin() + static_cast<std::ptrdiff_t>(c * d));
            best[far] = -1.0;
        }
    }
    return res;
}

}  // namespace mocasm::bench
