#pragma once

// Small builders shared by the unit tests.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "mocasm/dataset.hpp"

namespace mocasm::test {

inline Dataset points_1d(std::initializer_list<double> xs) {
    return Dataset(xs.size(), 1, std::vector<double>(xs));
}

inline Dataset points(std::size_t d, std::vector<double> values, std::optional<std::vector<int>> labels = {}) {
    const std::size_t m = values.size() / d;
    return Dataset(m, d, std::move(values), std::move(labels));
}

/// The six-point 1-D set used throughout: two tight triples far apart.
inline Dataset toy_six() { return points_1d({0.0, 0.1, 0.2, 5.0, 5.1, 5.2}); }

inline Dataset random_dataset(std::mt19937_64& rng, std::size_t m, std::size_t d, double scale = 10.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> v(m * d);
    for (double& x : v) x = u(rng);
    return Dataset(m, d, std::move(v));
}

}  // namespace mocasm::test
