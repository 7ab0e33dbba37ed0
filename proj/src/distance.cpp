#include "mocasm/distance.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mocasm/error.hpp"

namespace mocasm {

DistanceMatrix::DistanceMatrix(std::size_t m, std::vector<double> entries)
    : m_(m), dis_(std::move(entries)) {
    if (dis_.size() != m_ * m_) throw ContractViolation("distance matrix must be m x m");
    for (double v : dis_) dmax_ = std::max(dmax_, v);
}

DistanceMatrix build_distance_matrix(const Dataset& data, simd::Level level) {
    const auto& k = simd::kernels(level);
    const std::size_t m = data.size();
    const std::size_t d = data.dims();
    const std::vector<double> cols = data.columns();
    std::vector<double> dis(m * m);
    // Row i computes distances to objects j > i only, then mirrors; the
    // result does not depend on which rows are computed first.
    for (std::size_t i = 0; i + 1 < m; ++i) {
        double* out = dis.data() + i * m + (i + 1);
        const std::size_t count = m - i - 1;
        k.squared_distances(cols.data() + (i + 1), m, count, data.row(i).data(), d, out);
        k.sqrt_inplace(out, count);
        for (std::size_t j = i + 1; j < m; ++j) dis[j * m + i] = dis[i * m + j];
    }
    return DistanceMatrix(m, std::move(dis));
}

KnnTable knn_table(const DistanceMatrix& dm, std::size_t L) {
    const std::size_t m = dm.size();
    if (L < 1 || L > m - 1) {
        throw ParameterError("neighbor count L=" + std::to_string(L) + " out of range [1, " +
                             std::to_string(m - 1) + "]");
    }
    KnnTable t;
    t.m_ = m;
    t.L_ = L;
    t.order_.resize(m * (m - 1));
    std::vector<ObjectId> scratch(m);
    for (ObjectId h = 0; h < m; ++h) {
        std::iota(scratch.begin(), scratch.end(), ObjectId{0});
        scratch.erase(scratch.begin() + static_cast<std::ptrdiff_t>(h));
        const auto row = dm.row(h);
        std::stable_sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(m - 1),
                         [&](ObjectId a, ObjectId b) { return row[a] < row[b]; });
        std::copy_n(scratch.begin(), m - 1, t.order_.begin() + static_cast<std::ptrdiff_t>(h * (m - 1)));
        scratch.resize(m);
    }

    std::vector<std::size_t> counts(m + 1, 0);
    for (ObjectId h = 0; h < m; ++h)
        for (ObjectId e : t.nearest(h)) ++counts[e + 1];
    std::partial_sum(counts.begin(), counts.end(), counts.begin());
    t.reverse_offsets_ = counts;
    t.reverse_.resize(m * L);
    std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
    for (ObjectId h = 0; h < m; ++h)
        for (ObjectId e : t.nearest(h)) t.reverse_[cursor[e]++] = h;
    return t;
}

}  // namespace mocasm
