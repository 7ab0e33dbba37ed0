#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mocasm/dataset.hpp"
#include "mocasm/simd/kernels.hpp"

namespace mocasm {

/// Symmetric m x m Euclidean distance matrix with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix(std::size_t m, std::vector<double> entries);

    std::size_t size() const noexcept { return m_; }
    double operator()(ObjectId i, ObjectId j) const noexcept { return dis_[i * m_ + j]; }
    std::span<const double> row(ObjectId i) const noexcept { return {dis_.data() + i * m_, m_}; }
    std::span<const double> entries() const noexcept { return dis_; }
    double dmax() const noexcept { return dmax_; }

private:
    std::size_t m_;
    std::vector<double> dis_;
    double dmax_ = 0.0;
};

/// Pairwise Euclidean distances. Every SIMD level yields the same bits.
DistanceMatrix build_distance_matrix(const Dataset& data, simd::Level level = simd::active());

/// Each object's other m-1 objects ranked by ascending distance (ties by
/// ascending id), plus the neighbor count L used by the connectivity objective.
class KnnTable {
public:
    std::size_t size() const noexcept { return m_; }
    std::size_t neighbor_count() const noexcept { return L_; }

    /// Full ranking of the other m-1 objects.
    std::span<const ObjectId> neighbors(ObjectId h) const noexcept {
        return {order_.data() + h * (m_ - 1), m_ - 1};
    }
    /// The L nearest: nn_h1..nn_hL.
    std::span<const ObjectId> nearest(ObjectId h) const noexcept {
        return {order_.data() + h * (m_ - 1), L_};
    }
    /// Objects h whose L nearest neighbors include `e`, ascending.
    std::span<const ObjectId> reverse_nearest(ObjectId e) const noexcept {
        return {reverse_.data() + reverse_offsets_[e], reverse_offsets_[e + 1] - reverse_offsets_[e]};
    }

private:
    friend KnnTable knn_table(const DistanceMatrix& dm, std::size_t L);
    KnnTable() = default;

    std::size_t m_ = 0;
    std::size_t L_ = 0;
    std::vector<ObjectId> order_;
    std::vector<ObjectId> reverse_;
    std::vector<std::size_t> reverse_offsets_;
};

/// Throws ParameterError unless 1 <= L <= m-1.
KnnTable knn_table(const DistanceMatrix& dm, std::size_t L);

}  // namespace mocasm
