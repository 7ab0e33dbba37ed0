#pragma once

#include <cstddef>
#include <vector>

#include "mocasm/objectives.hpp"

namespace mocasm {

/// O(L + reverse-degree) evaluation of "what if object e joined cluster k",
/// kept in sync with a Clustering by mirroring its assignments.
///
/// Values agree with the full-recompute functions in objectives.hpp up to
/// floating-point summation order.
class ObjectiveTracker {
public:
    ObjectiveTracker(const ObjectiveContext& ctx, const Clustering& clustering);

    double r_square() const noexcept;
    double total_connectivity() const noexcept;
    double phi() const noexcept { return r_square() * total_connectivity(); }
    double cluster_connectivity(ClusterIndex k) const noexcept;

    double r_square_if_added(ClusterIndex k, ObjectId e) const noexcept;
    double cluster_connectivity_if_added(ClusterIndex k, ObjectId e) const noexcept;
    double total_connectivity_if_added(ClusterIndex k, ObjectId e) const noexcept;
    double phi_if_added(ClusterIndex k, ObjectId e) const noexcept {
        return r_square_if_added(k, e) * total_connectivity_if_added(k, e);
    }

    /// Mirror of Clustering::assign.
    void add(ClusterIndex k, ObjectId e);

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    // Links gained by cluster k if e joins: e's neighbors already in k plus
    // members of k that list e among their L nearest.
    std::size_t links_gained(ClusterIndex k, ObjectId e) const noexcept;

    const DistanceMatrix& dm_;
    const KnnTable& knn_;
    std::size_t m_;
    std::vector<std::size_t> owner_;
    std::vector<ObjectId> heads_;
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> links_;
    std::vector<double> head_spread_;  // d^2(head_k, g)
    double inter_sum_ = 0.0;           // sum_k |C_k| d^2(head_k, g)
    double intra_sum_ = 0.0;           // sum_k sum_{w in C_k} d^2(w, head_k)
    std::size_t total_links_ = 0;
};

}  // namespace mocasm
