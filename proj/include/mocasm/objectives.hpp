#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mocasm/dataset.hpp"
#include "mocasm/distance.hpp"

namespace mocasm {

using ClusterIndex = std::size_t;

struct Cluster {
    ObjectId head;
    std::vector<ObjectId> members;  // contains head
};

/// A partition in progress: disjoint non-empty clusters with fixed heads, plus
/// the pool of objects not yet assigned.
class Clustering {
public:
    /// All m objects start unassigned.
    explicit Clustering(std::size_t object_count);

    /// Opens a new cluster whose only member is `head`. Returns its index.
    ClusterIndex add_cluster(ObjectId head);
    void assign(ObjectId object, ClusterIndex cluster);
    /// Moves every member of `from` into `into`, keeps `head` as the merged
    /// head, and erases `from` (later indices shift down by one).
    void merge(ClusterIndex into, ClusterIndex from, ObjectId head);

    std::size_t object_count() const noexcept { return owner_.size(); }
    std::size_t cluster_count() const noexcept { return clusters_.size(); }
    const std::vector<Cluster>& clusters() const noexcept { return clusters_; }
    const Cluster& cluster(ClusterIndex k) const { return clusters_.at(k); }
    std::optional<ClusterIndex> cluster_of(ObjectId o) const noexcept;
    bool is_assigned(ObjectId o) const noexcept { return owner_[o] != kNone; }
    /// Unassigned objects, ascending.
    std::vector<ObjectId> unassigned() const;
    std::size_t unassigned_count() const noexcept { return unassigned_count_; }

    /// Per-object cluster index; throws ContractViolation if any object is unassigned.
    std::vector<int> assignment() const;

    /// Throws ContractViolation if any structural invariant is broken.
    void validate() const;

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<Cluster> clusters_;
    std::vector<std::size_t> owner_;
    std::size_t unassigned_count_;
};

/// Inter/intra inertia, R-square, connectivity and their product phi.
struct ObjectiveReport {
    double inter_inertia = 0.0;
    double intra_inertia = 0.0;
    double r_square = 0.0;
    double connectivity = 0.0;
    double phi = 0.0;
};

/// Read-only inputs shared by every objective evaluation.
struct ObjectiveContext {
    const Dataset& data;
    const DistanceMatrix& dm;
    const KnnTable& knn;
    std::vector<double> center;  // gravity center of the whole dataset
};

std::vector<double> gravity_center(const Dataset& data);

/// (1/m) * sum_i |C_i| * d^2(head_i, g), m being the full dataset size.
double inter_inertia(const Clustering& clustering, const Dataset& data, std::span<const double> g);

/// (1/m) * sum_i sum_{w in C_i} d^2(w, head_i), read from the distance matrix.
double intra_inertia(const Clustering& clustering, const DistanceMatrix& dm);

/// inter / (intra + inter); 0 when both vanish.
double r_square(const Clustering& clustering, const Dataset& data, const DistanceMatrix& dm);

/// Mean over members of the fraction of their L dataset-wide nearest
/// neighbors that belong to the same cluster.
double cluster_connectivity(std::span<const ObjectId> members, const KnnTable& knn);
inline double cluster_connectivity(const Cluster& cluster, const KnnTable& knn) {
    return cluster_connectivity(cluster.members, knn);
}

/// sum_i (|C_i| / m) * Connec(C_i); unassigned objects contribute nothing.
double total_connectivity(const Clustering& clustering, const KnnTable& knn);

double phi(const Clustering& clustering, const Dataset& data, const DistanceMatrix& dm,
           const KnnTable& knn);

ObjectiveReport evaluate(const Clustering& clustering, const Dataset& data,
                         const DistanceMatrix& dm, const KnnTable& knn);

/// Mean distance from each object to every other object. Small means dense.
std::vector<double> dissimilarity_vector(const DistanceMatrix& dm, simd::Level level = simd::active());

}  // namespace mocasm
