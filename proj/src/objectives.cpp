#include "mocasm/objectives.hpp"

#include <algorithm>
#include <string>

#include "mocasm/error.hpp"

namespace mocasm {

Clustering::Clustering(std::size_t object_count)
    : owner_(object_count, kNone), unassigned_count_(object_count) {}

ClusterIndex Clustering::add_cluster(ObjectId head) {
    if (head >= owner_.size()) throw ContractViolation("cluster head out of range");
    if (owner_[head] != kNone) {
        throw ContractViolation("object " + std::to_string(head) + " is already assigned");
    }
    clusters_.push_back(Cluster{head, {head}});
    owner_[head] = clusters_.size() - 1;
    --unassigned_count_;
    return clusters_.size() - 1;
}

void Clustering::assign(ObjectId object, ClusterIndex cluster) {
    if (object >= owner_.size() || cluster >= clusters_.size()) {
        throw ContractViolation("assign: object or cluster out of range");
    }
    if (owner_[object] != kNone) {
        throw ContractViolation("object " + std::to_string(object) + " is already assigned");
    }
    clusters_[cluster].members.push_back(object);
    owner_[object] = cluster;
    --unassigned_count_;
}

void Clustering::merge(ClusterIndex into, ClusterIndex from, ObjectId head) {
    if (into == from || into >= clusters_.size() || from >= clusters_.size()) {
        throw ContractViolation("merge: invalid cluster pair");
    }
    auto& dst = clusters_[into];
    auto& src = clusters_[from];
    if (head != dst.head && head != src.head) {
        throw ContractViolation("merge: head must come from one of the merged clusters");
    }
    dst.members.insert(dst.members.end(), src.members.begin(), src.members.end());
    dst.head = head;
    clusters_.erase(clusters_.begin() + static_cast<std::ptrdiff_t>(from));
    for (ClusterIndex k = 0; k < clusters_.size(); ++k)
        for (ObjectId o : clusters_[k].members) owner_[o] = k;
}

std::optional<ClusterIndex> Clustering::cluster_of(ObjectId o) const noexcept {
    if (o >= owner_.size() || owner_[o] == kNone) return std::nullopt;
    return owner_[o];
}

std::vector<ObjectId> Clustering::unassigned() const {
    std::vector<ObjectId> out;
    out.reserve(unassigned_count_);
    for (ObjectId o = 0; o < owner_.size(); ++o)
        if (owner_[o] == kNone) out.push_back(o);
    return out;
}

std::vector<int> Clustering::assignment() const {
    std::vector<int> out(owner_.size());
    for (ObjectId o = 0; o < owner_.size(); ++o) {
        if (owner_[o] == kNone) {
            throw ContractViolation("object " + std::to_string(o) + " is unassigned");
        }
        out[o] = static_cast<int>(owner_[o]);
    }
    return out;
}

void Clustering::validate() const {
    std::vector<std::size_t> seen(owner_.size(), kNone);
    std::size_t assigned = 0;
    for (ClusterIndex k = 0; k < clusters_.size(); ++k) {
        const auto& c = clusters_[k];
        if (c.members.empty()) throw ContractViolation("cluster " + std::to_string(k) + " is empty");
        if (std::find(c.members.begin(), c.members.end(), c.head) == c.members.end()) {
            throw ContractViolation("cluster " + std::to_string(k) + " does not contain its head");
        }
        for (ObjectId o : c.members) {
            if (o >= owner_.size() || seen[o] != kNone) {
                throw ContractViolation("object " + std::to_string(o) + " appears in two clusters");
            }
            if (owner_[o] != k) throw ContractViolation("owner index out of sync");
            seen[o] = k;
            ++assigned;
        }
    }
    if (assigned + unassigned_count_ != owner_.size()) {
        throw ContractViolation("members and unassigned pool do not cover all objects");
    }
}

std::vector<double> gravity_center(const Dataset& data) {
    std::vector<double> g(data.dims(), 0.0);
    for (ObjectId i = 0; i < data.size(); ++i)
        for (std::size_t a = 0; a < data.dims(); ++a) g[a] += data.at(i, a);
    for (double& v : g) v /= static_cast<double>(data.size());
    return g;
}

namespace {

double squared_distance_to(const Dataset& data, ObjectId o, std::span<const double> point) {
    double acc = 0.0;
    for (std::size_t a = 0; a < data.dims(); ++a) {
        const double diff = data.at(o, a) - point[a];
        acc += diff * diff;
    }
    return acc;
}

}  // namespace

double inter_inertia(const Clustering& clustering, const Dataset& data, std::span<const double> g) {
    double sum = 0.0;
    for (const auto& c : clustering.clusters()) {
        sum += static_cast<double>(c.members.size()) * squared_distance_to(data, c.head, g);
    }
    return sum / static_cast<double>(clustering.object_count());
}

double intra_inertia(const Clustering& clustering, const DistanceMatrix& dm) {
    double sum = 0.0;
    for (const auto& c : clustering.clusters()) {
        for (ObjectId w : c.members) {
            const double d = dm(w, c.head);
            sum += d * d;
        }
    }
    return sum / static_cast<double>(clustering.object_count());
}

namespace {

double r_square_from(double inter, double intra) {
    const double total = inter + intra;
    return total > 0.0 ? inter / total : 0.0;
}

// Number of (member, rank <= L) neighbor pairs that stay inside the member set.
std::size_t in_cluster_links(std::span<const ObjectId> members, const KnnTable& knn,
                             std::vector<char>& flag) {
    for (ObjectId o : members) flag[o] = 1;
    std::size_t links = 0;
    for (ObjectId h : members)
        for (ObjectId nn : knn.nearest(h)) links += static_cast<std::size_t>(flag[nn]);
    for (ObjectId o : members) flag[o] = 0;
    return links;
}

}  // namespace

double r_square(const Clustering& clustering, const Dataset& data, const DistanceMatrix& dm) {
    return r_square_from(inter_inertia(clustering, data, gravity_center(data)),
                         intra_inertia(clustering, dm));
}

double cluster_connectivity(std::span<const ObjectId> members, const KnnTable& knn) {
    if (members.empty()) throw ContractViolation("connectivity of an empty cluster");
    std::vector<char> flag(knn.size(), 0);
    const auto links = in_cluster_links(members, knn, flag);
    return static_cast<double>(links) /
           (static_cast<double>(members.size()) * static_cast<double>(knn.neighbor_count()));
}

double total_connectivity(const Clustering& clustering, const KnnTable& knn) {
    std::vector<char> flag(knn.size(), 0);
    double sum = 0.0;
    for (const auto& c : clustering.clusters()) {
        const double conn = static_cast<double>(in_cluster_links(c.members, knn, flag)) /
                            (static_cast<double>(c.members.size()) *
                             static_cast<double>(knn.neighbor_count()));
        sum += static_cast<double>(c.members.size()) / static_cast<double>(clustering.object_count()) * conn;
    }
    return sum;
}

double phi(const Clustering& clustering, const Dataset& data, const DistanceMatrix& dm,
           const KnnTable& knn) {
    return r_square(clustering, data, dm) * total_connectivity(clustering, knn);
}

ObjectiveReport evaluate(const Clustering& clustering, const Dataset& data, const DistanceMatrix& dm,
                         const KnnTable& knn) {
    ObjectiveReport r;
    r.inter_inertia = inter_inertia(clustering, data, gravity_center(data));
    r.intra_inertia = intra_inertia(clustering, dm);
    r.r_square = r_square_from(r.inter_inertia, r.intra_inertia);
    r.connectivity = total_connectivity(clustering, knn);
    r.phi = r.r_square * r.connectivity;
    return r;
}

std::vector<double> dissimilarity_vector(const DistanceMatrix& dm, simd::Level level) {
    const auto& k = simd::kernels(level);
    const std::size_t m = dm.size();
    std::vector<double> sums(m, 0.0);
    // Column sums equal row sums on a symmetric matrix and vectorize across objects.
    for (ObjectId j = 0; j < m; ++j) k.add_row(dm.row(j).data(), sums.data(), m);
    for (double& s : sums) s /= static_cast<double>(m - 1);
    return sums;
}

}  // namespace mocasm
