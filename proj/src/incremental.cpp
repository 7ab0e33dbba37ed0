#include "mocasm/incremental.hpp"

#include "mocasm/error.hpp"

namespace mocasm {

ObjectiveTracker::ObjectiveTracker(const ObjectiveContext& ctx, const Clustering& clustering)
    : dm_(ctx.dm), knn_(ctx.knn), m_(clustering.object_count()), owner_(m_, kNone) {
    const auto& clusters = clustering.clusters();
    heads_.reserve(clusters.size());
    for (ClusterIndex k = 0; k < clusters.size(); ++k) {
        const auto& c = clusters[k];
        heads_.push_back(c.head);
        sizes_.push_back(c.members.size());
        double spread = 0.0;
        for (std::size_t a = 0; a < ctx.data.dims(); ++a) {
            const double diff = ctx.data.at(c.head, a) - ctx.center[a];
            spread += diff * diff;
        }
        head_spread_.push_back(spread);
        inter_sum_ += static_cast<double>(c.members.size()) * spread;
        for (ObjectId w : c.members) {
            owner_[w] = k;
            const double d = dm_(w, c.head);
            intra_sum_ += d * d;
        }
    }
    links_.assign(clusters.size(), 0);
    for (ObjectId h = 0; h < m_; ++h) {
        if (owner_[h] == kNone) continue;
        for (ObjectId nn : knn_.nearest(h))
            if (owner_[nn] == owner_[h]) ++links_[owner_[h]];
    }
    for (auto l : links_) total_links_ += l;
}

double ObjectiveTracker::r_square() const noexcept {
    const double total = inter_sum_ + intra_sum_;
    return total > 0.0 ? inter_sum_ / total : 0.0;
}

double ObjectiveTracker::total_connectivity() const noexcept {
    return static_cast<double>(total_links_) /
           (static_cast<double>(m_) * static_cast<double>(knn_.neighbor_count()));
}

double ObjectiveTracker::cluster_connectivity(ClusterIndex k) const noexcept {
    return static_cast<double>(links_[k]) /
           (static_cast<double>(sizes_[k]) * static_cast<double>(knn_.neighbor_count()));
}

std::size_t ObjectiveTracker::links_gained(ClusterIndex k, ObjectId e) const noexcept {
    std::size_t gained = 0;
    for (ObjectId nn : knn_.nearest(e)) gained += owner_[nn] == k;
    for (ObjectId h : knn_.reverse_nearest(e)) gained += owner_[h] == k;
    return gained;
}

double ObjectiveTracker::r_square_if_added(ClusterIndex k, ObjectId e) const noexcept {
    const double d = dm_(e, heads_[k]);
    const double inter = inter_sum_ + head_spread_[k];
    const double total = inter + (intra_sum_ + d * d);
    return total > 0.0 ? inter / total : 0.0;
}

double ObjectiveTracker::cluster_connectivity_if_added(ClusterIndex k, ObjectId e) const noexcept {
    return static_cast<double>(links_[k] + links_gained(k, e)) /
           (static_cast<double>(sizes_[k] + 1) * static_cast<double>(knn_.neighbor_count()));
}

double ObjectiveTracker::total_connectivity_if_added(ClusterIndex k, ObjectId e) const noexcept {
    return static_cast<double>(total_links_ + links_gained(k, e)) /
           (static_cast<double>(m_) * static_cast<double>(knn_.neighbor_count()));
}

void ObjectiveTracker::add(ClusterIndex k, ObjectId e) {
    if (k >= heads_.size() || e >= m_) throw ContractViolation("tracker: cluster or object out of range");
    if (owner_[e] != kNone) throw ContractViolation("tracker: object already assigned");
    const std::size_t gained = links_gained(k, e);
    links_[k] += gained;
    total_links_ += gained;
    const double d = dm_(e, heads_[k]);
    inter_sum_ += head_spread_[k];
    intra_sum_ += d * d;
    ++sizes_[k];
    owner_[e] = k;
}

}  // namespace mocasm
