#include "mocasm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "mocasm/error.hpp"

namespace mocasm::metrics {
namespace {

void check_inputs(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size()) {
        throw DataError("partition has " + std::to_string(predicted.size()) + " objects but labels have " +
                        std::to_string(truth.size()));
    }
    if (predicted.empty()) throw DataError("cannot score an empty partition");
}

// Dense ids in order of first appearance.
std::vector<std::size_t> densify(std::span<const int> ids, std::size_t& distinct) {
    std::map<int, std::size_t> index;
    std::vector<std::size_t> out;
    out.reserve(ids.size());
    for (int id : ids) out.push_back(index.try_emplace(id, index.size()).first->second);
    distinct = index.size();
    return out;
}

constexpr double choose2(std::uint64_t n) noexcept {
    return static_cast<double>(n) * static_cast<double>(n > 0 ? n - 1 : 0) / 2.0;
}

constexpr std::uint64_t choose2_int(std::uint64_t n) noexcept { return n * (n > 0 ? n - 1 : 0) / 2; }

}  // namespace

ContingencyTable contingency(std::span<const int> predicted, std::span<const int> truth) {
    check_inputs(predicted, truth);
    ContingencyTable ct;
    const auto p = densify(predicted, ct.clusters);
    const auto t = densify(truth, ct.classes);
    ct.total = predicted.size();
    ct.counts.assign(ct.clusters * ct.classes, 0);
    ct.cluster_sizes.assign(ct.clusters, 0);
    ct.class_sizes.assign(ct.classes, 0);
    for (std::size_t i = 0; i < ct.total; ++i) {
        ++ct.counts[p[i] * ct.classes + t[i]];
        ++ct.cluster_sizes[p[i]];
        ++ct.class_sizes[t[i]];
    }
    return ct;
}

PairCounts pair_counts(std::span<const int> predicted, std::span<const int> truth) {
    check_inputs(predicted, truth);
    PairCounts pc;
    const std::size_t n = predicted.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_cluster = predicted[i] == predicted[j];
            const bool same_class = truth[i] == truth[j];
            if (same_cluster && same_class) {
                ++pc.tp;
            } else if (same_cluster) {
                ++pc.fp;
            } else if (same_class) {
                ++pc.fn;
            } else {
                ++pc.tn;
            }
        }
    }
    return pc;
}

PairCounts pair_counts(const ContingencyTable& ct) {
    std::uint64_t same_both = 0;
    std::uint64_t same_cluster = 0;
    std::uint64_t same_class = 0;
    for (auto c : ct.counts) same_both += choose2_int(c);
    for (auto c : ct.cluster_sizes) same_cluster += choose2_int(c);
    for (auto c : ct.class_sizes) same_class += choose2_int(c);
    PairCounts pc;
    pc.tp = same_both;
    pc.fp = same_cluster - same_both;
    pc.fn = same_class - same_both;
    pc.tn = choose2_int(ct.total) - same_cluster - same_class + same_both;
    return pc;
}

double purity(const ContingencyTable& ct) {
    std::size_t correct = 0;
    for (std::size_t l = 0; l < ct.clusters; ++l) {
        std::size_t best = 0;
        for (std::size_t k = 0; k < ct.classes; ++k) best = std::max(best, ct.at(l, k));
        correct += best;
    }
    return static_cast<double>(correct) / static_cast<double>(ct.total);
}

double purity(std::span<const int> predicted, std::span<const int> truth) {
    return purity(contingency(predicted, truth));
}

double rand_index(const PairCounts& pc) {
    const auto total = pc.total();
    return total == 0 ? 1.0 : static_cast<double>(pc.tp + pc.tn) / static_cast<double>(total);
}

double adjusted_rand_index(const ContingencyTable& ct) {
    double index = 0.0;
    for (auto c : ct.counts) index += choose2(c);
    double rows = 0.0;
    for (auto c : ct.cluster_sizes) rows += choose2(c);
    double cols = 0.0;
    for (auto c : ct.class_sizes) cols += choose2(c);
    const double pairs = choose2(ct.total);
    const double expected = pairs > 0.0 ? rows * cols / pairs : 0.0;
    const double max_index = 0.5 * (rows + cols);
    if (max_index == expected) return index == expected ? 1.0 : 0.0;
    return (index - expected) / (max_index - expected);
}

double precision(const PairCounts& pc) {
    const auto denom = pc.tp + pc.fp;
    return denom == 0 ? 0.0 : static_cast<double>(pc.tp) / static_cast<double>(denom);
}

double recall(const PairCounts& pc) {
    const auto denom = pc.tp + pc.fn;
    return denom == 0 ? 0.0 : static_cast<double>(pc.tp) / static_cast<double>(denom);
}

double f_measure(const PairCounts& pc, double w) {
    if (!(w > 0.0)) throw ParameterError("F-measure weight w must be positive");
    const double p = precision(pc);
    const double r = recall(pc);
    const double w2 = w * w;
    const double denom = w2 * p + r;
    return denom == 0.0 ? 0.0 : (w2 + 1.0) * p * r / denom;
}

double entropy(const ContingencyTable& ct) {
    if (ct.classes < 2) return 0.0;
    const double norm = std::log(static_cast<double>(ct.classes));
    double total = 0.0;
    for (std::size_t l = 0; l < ct.clusters; ++l) {
        const double size = static_cast<double>(ct.cluster_sizes[l]);
        double e = 0.0;
        for (std::size_t k = 0; k < ct.classes; ++k) {
            const auto c = ct.at(l, k);
            if (c == 0) continue;
            const double q = static_cast<double>(c) / size;
            e -= q * std::log(q);
        }
        total += size / static_cast<double>(ct.total) * (e / norm);
    }
    return total;
}

MetricsReport evaluate(std::span<const int> predicted, std::span<const int> truth, double w) {
    const ContingencyTable ct = contingency(predicted, truth);
    const PairCounts pc = pair_counts(ct);
    MetricsReport r;
    r.purity = purity(ct);
    r.rand_index = rand_index(pc);
    r.adjusted_rand_index = adjusted_rand_index(ct);
    r.precision = precision(pc);
    r.recall = recall(pc);
    r.f_measure = f_measure(pc, w);
    r.entropy = entropy(ct);
    return r;
}

}  // namespace mocasm::metrics
