#pragma once

// External validity indices: a predicted partition scored against
// ground-truth class labels. Partitions are given as one id per object; ids
// need not be contiguous.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mocasm::metrics {

struct ContingencyTable {
    /// counts[l * classes + k] = objects in predicted cluster l with true class k.
    std::vector<std::size_t> counts;
    std::vector<std::size_t> cluster_sizes;
    std::vector<std::size_t> class_sizes;
    std::size_t clusters = 0;
    std::size_t classes = 0;
    std::size_t total = 0;

    std::size_t at(std::size_t cluster, std::size_t klass) const { return counts[cluster * classes + klass]; }
};

struct PairCounts {
    std::uint64_t tp = 0;  // same cluster, same class
    std::uint64_t fp = 0;  // same cluster, different class
    std::uint64_t fn = 0;  // different cluster, same class
    std::uint64_t tn = 0;  // different cluster, different class

    std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
    friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

struct MetricsReport {
    double purity = 0.0;
    double rand_index = 0.0;
    double adjusted_rand_index = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    double entropy = 0.0;
};

/// Throws DataError on a length mismatch or an empty input.
ContingencyTable contingency(std::span<const int> predicted, std::span<const int> truth);

/// Enumerates every unordered object pair.
PairCounts pair_counts(std::span<const int> predicted, std::span<const int> truth);
/// Same counts from the contingency table's binomial sums.
PairCounts pair_counts(const ContingencyTable& ct);

/// (1/n) sum_j max_i n_j^i.
double purity(std::span<const int> predicted, std::span<const int> truth);
double purity(const ContingencyTable& ct);

double rand_index(const PairCounts& pc);
/// Hubert-Arabie form over the contingency table. Returns 1 when the maximum
/// equals the expectation and the index matches it, 0 if only the maximum does.
double adjusted_rand_index(const ContingencyTable& ct);

double precision(const PairCounts& pc);
double recall(const PairCounts& pc);
/// (w^2+1) P R / (w^2 P + R); 0 when the denominator vanishes.
double f_measure(const PairCounts& pc, double w = 1.0);

/// Size-weighted cluster entropy normalized by log(k), k = number of true
/// classes. 0 when there is a single class.
double entropy(const ContingencyTable& ct);

MetricsReport evaluate(std::span<const int> predicted, std::span<const int> truth, double w = 1.0);

}  // namespace mocasm::metrics
