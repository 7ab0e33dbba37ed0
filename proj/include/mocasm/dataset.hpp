#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mocasm {

using ObjectId = std::size_t;

/// Dense m x d matrix of finite coordinates, stored row-major, with optional
/// ground-truth class ids used only for evaluation.
class Dataset {
public:
    /// Throws DataError if m < 2, d < 1, a coordinate is not finite, or the
    /// label vector length differs from m.
    Dataset(std::size_t m, std::size_t d, std::vector<double> values,
            std::optional<std::vector<int>> labels = std::nullopt,
            std::vector<std::string> class_names = {});

    std::size_t size() const noexcept { return m_; }
    std::size_t dims() const noexcept { return d_; }

    double at(ObjectId i, std::size_t attr) const noexcept { return values_[i * d_ + attr]; }
    std::span<const double> row(ObjectId i) const noexcept {
        return {values_.data() + i * d_, d_};
    }
    std::span<const double> values() const noexcept { return values_; }

    /// Attribute-major copy (d x m), the layout the SIMD kernels stream over.
    std::vector<double> columns() const;

    bool has_labels() const noexcept { return labels_.has_value(); }
    const std::optional<std::vector<int>>& labels() const noexcept { return labels_; }
    /// Label text for class id i, when the dataset came from a file with named classes.
    const std::vector<std::string>& class_names() const noexcept { return class_names_; }
    std::size_t class_count() const;

private:
    std::size_t m_;
    std::size_t d_;
    std::vector<double> values_;
    std::optional<std::vector<int>> labels_;
    std::vector<std::string> class_names_;
};

/// Maps each attribute affinely onto [0,1]; constant attributes become 0.
Dataset min_max_normalize(const Dataset& data);

}  // namespace mocasm
