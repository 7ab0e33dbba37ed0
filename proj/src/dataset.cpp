#include "mocasm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mocasm/error.hpp"

namespace mocasm {

Dataset::Dataset(std::size_t m, std::size_t d, std::vector<double> values,
                 std::optional<std::vector<int>> labels, std::vector<std::string> class_names)
    : m_(m), d_(d), values_(std::move(values)), labels_(std::move(labels)),
      class_names_(std::move(class_names)) {
    if (m_ < 2) throw DataError("dataset needs at least 2 objects, got " + std::to_string(m_));
    if (d_ < 1) throw DataError("dataset needs at least 1 attribute");
    if (values_.size() != m_ * d_) {
        throw DataError("expected " + std::to_string(m_ * d_) + " coordinates, got " +
                        std::to_string(values_.size()));
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw DataError("non-finite coordinate at object " + std::to_string(k / d_) +
                            ", attribute " + std::to_string(k % d_));
        }
    }
    if (labels_ && labels_->size() != m_) {
        throw DataError("label count " + std::to_string(labels_->size()) +
                        " does not match object count " + std::to_string(m_));
    }
}

std::vector<double> Dataset::columns() const {
    std::vector<double> cols(m_ * d_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t a = 0; a < d_; ++a) cols[a * m_ + i] = values_[i * d_ + a];
    return cols;
}

std::size_t Dataset::class_count() const {
    if (!labels_) return 0;
    return std::set<int>(labels_->begin(), labels_->end()).size();
}

Dataset min_max_normalize(const Dataset& data) {
    const std::size_t m = data.size();
    const std::size_t d = data.dims();
    std::vector<double> out(m * d);
    for (std::size_t a = 0; a < d; ++a) {
        double lo = data.at(0, a);
        double hi = lo;
        for (std::size_t i = 1; i < m; ++i) {
            lo = std::min(lo, data.at(i, a));
            hi = std::max(hi, data.at(i, a));
        }
        const double range = hi - lo;
        for (std::size_t i = 0; i < m; ++i) {
            out[i * d + a] = range > 0.0 ? (data.at(i, a) - lo) / range : 0.0;
        }
    }
    return Dataset(m, d, std::move(out), data.labels(), data.class_names());
}

}  // namespace mocasm
