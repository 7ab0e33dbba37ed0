#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mocasm/dataset.hpp"

namespace mocasm::bench {

/// Which column holds class labels: a 0-based index or a header name.
struct LabelColumn {
    std::optional<std::size_t> index;
    std::optional<std::string> name;

    static LabelColumn none() { return {}; }
    static LabelColumn at(std::size_t i) { return {i, std::nullopt}; }
    static LabelColumn named(std::string n) { return {std::nullopt, std::move(n)}; }
    /// "4" selects an index, anything else a header name, "" no labels.
    static LabelColumn parse(const std::string& text);
    bool present() const noexcept { return index || name; }
};

struct CsvOptions {
    LabelColumn label;
    bool header = false;
    char delimiter = ',';
};

/// Numeric feature columns become coordinates; the label column's text values
/// become class ids in order of first appearance. Throws DataError naming the
/// offending line for ragged rows and non-numeric features.
Dataset parse_csv(const std::filesystem::path& path, const CsvOptions& options = {});
Dataset parse_csv(std::istream& in, const CsvOptions& options = {});

/// Writes "object_id,cluster_id" rows under that header.
void write_assignments(std::ostream& out, const std::vector<int>& assignment);
void write_assignments(const std::filesystem::path& path, const std::vector<int>& assignment);

/// Reads an assignment file written by write_assignments (or any tool using
/// the same two-column layout). Object ids must cover 0..n-1 exactly once.
std::vector<int> read_assignments(const std::filesystem::path& path);
std::vector<int> read_assignments(std::istream& in);

/// Writes the dataset as CSV with a header; labels, when present, go last.
void write_dataset(std::ostream& out, const Dataset& data);

}  // namespace mocasm::bench
