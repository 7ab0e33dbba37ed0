#include "mocasm/bench/generators.hpp"

#include <random>
#include <sstream>

#include "mocasm/error.hpp"

namespace mocasm::bench {

Dataset generate_gaussian_blobs(const std::vector<BlobSpec>& blobs, std::uint64_t seed) {
    if (blobs.empty()) throw ParameterError("at least one blob is required");
    const std::size_t dims = blobs.front().center.size();
    if (dims == 0) throw ParameterError("blob centers need at least one coordinate");
    std::size_t total = 0;
    for (const auto& b : blobs) {
        if (b.center.size() != dims) throw ParameterError("all blob centers must have the same dimension");
        if (!(b.spread > 0.0)) throw ParameterError("blob spread must be positive");
        if (b.count == 0) throw ParameterError("blob count must be positive");
        total += b.count;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> values;
    values.reserve(total * dims);
    std::vector<int> labels;
    labels.reserve(total);
    std::vector<std::string> names;
    for (std::size_t b = 0; b < blobs.size(); ++b) {
        names.push_back("blob" + std::to_string(b));
        for (std::size_t i = 0; i < blobs[b].count; ++i) {
            for (std::size_t a = 0; a < dims; ++a) values.push_back(blobs[b].center[a] + blobs[b].spread * normal(rng));
            labels.push_back(static_cast<int>(b));
        }
    }
    return Dataset(total, dims, std::move(values), std::move(labels), std::move(names));
}

std::vector<BlobSpec> dataset_3_2_layout() {
    return {{13, {0.0, 0.0}, 0.8}, {43, {10.0, 0.0}, 0.8}, {20, {5.0, 9.0}, 0.8}};
}

std::vector<BlobSpec> spherical_3_4_layout() {
    // Regular tetrahedron, edge 10*sqrt(2): no blob sits between the others.
    return {{100, {5.0, 5.0, 5.0}, 1.0},
            {100, {5.0, -5.0, -5.0}, 1.0},
            {100, {-5.0, 5.0, -5.0}, 1.0},
            {100, {-5.0, -5.0, 5.0}, 1.0}};
}

std::vector<BlobSpec> preset_layout(const std::string& name) {
    if (name == "dataset-3-2") return dataset_3_2_layout();
    if (name == "spherical-3-4") return spherical_3_4_layout();
    throw ParameterError("unknown preset '" + name + "' (expected dataset-3-2|spherical-3-4)");
}

BlobSpec parse_blob(const std::string& text) {
    const auto at = text.find('@');
    const auto colon = text.rfind(':');
    if (at == std::string::npos || colon == std::string::npos || colon < at) {
        throw ParameterError("blob '" + text + "' must look like count@x,y,...:spread");
    }
    try {
        BlobSpec spec{std::stoull(text.substr(0, at)), {}, std::stod(text.substr(colon + 1))};
        std::stringstream coords(text.substr(at + 1, colon - at - 1));
        for (std::string item; std::getline(coords, item, ',');) spec.center.push_back(std::stod(item));
        return spec;
    } catch (const std::logic_error&) {
        throw ParameterError("blob '" + text + "' has a malformed number");
    }
}

}  // namespace mocasm::bench
