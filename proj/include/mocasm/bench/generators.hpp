#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mocasm/dataset.hpp"

namespace mocasm::bench {

struct BlobSpec {
    std::size_t count;
    std::vector<double> center;
    double spread;  // per-axis standard deviation
};

/// Isotropic Gaussian blobs, labelled by blob index. Deterministic per seed.
/// Throws ParameterError on an empty blob list, a non-positive spread, a zero
/// count, or centers of different dimensionality.
Dataset generate_gaussian_blobs(const std::vector<BlobSpec>& blobs, std::uint64_t seed);

/// 76 points in 2-D, blobs of {13, 43, 20}.
std::vector<BlobSpec> dataset_3_2_layout();
/// 400 points in 3-D, four blobs of 100.
std::vector<BlobSpec> spherical_3_4_layout();

/// Layout by preset name: "dataset-3-2" or "spherical-3-4".
std::vector<BlobSpec> preset_layout(const std::string& name);

/// "count@x,y,...:spread", e.g. "13@0,0:0.8".
BlobSpec parse_blob(const std::string& text);

}  // namespace mocasm::bench
