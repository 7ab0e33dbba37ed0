#include <cmath>

#include "mocasm/simd/kernels.hpp"

namespace mocasm::simd::detail {
namespace {

void squared_distances(const double* cols, std::size_t stride, std::size_t count,
                       const double* point, std::size_t dims, double* out) {
    for (std::size_t j = 0; j < count; ++j) {
        double acc = 0.0;
        for (std::size_t a = 0; a < dims; ++a) {
            const double diff = cols[a * stride + j] - point[a];
            acc = acc + diff * diff;
        }
        out[j] = acc;
    }
}

void sqrt_inplace(double* x, std::size_t count) {
    for (std::size_t j = 0; j < count; ++j) x[j] = std::sqrt(x[j]);
}

void add_row(const double* row, double* out, std::size_t count) {
    for (std::size_t j = 0; j < count; ++j) out[j] = out[j] + row[j];
}

}  // namespace

const KernelTable scalar_table{squared_distances, sqrt_inplace, add_row};

}  // namespace mocasm::simd::detail
