#include <arm_neon.h>

#include <cmath>

#include "mocasm/simd/kernels.hpp"

namespace mocasm::simd::detail {
namespace {

constexpr std::size_t kLanes = 2;

void squared_distances(const double* cols, std::size_t stride, std::size_t count,
                       const double* point, std::size_t dims, double* out) {
    std::size_t j = 0;
    for (; j + kLanes <= count; j += kLanes) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t a = 0; a < dims; ++a) {
            const float64x2_t diff = vsubq_f64(vld1q_f64(cols + a * stride + j), vdupq_n_f64(point[a]));
            // vmulq + vaddq, not vfmaq: keeps rounding identical to the scalar path.
            acc = vaddq_f64(acc, vmulq_f64(diff, diff));
        }
        vst1q_f64(out + j, acc);
    }
    for (; j < count; ++j) {
        double acc = 0.0;
        for (std::size_t a = 0; a < dims; ++a) {
            const double diff = cols[a * stride + j] - point[a];
            acc = acc + diff * diff;
        }
        out[j] = acc;
    }
}

void sqrt_inplace(double* x, std::size_t count) {
    std::size_t j = 0;
    for (; j + kLanes <= count; j += kLanes) vst1q_f64(x + j, vsqrtq_f64(vld1q_f64(x + j)));
    for (; j < count; ++j) x[j] = std::sqrt(x[j]);
}

void add_row(const double* row, double* out, std::size_t count) {
    std::size_t j = 0;
    for (; j + kLanes <= count; j += kLanes) {
        vst1q_f64(out + j, vaddq_f64(vld1q_f64(out + j), vld1q_f64(row + j)));
    }
    for (; j < count; ++j) out[j] = out[j] + row[j];
}

}  // namespace

const KernelTable neon_table{squared_distances, sqrt_inplace, add_row};

}  // namespace mocasm::simd::detail
