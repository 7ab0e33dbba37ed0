// Built with -mavx2 only; reached through the dispatch table after a CPU check.
#include <immintrin.h>

#include <cmath>

#include "mocasm/simd/kernels.hpp"

namespace mocasm::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

void squared_distances(const double* cols, std::size_t stride, std::size_t count,
                       const double* point, std::size_t dims, double* out) {
    std::size_t j = 0;
    for (; j + kLanes <= count; j += kLanes) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t a = 0; a < dims; ++a) {
            const __m256d x = _mm256_loadu_pd(cols + a * stride + j);
            const __m256d diff = _mm256_sub_pd(x, _mm256_set1_pd(point[a]));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
        }
        _mm256_storeu_pd(out + j, acc);
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
    for (; j + kLanes <= count; j += kLanes) {
        _mm256_storeu_pd(x + j, _mm256_sqrt_pd(_mm256_loadu_pd(x + j)));
    }
    for (; j < count; ++j) x[j] = std::sqrt(x[j]);
}

void add_row(const double* row, double* out, std::size_t count) {
    std::size_t j = 0;
    for (; j + kLanes <= count; j += kLanes) {
        _mm256_storeu_pd(out + j, _mm256_add_pd(_mm256_loadu_pd(out + j), _mm256_loadu_pd(row + j)));
    }
    for (; j < count; ++j) out[j] = out[j] + row[j];
}

}  // namespace

const KernelTable avx2_table{squared_distances, sqrt_inplace, add_row};

}  // namespace mocasm::simd::detail
