#pragma once

// Data-parallel inner loops with a scalar reference and vector variants.
//
// Every vector kernel vectorizes across independent outputs and performs the
// per-output arithmetic in the same order as the scalar reference, without
// fused multiply-add, so all levels produce bit-identical results.

#include <cstddef>
#include <span>
#include <string_view>

namespace mocasm::simd {

enum class Level { Scalar, Avx2, Neon };

struct KernelTable {
    /// out[j] = sum_a (cols[a*stride + j] - point[a])^2 for j in [0, count).
    /// `cols` is attribute-major with row stride `stride` >= count.
    void (*squared_distances)(const double* cols, std::size_t stride, std::size_t count,
                              const double* point, std::size_t dims, double* out);
    /// x[j] = sqrt(x[j]).
    void (*sqrt_inplace)(double* x, std::size_t count);
    /// out[j] += row[j].
    void (*add_row)(const double* row, double* out, std::size_t count);
};

bool supported(Level level) noexcept;
/// Best level the running CPU supports.
Level detect() noexcept;
/// Level used by the library's default entry points; starts at detect().
Level active() noexcept;
/// Throws ParameterError if the CPU does not support `level`.
void set_active(Level level);
std::string_view name(Level level) noexcept;
/// Parses "scalar", "avx2", "neon" or "auto".
Level parse_level(std::string_view text);

const KernelTable& kernels(Level level);
inline const KernelTable& kernels() { return kernels(active()); }

namespace detail {
extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
extern const KernelTable avx2_table;
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
extern const KernelTable neon_table;
#endif
}  // namespace detail

}  // namespace mocasm::simd
