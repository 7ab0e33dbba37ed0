#include <atomic>
#include <string>

#include "mocasm/error.hpp"
#include "mocasm/simd/kernels.hpp"

namespace mocasm::simd {
namespace {

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
constexpr bool kX86 = true;
#else
constexpr bool kX86 = false;
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
constexpr bool kArm64 = true;
#else
constexpr bool kArm64 = false;
#endif

std::atomic<Level>& active_slot() {
    static std::atomic<Level> slot{detect()};
    return slot;
}

}  // namespace

bool supported(Level level) noexcept {
    switch (level) {
        case Level::Scalar:
            return true;
        case Level::Avx2:
#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Level::Neon:
            return kArm64;  // NEON is mandatory on AArch64
    }
    return false;
}

Level detect() noexcept {
    if (kX86 && supported(Level::Avx2)) return Level::Avx2;
    if (kArm64) return Level::Neon;
    return Level::Scalar;
}

Level active() noexcept { return active_slot().load(std::memory_order_relaxed); }

void set_active(Level level) {
    if (!supported(level)) {
        throw ParameterError("SIMD level '" + std::string(name(level)) + "' is not supported on this CPU");
    }
    active_slot().store(level, std::memory_order_relaxed);
}

std::string_view name(Level level) noexcept {
    switch (level) {
        case Level::Scalar: return "scalar";
        case Level::Avx2: return "avx2";
        case Level::Neon: return "neon";
    }
    return "unknown";
}

Level parse_level(std::string_view text) {
    if (text == "auto") return detect();
    if (text == "scalar") return Level::Scalar;
    if (text == "avx2") return Level::Avx2;
    if (text == "neon") return Level::Neon;
    throw ParameterError("unknown SIMD level '" + std::string(text) + "' (expected auto|scalar|avx2|neon)");
}

const KernelTable& kernels(Level level) {
    if (!supported(level)) {
        throw ParameterError("SIMD level '" + std::string(name(level)) + "' is not supported on this CPU");
    }
    switch (level) {
#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
        case Level::Avx2: return detail::avx2_table;
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
        case Level::Neon: return detail::neon_table;
#endif
        default: return detail::scalar_table;
    }
}

}  // namespace mocasm::simd
