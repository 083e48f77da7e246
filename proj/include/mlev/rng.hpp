#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace mlev {

namespace detail {

/// Ziggurat tables for the standard normal (Marsaglia-Tsang layout,
/// 128 layers, double-precision edges).
struct ZigTables {
    std::uint32_t kn[128];
    double wn[128];
    double fn[128];
    ZigTables();
};

extern const ZigTables zig;

} // namespace detail

/// Per-run random source. One instance per run; never shared across threads.
///
/// The stream is fully determined by the seed: mt19937_64 draws, uniforms by
/// the 53-bit shift construction, normals by a fixed ziggurat. This keeps
/// traces bit-reproducible for a given seed independently of platform math
/// library differences in std::normal_distribution.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal variate.
    double normal() {
        const auto bits = gen_();
        const auto hz = static_cast<std::int32_t>(bits >> 32);
        const auto iz = static_cast<std::size_t>(hz & 127);
        const auto az = hz < 0 ? static_cast<std::uint32_t>(-static_cast<std::int64_t>(hz))
                               : static_cast<std::uint32_t>(hz);
        if (az < detail::zig.kn[iz]) return hz * detail::zig.wn[iz];
        return normal_fix(hz, iz);
    }

    void fill_normal(std::span<double> out) {
        for (auto& v : out) v = normal();
    }

  private:
    double normal_fix(std::int32_t hz, std::size_t iz);

    std::mt19937_64 gen_;
};

} // namespace mlev
