#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace efron_dual {

/// Addresses one replication stream. The mapping (master_seed, stream_index)
/// -> stream is a pure function, so replications can run in any order or in
/// parallel without changing results.
struct RngStreamSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

namespace detail {
/// splitmix64 finalizer; a bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
} // namespace detail

/// Derives an unrelated master seed for a named sub-purpose (e.g. the two
/// sides of an identity check in independent mode).
inline std::uint64_t derive_master(std::uint64_t master, std::uint64_t tag) {
    return detail::mix64(master ^ detail::mix64(tag));
}

/// Counter-based generator (Weyl counter + splitmix64 output mix). Output
/// sequences are identical across platforms and compilers; no std
/// distributions are used anywhere in the sampling path.
class RngStream {
public:
    explicit RngStream(RngStreamSpec spec)
        : state_(detail::mix64(spec.master_seed ^
                               detail::mix64(spec.stream_index))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Rate-1 exponential; argument of log stays in (0, 1].
    double next_exponential() { return -std::log(1.0 - next_unit()); }

    /// One Box-Muller pair; fixed consumption of two uniforms.
    void next_gaussian_pair(double& g0, double& g1) {
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        g0 = r * std::cos(theta);
        g1 = r * std::sin(theta);
    }

private:
    std::uint64_t state_;
};

} // namespace efron_dual
