// Counter-based splittable random number generator.
//
// Every generator in this library is a pure map of (parameters, seed). The
// counter construction makes replication r of a Monte Carlo loop draw from
// derive(master, r), so results do not depend on how replications are
// scheduled across worker threads.
#pragma once

#include <cmath>
#include <cstdint>

namespace seqemp {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t hash2(std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix64(a + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
    return h;
}

} // namespace detail

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed)
        : key_(detail::hash2(seed, 0x7365716d70ULL)) {}

    // Derives an independent stream; used for per-replication seeds.
    [[nodiscard]] CounterRng derive(std::uint64_t stream) const {
        return CounterRng(raw_tag{}, detail::hash2(key_, detail::mix64(stream ^ 0xa3c59ac2f1f3b271ULL)));
    }

    std::uint64_t next_u64() { return detail::hash2(key_, counter_++); }

    // Uniform on the open interval (0, 1).
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (no caching, so the draw count per call
    // is fixed and replay is exact).
    double next_normal() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    std::uint64_t key() const { return key_; }

private:
    struct raw_tag {};
    CounterRng(raw_tag, std::uint64_t key) : key_(key) {}

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

} // namespace seqemp
