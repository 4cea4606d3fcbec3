#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace strmat {

// splitmix64 finalizer; also used as the stream-derivation hash.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Counter-based stream: state advances by the golden-ratio increment, each
// output is a full mix of the state.  Streams for different realizations are
// derived as hash(seed, index), so generation order across workers never
// matters.
class Rng {
public:
    Rng() : Rng(0, 0) {}
    Rng(std::uint64_t seed, std::uint64_t stream)
        : s_(mix64(mix64(seed) ^ (0x9E3779B97F4A7C15ull * (stream + 1)))) {}

    std::uint64_t next_u64() {
        s_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = s_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform on (0, 1]
    double next_double() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
    }

    // standard normal via Box-Muller (pair cached); rng name reported in
    // manifests must stay in sync with rng_name() below.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double th = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

private:
    std::uint64_t s_;
    double spare_ = 0;
    bool have_spare_ = false;
};

inline const char* rng_name() { return "splitmix64-boxmuller"; }

}  // namespace strmat
