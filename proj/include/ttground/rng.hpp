#pragma once

#include <cmath>
#include <cstdint>

namespace ttground {

/// Deterministic, bit-portable stream of standard normal deviates.
/// splitmix64 drives the uniforms; Box-Muller turns pairs into normals.
/// The same seed yields the same sequence on every platform, which the
/// reproducibility guarantees of the solvers rely on.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : state_(seed) {}

    /// Derives an independent stream for a labelled substream.
    static NormalStream split(std::uint64_t seed, std::uint64_t label) {
        NormalStream base(seed);
        std::uint64_t mixed = base.next_u64() ^ (0x9e3779b97f4a7c15ULL * (label + 1));
        return NormalStream(mixed);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in the open interval (0, 1).
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ttground
