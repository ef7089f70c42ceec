#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "slicereg/quaternion.hpp"

namespace slicereg {

namespace detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Seeded stream of reproducible draws. mt19937_64 is bit-exact across
/// conforming implementations; the gaussian uses the polar method rather than
/// std::normal_distribution, whose algorithm is implementation-defined.
/// Sub-streams come from hashing (seed, stream, substream), so concurrent
/// workers can draw independently without sharing state.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(detail::splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    Rng derive(std::uint64_t stream, std::uint64_t substream = 0) const {
        const std::uint64_t h =
            detail::splitmix64(seed_ ^ detail::splitmix64(stream ^ detail::splitmix64(substream)));
        return Rng(h);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal draw (Marsaglia polar, cached pair).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool has_spare_{false};
    double spare_{0.0};
};

/// Uniform draw on the 2-sphere of imaginary units: normalize a 3D gaussian.
inline UnitImaginary random_unit_imaginary(Rng& rng) {
    for (;;) {
        const double a = rng.gaussian(), b = rng.gaussian(), c = rng.gaussian();
        if (a * a + b * b + c * c > 1e-12) return UnitImaginary::from_vector(a, b, c);
    }
}

/// Uniform draw in the solid 4-ball of radius r_max.
inline Quaternion random_in_ball(Rng& rng, double r_max) {
    for (;;) {
        const Quaternion g{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double n = g.norm();
        if (n < 1e-9) continue;
        const double r = r_max * std::pow(rng.uniform01(), 0.25);
        return (r / n) * g;
    }
}

/// Deterministic near-uniform cover of the imaginary unit sphere
/// (golden-angle lattice). Used where sampling must be seed-free.
inline std::vector<UnitImaginary> fibonacci_sphere_units(int n) {
    std::vector<UnitImaginary> units;
    units.reserve(static_cast<std::size_t>(n));
    const double golden_angle = 3.14159265358979323846 * (3.0 - std::sqrt(5.0));
    for (int m = 0; m < n; ++m) {
        const double zc = 1.0 - 2.0 * (m + 0.5) / n;
        const double rc = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        const double phi = golden_angle * m;
        units.push_back(UnitImaginary::from_vector(rc * std::cos(phi), rc * std::sin(phi), zc));
    }
    return units;
}

} // namespace slicereg
