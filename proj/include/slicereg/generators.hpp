#pragma once

#include <complex>
#include <vector>

#include "slicereg/caratheodory.hpp"
#include "slicereg/quaternion.hpp"
#include "slicereg/random.hpp"
#include "slicereg/series.hpp"

namespace slicereg {

// Seeded draw families shared by the harness and the test suites. All
// coefficient draws start from components uniform in [-1, 1]; the policies
// below state how the raw draw is normalized, so any failure is reproducible
// from (seed, policy).

inline Quaternion random_coefficient(Rng& rng, double cap = 1.0) {
    Quaternion a{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                 rng.uniform(-1.0, 1.0)};
    const double n = a.norm();
    if (n > cap) a *= cap / n;
    return a;
}

/// Flat policy: every coefficient capped to modulus <= cap. Suitable for
/// convolution-level checks that never invert.
inline QSeries random_series_flat(Rng& rng, int order, double cap = 1.0) {
    std::vector<Quaternion> c;
    c.reserve(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) c.push_back(random_coefficient(rng, cap));
    return QSeries(std::move(c));
}

/// Graded policy: |a_0| uniform in [a0_lo, a0_hi], |a_n| <= gamma^n. Keeps the
/// zero set of the symmetrization outside |q| ~ 1/(2 gamma), which keeps
/// reciprocal coefficients (growth rate = inverse smallest zero modulus) and
/// hence inversion rounding error bounded. gamma = 0.4 measured to hold the
/// order-32 reciprocal identity below 1e-13.
inline QSeries random_series_graded(Rng& rng, int order, double a0_lo = 0.5, double a0_hi = 1.0,
                                    double gamma = 0.4) {
    std::vector<Quaternion> c;
    c.reserve(static_cast<std::size_t>(order) + 1);
    Quaternion a0 = random_coefficient(rng);
    const double n0 = a0.norm();
    if (n0 < 1e-9) a0 = Quaternion::one();
    a0 *= rng.uniform(a0_lo, a0_hi) / std::max(a0.norm(), 1e-9);
    c.push_back(a0);
    double scale = 1.0;
    for (int n = 1; n <= order; ++n) {
        scale *= gamma;
        c.push_back(scale * random_coefficient(rng));
    }
    return QSeries(std::move(c));
}

inline KernelSpec random_kernel(Rng& rng) {
    return KernelSpec{random_unit_imaginary(rng), rng.uniform(0.0, 6.283185307179586)};
}

inline HerglotzMix random_mix(Rng& rng, int max_kernels = 4) {
    const int k = 1 + static_cast<int>(rng.uniform01() * max_kernels) % max_kernels;
    HerglotzMix mix;
    mix.weights.reserve(static_cast<std::size_t>(k));
    mix.kernels.reserve(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (int j = 0; j < k; ++j) {
        const double w = rng.uniform(0.05, 1.0);
        mix.weights.push_back(w);
        mix.kernels.push_back(random_kernel(rng));
        sum += w;
    }
    for (double& w : mix.weights) w /= sum;
    return mix;
}

inline std::vector<Quaternion> sample_ball_points(Rng& rng, int count, double r_max) {
    std::vector<Quaternion> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pts.push_back(random_in_ball(rng, r_max));
    return pts;
}

inline std::vector<std::complex<double>> sample_disk_points(Rng& rng, int count, double r_max) {
    std::vector<std::complex<double>> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double r = r_max * std::sqrt(rng.uniform01());
        pts.push_back(std::polar(r, rng.uniform(0.0, 6.283185307179586)));
    }
    return pts;
}

} // namespace slicereg
