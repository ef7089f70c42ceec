#pragma once

#include <algorithm>
#include <complex>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "slicereg/evaluation.hpp"
#include "slicereg/quaternion.hpp"
#include "slicereg/random.hpp"
#include "slicereg/series.hpp"

namespace slicereg {

/// Parameters (I, theta) of the extremal positive-real-part function
/// (1 - q e^{I theta})^{-⋆} ⋆ (1 + q e^{I theta}) = 1 + 2 sum_m q^m e^{I m theta}.
struct KernelSpec {
    UnitImaginary unit;
    double theta{0.0};
};

/// The kernel's truncated expansion: a_0 = 1, a_m = 2 e^{I m theta}.
inline QSeries kernel_series(const KernelSpec& spec, int order) {
    if (order < 0) throw std::invalid_argument("kernel_series: negative order");
    std::vector<Quaternion> c(static_cast<std::size_t>(order) + 1);
    c[0] = Quaternion::one();
    for (int m = 1; m <= order; ++m) {
        c[static_cast<std::size_t>(m)] = 2.0 * exp_slice(spec.unit, m * spec.theta);
    }
    return QSeries(std::move(c));
}

/// Closed-form kernel value (1 - 2q cos t + q^2)^{-1} (1 + 2 q I sin t - q^2).
/// The denominator is the symmetrization of 1 - q e^{I t}; it vanishes only at
/// q = e^{+-J t} on the boundary sphere, which the floor guards against.
inline Quaternion kernel_eval_closed(const KernelSpec& spec, const Quaternion& q,
                                     double floor = kEvalFloor) {
    const double c = std::cos(spec.theta), s = std::sin(spec.theta);
    const Quaternion q2 = q * q;
    const Quaternion den = Quaternion::one() - (2.0 * c) * q + q2;
    if (!(den.norm() > floor)) {
        throw EvalNearZeroSet("kernel_eval_closed: at the zero set of the symmetrization");
    }
    const Quaternion num = Quaternion::one() + (2.0 * s) * (q * spec.unit.value()) - q2;
    return den.inverse() * num;
}

/// Finite convex combination of kernels; every mix satisfies f(0) = 1 and
/// Re f > 0 on the ball, so mixes generate admissible test functions.
struct HerglotzMix {
    std::vector<double> weights;
    std::vector<KernelSpec> kernels;
};

inline void validate(const HerglotzMix& mix, double tol = 1e-12) {
    if (mix.weights.empty() || mix.weights.size() != mix.kernels.size()) {
        throw WeightsInvalid("HerglotzMix: weights/kernels length mismatch or empty");
    }
    double sum = 0.0;
    for (double w : mix.weights) {
        if (!(w >= 0.0)) throw WeightsInvalid("HerglotzMix: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > tol) throw WeightsInvalid("HerglotzMix: weights do not sum to 1");
}

inline QSeries mix_series(const HerglotzMix& mix, int order) {
    validate(mix);
    std::vector<Quaternion> c(static_cast<std::size_t>(order) + 1);
    for (std::size_t j = 0; j < mix.kernels.size(); ++j) {
        const KernelSpec& spec = mix.kernels[j];
        for (int m = 1; m <= order; ++m) {
            c[static_cast<std::size_t>(m)] += (2.0 * mix.weights[j]) * exp_slice(spec.unit, m * spec.theta);
        }
    }
    c[0] = Quaternion::one(); // convexity makes the constant term exactly 1
    return QSeries(std::move(c));
}

/// Margins of the inequality chain (1-|q|)/(1+|q|) <= Re f <= |f| <= (1+|q|)/(1-|q|)
/// plus the coefficient margins 2 - |a_n|. Margins are raw values from the
/// truncated evaluation; tail_allowance is the widening that accounts for the
/// dropped tail at |q|.
struct BoundReport {
    Quaternion point;
    double lower_margin{0.0};
    double mid_margin{0.0};
    double upper_margin{0.0};
    std::vector<double> coeff_margins; // index n-1 holds 2 - |a_n|
    double tail_allowance{0.0};
};

inline BoundReport check_caratheodory_bounds(const QSeries& f, const Quaternion& q,
                                             const TailBound& tail) {
    const double r = q.norm();
    if (!(r < 1.0)) throw RadiusOutOfRange("check_caratheodory_bounds: needs |q| < 1");
    const Quaternion v = eval(f, q);
    BoundReport rep;
    rep.point = q;
    rep.lower_margin = v.re() - (1.0 - r) / (1.0 + r);
    rep.mid_margin = v.norm() - v.re();
    rep.upper_margin = (1.0 + r) / (1.0 - r) - v.norm();
    rep.tail_allowance = tail.value_at(r);
    rep.coeff_margins.reserve(static_cast<std::size_t>(f.order()));
    for (int n = 1; n <= f.order(); ++n) rep.coeff_margins.push_back(2.0 - f[n].norm());
    return rep;
}

/// Margins 2 - |a_n| for n >= 1.
inline std::vector<double> check_coefficient_bounds(const QSeries& f) {
    std::vector<double> margins;
    margins.reserve(static_cast<std::size_t>(f.order()));
    for (int n = 1; n <= f.order(); ++n) margins.push_back(2.0 - f[n].norm());
    return margins;
}

/// When |a_{n0}| = 2 (within gate), the whole n0-grid is forced:
/// a_{k n0} = 2 (a_{n0}/2)^k. Returns the worst deviation over the grid, or
/// nullopt when the check is inapplicable (|a_{n0}| not extremal).
inline std::optional<double> check_extremal_coefficients(const QSeries& f, int n0,
                                                         double gate = 1e-9) {
    if (n0 < 1) throw std::invalid_argument("check_extremal_coefficients: n0 must be >= 1");
    if (n0 > f.order()) return std::nullopt;
    if (std::abs(f[n0].norm() - 2.0) > gate) return std::nullopt;
    const Quaternion base = 0.5 * f[n0];
    Quaternion power = base;
    double worst = 0.0;
    for (int k = 1; k * n0 <= f.order(); ++k) {
        if (k > 1) power = power * base;
        worst = std::max(worst, (f[k * n0] - 2.0 * power).norm());
    }
    return worst;
}

/// g = (f - 1) ⋆ (f + 1)^{-⋆}, the ball-valued transform of a positive-real-
/// part f with f(0) = 1; g(0) = 0 and the Schwarz lemma applies to it.
inline QSeries mobius_transform(const QSeries& f, double gate = 1e-9) {
    if ((f[0] - Quaternion::one()).norm() > gate) {
        throw NonInvertibleAtOrigin("mobius_transform: constant term must be 1");
    }
    QSeries minus = f;
    minus[0] = f[0] - Quaternion::one();
    QSeries plus = f;
    plus[0] = f[0] + Quaternion::one();
    return star_mul(minus, regular_reciprocal(plus));
}

/// Max of Re f over sampled boundary circles e^{I theta}. On each slice
/// Re f_I equals the real part of the holomorphic half F of the splitting, so
/// the scan runs in complex arithmetic: alpha_n = Re a_n + <Im a_n, I> i.
/// A truncated series is continuous on the closed ball and Re f_I is harmonic,
/// so the boundary max is the sup over the ball.
inline double sup_re_estimate(const QSeries& f, int n_theta, int n_sphere) {
    if (n_theta < 1 || n_sphere < 1) {
        throw std::invalid_argument("sup_re_estimate: sample counts must be >= 1");
    }
    const double two_pi = 6.283185307179586476925;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::complex<double>> alpha(f.size());
    for (const UnitImaginary& unit : fibonacci_sphere_units(n_sphere)) {
        for (int n = 0; n <= f.order(); ++n) {
            alpha[static_cast<std::size_t>(n)] = {f[n].re(), imag_dot(f[n], unit.value())};
        }
        for (int t = 0; t < n_theta; ++t) {
            const double theta = two_pi * t / n_theta;
            const std::complex<double> zb(std::cos(theta), std::sin(theta));
            std::complex<double> acc = alpha.back();
            for (auto it = alpha.rbegin() + 1; it != alpha.rend(); ++it) acc = *it + zb * acc;
            best = std::max(best, acc.real());
        }
    }
    return best;
}

/// Margins of the growth/coefficient/real-part/derivative bounds controlled
/// by A = sup Re f. Worst values over the supplied sample points, which must
/// satisfy |q| <= r.
struct BorelReport {
    double sup_re{0.0};
    double radius{0.0};
    std::vector<double> coeff_margins;      // n = 1..order: 2(A - Re f(0)) - |a_n|
    double growth_margin{0.0};              // (2r/(1-r))(A - Re f(0)) - |f(q) - f(0)|
    double realpart_margin{0.0};            // (2r/(1+r))A + ((1-r)/(1+r))Re f(0) - Re f(q)
    std::vector<double> derivative_margins; // n = 1..n_max: 2 n!/(1-r)^{n+1}(A - Re f(0)) - |f^(n)(q)|
};

inline BorelReport check_borel_caratheodory(const QSeries& f, double sup_re, double radius,
                                            std::span<const Quaternion> samples, int n_max) {
    if (!(radius >= 0.0 && radius < 1.0)) {
        throw RadiusOutOfRange("check_borel_caratheodory: needs r < 1");
    }
    if (n_max < 0 || n_max > f.order()) {
        throw std::invalid_argument("check_borel_caratheodory: n_max must be in [0, order]");
    }
    for (const Quaternion& q : samples) {
        if (q.norm() > radius * (1.0 + 1e-12) + 1e-15) {
            throw std::invalid_argument("check_borel_caratheodory: sample outside |q| <= r");
        }
    }
    const double re0 = f[0].re();
    const double dev = sup_re - re0;
    const Quaternion f0 = f[0];

    BorelReport rep;
    rep.sup_re = sup_re;
    rep.radius = radius;
    rep.coeff_margins.reserve(static_cast<std::size_t>(f.order()));
    for (int n = 1; n <= f.order(); ++n) rep.coeff_margins.push_back(2.0 * dev - f[n].norm());

    const double growth_bound = 2.0 * radius / (1.0 - radius) * dev;
    const double realpart_bound_a = 2.0 * radius / (1.0 + radius);
    const double realpart_bound_b = (1.0 - radius) / (1.0 + radius);

    double worst_growth = std::numeric_limits<double>::infinity();
    double worst_realpart = std::numeric_limits<double>::infinity();
    if (samples.empty()) worst_growth = worst_realpart = 0.0;
    for (const Quaternion& q : samples) {
        const Quaternion v = eval(f, q);
        worst_growth = std::min(worst_growth, growth_bound - (v - f0).norm());
        worst_realpart =
            std::min(worst_realpart, realpart_bound_a * sup_re + realpart_bound_b * re0 - v.re());
    }
    rep.growth_margin = worst_growth;
    rep.realpart_margin = worst_realpart;

    rep.derivative_margins.reserve(static_cast<std::size_t>(n_max));
    double factorial = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        factorial *= n;
        const double bound = 2.0 * factorial / std::pow(1.0 - radius, n + 1) * dev;
        const QSeries der = slice_derivative(f, n);
        double worst = std::numeric_limits<double>::infinity();
        if (samples.empty()) worst = 0.0;
        for (const Quaternion& q : samples) {
            worst = std::min(worst, bound - eval(der, q).norm());
        }
        rep.derivative_margins.push_back(worst);
    }
    return rep;
}

/// Residual of the roots-of-unity averaging identity on the slice C_I:
/// h(z) = (1/n0) sum_k f(z w^k) with w = cos(2 pi k0/n0) + I sin(2 pi k0/n0)
/// and h = phi(q^{n0}) built from the n0-grid subseries. root_index selects
/// which primitive root (must be coprime to n0; 1 is the principal one).
inline double averaging_identity_check(const QSeries& f, int n0, const UnitImaginary& unit,
                                       std::span<const std::complex<double>> z_samples,
                                       int root_index = 1) {
    if (n0 < 1) throw std::invalid_argument("averaging_identity_check: n0 must be >= 1");
    if (root_index < 1 || std::gcd(root_index, n0) != 1) {
        throw std::invalid_argument("averaging_identity_check: root index not coprime to n0");
    }
    const QSeries h = compose_power(subseries(f, n0), n0);
    const double two_pi = 6.283185307179586476925;
    const double ang = two_pi * root_index / n0;
    double worst = 0.0;
    for (const std::complex<double>& z : z_samples) {
        if (!(std::abs(z) < 1.0)) {
            throw std::invalid_argument("averaging_identity_check: sample outside the unit disk");
        }
        Quaternion acc;
        for (int k = 0; k < n0; ++k) {
            const std::complex<double> zk = z * std::polar(1.0, ang * k);
            acc += eval(f, slice_embed(zk.real(), zk.imag(), unit));
        }
        const Quaternion lhs = eval(h, slice_embed(z.real(), z.imag(), unit));
        worst = std::max(worst, (lhs - (1.0 / n0) * acc).norm());
    }
    return worst;
}

/// g = ((A + Re f(0)) - (f + conj(f(0)))) / (A - Re f(0)). The constant term
/// collapses to exactly 1 and g_n = -a_n/(A - Re f(0)), so g satisfies the
/// positive-real-part hypotheses whenever A bounds Re f. Links the two bound
/// families: 2 - |g_n| >= 0 iff |a_n| <= 2(A - Re f(0)).
inline QSeries equivalence_transform(const QSeries& f, double sup_re, double gate = 1e-9) {
    const double dev = sup_re - f[0].re();
    if (!(dev > gate)) {
        throw DegenerateNormalization("equivalence_transform: A must exceed Re f(0)");
    }
    std::vector<Quaternion> c(f.size());
    c[0] = Quaternion::one();
    for (int n = 1; n <= f.order(); ++n) c[static_cast<std::size_t>(n)] = (-1.0 / dev) * f[n];
    return QSeries(std::move(c));
}

} // namespace slicereg
