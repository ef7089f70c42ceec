#pragma once

#include <complex>
#include <vector>

#include "slicereg/quaternion.hpp"
#include "slicereg/series.hpp"

namespace slicereg {

inline constexpr double kEvalFloor = 1e-9;      // near-zero-set guard for evaluations
inline constexpr double kPointwiseZeroFloor = 1e-12; // zero clause of the pointwise product

/// f(q) by Horner from the top coefficient down: r <- a_{n-1} + q r. The
/// accumulation order matters here: powers of q must only ever multiply from
/// the left for the result to equal sum q^n a_n.
inline Quaternion eval(const QSeries& f, const Quaternion& q) {
    Quaternion r = f[f.order()];
    for (int n = f.order() - 1; n >= 0; --n) r = f[n] + q * r;
    return r;
}

/// T_f(q) = f^c(q)^{-1} q f^c(q). Conjugation preserves |q| and Re q, so the
/// image stays on the 2-sphere x + y S of q.
inline Quaternion t_map(const QSeries& f, const Quaternion& q, double floor = kEvalFloor) {
    const Quaternion c = eval(regular_conjugate(f), q);
    if (!(c.norm() > floor)) {
        throw EvalNearZeroSet("t_map: f^c(q) within the evaluation floor of zero");
    }
    return c.inverse() * q * c;
}

/// Pointwise form of the ⋆-product: f(q) g(f(q)^{-1} q f(q)), with the value
/// defined to be 0 where f(q) vanishes.
inline Quaternion pointwise_star_eval(const QSeries& f, const QSeries& g, const Quaternion& q,
                                      double zero_floor = kPointwiseZeroFloor) {
    const Quaternion fv = eval(f, q);
    if (fv.norm() <= zero_floor) return Quaternion::zero();
    const Quaternion conjugated = fv.inverse() * q * fv;
    return fv * eval(g, conjugated);
}

/// Pointwise form of the ⋆-quotient: f^{-⋆} ⋆ g evaluated through the T_f map
/// as f(T_f(q))^{-1} g(T_f(q)). Guards both evaluations against the zero set
/// of f^s.
inline Quaternion quotient_eval(const QSeries& f, const QSeries& g, const Quaternion& q,
                                double floor = kEvalFloor) {
    const Quaternion t = t_map(f, q, floor);
    const Quaternion ft = eval(f, t);
    if (!(ft.norm() > floor)) {
        throw EvalNearZeroSet("quotient_eval: f(T_f(q)) within the evaluation floor of zero");
    }
    return ft.inverse() * eval(g, t);
}

/// Slice restriction split into two C_I-valued holomorphic halves:
/// f_I(z) = F(z) + G(z) J for any J orthogonal to I. Coefficients of F and G
/// are stored as quaternions lying in the plane spanned by {1, I}.
struct SplitPair {
    UnitImaginary unit_i;
    UnitImaginary unit_j;
    std::vector<Quaternion> f_coeffs;
    std::vector<Quaternion> g_coeffs;

    /// Evaluates one half at z = x + yI. Coefficients and point share the
    /// slice C_I, so plain Horner is the complex evaluation.
    Quaternion eval_half(const std::vector<Quaternion>& half, std::complex<double> z) const {
        const Quaternion p = slice_embed(z.real(), z.imag(), unit_i);
        Quaternion r = half.back();
        for (auto it = half.rbegin() + 1; it != half.rend(); ++it) r = *it + p * r;
        return r;
    }

    Quaternion eval_f(std::complex<double> z) const { return eval_half(f_coeffs, z); }
    Quaternion eval_g(std::complex<double> z) const { return eval_half(g_coeffs, z); }

    /// F(z) + G(z) J; must reproduce eval(f, x + yI).
    Quaternion reconstruct(std::complex<double> z) const {
        return eval_f(z) + eval_g(z) * unit_j.value();
    }
};

/// Decomposes every coefficient in the orthonormal basis {1, I, J, IJ} and
/// regroups as (c0 + c1 I) + (c2 + c3 I) J.
inline SplitPair split(const QSeries& f, const UnitImaginary& unit_i, const UnitImaginary& unit_j,
                       double ortho_tol = 1e-10) {
    if (std::abs(imag_dot(unit_i.value(), unit_j.value())) > ortho_tol) {
        throw NotOrthogonal("split: J not orthogonal to I");
    }
    const Quaternion ij = unit_i.value() * unit_j.value();
    SplitPair out{unit_i, unit_j, {}, {}};
    out.f_coeffs.reserve(f.size());
    out.g_coeffs.reserve(f.size());
    for (int n = 0; n <= f.order(); ++n) {
        const Quaternion& a = f[n];
        const double c0 = a.re();
        const double c1 = dot4(a, unit_i.value());
        const double c2 = dot4(a, unit_j.value());
        const double c3 = dot4(a, ij);
        out.f_coeffs.push_back(Quaternion{c0} + c1 * unit_i.value());
        out.g_coeffs.push_back(Quaternion{c2} + c3 * unit_i.value());
    }
    return out;
}

} // namespace slicereg
