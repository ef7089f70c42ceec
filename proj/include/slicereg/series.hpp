#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "slicereg/quaternion.hpp"

namespace slicereg {

inline constexpr double kReciprocalFloor = 1e-9;

/// Truncated power series f(q) = sum_n q^n a_n with quaternion coefficients
/// multiplied on the right. The object represents f modulo q^(order+1);
/// binary operations truncate to the smaller order, so callers wanting a
/// higher-order result pad the shorter operand with zeros first.
class QSeries {
  public:
    explicit QSeries(std::vector<Quaternion> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("QSeries: needs at least a constant term");
        for (const Quaternion& c : coeffs_) {
            if (!c.is_finite()) throw std::invalid_argument("QSeries: non-finite coefficient");
        }
    }

    static QSeries zero(int order) {
        return QSeries(std::vector<Quaternion>(static_cast<std::size_t>(order) + 1));
    }

    static QSeries constant(const Quaternion& c, int order = 0) {
        std::vector<Quaternion> v(static_cast<std::size_t>(order) + 1);
        v[0] = c;
        return QSeries(std::move(v));
    }

    /// q^degree * c as a series of exactly that order.
    static QSeries monomial(int degree, const Quaternion& c) {
        std::vector<Quaternion> v(static_cast<std::size_t>(degree) + 1);
        v.back() = c;
        return QSeries(std::move(v));
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::size_t size() const { return coeffs_.size(); }

    const Quaternion& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
    Quaternion& operator[](int n) { return coeffs_[static_cast<std::size_t>(n)]; }

    const std::vector<Quaternion>& coeffs() const { return coeffs_; }

    /// Same series viewed at a higher order (zero padding).
    QSeries padded(int order) const {
        if (order <= this->order()) return *this;
        std::vector<Quaternion> v = coeffs_;
        v.resize(static_cast<std::size_t>(order) + 1);
        return QSeries(std::move(v));
    }

    QSeries truncated(int order) const {
        if (order >= this->order()) return *this;
        if (order < 0) throw std::invalid_argument("QSeries::truncated: negative order");
        return QSeries(std::vector<Quaternion>(coeffs_.begin(), coeffs_.begin() + order + 1));
    }

    double max_coeff_norm() const {
        double m = 0.0;
        for (const Quaternion& c : coeffs_) m = std::max(m, c.norm());
        return m;
    }

  private:
    std::vector<Quaternion> coeffs_;
};

/// Regular (⋆-) product: c_n = sum_{k=0}^n a_k b_{n-k}, f's coefficient on
/// the left. Truncates to the smaller operand order.
inline QSeries star_mul(const QSeries& f, const QSeries& g) {
    const int n = std::min(f.order(), g.order());
    std::vector<Quaternion> c(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        Quaternion acc;
        for (int k = 0; k <= m; ++k) acc += f[k] * g[m - k];
        c[static_cast<std::size_t>(m)] = acc;
    }
    return QSeries(std::move(c));
}

/// f^c: every coefficient conjugated. An involution.
inline QSeries regular_conjugate(const QSeries& f) {
    std::vector<Quaternion> c(f.size());
    for (int n = 0; n <= f.order(); ++n) c[static_cast<std::size_t>(n)] = f[n].conj();
    return QSeries(std::move(c));
}

/// f^s = f ⋆ f^c = f^c ⋆ f. All coefficients are real: pairing k with n-k in
/// sum_k a_k conj(a_{n-k}) yields 2 Re(a_k conj(a_{n-k})) plus |a_{n/2}|^2.
inline QSeries symmetrization(const QSeries& f) {
    std::vector<Quaternion> c(f.size());
    for (int m = 0; m <= f.order(); ++m) {
        Quaternion acc;
        for (int k = 0; k <= m; ++k) acc += f[k] * f[m - k].conj();
        c[static_cast<std::size_t>(m)] = acc;
    }
    return QSeries(std::move(c));
}

/// f^{-⋆} = (f^s)^{-1} f^c, truncated to f's order. The symmetrization has
/// real coefficients (asserted at runtime), so its series inverse comes from
/// the scalar recurrence b_0 = 1/s_0, b_m = -(1/s_0) sum_{k>=1} s_k b_{m-k},
/// and the final ⋆-product with f^c is a plain convolution because real
/// scalars commute with everything.
inline QSeries regular_reciprocal(const QSeries& f, double floor = kReciprocalFloor) {
    if (!(f[0].norm() > floor)) {
        throw NonInvertibleAtOrigin("regular_reciprocal: |a0| below the reciprocal floor");
    }
    const int n = f.order();
    const QSeries fs = symmetrization(f);

    double scale = 1.0;
    for (int m = 0; m <= n; ++m) scale = std::max(scale, fs[m].norm());
    std::vector<double> s(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        if (fs[m].imag_norm() > 1e-8 * scale) {
            throw std::logic_error("regular_reciprocal: symmetrization coefficient not real");
        }
        s[static_cast<std::size_t>(m)] = fs[m].re();
    }

    std::vector<double> b(static_cast<std::size_t>(n) + 1);
    b[0] = 1.0 / s[0];
    for (int m = 1; m <= n; ++m) {
        double acc = 0.0;
        for (int k = 1; k <= m; ++k) acc += s[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(m - k)];
        b[static_cast<std::size_t>(m)] = -acc / s[0];
    }

    std::vector<Quaternion> out(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        Quaternion acc;
        for (int k = 0; k <= m; ++k) acc += b[static_cast<std::size_t>(k)] * f[m - k].conj();
        out[static_cast<std::size_t>(m)] = acc;
    }
    return QSeries(std::move(out));
}

/// n-th slice derivative: new a_m = (m+n)!/m! a_{m+n}, order drops by n.
/// Differentiating past the stored order yields the zero constant series.
inline QSeries slice_derivative(const QSeries& f, int n = 1) {
    if (n < 0) throw std::invalid_argument("slice_derivative: negative order");
    if (n == 0) return f;
    if (n > f.order()) return QSeries::zero(0);
    const int m = f.order() - n;
    std::vector<Quaternion> c(static_cast<std::size_t>(m) + 1);
    for (int t = 0; t <= m; ++t) {
        double factor = 1.0;
        for (int u = t + 1; u <= t + n; ++u) factor *= u;
        c[static_cast<std::size_t>(t)] = factor * f[t + n];
    }
    return QSeries(std::move(c));
}

inline QSeries add(const QSeries& f, const QSeries& g) {
    const int n = std::min(f.order(), g.order());
    std::vector<Quaternion> c(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) c[static_cast<std::size_t>(m)] = f[m] + g[m];
    return QSeries(std::move(c));
}

inline QSeries sub(const QSeries& f, const QSeries& g) {
    const int n = std::min(f.order(), g.order());
    std::vector<Quaternion> c(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) c[static_cast<std::size_t>(m)] = f[m] - g[m];
    return QSeries(std::move(c));
}

/// Each coefficient multiplied on the right by c, preserving f(q) = sum q^n a_n.
inline QSeries scale_right(const QSeries& f, const Quaternion& c) {
    std::vector<Quaternion> v(f.size());
    for (int m = 0; m <= f.order(); ++m) v[static_cast<std::size_t>(m)] = f[m] * c;
    return QSeries(std::move(v));
}

inline QSeries scale_real(const QSeries& f, double t) {
    std::vector<Quaternion> v(f.size());
    for (int m = 0; m <= f.order(); ++m) v[static_cast<std::size_t>(m)] = t * f[m];
    return QSeries(std::move(v));
}

inline QSeries operator+(const QSeries& f, const QSeries& g) { return add(f, g); }
inline QSeries operator-(const QSeries& f, const QSeries& g) { return sub(f, g); }

/// Max coefficient modulus of (f⋆g)' - (f'⋆g + f⋆g'), compared over the
/// range both sides share.
inline double leibniz_residual(const QSeries& f, const QSeries& g) {
    const QSeries lhs = slice_derivative(star_mul(f, g));
    const QSeries rhs = add(star_mul(slice_derivative(f), g), star_mul(f, slice_derivative(g)));
    const int n = std::min(lhs.order(), rhs.order());
    double worst = 0.0;
    for (int m = 0; m <= n; ++m) worst = std::max(worst, (lhs[m] - rhs[m]).norm());
    return worst;
}

/// phi with coefficients a_0, a_{n0}, a_{2 n0}, ...; order floor(order/n0).
inline QSeries subseries(const QSeries& f, int n0) {
    if (n0 < 1) throw std::invalid_argument("subseries: n0 must be >= 1");
    if (n0 == 1) return f;
    const int m = f.order() / n0;
    std::vector<Quaternion> c(static_cast<std::size_t>(m) + 1);
    for (int t = 0; t <= m; ++t) c[static_cast<std::size_t>(t)] = f[t * n0];
    return QSeries(std::move(c));
}

/// h(q) = phi(q^{n0}): coefficient of q^{m n0} is phi's a_m, all others zero.
inline QSeries compose_power(const QSeries& phi, int n0) {
    if (n0 < 1) throw std::invalid_argument("compose_power: n0 must be >= 1");
    if (n0 == 1) return phi;
    std::vector<Quaternion> c(static_cast<std::size_t>(phi.order()) * n0 + 1);
    for (int t = 0; t <= phi.order(); ++t) c[static_cast<std::size_t>(t) * n0] = phi[t];
    return QSeries(std::move(c));
}

/// Geometric truncation tail: with |a_n| <= M for n > N, the dropped mass at
/// radius r is at most M r^{N+1} / (1 - r).
struct TailBound {
    double coeff_bound{0.0};
    int order{0};

    double value_at(double r) const {
        if (coeff_bound < 0.0) throw std::invalid_argument("TailBound: negative bound");
        if (!(r >= 0.0 && r < 1.0)) throw RadiusOutOfRange("TailBound: radius must be in [0, 1)");
        return coeff_bound * std::pow(r, order + 1) / (1.0 - r);
    }
};

inline double tail_bound(double coeff_bound, int order, double r) {
    return TailBound{coeff_bound, order}.value_at(r);
}

/// Tail of the n-th derivative: sum_{m>N} m!/(m-n)! M r^{m-n}. The terms decay
/// geometrically; summed until they stop contributing.
inline double derivative_tail_bound(double coeff_bound, int order, double r, int n) {
    if (!(r >= 0.0 && r < 1.0)) throw RadiusOutOfRange("derivative_tail_bound: radius in [0,1)");
    double total = 0.0;
    for (int m = order + 1; m < order + 20000; ++m) {
        double term = coeff_bound;
        for (int u = m - n + 1; u <= m; ++u) term *= u;
        term *= std::pow(r, m - n);
        total += term;
        if (term < 1e-30 * (1.0 + total)) break;
    }
    return total;
}

} // namespace slicereg
