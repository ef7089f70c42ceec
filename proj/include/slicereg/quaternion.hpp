#pragma once

#include <cmath>
#include <limits>

#include "slicereg/errors.hpp"

namespace slicereg {

// Default guard thresholds, overridable per call site.
inline constexpr double kInversionFloor = 1e-300; // only true zeros should trip inversion
inline constexpr double kDegeneracyFloor = 1e-12; // |Im q| below this counts as real-axis

/// Quaternion x0 + x1 i + x2 j + x3 k with i^2 = j^2 = k^2 = ijk = -1.
struct Quaternion {
    double w{0.0}; // x0, the real part
    double x{0.0}; // coefficient of i
    double y{0.0}; // coefficient of j
    double z{0.0}; // coefficient of k

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion zero() { return {}; }
    static constexpr Quaternion one() { return {1.0}; }
    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr double re() const { return w; }
    constexpr Quaternion imag() const { return {0.0, x, y, z}; }

    constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }
    double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

    /// q^{-1} = conj(q) / |q|^2, computed on components prescaled by the
    /// largest one so the squared norm never under- or overflows; inverses
    /// stay finite all the way down to the floor. Throws DivisionByNearZero
    /// below the floor.
    Quaternion inverse(double floor = kInversionFloor) const {
        const double m =
            std::max(std::max(std::abs(w), std::abs(x)), std::max(std::abs(y), std::abs(z)));
        if (!(m > 0.0)) {
            throw DivisionByNearZero("quaternion inverse: |q| below inversion floor");
        }
        const double sw = w / m, sx = x / m, sy = y / m, sz = z / m;
        const double n2 = sw * sw + sx * sx + sy * sy + sz * sz; // in [1, 4]
        if (!(m * std::sqrt(n2) > floor)) {
            throw DivisionByNearZero("quaternion inverse: |q| below inversion floor");
        }
        return {sw / n2 / m, -sx / n2 / m, -sy / n2 / m, -sz / n2 / m};
    }

    bool is_finite() const {
        return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double t) {
        w *= t; x *= t; y *= t; z *= t;
        return *this;
    }

    friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
    friend constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
    friend constexpr Quaternion operator*(Quaternion a, double t) { return a *= t; }
    friend constexpr Quaternion operator*(double t, Quaternion a) { return a *= t; }
    friend constexpr Quaternion operator/(Quaternion a, double t) { return a *= (1.0 / t); }

    // Hamilton product; the multiplication table of {1, i, j, k} written out.
    friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        };
    }

    friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) = default;
};

inline Quaternion qmul(const Quaternion& a, const Quaternion& b) { return a * b; }
inline Quaternion qconj(const Quaternion& q) { return q.conj(); }
inline Quaternion qinv(const Quaternion& q, double floor = kInversionFloor) {
    return q.inverse(floor);
}

/// Euclidean inner product of the four components.
inline constexpr double dot4(const Quaternion& a, const Quaternion& b) {
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Inner product of the imaginary 3-vectors only.
inline constexpr double imag_dot(const Quaternion& a, const Quaternion& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

/// A point of the unit 2-sphere of purely imaginary quaternions (I^2 = -1).
/// Construction normalizes, so the represented value always has an exactly
/// zero real part and unit modulus up to rounding.
class UnitImaginary {
  public:
    static UnitImaginary from_vector(double vx, double vy, double vz) {
        const double n = std::sqrt(vx * vx + vy * vy + vz * vz);
        if (!(n > kDegeneracyFloor)) {
            throw DivisionByNearZero("UnitImaginary: direction vector too small to normalize");
        }
        return UnitImaginary(Quaternion{0.0, vx / n, vy / n, vz / n});
    }

    /// Direction of Im(q). Throws when q is within the degeneracy floor of the
    /// real axis; use unit_of() when a fallback is wanted instead.
    static UnitImaginary from(const Quaternion& q) { return from_vector(q.x, q.y, q.z); }

    static UnitImaginary i() { return UnitImaginary(Quaternion::i()); }
    static UnitImaginary j() { return UnitImaginary(Quaternion::j()); }
    static UnitImaginary k() { return UnitImaginary(Quaternion::k()); }

    const Quaternion& value() const { return dir_; }

  private:
    explicit UnitImaginary(Quaternion dir) : dir_(dir) {}
    Quaternion dir_;
};

/// cos(theta) + I sin(theta): the unit rotation factor of the slice C_I.
inline Quaternion exp_slice(const UnitImaginary& unit, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const Quaternion& d = unit.value();
    return {c, s * d.x, s * d.y, s * d.z};
}

/// Im(q)/|Im(q)| when the imaginary part is above the degeneracy floor,
/// otherwise the caller-supplied fallback (the choice on the real axis is
/// arbitrary, so it stays in the caller's hands).
inline UnitImaginary unit_of(const Quaternion& q, const UnitImaginary& fallback,
                             double floor = kDegeneracyFloor) {
    if (q.imag_norm() > floor) return UnitImaginary::from(q);
    return fallback;
}

/// q written as x + yI with x real, y >= 0, I on the imaginary unit sphere.
struct SlicePoint {
    double x{0.0};
    double y{0.0};
    UnitImaginary unit;

    Quaternion reconstitute() const {
        const Quaternion& d = unit.value();
        return {x, y * d.x, y * d.y, y * d.z};
    }
};

inline SlicePoint slice_decompose(const Quaternion& q, const UnitImaginary& fallback,
                                  double floor = kDegeneracyFloor) {
    return SlicePoint{q.re(), q.imag_norm(), unit_of(q, fallback, floor)};
}

/// x + yI as a quaternion; the embedding of slice coordinates into C_I.
inline Quaternion slice_embed(double x, double y, const UnitImaginary& unit) {
    const Quaternion& d = unit.value();
    return {x, y * d.x, y * d.y, y * d.z};
}

/// A deterministic unit imaginary orthogonal to I (cross with the axis least
/// aligned with I).
inline UnitImaginary orthogonal_unit(const UnitImaginary& unit) {
    const Quaternion& d = unit.value();
    const double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
    double ex = 0.0, ey = 0.0, ez = 0.0;
    if (ax <= ay && ax <= az) ex = 1.0;
    else if (ay <= az) ey = 1.0;
    else ez = 1.0;
    // cross(d, e)
    return UnitImaginary::from_vector(d.y * ez - d.z * ey, d.z * ex - d.x * ez,
                                      d.x * ey - d.y * ex);
}

/// Rotates J by phi in the plane orthogonal to I; result stays orthogonal to I.
/// Requires J orthogonal to I (then I*J is the third orthonormal direction).
inline UnitImaginary rotate_orthogonal(const UnitImaginary& unit_i, const UnitImaginary& unit_j,
                                       double phi) {
    const Quaternion third = unit_i.value() * unit_j.value();
    const Quaternion r = std::cos(phi) * unit_j.value() + std::sin(phi) * third;
    return UnitImaginary::from_vector(r.x, r.y, r.z);
}

} // namespace slicereg
