// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "gsmibc/field.hpp"

namespace gsmibc
{
class CurveProfile;

/// A point of E(F_p) in affine coordinates, or the point at infinity.
///
/// The coordinates are not validated on construction so that foreign input
/// can be represented and then rejected; every group operation validates its
/// operands and throws Errc::invalid_point.
class Point
{
public:
    Point() = default;

    static Point identity(const CurveProfile& curve) { return Point(&curve); }
    static Point affine(const CurveProfile& curve, Fp x, Fp y)
    {
        return Point(&curve, std::move(x), std::move(y));
    }

    bool is_identity() const noexcept { return inf_; }
    const Fp& x() const noexcept { return x_; }
    const Fp& y() const noexcept { return y_; }
    const CurveProfile& curve() const noexcept { return *curve_; }

    friend bool operator==(const Point& a, const Point& b)
    {
        if (a.inf_ || b.inf_)
            return a.inf_ == b.inf_;
        return a.x_ == b.x_ && a.y_ == b.y_;
    }

    Point operator-() const;
    friend Point operator+(const Point& a, const Point& b);
    friend Point operator-(const Point& a, const Point& b) { return a + (-b); }

    /// Memo for in_subgroup(); set only by constructions that cannot leave
    /// the subgroup (multiples of G, cofactor-cleared points, sums of members).
    bool known_in_subgroup() const noexcept { return subgroup_known_; }

private:
    friend bool in_subgroup(const Point& P);
    friend class CurveProfile;
    friend Point scalar_mul(const BigInt& n, const Point& P);
    friend Point point_add(const Point& P, const Point& Q);
    friend Point mark_in_subgroup(Point P);

    explicit Point(const CurveProfile* c) : curve_(c) {}
    Point(const CurveProfile* c, Fp x, Fp y) : curve_(c), inf_(false), x_(std::move(x)), y_(std::move(y)) {}

    const CurveProfile* curve_ = nullptr;
    bool inf_ = true;
    Fp x_;
    Fp y_;
    mutable bool subgroup_known_ = false;
};

/// Element of Z_q, always canonical.
class Scalar
{
public:
    Scalar() = default;
    Scalar(const BigInt& v, const BigInt& q);

    const BigInt& value() const noexcept { return v_; }
    bool is_zero() const noexcept { return v_ == 0; }
    friend bool operator==(const Scalar&, const Scalar&) = default;

private:
    BigInt v_;
};

/// Public parameters of a short-Weierstrass curve y^2 = x^3 + a x + b over
/// F_p together with a prime-order subgroup <G> of order q.
///
/// Construction validates: p prime with p = 3 (mod 4), q prime dividing
/// m = #E(F_p), non-singular curve, G on the curve with q G = O != G.
/// Profiles are immutable and always owned through shared_ptr because
/// points and field elements refer back to them.
class CurveProfile
{
public:
    struct Params
    {
        std::string name;
        BigInt p, a, b, m, q, gx, gy;
    };

    /// A generator of (0, 0) in `params` means "search": the first x with a
    /// square rhs whose lift, cleared by the cofactor, has order q.
    static std::shared_ptr<const CurveProfile> create(const Params& params);

    /// y^2 = x^3 + x over F_11, #E = 12, q = 3, G = (5, 3).
    static std::shared_ptr<const CurveProfile> test();
    /// Supersingular y^2 = x^3 + x with a 160-bit q, generated once from a
    /// fixed seed.
    static std::shared_ptr<const CurveProfile> demo();
    /// Finds q (qbits, prime) and c = 0 mod 4 with p = c q - 1 prime and
    /// bitlen(p) == pbits; the curve is y^2 = x^3 + x, so #E = p + 1 = c q.
    static std::shared_ptr<const CurveProfile> generate_supersingular(
        std::size_t qbits, std::size_t pbits, std::uint64_t seed, std::string name);

    /// Plain text, one "key = decimal" line per parameter (p, a, b, m, q, gx, gy).
    static std::shared_ptr<const CurveProfile> from_config(const std::string& text);
    static std::shared_ptr<const CurveProfile> load(const std::filesystem::path& path);
    /// "test", "demo", or a path to a config file.
    static std::shared_ptr<const CurveProfile> select(const std::string& selector);
    std::string to_config() const;

    CurveProfile(const CurveProfile&) = delete;
    CurveProfile& operator=(const CurveProfile&) = delete;

    const std::string& name() const noexcept { return name_; }
    const PrimeField& field() const noexcept { return field_; }
    const BigInt& p() const noexcept { return field_.modulus(); }
    const Fp& a() const noexcept { return a_; }
    const Fp& b() const noexcept { return b_; }
    const BigInt& order() const noexcept { return m_; }
    const BigInt& q() const noexcept { return q_; }
    const BigInt& cofactor() const noexcept { return cofactor_; }
    const Point& generator() const noexcept { return g_; }
    std::size_t flen() const noexcept { return field_.byte_len(); }
    /// q^2 does not divide m, so cofactor * P has order dividing q for all P.
    bool cofactor_clears() const noexcept { return cofactor_clears_; }

    Point identity() const { return Point::identity(*this); }
    Point point(long x, long y) const { return Point::affine(*this, field_(x), field_(y)); }
    Point point(const BigInt& x, const BigInt& y) const
    {
        return Point::affine(*this, field_(x), field_(y));
    }
    Scalar scalar(const BigInt& v) const { return {v, q_}; }

    /// x^3 + a x + b
    Fp rhs(const Fp& x) const { return x * x * x + a_ * x + b_; }

private:
    explicit CurveProfile(const Params& params);
    Point find_generator() const;

    std::string name_;
    PrimeField field_;
    Fp a_;
    Fp b_;
    BigInt m_;
    BigInt q_;
    BigInt cofactor_;
    bool cofactor_clears_ = false;
    Point g_;
};

bool is_on_curve(const Point& P);
/// Chord-and-tangent addition. Throws Errc::invalid_point on off-curve input.
Point point_add(const Point& P, const Point& Q);
/// Left-to-right double-and-add; n must be non-negative.
Point scalar_mul(const BigInt& n, const Point& P);
inline Point scalar_mul(const Scalar& n, const Point& P)
{
    return scalar_mul(n.value(), P);
}

inline Point operator*(const BigInt& n, const Point& P)
{
    return scalar_mul(n, P);
}
inline Point operator*(const Scalar& n, const Point& P)
{
    return scalar_mul(n, P);
}

/// On the curve and q P == O. The answer is memoized in P.
bool in_subgroup(const Point& P);
/// Asserts membership without checking; for cofactor-cleared results only.
Point mark_in_subgroup(Point P);

/// 0x00 for O; otherwise (0x02 | lsb(y)) followed by x in flen bytes.
Bytes encode(const Point& P);
/// Inverse of encode. Rejects trailing bytes, bad prefixes, and x with no
/// matching y (Errc::malformed_message / Errc::invalid_point).
Point decode_point(const CurveProfile& curve, ByteView b);
/// Size of the encoding starting with this prefix byte (for stream parsing).
std::size_t encoded_point_size(const CurveProfile& curve, std::uint8_t prefix);

}  // namespace gsmibc
