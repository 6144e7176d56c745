// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "gsmibc/curve.hpp"

namespace gsmibc
{
/// A point of E(F_{p^2}); only produced by the distortion map.
struct ExtPoint
{
    bool infinity = true;
    Fp2 x;
    Fp2 y;
};

/// phi(x, y) = (-x, i y). Maps E(F_p) into E(F_{p^2}) outside E(F_p), which
/// is what makes e(P, phi(P)) non-trivial on the supersingular curve.
ExtPoint distortion(const Point& P);
bool is_on_curve(const CurveProfile& curve, const ExtPoint& P);

/// Element of the order-q subgroup of F_{p^2}^*.
class GtElement
{
public:
    GtElement() = default;
    /// Checks value^q == 1; throws Errc::invalid_point otherwise.
    GtElement(const CurveProfile& curve, Fp2 value);
    static GtElement one(const CurveProfile& curve);

    const Fp2& value() const noexcept { return v_; }
    bool is_one() const noexcept { return v_.is_one(); }
    const CurveProfile& curve() const noexcept { return *curve_; }

    friend bool operator==(const GtElement& a, const GtElement& b) { return a.v_ == b.v_; }

private:
    struct Trusted {};
    GtElement(const CurveProfile& curve, Fp2 value, Trusted) : curve_(&curve), v_(std::move(value)) {}
    friend GtElement pairing(const Point&, const Point&);
    friend GtElement gt_mul(const GtElement&, const GtElement&);
    friend GtElement gt_pow(const GtElement&, const BigInt&);

    const CurveProfile* curve_ = nullptr;
    Fp2 v_;
};

/// f^((p^2 - 1)/q). Exposed so tests can compare against the plain power.
Fp2 final_exponentiation(const Fp2& f, const CurveProfile& curve);

/// Reduced Tate pairing with distortion: e(P, Q) = f_{q,P}(phi(Q))^((p^2-1)/q).
///
/// Both arguments must lie in the order-q subgroup (Errc::not_in_subgroup
/// otherwise). Returns 1 if either argument is O.
GtElement pairing(const Point& P, const Point& Q);

GtElement gt_mul(const GtElement& a, const GtElement& b);
/// Exponent is reduced mod q first, so negative n is fine.
GtElement gt_pow(const GtElement& z, const BigInt& n);
inline bool gt_eq(const GtElement& a, const GtElement& b)
{
    return a == b;
}

/// c0 || c1, each flen bytes big-endian.
Bytes encode(const GtElement& z);

}  // namespace gsmibc
