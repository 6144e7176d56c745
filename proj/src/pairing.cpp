// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gsmibc/pairing.hpp"

#include "gsmibc/error.hpp"
#include "gsmibc/ops.hpp"

namespace gsmibc
{
namespace
{
// Miller loop state: T as an affine point of E(F_p), and the running value
// of f_{n,P} at the evaluation point kept as numerator / denominator.
struct Miller
{
    const CurveProfile& curve;
    const Fp2& qx;
    const Fp2& qy;
    Fp2 num;
    Fp den;  // vertical lines evaluated at phi(Q) have x in F_p

    template <typename F>
    static void nonzero(const F& v)
    {
        // phi(Q) has x outside F_p and y in i F_p, so no F_p-rational line
        // through T can vanish there; a zero here is a bug, not bad input.
        if (v.is_zero())
            throw Error(Errc::internal, "Miller line function vanished at the evaluation point");
    }

    // Line y - yT - lambda (x - xT) through T with the given slope.
    Fp2 line(const Point& T, const Fp& lambda) const
    {
        Fp2 dx = qx - Fp2::from_base(T.x());
        return qy - Fp2::from_base(T.y()) - dx * lambda;
    }

    Fp vertical(const Point& T) const
    {
        if (T.is_identity())
            return curve.field().one();
        return qx.c0() - T.x();
    }

    void step_double(Point& T)
    {
        const auto& f = curve.field();
        Fp lambda = (f(3) * T.x().square() + curve.a()) / (T.y() + T.y());
        Fp2 l = line(T, lambda);
        Fp x3 = lambda.square() - T.x() - T.x();
        Fp y3 = lambda * (T.x() - x3) - T.y();
        T = Point::affine(curve, x3, y3);
        Fp v = vertical(T);
        nonzero(l);
        nonzero(v);
        num = num.square() * l;
        den = den.square() * v;
    }

    void step_add(Point& T, const Point& P)
    {
        Fp2 l;
        if (T.x() == P.x()) {
            // T = -P: the chord is the vertical line and T + P = O.
            l = Fp2::from_base(vertical(T));
            T = curve.identity();
        }
        else {
            Fp lambda = (P.y() - T.y()) / (P.x() - T.x());
            l = line(T, lambda);
            Fp x3 = lambda.square() - T.x() - P.x();
            Fp y3 = lambda * (T.x() - x3) - T.y();
            T = Point::affine(curve, x3, y3);
        }
        Fp v = vertical(T);
        nonzero(l);
        nonzero(v);
        num = num * l;
        den = den * v;
    }
};

Fp2 miller(const Point& P, const ExtPoint& R)
{
    const auto& curve = P.curve();
    const BigInt& q = curve.q();
    Miller m{curve, R.x, R.y, Fp2::one(curve.field()), curve.field().one()};
    Point T = P;
    for (auto i = static_cast<long>(bit_length(q)) - 2; i >= 0; --i) {
        m.step_double(T);
        if (mpz_tstbit(q.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            m.step_add(T, P);
    }
    if (!T.is_identity())
        throw Error(Errc::internal, "Miller loop did not end at O");
    return m.num * m.den.inverse();
}

}  // namespace

Fp2 final_exponentiation(const Fp2& f, const CurveProfile& curve)
{
    // (p^2 - 1)/q = (p - 1) * (p + 1)/q, and f^p is the conjugate of f.
    Fp2 unitary = f.conjugate() * f.inverse();
    return unitary.pow((curve.p() + 1) / curve.q());
}

ExtPoint distortion(const Point& P)
{
    if (!is_on_curve(P))
        throw Error(Errc::invalid_point, "distortion of an off-curve point");
    if (P.is_identity())
        return {};
    const auto& f = P.curve().field();
    return {false, Fp2::from_base(-P.x()), Fp2(f.zero(), P.y())};
}

bool is_on_curve(const CurveProfile& curve, const ExtPoint& P)
{
    if (P.infinity)
        return true;
    Fp2 rhs = P.x.square() * P.x + P.x * curve.a() + Fp2::from_base(curve.b());
    return P.y.square() == rhs;
}

GtElement::GtElement(const CurveProfile& curve, Fp2 value) : curve_(&curve), v_(std::move(value))
{
    if (v_.is_zero() || !v_.pow(curve.q()).is_one())
        throw Error(Errc::invalid_point, "value is not in the order-q target group");
}

GtElement GtElement::one(const CurveProfile& curve)
{
    return {curve, Fp2::one(curve.field()), Trusted{}};
}

GtElement pairing(const Point& P, const Point& Q)
{
    const auto& curve = P.curve();
    if (!in_subgroup(P) || !in_subgroup(Q))
        throw Error(Errc::not_in_subgroup, "pairing argument outside the order-q subgroup");
    ++ops::thread_counters().pairing;
    if (P.is_identity() || Q.is_identity())
        return GtElement::one(curve);

    return {curve, final_exponentiation(miller(P, distortion(Q)), curve), GtElement::Trusted{}};
}

GtElement gt_mul(const GtElement& a, const GtElement& b)
{
    return {*a.curve_, a.v_ * b.v_, GtElement::Trusted{}};
}

GtElement gt_pow(const GtElement& z, const BigInt& n)
{
    BigInt e;
    mpz_mod(e.get_mpz_t(), n.get_mpz_t(), z.curve_->q().get_mpz_t());
    return {*z.curve_, z.v_.pow(e), GtElement::Trusted{}};
}

Bytes encode(const GtElement& z)
{
    return z.value().to_bytes();
}

}  // namespace gsmibc
