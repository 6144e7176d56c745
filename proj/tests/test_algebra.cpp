// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsmibc/curve.hpp"
#include "gsmibc/error.hpp"
#include "gsmibc/rng.hpp"
#include "oracle.hpp"

using namespace gsmibc;

namespace
{
Point from_tiny(const CurveProfile& c, const oracle::TinyPoint& t)
{
    return t.inf ? c.identity() : c.point(t.x, t.y);
}

oracle::TinyPoint to_tiny(const Point& P)
{
    if (P.is_identity())
        return {};
    return {false, P.x().value().get_si(), P.y().value().get_si()};
}

oracle::Big big_model(const CurveProfile& c)
{
    return {c.p(), c.a().value(), c.b().value()};
}

oracle::BigPoint to_big(const Point& P)
{
    if (P.is_identity())
        return {};
    return {false, P.x().value(), P.y().value()};
}

template <typename Fn>
Errc error_of(Fn&& fn)
{
    try {
        fn();
    }
    catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::internal;
}
}  // namespace

TEST_CASE("F_11: inverse and square-root tables match brute force")
{
    PrimeField f(11);
    oracle::Tiny t{11, 1, 0};
    CHECK(error_of([&] { f(0).inverse(); }) == Errc::division_by_zero);
    for (long v = 1; v < 11; ++v) {
        CHECK(f(v).inverse().value().get_si() == t.inv(v));
        CHECK((f(v) * f(v).inverse()).is_one());
    }
    for (long v = 0; v < 11; ++v) {
        auto roots = t.roots(v);
        CHECK(f(v).is_square() == !roots.empty());
        if (roots.empty()) {
            CHECK(error_of([&] { f(v).sqrt(); }) == Errc::non_residue);
            continue;
        }
        auto r = f(v).sqrt();
        for (const auto& y : r)
            CHECK(std::find(roots.begin(), roots.end(), y.value().get_si()) != roots.end());
        CHECK(r[0] == -r[1]);
    }
}

TEST_CASE("F_11: ring axioms hold on every pair")
{
    PrimeField f(11);
    for (long a = 0; a < 11; ++a)
        for (long b = 0; b < 11; ++b) {
            CHECK((f(a) + f(b)).value() == (a + b) % 11);
            CHECK((f(a) - f(b)).value() == ((a - b) % 11 + 11) % 11);
            CHECK((f(a) * f(b)).value() == (a * b) % 11);
        }
    CHECK(f(-3).value() == 8);
    CHECK(f(25).value() == 3);
}

TEST_CASE("F_11^2: multiplication and inversion match the pair model")
{
    PrimeField f(11);
    oracle::Tiny t{11, 1, 0};
    for (long a = 0; a < 11; ++a)
        for (long b = 0; b < 11; ++b) {
            Fp2 x(f(a), f(b));
            for (long c = 0; c < 11; c += 3)
                for (long d = 0; d < 11; d += 2) {
                    auto want = oracle::t2_mul(t, {a, b}, {c, d});
                    Fp2 got = x * Fp2(f(c), f(d));
                    CHECK(got.c0().value() == want.c0);
                    CHECK(got.c1().value() == want.c1);
                }
            if (a == 0 && b == 0) {
                CHECK(error_of([&] { x.inverse(); }) == Errc::division_by_zero);
                continue;
            }
            auto inv = oracle::t2_inv(t, {a, b});
            CHECK(x.inverse().c0().value() == inv.c0);
            CHECK(x.inverse().c1().value() == inv.c1);
            CHECK(x.square() == x * x);
            CHECK(x.conjugate() == x.pow(11));
        }
}

TEST_CASE("DEMO field: operations agree with direct GMP computation")
{
    auto c = CurveProfile::demo();
    auto m = big_model(*c);
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        BigInt a = rng.below(c->p()), b = rng.below(c->p() - 1) + 1;
        Fp fa = c->field()(a), fb = c->field()(b);
        CHECK((fa * fb).value() == m.mod(a * b));
        CHECK((fa - fb).value() == m.mod(a - b));
        CHECK(fb.inverse().value() == m.inv(b));
        CHECK(fa.is_square() == (a == 0 || mpz_legendre(a.get_mpz_t(), c->p().get_mpz_t()) == 1));
        if (fa.is_square())
            CHECK(fa.sqrt()[0].square() == fa);
        CHECK(c->field().from_bytes(fa.to_bytes()) == fa);
    }
    Bytes too_big = to_be_bytes(c->p(), c->flen());
    CHECK(error_of([&] { c->field().from_bytes(too_big); }) == Errc::malformed_message);
}

TEST_CASE("TEST profile parameters")
{
    auto c = CurveProfile::test();
    CHECK(c->p() == 11);
    CHECK(c->q() == 3);
    CHECK(c->order() == 12);
    CHECK(c->cofactor() == 4);
    CHECK(c->generator() == c->point(5, 3));
    CHECK(2 * c->generator() == c->point(5, 8));
    CHECK(3 * c->generator() == c->identity());
}

TEST_CASE("TEST profile: exhaustive group law over all 12 points")
{
    auto c = CurveProfile::test();
    oracle::Tiny t{11, 1, 0};
    auto tiny = oracle::all_points(t);
    REQUIRE(tiny.size() == 12);
    std::vector<Point> pts;
    for (const auto& tp : tiny)
        pts.push_back(from_tiny(*c, tp));

    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point& P = pts[i];
        CHECK(is_on_curve(P));
        CHECK(P + c->identity() == P);
        CHECK((P + (-P)).is_identity());
        CHECK(to_tiny(-P) == oracle::neg(t, tiny[i]));
        CHECK(to_tiny(c->order() * P) == oracle::TinyPoint{});
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const Point& Q = pts[j];
            Point S = P + Q;
            CHECK(is_on_curve(S));
            CHECK(S == Q + P);
            CHECK(to_tiny(S) == oracle::add(t, tiny[i], tiny[j]));
            for (const auto& R : pts)
                CHECK((P + Q) + R == P + (Q + R));
        }
        for (long n = 0; n < 9; ++n)
            CHECK(to_tiny(BigInt(n) * P) == oracle::repeat(t, n, tiny[i]));
        bool want = (BigInt(3) * P).is_identity();
        CHECK(in_subgroup(P) == want);
    }
}

TEST_CASE("off-curve points are rejected by every group operation")
{
    auto c = CurveProfile::test();
    Point bad = c->point(1, 1);
    CHECK_FALSE(is_on_curve(bad));
    CHECK(error_of([&] { (void)(bad + c->generator()); }) == Errc::invalid_point);
    CHECK(error_of([&] { scalar_mul(BigInt(2), bad); }) == Errc::invalid_point);
    CHECK_FALSE(in_subgroup(bad));
}

TEST_CASE("DEMO profile: parameters are consistent")
{
    auto c = CurveProfile::demo();
    CHECK(bit_length(c->q()) == 160);
    CHECK(bit_length(c->p()) == 256);
    CHECK(c->p() % 4 == 3);
    CHECK(c->order() == c->p() + 1);
    CHECK(c->order() % c->q() == 0);
    CHECK(mpz_probab_prime_p(c->p().get_mpz_t(), 40) > 0);
    CHECK(mpz_probab_prime_p(c->q().get_mpz_t(), 40) > 0);
    CHECK(c->cofactor_clears());
    CHECK(is_on_curve(c->generator()));
    CHECK((c->q() * c->generator()).is_identity());
    CHECK(CurveProfile::demo().get() == c.get());
    CHECK(CurveProfile::from_config(c->to_config())->to_config() == c->to_config());
}

TEST_CASE("DEMO profile: scalar multiplication matches the affine oracle")
{
    auto c = CurveProfile::demo();
    auto m = big_model(*c);
    auto G = to_big(c->generator());
    Rng rng(2);
    for (int i = 0; i < 40; ++i) {
        BigInt n = rng.below(c->q());
        Point P = n * c->generator();
        CHECK(to_big(P) == oracle::mul(m, n, G));
        BigInt k = rng.below(c->q());
        CHECK(to_big(P + k * c->generator()) == oracle::add(m, to_big(P), oracle::mul(m, k, G)));
    }
    CHECK(error_of([&] { scalar_mul(BigInt(-1), c->generator()); }) == Errc::internal);
}

TEST_CASE("point encoding round-trips and rejects malformed input")
{
    auto c = CurveProfile::demo();
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        Point P = rng.below(c->q()) * c->generator();
        Bytes e = encode(P);
        CHECK(e.size() == (P.is_identity() ? 1 : 1 + c->flen()));
        CHECK(decode_point(*c, e) == P);
    }
    CHECK(decode_point(*c, Bytes{0x00}).is_identity());
    CHECK(error_of([&] { decode_point(*c, Bytes{}); }) == Errc::malformed_message);
    CHECK(error_of([&] { decode_point(*c, Bytes{0x04, 1, 2}); }) == Errc::malformed_message);
    Bytes short_enc = encode(c->generator());
    short_enc.pop_back();
    CHECK(error_of([&] { decode_point(*c, short_enc); }) == Errc::malformed_message);

    // x with a non-square right-hand side.
    auto t = CurveProfile::test();
    oracle::Tiny tiny{11, 1, 0};
    for (long x = 0; x < 11; ++x) {
        Bytes e{0x02, static_cast<std::uint8_t>(x)};
        if (tiny.roots(tiny.rhs(x)).empty())
            CHECK(error_of([&] { decode_point(*t, e); }) == Errc::invalid_point);
        else
            CHECK(is_on_curve(decode_point(*t, e)));
    }
}

TEST_CASE("profile validation")
{
    using P = CurveProfile::Params;
    CHECK(error_of([] { CurveProfile::create(P{"x", 13, 1, 0, 14, 7, 0, 0}); }) == Errc::bad_profile);
    CHECK(error_of([] { CurveProfile::create(P{"x", 11, 1, 0, 12, 5, 0, 0}); }) == Errc::bad_profile);
    CHECK(error_of([] { CurveProfile::create(P{"x", 11, 1, 0, 12, 3, 1, 1}); }) == Errc::bad_profile);
    CHECK(error_of([] { CurveProfile::from_config("p = 11\n"); }) == Errc::bad_profile);
    CHECK(error_of([] { CurveProfile::select("/nonexistent/profile.txt"); }) == Errc::io);

    auto searched = CurveProfile::create(P{"p43", 43, 1, 0, 44, 11, 0, 0});
    CHECK(searched->q() == 11);
    CHECK(in_subgroup(searched->generator()));
    CHECK_FALSE(searched->generator().is_identity());
}
