// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsmibc/error.hpp"
#include "gsmibc/hashing.hpp"
#include "gsmibc/pairing.hpp"
#include "gsmibc/rng.hpp"
#include "oracle.hpp"

using namespace gsmibc;

namespace
{
oracle::BigPoint to_big(const Point& P)
{
    if (P.is_identity())
        return {};
    return {false, P.x().value(), P.y().value()};
}

std::string hex_of(const Digest& d)
{
    return to_hex(view(d));
}
}  // namespace

TEST_CASE("SHA-256 known answers")
{
    CHECK(hex_of(base_hash(Bytes{})) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(hex_of(base_hash(to_bytes("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(hex_of(base_hash(to_bytes("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("expand is counter-mode SHA-256")
{
    Bytes seed = to_bytes("seed");
    Bytes out = expand(seed, 70);
    REQUIRE(out.size() == 70);
    for (std::uint32_t ctr = 0; ctr < 3; ++ctr) {
        Bytes in = seed;
        for (int s = 24; s >= 0; s -= 8)
            in.push_back(static_cast<std::uint8_t>(ctr >> s));
        auto block = oracle::sha256(in);
        for (std::size_t i = 0; i < 32 && ctr * 32 + i < 70; ++i)
            CHECK(out[ctr * 32 + i] == block[i]);
    }
    CHECK(expand(seed, 0).empty());
    CHECK(Bytes(out.begin(), out.begin() + 10) == expand(seed, 10));
}

TEST_CASE("map_to_point matches the try-and-increment oracle")
{
    for (auto c : {CurveProfile::test(), CurveProfile::demo()}) {
        oracle::Big m{c->p(), c->a().value(), c->b().value()};
        for (int i = 0; i < 100; ++i) {
            std::string msg = "id-" + std::to_string(i);
            Point P = map_to_point(to_bytes(msg), *c);
            CHECK(to_big(P) == oracle::map_to_point(m, c->cofactor(), msg));
        }
    }
}

TEST_CASE("map_to_point trace exposes the lift and the unused hash bit")
{
    auto c = CurveProfile::demo();
    auto tr = map_to_point_traced(to_bytes("IMSI-404685505601234"), *c);
    CHECK(tr.attempt >= 1);
    CHECK(tr.attempt <= map_to_point_attempt_limit);
    CHECK(is_on_curve(tr.lifted));
    CHECK(c->cofactor() * tr.lifted == tr.point);
    CHECK(tr.point.known_in_subgroup());
    CHECK((c->q() * tr.point).is_identity());
    CHECK(tr.lifted.y().value() > c->p() / 2);
}

TEST_CASE("map_to_point on TEST can produce O; DEMO never does in practice")
{
    auto t = CurveProfile::test();
    int identities = 0;
    for (int i = 0; i < 300; ++i)
        identities += map_to_point(to_bytes("s" + std::to_string(i)), *t).is_identity() ? 1 : 0;
    CHECK(identities > 0);
    CHECK(identities < 300);
}

TEST_CASE("hash_to_scalar reduces the digest mod q and avoids zero")
{
    auto c = CurveProfile::demo();
    for (int i = 0; i < 50; ++i) {
        Bytes m = to_bytes("m" + std::to_string(i));
        mpz_class want = oracle::be_to_mpz(oracle::sha256(m)) % c->q();
        Scalar s = hash_to_scalar(m, c->q());
        CHECK(s.value() == (want == 0 ? mpz_class(1) : want));
    }
    // q = 3 makes zero residues common; none may escape.
    for (int i = 0; i < 60; ++i)
        CHECK_FALSE(hash_to_scalar(to_bytes(std::to_string(i)), 3).is_zero());
}

TEST_CASE("hash_point and kdf_session")
{
    auto c = CurveProfile::demo();
    const Point& G = c->generator();
    CHECK(hash_point(G) == base_hash(encode(G)));
    Bytes kdf_in = to_bytes("GSM-IBC-SK");
    append(kdf_in, encode(G));
    CHECK(kdf_session(G) == base_hash(kdf_in));
    CHECK(kdf_session(G) != kdf_session(BigInt(2) * G));
    CHECK_THROWS_AS(kdf_session(c->identity()), Error);
    CHECK_THROWS_AS(hash_point(c->point(1, 1)), Error);
}

TEST_CASE("h2_mask hashes the GT encoding")
{
    auto c = CurveProfile::demo();
    GtElement g = pairing(c->generator(), c->generator());
    CHECK(h2_mask(g, 40) == expand(encode(g), 40));
}
