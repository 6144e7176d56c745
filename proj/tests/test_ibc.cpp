// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsmibc/error.hpp"
#include "gsmibc/ibc.hpp"
#include "gsmibc/ops.hpp"

using namespace gsmibc;

namespace
{
Errc code_of(const std::function<void()>& fn)
{
    try {
        fn();
    }
    catch (const Error& e) {
        return e.code();
    }
    return Errc::internal;
}

struct Fixture
{
    std::shared_ptr<const CurveProfile> curve = CurveProfile::demo();
    Rng rng{99};
    MasterKey mk = MasterKey::setup(*curve, rng);
    IdentityKey alice = extract(mk, to_bytes("alice"));
    IdentityKey bob = extract(mk, to_bytes("bob"));
};
}  // namespace

TEST_CASE_FIXTURE(Fixture, "setup and extract satisfy the defining equations")
{
    CHECK(mk.ppub() == mk.secret() * curve->generator());
    CHECK_FALSE(mk.secret().is_zero());
    CHECK(alice.q_id == map_to_point(to_bytes("alice"), *curve));
    CHECK(alice.d_id == mk.secret() * alice.q_id);
    CHECK(key_is_valid(mk.ppub(), alice));
    CHECK(pairing(alice.d_id, curve->generator()) == pairing(alice.q_id, mk.ppub()));

    IdentityKey forged = alice;
    forged.d_id = alice.d_id + curve->generator();
    CHECK_FALSE(key_is_valid(mk.ppub(), forged));
    IdentityKey swapped = alice;
    swapped.q_id = bob.q_id;
    CHECK_FALSE(key_is_valid(mk.ppub(), swapped));

    MasterKey again = MasterKey::from_secret(*curve, mk.secret().value());
    CHECK(again.ppub() == mk.ppub());
    CHECK(code_of([&] { MasterKey::from_secret(*curve, curve->q()); }) == Errc::degenerate_key);
    CHECK(code_of([&] { extract(mk, Bytes{}); }) == Errc::malformed_message);
}

TEST_CASE("identities that hash to O are refused")
{
    auto t = CurveProfile::test();
    Rng rng(1);
    MasterKey mk = MasterKey::setup(*t, rng);
    int refused = 0;
    for (int i = 0; i < 40; ++i) {
        Bytes id = to_bytes("s" + std::to_string(i));
        if (!map_to_point(id, *t).is_identity()) {
            CHECK(key_is_valid(mk.ppub(), extract(mk, id)));
            continue;
        }
        ++refused;
        CHECK(code_of([&] { extract(mk, id); }) == Errc::degenerate_key);
        CHECK(code_of([&] { IdentityPublic::derive(mk.ppub(), id); }) == Errc::degenerate_key);
    }
    CHECK(refused > 0);
}

TEST_CASE_FIXTURE(Fixture, "IBE round trip and key separation")
{
    IdentityPublic pub = IdentityPublic::derive(mk.ppub(), alice.id);
    CHECK(pub.g_id == pairing(alice.q_id, mk.ppub()));
    for (std::size_t len : {1U, 16U, 33U, 200U}) {
        Bytes m = rng.bytes(len);
        IbeCiphertext c = ibe_encrypt(pub, m, rng);
        CHECK(c.v.size() == len);
        CHECK(ibe_decrypt(alice, c) == m);
        CHECK(ibe_decrypt(bob, c) != m);
        IbeCiphertext via_id = ibe_encrypt(mk.ppub(), alice.id, m, rng);
        CHECK(ibe_decrypt(alice, via_id) == m);
        CHECK(decode_ibe_ciphertext(*curve, encode(c)).v == c.v);
        CHECK(decode_ibe_ciphertext(*curve, encode(c)).u == c.u);
    }
    CHECK(code_of([&] { ibe_encrypt(pub, Bytes{}, rng); }) == Errc::malformed_message);

    IbeCiphertext c = ibe_encrypt(pub, to_bytes("x"), rng);
    c.u = curve->identity();
    CHECK(code_of([&] { ibe_decrypt(alice, c); }) == Errc::invalid_point);
    Bytes enc = encode(ibe_encrypt(pub, to_bytes("hello"), rng));
    enc.pop_back();
    CHECK(code_of([&] { decode_ibe_ciphertext(*curve, enc); }) == Errc::malformed_message);
}

TEST_CASE_FIXTURE(Fixture, "IBE ciphertexts are randomised")
{
    IdentityPublic pub = IdentityPublic::derive(mk.ppub(), alice.id);
    Bytes m = to_bytes("same plaintext");
    IbeCiphertext a = ibe_encrypt(pub, m, rng);
    IbeCiphertext b = ibe_encrypt(pub, m, rng);
    CHECK_FALSE(a.u == b.u);
    CHECK(a.v != b.v);
}

TEST_CASE_FIXTURE(Fixture, "IBS sign, verify and reject")
{
    IdentityPublic pub = IdentityPublic::derive(mk.ppub(), alice.id);
    Bytes m = to_bytes("H(IMSI || K'' || VLR_ID)");
    IbsSignature s = ibs_sign(alice, m, rng);
    CHECK(ibs_verify(mk.ppub(), alice.id, m, s));
    CHECK(ibs_verify(mk.ppub(), pub, m, s));
    CHECK_FALSE(ibs_verify(mk.ppub(), bob.id, m, s));
    Bytes tampered = m;
    tampered[0] ^= 1;
    CHECK_FALSE(ibs_verify(mk.ppub(), pub, tampered, s));
    IbsSignature swapped{s.v, s.u};
    CHECK_FALSE(ibs_verify(mk.ppub(), pub, m, swapped));

    IbsSignature round = decode_ibs_signature(*curve, encode(s));
    CHECK(round.u == s.u);
    CHECK(round.v == s.v);
    Bytes extra = encode(s);
    extra.push_back(0);
    CHECK(code_of([&] { decode_ibs_signature(*curve, extra); }) == Errc::malformed_message);
    CHECK(code_of([&] { ibs_sign(alice, Bytes{}, rng); }) == Errc::malformed_message);

    Rng other(5);
    MasterKey rogue = MasterKey::setup(*curve, other);
    IdentityKey rogue_alice = extract(rogue, alice.id);
    CHECK_FALSE(ibs_verify(mk.ppub(), pub, m, ibs_sign(rogue_alice, m, rng)));
}

TEST_CASE_FIXTURE(Fixture, "operation counters")
{
    IdentityPublic pub = IdentityPublic::derive(mk.ppub(), alice.id);
    ops::Counters c;
    {
        ops::Scope scope(c);
        IbeCiphertext ct = ibe_encrypt(pub, to_bytes("m"), rng);
        ibe_decrypt(alice, ct);
        IbsSignature s = ibs_sign(alice, to_bytes("m"), rng);
        ibs_verify(mk.ppub(), pub, to_bytes("m"), s);
    }
    CHECK(c.ibe == 2);
    CHECK(c.ibs == 2);
    CHECK(c.pairing == 3);
}
