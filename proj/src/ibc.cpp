// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gsmibc/ibc.hpp"

#include "gsmibc/error.hpp"
#include "gsmibc/ops.hpp"

namespace gsmibc
{
namespace
{
Point identity_point(ByteView id, const CurveProfile& curve)
{
    if (id.empty())
        throw Error(Errc::malformed_message, "empty identity");
    Point q_id = map_to_point(id, curve);
    if (q_id.is_identity())
        throw Error(Errc::degenerate_key, "identity hashes to the point at infinity");
    return q_id;
}

BigInt nonzero_scalar(const CurveProfile& curve, Rng& rng)
{
    return rng.between(1, curve.q() - 1);
}

// Splits a point encoding off the front of b.
Point take_point(const CurveProfile& curve, ByteView& b)
{
    if (b.empty())
        throw Error(Errc::malformed_message, "truncated point");
    std::size_t n = encoded_point_size(curve, b[0]);
    if (b.size() < n)
        throw Error(Errc::malformed_message, "truncated point");
    Point P = decode_point(curve, b.first(n));
    b = b.subspan(n);
    return P;
}

}  // namespace

MasterKey MasterKey::setup(const CurveProfile& curve, Rng& rng)
{
    return from_secret(curve, nonzero_scalar(curve, rng));
}

MasterKey MasterKey::from_secret(const CurveProfile& curve, const BigInt& k)
{
    Scalar s = curve.scalar(k);
    if (s.is_zero())
        throw Error(Errc::degenerate_key, "master secret must be nonzero mod q");
    Point ppub = scalar_mul(s, curve.generator());
    return MasterKey(std::move(s), std::move(ppub));
}

IdentityKey extract(const MasterKey& mk, ByteView id)
{
    Point q_id = identity_point(id, mk.ppub().curve());
    Point d_id = scalar_mul(mk.secret(), q_id);
    return {Bytes(id.begin(), id.end()), std::move(q_id), std::move(d_id)};
}

bool key_is_valid(const Point& ppub, const IdentityKey& key)
{
    const auto& curve = ppub.curve();
    if (!in_subgroup(key.d_id) || key.q_id != map_to_point(key.id, curve))
        return false;
    return pairing(key.d_id, curve.generator()) == pairing(key.q_id, ppub);
}

Bytes encode(const IbeCiphertext& c)
{
    return concat(encode(c.u), be32(static_cast<std::uint32_t>(c.v.size())), c.v);
}

IbeCiphertext decode_ibe_ciphertext(const CurveProfile& curve, ByteView b)
{
    Point u = take_point(curve, b);
    std::uint32_t len = read_be32(b);
    b = b.subspan(4);
    if (b.size() != len)
        throw Error(Errc::malformed_message, "ciphertext length mismatch");
    return {std::move(u), Bytes(b.begin(), b.end())};
}

IdentityPublic IdentityPublic::derive(const Point& ppub, ByteView id)
{
    Point q_id = identity_point(id, ppub.curve());
    GtElement g_id = pairing(q_id, ppub);
    return {Bytes(id.begin(), id.end()), std::move(q_id), std::move(g_id)};
}

IbeCiphertext ibe_encrypt(const Point& ppub, ByteView recipient_id, ByteView m, Rng& rng)
{
    if (m.empty())
        throw Error(Errc::malformed_message, "empty plaintext");
    return ibe_encrypt(IdentityPublic::derive(ppub, recipient_id), m, rng);
}

IbeCiphertext ibe_encrypt(const IdentityPublic& recipient, ByteView m, Rng& rng)
{
    if (m.empty())
        throw Error(Errc::malformed_message, "empty plaintext");
    ++ops::thread_counters().ibe;
    const auto& curve = recipient.q_id.curve();
    BigInt r = nonzero_scalar(curve, rng);
    GtElement g = gt_pow(recipient.g_id, r);
    return {scalar_mul(r, curve.generator()), xor_bytes(m, h2_mask(g, m.size()))};
}

Bytes ibe_decrypt(const IdentityKey& sk, const IbeCiphertext& c)
{
    ++ops::thread_counters().ibe;
    if (c.u.is_identity() || !in_subgroup(c.u))
        throw Error(Errc::invalid_point, "ciphertext U is not a non-identity subgroup point");
    GtElement g = pairing(sk.d_id, c.u);
    return xor_bytes(c.v, h2_mask(g, c.v.size()));
}

Bytes encode(const IbsSignature& s)
{
    return concat(encode(s.u), encode(s.v));
}

IbsSignature decode_ibs_signature(const CurveProfile& curve, ByteView b)
{
    Point u = take_point(curve, b);
    Point v = take_point(curve, b);
    if (!b.empty())
        throw Error(Errc::malformed_message, "trailing bytes after signature");
    return {std::move(u), std::move(v)};
}

IbsSignature ibs_sign(const IdentityKey& sk, ByteView m, Rng& rng)
{
    if (m.empty())
        throw Error(Errc::malformed_message, "empty message");
    ++ops::thread_counters().ibs;
    const auto& curve = sk.q_id.curve();
    BigInt r = nonzero_scalar(curve, rng);
    Point u = scalar_mul(r, sk.q_id);
    Scalar h = hash_to_scalar(concat(m, encode(u)), curve.q());
    Point v = scalar_mul(curve.scalar(r + h.value()), sk.d_id);
    return {std::move(u), std::move(v)};
}

namespace
{
bool verify_with(const Point& ppub, const Point& q_id, ByteView m, const IbsSignature& sig)
{
    ++ops::thread_counters().ibs;
    if (!is_on_curve(sig.u) || !is_on_curve(sig.v))
        throw Error(Errc::invalid_point, "signature point off the curve");
    const auto& curve = ppub.curve();
    Scalar h = hash_to_scalar(concat(m, encode(sig.u)), curve.q());
    Point rhs_arg = sig.u + scalar_mul(h, q_id);
    return pairing(sig.v, curve.generator()) == pairing(rhs_arg, ppub);
}
}  // namespace

bool ibs_verify(const Point& ppub, ByteView signer_id, ByteView m, const IbsSignature& sig)
{
    return verify_with(ppub, identity_point(signer_id, ppub.curve()), m, sig);
}

bool ibs_verify(const Point& ppub, const IdentityPublic& signer, ByteView m, const IbsSignature& sig)
{
    return verify_with(ppub, signer.q_id, m, sig);
}

}  // namespace gsmibc
