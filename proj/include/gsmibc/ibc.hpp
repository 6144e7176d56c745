// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "gsmibc/hashing.hpp"
#include "gsmibc/pairing.hpp"
#include "gsmibc/rng.hpp"

namespace gsmibc
{
/// The key generator's master secret K and the published P_pub = K G.
class MasterKey
{
public:
    /// K uniform in [1, q-1].
    static MasterKey setup(const CurveProfile& curve, Rng& rng);
    /// Rebuild from a stored secret (key files). Rejects K = 0.
    static MasterKey from_secret(const CurveProfile& curve, const BigInt& k);

    const Point& ppub() const noexcept { return ppub_; }
    /// Only the key generator (HLR) and its key file ever see this.
    const Scalar& secret() const noexcept { return k_; }

private:
    MasterKey(Scalar k, Point ppub) : k_(std::move(k)), ppub_(std::move(ppub)) {}
    Scalar k_;
    Point ppub_;
};

/// An extracted identity key: Q_id = H(id) and D_id = K Q_id. This is the
/// shape of both the HLR's private key and the SIM key K'.
struct IdentityKey
{
    Bytes id;
    Point q_id;
    Point d_id;
};

/// extract(K, id) -> (id, H(id), K H(id)). Throws malformed_message on an
/// empty id and degenerate_key when H(id) is O (possible on tiny curves).
IdentityKey extract(const MasterKey& mk, ByteView id);

/// e(D_id, G) == e(Q_id, P_pub): checks a key without knowing K.
bool key_is_valid(const Point& ppub, const IdentityKey& key);

/// Public side of an identity with the pairing value e(Q_id, P_pub)
/// precomputed, so repeated encryptions to one recipient skip a pairing.
struct IdentityPublic
{
    Bytes id;
    Point q_id;
    GtElement g_id;

    static IdentityPublic derive(const Point& ppub, ByteView id);
};

struct IbeCiphertext
{
    Point u;
    Bytes v;
};

/// encode(U) || be32(len V) || V
Bytes encode(const IbeCiphertext& c);
IbeCiphertext decode_ibe_ciphertext(const CurveProfile& curve, ByteView b);

/// Basic (CPA) identity-based encryption:
///   r <- [1, q-1], U = r G, V = m xor H2(e(H(id), P_pub)^r).
IbeCiphertext ibe_encrypt(const Point& ppub, ByteView recipient_id, ByteView m, Rng& rng);
IbeCiphertext ibe_encrypt(const IdentityPublic& recipient, ByteView m, Rng& rng);
/// m = V xor H2(e(D_id, U)). U must be a non-identity subgroup point
/// (Errc::invalid_point).
Bytes ibe_decrypt(const IdentityKey& sk, const IbeCiphertext& c);

struct IbsSignature
{
    Point u;
    Point v;
};

/// encode(U) || encode(V)
Bytes encode(const IbsSignature& s);
IbsSignature decode_ibs_signature(const CurveProfile& curve, ByteView b);

/// Identity-based signature keyed by the point D_id:
///   U = r Q_id, h = H(m || encode(U)), V = (r + h) D_id.
IbsSignature ibs_sign(const IdentityKey& sk, ByteView m, Rng& rng);
/// Accepts iff e(V, G) == e(U + h Q_id, P_pub). Off-curve or non-subgroup
/// signature points throw.
bool ibs_verify(const Point& ppub, ByteView signer_id, ByteView m, const IbsSignature& sig);
bool ibs_verify(const Point& ppub, const IdentityPublic& signer, ByteView m, const IbsSignature& sig);

}  // namespace gsmibc
