// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

#include "gsmibc/curve.hpp"
#include "gsmibc/pairing.hpp"

namespace gsmibc
{
using Digest = std::array<std::uint8_t, 32>;
using SessionKey = std::array<std::uint8_t, 32>;

/// SHA-256.
Digest base_hash(ByteView msg);

inline constexpr unsigned map_to_point_attempt_limit = 256;

struct MapToPointTrace
{
    Point point;        // P_M = cofactor * (x, y_b)
    Point lifted;       // (x, y_b) before cofactor clearing
    unsigned attempt;   // the i that succeeded
    bool hash_bit;      // b from h(i || M); computed, never used to pick the root
};

/// Try-and-increment hash onto the order-q subgroup:
///   for i = 1, 2, ...: (x, b) = h(be32(i) || M); if x^3 + a x + b is a
///   square, take the larger root, lift and multiply by the cofactor.
/// Throws Errc::iteration_limit after 256 attempts.
Point map_to_point(ByteView msg, const CurveProfile& curve);
MapToPointTrace map_to_point_traced(ByteView msg, const CurveProfile& curve);

/// SHA-256(msg) mod q, with 0 replaced by 1.
Scalar hash_to_scalar(ByteView msg, const BigInt& q);

/// base_hash(encode(P)); rejects off-curve points.
Digest hash_point(const Point& P);

/// Counter-mode expansion: SHA-256(seed || be32(0)) || SHA-256(seed || be32(1)) ...
/// truncated to out_len.
Bytes expand(ByteView seed, std::size_t out_len);

/// The IBE mask: expand(encode(z), out_len).
Bytes h2_mask(const GtElement& z, std::size_t out_len);

/// SHA-256("GSM-IBC-SK" || encode(K'')). Throws Errc::degenerate_key on O.
SessionKey kdf_session(const Point& k);

template <std::size_t N>
ByteView view(const std::array<std::uint8_t, N>& a)
{
    return ByteView(a.data(), a.size());
}

}  // namespace gsmibc
