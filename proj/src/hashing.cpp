// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gsmibc/hashing.hpp"

#include <openssl/evp.h>

#include "gsmibc/error.hpp"

namespace gsmibc
{
Digest base_hash(ByteView msg)
{
    Digest out{};
    unsigned int len = 0;
    if (EVP_Digest(msg.data(), msg.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.size())
        throw Error(Errc::internal, "SHA-256 failed");
    return out;
}

MapToPointTrace map_to_point_traced(ByteView msg, const CurveProfile& curve)
{
    const auto& f = curve.field();
    for (unsigned i = 1; i <= map_to_point_attempt_limit; ++i) {
        Digest h = base_hash(concat(be32(i), msg));
        Fp x = f(from_be_bytes(view(h)));
        bool b = (h.back() & 1U) != 0;
        Fp rhs = curve.rhs(x);
        if (!rhs.is_square())
            continue;
        auto roots = rhs.sqrt();
        const Fp& y = roots[0].value() >= roots[1].value() ? roots[0] : roots[1];
        Point lifted = Point::affine(curve, x, y);
        Point point = scalar_mul(curve.cofactor(), lifted);
        if (curve.cofactor_clears())
            point = mark_in_subgroup(std::move(point));
        return {std::move(point), std::move(lifted), i, b};
    }
    throw Error(Errc::iteration_limit, "map_to_point found no square in 256 attempts");
}

Point map_to_point(ByteView msg, const CurveProfile& curve)
{
    return map_to_point_traced(msg, curve).point;
}

Scalar hash_to_scalar(ByteView msg, const BigInt& q)
{
    Scalar s(from_be_bytes(view(base_hash(msg))), q);
    if (s.is_zero())
        return Scalar(1, q);
    return s;
}

Digest hash_point(const Point& P)
{
    if (!is_on_curve(P))
        throw Error(Errc::invalid_point, "hash of an off-curve point");
    return base_hash(encode(P));
}

Bytes expand(ByteView seed, std::size_t out_len)
{
    Bytes out;
    out.reserve(out_len + 32);
    for (std::uint32_t ctr = 0; out.size() < out_len; ++ctr) {
        Digest block = base_hash(concat(seed, be32(ctr)));
        append(out, view(block));
    }
    out.resize(out_len);
    return out;
}

Bytes h2_mask(const GtElement& z, std::size_t out_len)
{
    return expand(encode(z), out_len);
}

SessionKey kdf_session(const Point& k)
{
    if (k.is_identity())
        throw Error(Errc::degenerate_key, "session point is O");
    if (!is_on_curve(k))
        throw Error(Errc::invalid_point, "session point is off the curve");
    return base_hash(concat(to_bytes("GSM-IBC-SK"), encode(k)));
}

}  // namespace gsmibc
