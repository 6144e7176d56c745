// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace gsmibc
{
using BigInt = mpz_class;
using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline Bytes to_bytes(std::string_view s)
{
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(ByteView b)
{
    return std::string(b.begin(), b.end());
}

std::string to_hex(ByteView b);
/// Throws Errc::malformed_message on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

Bytes be32(std::uint32_t v);
Bytes be16(std::uint16_t v);
std::uint32_t read_be32(ByteView b);

/// Big-endian, left-padded to exactly len bytes. Throws if v does not fit.
Bytes to_be_bytes(const BigInt& v, std::size_t len);
BigInt from_be_bytes(ByteView b);

/// Append helper for building wire strings.
inline void append(Bytes& out, ByteView b)
{
    out.insert(out.end(), b.begin(), b.end());
}

template <typename... Parts>
Bytes concat(const Parts&... parts)
{
    Bytes out;
    (append(out, ByteView(parts)), ...);
    return out;
}

Bytes xor_bytes(ByteView a, ByteView b);

/// True iff needle occurs as a contiguous substring of haystack.
bool contains(ByteView haystack, ByteView needle);

std::size_t bit_length(const BigInt& v);

}  // namespace gsmibc
