// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "gsmibc/bytes.hpp"
#include "gsmibc/error.hpp"
#include "gsmibc/ops.hpp"
#include "gsmibc/rng.hpp"

namespace gsmibc
{
std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::invalid_point: return "invalid-point";
    case Errc::not_in_subgroup: return "not-in-subgroup";
    case Errc::division_by_zero: return "division-by-zero";
    case Errc::non_residue: return "non-residue";
    case Errc::iteration_limit: return "iteration-limit";
    case Errc::degenerate_key: return "degenerate-key";
    case Errc::bad_profile: return "bad-profile";
    case Errc::malformed_message: return "malformed-message";
    case Errc::unknown_subscriber: return "unknown-subscriber";
    case Errc::replay_detected: return "replay-detected";
    case Errc::ms_auth_failure: return "ms-auth-failure";
    case Errc::vlr_auth_failure: return "vlr-auth-failure";
    case Errc::signature_invalid: return "signature-invalid";
    case Errc::network_auth_failure: return "network-auth-failure";
    case Errc::session_state: return "session-state";
    case Errc::duplicate_subscriber: return "duplicate-subscriber";
    case Errc::io: return "io";
    case Errc::internal: return "internal";
    }
    return "unknown";
}

std::string to_hex(ByteView b)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(b.size() * 2);
    for (auto v : b) {
        out.push_back(digits[v >> 4]);
        out.push_back(digits[v & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex)
{
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0)
        throw Error(Errc::malformed_message, "odd-length hex string");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = nibble(hex[2 * i]);
        int lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw Error(Errc::malformed_message, "invalid hex digit");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

Bytes be32(std::uint32_t v)
{
    return {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
        static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
}

Bytes be16(std::uint16_t v)
{
    return {static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
}

std::uint32_t read_be32(ByteView b)
{
    if (b.size() < 4)
        throw Error(Errc::malformed_message, "truncated u32");
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
           std::uint32_t{b[3]};
}

Bytes to_be_bytes(const BigInt& v, std::size_t len)
{
    if (v < 0)
        throw Error(Errc::internal, "negative integer cannot be encoded");
    std::size_t n = (bit_length(v) + 7) / 8;
    if (n > len)
        throw Error(Errc::internal, "integer too wide for encoding");
    Bytes out(len, 0);
    std::size_t written = 0;
    if (n > 0)
        mpz_export(out.data() + (len - n), &written, 1, 1, 1, 0, v.get_mpz_t());
    return out;
}

BigInt from_be_bytes(ByteView b)
{
    BigInt v;
    if (!b.empty())
        mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
    return v;
}

Bytes xor_bytes(ByteView a, ByteView b)
{
    if (a.size() != b.size())
        throw Error(Errc::internal, "xor of unequal lengths");
    Bytes out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] ^ b[i];
    return out;
}

bool contains(ByteView haystack, ByteView needle)
{
    if (needle.empty())
        return true;
    return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

std::size_t bit_length(const BigInt& v)
{
    if (v == 0)
        return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

Rng Rng::fork(std::string_view label)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return Rng(engine_() ^ h);
}

Bytes Rng::bytes(std::size_t n)
{
    Bytes out(n);
    std::size_t i = 0;
    while (i < n) {
        std::uint64_t w = engine_();
        for (int k = 0; k < 8 && i < n; ++k, ++i)
            out[i] = static_cast<std::uint8_t>(w >> (8 * k));
    }
    return out;
}

BigInt Rng::below(const BigInt& bound)
{
    if (bound < 1)
        throw Error(Errc::internal, "empty sampling range");
    const std::size_t bits = bit_length(bound);
    const std::size_t nbytes = (bits + 7) / 8;
    const unsigned spare = static_cast<unsigned>(nbytes * 8 - bits);
    for (;;) {
        Bytes raw = bytes(nbytes);
        if (!raw.empty())
            raw[0] &= static_cast<std::uint8_t>(0xff >> spare);
        BigInt v = from_be_bytes(raw);
        if (v < bound)
            return v;
    }
}

BigInt Rng::between(const BigInt& lo, const BigInt& hi)
{
    return lo + below(hi - lo + 1);
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw Error(Errc::internal, "empty sampling range");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        std::uint64_t v = engine_();
        if (v < limit)
            return v % bound;
    }
}

namespace ops
{
Counters& thread_counters() noexcept
{
    thread_local Counters counters;
    return counters;
}
}  // namespace ops

}  // namespace gsmibc
