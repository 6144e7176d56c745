// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gsmibc/hashing.hpp"
#include "gsmibc/ibc.hpp"

namespace gsmibc
{
using Nonce = std::array<std::uint8_t, 16>;

// Message layout:
//   "GI" || 0x01 || msg_type u8 || session_id u32 BE || fields...
//   field = tag u8 || len u16 BE || bytes
// Fields appear exactly once, in the order listed per message.

enum class MsgType : std::uint8_t
{
    tmsi = 1,       // MS  -> VLR
    challenge = 2,  // VLR -> MS
    response = 3,   // MS  -> VLR
    to_hlr = 4,     // VLR -> HLR
    from_hlr = 5,   // HLR -> VLR
    confirm = 6,    // VLR -> MS
    // Classic triplet flow; challenge and tmsi are shared with the above.
    baseline_imsi = 0x10,
    baseline_triplets = 0x11,
    baseline_sres = 0x12,
};

namespace tag
{
inline constexpr std::uint8_t tmsi = 0x01;
inline constexpr std::uint8_t rand = 0x02;
inline constexpr std::uint8_t hk = 0x03;
inline constexpr std::uint8_t rand2 = 0x04;
inline constexpr std::uint8_t ibe_ct = 0x05;
inline constexpr std::uint8_t signature = 0x06;
inline constexpr std::uint8_t hm = 0x07;
inline constexpr std::uint8_t key_ct = 0x08;
inline constexpr std::uint8_t vlr_id = 0x09;
inline constexpr std::uint8_t imsi = 0x10;
inline constexpr std::uint8_t triplet = 0x11;
inline constexpr std::uint8_t sres = 0x12;
}  // namespace tag

struct M1Tmsi
{
    Bytes tmsi;
};
struct M2Challenge
{
    Nonce rand;
};
struct M3Response
{
    Digest hk;  // H(K'')
    Bytes tmsi;
    Nonce rand2;  // RAND'' = RAND xor RAND'
};
struct M4ToHlr
{
    IbeCiphertext ct;
};
struct M5FromHlr
{
    IbsSignature sig;
    Digest hm;  // H(IMSI || K'' || VLR_ID)
    IbeCiphertext key_ct;
};
struct M6Confirm
{
    Digest hm;
    Bytes vlr_id;
};

struct BaselineImsi
{
    Bytes imsi;
};
struct BaselineTriplet
{
    Nonce rand;
    std::array<std::uint8_t, 4> sres;
    std::array<std::uint8_t, 8> kc;
    bool operator==(const BaselineTriplet&) const = default;
};
struct BaselineTriplets
{
    std::vector<BaselineTriplet> triplets;
};
struct BaselineSres
{
    std::array<std::uint8_t, 4> sres;
};

using Payload = std::variant<M1Tmsi, M2Challenge, M3Response, M4ToHlr, M5FromHlr, M6Confirm,
    BaselineImsi, BaselineTriplets, BaselineSres>;

struct Envelope
{
    std::uint32_t session = 0;
    Payload payload;
};

MsgType type_of(const Payload& p);
std::string_view name_of(MsgType t);

Bytes encode(const Envelope& e);
/// Strict parser: wrong magic, version, type, tag order, field length or
/// trailing bytes throw Errc::malformed_message.
Envelope decode_envelope(const CurveProfile& curve, ByteView raw);

/// Header-only peek (type and session) without parsing the payload.
struct Header
{
    MsgType type;
    std::uint32_t session;
};
Header peek_header(ByteView raw);

/// One-line human summary of a decoded message (no secrets are ever on the
/// wire, so everything decoded is safe to print).
std::string summarize(const Envelope& e);

struct TlvField
{
    std::uint8_t tag;
    Bytes value;
};

Bytes encode_tlv(const std::vector<TlvField>& fields);
/// Parses exactly the listed tags, in order, and nothing else.
std::vector<TlvField> decode_tlv(ByteView b, std::initializer_list<std::uint8_t> expected);
/// Byte ranges [offset, offset + len) of every field value in a full
/// message, for scanners that need to know what sits inside which field.
struct FieldSpan
{
    std::uint8_t tag;
    std::size_t offset;
    std::size_t len;
};
std::vector<FieldSpan> field_spans(ByteView raw);

/// The plaintext VLR encrypts to HLR: TLV(imsi, hk, vlr_id, rand2).
struct HlrRequest
{
    Bytes imsi;
    Digest hk;
    Bytes vlr_id;
    Nonce rand2;
};
Bytes encode(const HlrRequest& r);
HlrRequest decode_hlr_request(ByteView b);

}  // namespace gsmibc
