// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gsmibc/wire.hpp"

#include <algorithm>
#include <sstream>

#include "gsmibc/error.hpp"

namespace gsmibc
{
namespace
{
constexpr std::uint8_t magic0 = 'G';
constexpr std::uint8_t magic1 = 'I';
constexpr std::uint8_t version = 0x01;
constexpr std::size_t header_len = 8;

template <std::size_t N>
std::array<std::uint8_t, N> fixed(const Bytes& b, const char* what)
{
    if (b.size() != N)
        throw Error(Errc::malformed_message, std::string("wrong length for ") + what);
    std::array<std::uint8_t, N> out{};
    std::copy(b.begin(), b.end(), out.begin());
    return out;
}

template <std::size_t N>
Bytes bytes_of(const std::array<std::uint8_t, N>& a)
{
    return Bytes(a.begin(), a.end());
}

Bytes encode_payload(const Payload& p)
{
    return std::visit(
        [](const auto& m) -> Bytes {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, M1Tmsi>)
                return encode_tlv({{tag::tmsi, m.tmsi}});
            else if constexpr (std::is_same_v<T, M2Challenge>)
                return encode_tlv({{tag::rand, bytes_of(m.rand)}});
            else if constexpr (std::is_same_v<T, M3Response>)
                return encode_tlv(
                    {{tag::hk, bytes_of(m.hk)}, {tag::tmsi, m.tmsi}, {tag::rand2, bytes_of(m.rand2)}});
            else if constexpr (std::is_same_v<T, M4ToHlr>)
                return encode_tlv({{tag::ibe_ct, encode(m.ct)}});
            else if constexpr (std::is_same_v<T, M5FromHlr>)
                return encode_tlv({{tag::signature, encode(m.sig)}, {tag::hm, bytes_of(m.hm)},
                    {tag::key_ct, encode(m.key_ct)}});
            else if constexpr (std::is_same_v<T, M6Confirm>)
                return encode_tlv({{tag::hm, bytes_of(m.hm)}, {tag::vlr_id, m.vlr_id}});
            else if constexpr (std::is_same_v<T, BaselineImsi>)
                return encode_tlv({{tag::imsi, m.imsi}});
            else if constexpr (std::is_same_v<T, BaselineTriplets>) {
                std::vector<TlvField> fields;
                for (const auto& t : m.triplets)
                    fields.push_back({tag::triplet, concat(t.rand, t.sres, t.kc)});
                return encode_tlv(fields);
            }
            else
                return encode_tlv({{tag::sres, bytes_of(m.sres)}});
        },
        p);
}

// Walks the TLV list without interpreting it.
std::vector<std::pair<std::uint8_t, ByteView>> split_tlv(ByteView b)
{
    std::vector<std::pair<std::uint8_t, ByteView>> out;
    while (!b.empty()) {
        if (b.size() < 3)
            throw Error(Errc::malformed_message, "truncated field header");
        std::uint8_t t = b[0];
        std::size_t len = (std::size_t{b[1]} << 8) | b[2];
        if (b.size() < 3 + len)
            throw Error(Errc::malformed_message, "truncated field value");
        out.emplace_back(t, b.subspan(3, len));
        b = b.subspan(3 + len);
    }
    return out;
}

Payload decode_payload(const CurveProfile& curve, MsgType type, ByteView body)
{
    switch (type) {
    case MsgType::tmsi: {
        auto f = decode_tlv(body, {tag::tmsi});
        return M1Tmsi{f[0].value};
    }
    case MsgType::challenge: {
        auto f = decode_tlv(body, {tag::rand});
        return M2Challenge{fixed<16>(f[0].value, "RAND")};
    }
    case MsgType::response: {
        auto f = decode_tlv(body, {tag::hk, tag::tmsi, tag::rand2});
        return M3Response{fixed<32>(f[0].value, "H(K'')"), f[1].value, fixed<16>(f[2].value, "RAND''")};
    }
    case MsgType::to_hlr: {
        auto f = decode_tlv(body, {tag::ibe_ct});
        return M4ToHlr{decode_ibe_ciphertext(curve, f[0].value)};
    }
    case MsgType::from_hlr: {
        auto f = decode_tlv(body, {tag::signature, tag::hm, tag::key_ct});
        return M5FromHlr{decode_ibs_signature(curve, f[0].value), fixed<32>(f[1].value, "hm"),
            decode_ibe_ciphertext(curve, f[2].value)};
    }
    case MsgType::confirm: {
        auto f = decode_tlv(body, {tag::hm, tag::vlr_id});
        return M6Confirm{fixed<32>(f[0].value, "hm"), f[1].value};
    }
    case MsgType::baseline_imsi: {
        auto f = decode_tlv(body, {tag::imsi});
        return BaselineImsi{f[0].value};
    }
    case MsgType::baseline_triplets: {
        BaselineTriplets out;
        for (auto [t, v] : split_tlv(body)) {
            if (t != tag::triplet || v.size() != 28)
                throw Error(Errc::malformed_message, "bad triplet field");
            BaselineTriplet trip{};
            std::copy_n(v.begin(), 16, trip.rand.begin());
            std::copy_n(v.begin() + 16, 4, trip.sres.begin());
            std::copy_n(v.begin() + 20, 8, trip.kc.begin());
            out.triplets.push_back(trip);
        }
        return out;
    }
    case MsgType::baseline_sres: {
        auto f = decode_tlv(body, {tag::sres});
        return BaselineSres{fixed<4>(f[0].value, "SRES")};
    }
    }
    throw Error(Errc::malformed_message, "unknown message type");
}

std::string short_hex(ByteView b)
{
    std::string h = to_hex(b);
    return h.size() > 16 ? h.substr(0, 16) + "..." : h;
}

}  // namespace

MsgType type_of(const Payload& p)
{
    static constexpr MsgType types[] = {MsgType::tmsi, MsgType::challenge, MsgType::response,
        MsgType::to_hlr, MsgType::from_hlr, MsgType::confirm, MsgType::baseline_imsi,
        MsgType::baseline_triplets, MsgType::baseline_sres};
    return types[p.index()];
}

std::string_view name_of(MsgType t)
{
    switch (t) {
    case MsgType::tmsi: return "M1_Tmsi";
    case MsgType::challenge: return "M2_Challenge";
    case MsgType::response: return "M3_Response";
    case MsgType::to_hlr: return "M4_ToHlr";
    case MsgType::from_hlr: return "M5_FromHlr";
    case MsgType::confirm: return "M6_Confirm";
    case MsgType::baseline_imsi: return "B_Imsi";
    case MsgType::baseline_triplets: return "B_Triplets";
    case MsgType::baseline_sres: return "B_Sres";
    }
    return "unknown";
}

Bytes encode_tlv(const std::vector<TlvField>& fields)
{
    Bytes out;
    for (const auto& f : fields) {
        if (f.value.size() > 0xffff)
            throw Error(Errc::malformed_message, "field longer than 65535 bytes");
        out.push_back(f.tag);
        append(out, be16(static_cast<std::uint16_t>(f.value.size())));
        append(out, f.value);
    }
    return out;
}

std::vector<TlvField> decode_tlv(ByteView b, std::initializer_list<std::uint8_t> expected)
{
    auto raw = split_tlv(b);
    if (raw.size() != expected.size())
        throw Error(Errc::malformed_message, "unexpected field count");
    std::vector<TlvField> out;
    auto it = expected.begin();
    for (auto [t, v] : raw) {
        if (t != *it++)
            throw Error(Errc::malformed_message, "unexpected field tag");
        out.push_back({t, Bytes(v.begin(), v.end())});
    }
    return out;
}

Bytes encode(const Envelope& e)
{
    Bytes out{magic0, magic1, version, static_cast<std::uint8_t>(type_of(e.payload))};
    append(out, be32(e.session));
    append(out, encode_payload(e.payload));
    return out;
}

Header peek_header(ByteView raw)
{
    if (raw.size() < header_len || raw[0] != magic0 || raw[1] != magic1)
        throw Error(Errc::malformed_message, "bad magic");
    if (raw[2] != version)
        throw Error(Errc::malformed_message, "unsupported version");
    auto t = static_cast<MsgType>(raw[3]);
    if (name_of(t) == "unknown")
        throw Error(Errc::malformed_message, "unknown message type");
    return {t, read_be32(raw.subspan(4))};
}

Envelope decode_envelope(const CurveProfile& curve, ByteView raw)
{
    Header h = peek_header(raw);
    return {h.session, decode_payload(curve, h.type, raw.subspan(header_len))};
}

std::vector<FieldSpan> field_spans(ByteView raw)
{
    peek_header(raw);
    std::vector<FieldSpan> out;
    std::size_t off = header_len;
    for (auto [t, v] : split_tlv(raw.subspan(header_len))) {
        out.push_back({t, off + 3, v.size()});
        off += 3 + v.size();
    }
    return out;
}

std::string summarize(const Envelope& e)
{
    std::ostringstream s;
    s << name_of(type_of(e.payload)) << " sid=" << e.session;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, M1Tmsi>)
                s << " tmsi=" << to_string(m.tmsi);
            else if constexpr (std::is_same_v<T, M2Challenge>)
                s << " rand=" << to_hex(m.rand);
            else if constexpr (std::is_same_v<T, M3Response>)
                s << " hk=" << short_hex(m.hk) << " tmsi=" << to_string(m.tmsi)
                  << " rand2=" << to_hex(m.rand2);
            else if constexpr (std::is_same_v<T, M4ToHlr>)
                s << " ct.len=" << m.ct.v.size();
            else if constexpr (std::is_same_v<T, M5FromHlr>)
                s << " hm=" << short_hex(m.hm) << " key_ct.len=" << m.key_ct.v.size();
            else if constexpr (std::is_same_v<T, M6Confirm>)
                s << " hm=" << short_hex(m.hm) << " vlr_id=" << to_string(m.vlr_id);
            else if constexpr (std::is_same_v<T, BaselineImsi>)
                s << " imsi.len=" << m.imsi.size();
            else if constexpr (std::is_same_v<T, BaselineTriplets>)
                s << " n=" << m.triplets.size();
            else
                s << " sres=" << to_hex(m.sres);
        },
        e.payload);
    return s.str();
}

Bytes encode(const HlrRequest& r)
{
    return encode_tlv({{tag::imsi, r.imsi}, {tag::hk, bytes_of(r.hk)}, {tag::vlr_id, r.vlr_id},
        {tag::rand2, bytes_of(r.rand2)}});
}

HlrRequest decode_hlr_request(ByteView b)
{
    auto f = decode_tlv(b, {tag::imsi, tag::hk, tag::vlr_id, tag::rand2});
    return {f[0].value, fixed<32>(f[1].value, "H(K'')"), f[2].value, fixed<16>(f[3].value, "RAND''")};
}

}  // namespace gsmibc
