// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gsmibc/baseline.hpp"

#include <algorithm>

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include "gsmibc/error.hpp"

namespace gsmibc::baseline
{
namespace
{
Digest hmac(const Ki& ki, std::string_view label, const Nonce& rand)
{
    Bytes msg = concat(to_bytes(label), rand);
    Digest out{};
    unsigned len = 0;
    if (HMAC(EVP_sha256(), ki.data(), static_cast<int>(ki.size()), msg.data(), msg.size(),
            out.data(), &len) == nullptr ||
        len != out.size())
        throw Error(Errc::internal, "HMAC-SHA-256 failed");
    return out;
}

}  // namespace

Sres a3(const Ki& ki, const Nonce& rand)
{
    Digest d = hmac(ki, "A3", rand);
    Sres s{};
    std::copy_n(d.begin(), s.size(), s.begin());
    return s;
}

Kc a8(const Ki& ki, const Nonce& rand)
{
    Digest d = hmac(ki, "A8", rand);
    Kc k{};
    std::copy_n(d.begin(), k.size(), k.begin());
    k[7] = 0;
    k[6] &= 0xFC;
    return k;
}

BaselineTriplet make_triplet(const Ki& ki, const Nonce& rand)
{
    return {rand, a3(ki, rand), a8(ki, rand)};
}

std::vector<BaselineTriplet> gen_triplets(const Ki& ki, Rng& rng, std::size_t n)
{
    std::vector<BaselineTriplet> out;
    out.reserve(n);
    while (out.size() < n) {
        Nonce rand{};
        Bytes b = rng.bytes(rand.size());
        std::copy(b.begin(), b.end(), rand.begin());
        bool repeat = std::any_of(
            out.begin(), out.end(), [&](const BaselineTriplet& t) { return t.rand == rand; });
        if (!repeat)
            out.push_back(make_triplet(ki, rand));
    }
    return out;
}

bool authenticate(const Ki& ki, const BaselineTriplet& triplet)
{
    return a3(ki, triplet.rand) == triplet.sres;
}

// ---------------------------------------------------------------- MS

M1Tmsi MobileStation::start(std::uint32_t sid)
{
    book_.open(sid);
    return {sub_.tmsi};
}

BaselineSres MobileStation::respond(std::uint32_t sid, const M2Challenge& m2)
{
    return book_.guard(sid, [&] {
        auto& s = book_.at(sid);
        if (s.phase != Phase::started)
            throw Error(Errc::session_state, "challenge out of order");
        results_[sid] = Result{a8(sub_.ki, m2.rand), true};
        s.phase = Phase::established;
        return BaselineSres{a3(sub_.ki, m2.rand)};
    });
}

void MobileStation::abort(std::uint32_t sid, Errc why)
{
    results_.erase(sid);
    book_.abort(sid, why);
}

std::optional<Result> MobileStation::result(std::uint32_t sid) const
{
    auto it = results_.find(sid);
    if (it == results_.end())
        return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------- VLR

void VisitorLocationRegister::add_subscriber(ByteView tmsi, ByteView imsi)
{
    std::lock_guard lock(mutex_);
    tmsi_table_[Bytes(tmsi.begin(), tmsi.end())] = Bytes(imsi.begin(), imsi.end());
}

BaselineImsi VisitorLocationRegister::request_triplets(std::uint32_t sid, const M1Tmsi& m1)
{
    std::lock_guard lock(mutex_);
    book_.open(sid);
    return book_.guard(sid, [&] {
        auto it = tmsi_table_.find(m1.tmsi);
        if (it == tmsi_table_.end())
            throw Error(Errc::unknown_subscriber, "TMSI not in the VLR table");
        pending_[sid] = {it->second, BaselineTriplet{}};
        return BaselineImsi{it->second};
    });
}

M2Challenge VisitorLocationRegister::challenge(std::uint32_t sid, const BaselineTriplets& m)
{
    std::lock_guard lock(mutex_);
    return book_.guard(sid, [&] {
        auto& s = book_.at(sid);
        auto pit = pending_.find(sid);
        if (s.phase != Phase::started || pit == pending_.end())
            throw Error(Errc::session_state, "triplets out of order");
        auto& spare = spare_[pit->second.first];
        spare.insert(spare.end(), m.triplets.begin(), m.triplets.end());
        if (spare.empty())
            throw Error(Errc::malformed_message, "HLR returned no triplets");
        pit->second.second = spare.front();
        spare.pop_front();
        s.phase = Phase::awaiting_confirm;
        return M2Challenge{pit->second.second.rand};
    });
}

Result VisitorLocationRegister::verify(std::uint32_t sid, const BaselineSres& m)
{
    std::lock_guard lock(mutex_);
    return book_.guard(sid, [&] {
        auto& s = book_.at(sid);
        auto pit = pending_.find(sid);
        if (s.phase != Phase::awaiting_confirm || pit == pending_.end())
            throw Error(Errc::session_state, "SRES out of order");
        const BaselineTriplet t = pit->second.second;
        pending_.erase(pit);
        if (t.sres != m.sres)
            throw Error(Errc::ms_auth_failure, "SRES mismatch");
        s.phase = Phase::established;
        return Result{t.kc, true};
    });
}

void VisitorLocationRegister::abort(std::uint32_t sid, Errc why)
{
    std::lock_guard lock(mutex_);
    pending_.erase(sid);
    book_.abort(sid, why);
}

const SessionState* VisitorLocationRegister::session(std::uint32_t sid) const
{
    std::lock_guard lock(mutex_);
    return book_.find(sid);
}

// ---------------------------------------------------------------- HLR

Subscriber HomeLocationRegister::register_subscriber(ByteView imsi, ByteView tmsi)
{
    std::lock_guard lock(mutex_);
    Bytes key(imsi.begin(), imsi.end());
    if (auc_.count(key) != 0)
        throw Error(Errc::duplicate_subscriber, "IMSI already registered");
    Ki ki{};
    Bytes b = rng_.bytes(ki.size());
    std::copy(b.begin(), b.end(), ki.begin());
    auc_.emplace(key, ki);
    return {key, Bytes(tmsi.begin(), tmsi.end()), ki};
}

void HomeLocationRegister::restore_subscriber(ByteView imsi, const Ki& ki)
{
    std::lock_guard lock(mutex_);
    if (!auc_.emplace(Bytes(imsi.begin(), imsi.end()), ki).second)
        throw Error(Errc::duplicate_subscriber, "IMSI already registered");
}

BaselineTriplets HomeLocationRegister::process(std::uint32_t, const BaselineImsi& m)
{
    std::lock_guard lock(mutex_);
    auto it = auc_.find(m.imsi);
    if (it == auc_.end())
        throw Error(Errc::unknown_subscriber, "IMSI not registered");
    return {gen_triplets(it->second, rng_)};
}

}  // namespace gsmibc::baseline
