// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <deque>
#include <map>
#include <mutex>
#include <optional>

#include "gsmibc/protocol.hpp"
#include "gsmibc/wire.hpp"

// Classic GSM triplet authentication, kept for comparison. A3 and A8 are
// stand-ins built from HMAC-SHA-256; the A5 cipher is not modelled.
namespace gsmibc::baseline
{
using Ki = std::array<std::uint8_t, 16>;
using Sres = std::array<std::uint8_t, 4>;
using Kc = std::array<std::uint8_t, 8>;

/// First 4 bytes of HMAC-SHA-256(ki, "A3" || rand).
Sres a3(const Ki& ki, const Nonce& rand);
/// First 8 bytes of HMAC-SHA-256(ki, "A8" || rand), low 10 bits cleared
/// (54 effective bits).
Kc a8(const Ki& ki, const Nonce& rand);

BaselineTriplet make_triplet(const Ki& ki, const Nonce& rand);

inline constexpr std::size_t default_triplet_count = 5;
std::vector<BaselineTriplet> gen_triplets(
    const Ki& ki, Rng& rng, std::size_t n = default_triplet_count);

/// SRES' = A3(RAND, ki) compared with the triplet's SRES. A reject is a
/// result, not an error.
bool authenticate(const Ki& ki, const BaselineTriplet& triplet);

struct Result
{
    Kc kc{};
    bool authenticated = false;
};

struct Subscriber
{
    Bytes imsi;
    Bytes tmsi;
    Ki ki{};
};

/// SIM side. Answers any RAND it is given: it has no means to check who asked.
class MobileStation
{
public:
    explicit MobileStation(Subscriber sub) : sub_(std::move(sub)) {}

    M1Tmsi start(std::uint32_t sid);
    BaselineSres respond(std::uint32_t sid, const M2Challenge& m2);
    void abort(std::uint32_t sid, Errc why);

    const Subscriber& subscriber() const noexcept { return sub_; }
    const SessionState* session(std::uint32_t sid) const { return book_.find(sid); }
    std::optional<Result> result(std::uint32_t sid) const;

private:
    Subscriber sub_;
    SessionBook book_;
    std::map<std::uint32_t, Result> results_;
};

class VisitorLocationRegister
{
public:
    void add_subscriber(ByteView tmsi, ByteView imsi);

    /// TMSI resolved locally; triplets are requested from the HLR by IMSI.
    BaselineImsi request_triplets(std::uint32_t sid, const M1Tmsi& m1);
    M2Challenge challenge(std::uint32_t sid, const BaselineTriplets& m);
    /// Throws Errc::ms_auth_failure when SRES differs.
    Result verify(std::uint32_t sid, const BaselineSres& m);
    void abort(std::uint32_t sid, Errc why);

    const SessionState* session(std::uint32_t sid) const;

private:
    mutable std::mutex mutex_;
    std::map<Bytes, Bytes> tmsi_table_;
    std::map<Bytes, std::deque<BaselineTriplet>> spare_;
    std::map<std::uint32_t, std::pair<Bytes, BaselineTriplet>> pending_;
    SessionBook book_;
};

class HomeLocationRegister
{
public:
    explicit HomeLocationRegister(Rng rng) : rng_(std::move(rng)) {}

    /// Draws a fresh 128-bit Ki. Throws Errc::duplicate_subscriber.
    Subscriber register_subscriber(ByteView imsi, ByteView tmsi);
    /// Adds a subscriber whose Ki was issued earlier.
    void restore_subscriber(ByteView imsi, const Ki& ki);
    BaselineTriplets process(std::uint32_t sid, const BaselineImsi& m);

private:
    Rng rng_;
    mutable std::mutex mutex_;
    std::map<Bytes, Ki> auc_;
};

}  // namespace gsmibc::baseline
