// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <utility>

#include "gsmibc/error.hpp"
#include "gsmibc/ibc.hpp"
#include "gsmibc/ops.hpp"
#include "gsmibc/wire.hpp"

namespace gsmibc
{
/// How the session multiplier is derived from RAND''.
enum class ScalarRule
{
    hashed,  // K'' = hash_to_scalar(RAND'') K'   (default)
    direct,  // K'' = (RAND'' mod q) K'
};

/// The multiplier s with K'' = s K'. Never zero.
Scalar session_scalar(const Nonce& rand2, const BigInt& q, ScalarRule rule);

/// Everything an entity may know without holding a secret.
struct SystemParams
{
    std::shared_ptr<const CurveProfile> curve;
    Point ppub;
    Bytes hlr_id;
    ScalarRule rule = ScalarRule::hashed;
};

/// base_hash(imsi || encode(K'') || vlr_id)
Digest network_confirmation(ByteView imsi, const Point& kpp, ByteView vlr_id);

struct SimCard
{
    Bytes imsi;
    Bytes tmsi;
    Point kp;  // K' = K H(IMSI)
    std::optional<Nonce> last_rand;
};

struct SessionResult
{
    SessionKey session_key{};
    bool peer_authenticated = false;
    Point kpp;  // K''
};

enum class Phase
{
    started,
    awaiting_confirm,
    established,
    aborted,
};

/// Per-session bookkeeping shared by the three entities. A failed handler
/// moves the session to `aborted` and records the error; results exist only
/// for established sessions.
struct SessionState
{
    Phase phase = Phase::started;
    std::optional<Errc> error;
    std::optional<SessionResult> result;
};

class SessionBook
{
public:
    SessionState& open(std::uint32_t sid);
    SessionState& at(std::uint32_t sid);
    const SessionState* find(std::uint32_t sid) const;
    /// Teardown from outside: marks a known sid aborted, keeps the first error.
    void abort(std::uint32_t sid, Errc why);

    /// Runs fn; on any Error marks sid aborted and rethrows.
    template <typename Fn>
    auto guard(std::uint32_t sid, Fn&& fn) -> decltype(fn())
    {
        try {
            return fn();
        }
        catch (const Error& e) {
            auto& s = sessions_[sid];
            s.phase = Phase::aborted;
            s.error = e.code();
            s.result.reset();
            throw;
        }
    }

private:
    std::map<std::uint32_t, SessionState> sessions_;
};

struct MsOptions
{
    /// Negative control for the anonymity scanner: put the IMSI on the air.
    bool leak_imsi_in_m1 = false;
};

/// The mobile station. Does hashing, XOR and a single scalar multiplication
/// per session; its counters() prove it.
class MobileStation
{
public:
    MobileStation(SystemParams params, SimCard sim, Rng rng, MsOptions options = {});

    M1Tmsi start(std::uint32_t sid);
    /// Enforces RAND freshness, picks RAND', returns H(K'') || TMSI || RAND''.
    M3Response respond(std::uint32_t sid, const M2Challenge& m2);
    /// Authenticates the network by recomputing hm.
    SessionResult finalize(std::uint32_t sid, const M6Confirm& m6);
    void abort(std::uint32_t sid, Errc why);

    const SimCard& sim() const noexcept { return sim_; }
    const SessionState* session(std::uint32_t sid) const { return book_.find(sid); }
    const ops::Counters& counters() const noexcept { return counters_; }
    void reset_counters() { counters_ = {}; }

private:
    SystemParams params_;
    SimCard sim_;
    Rng rng_;
    MsOptions options_;
    ops::Counters counters_;
    SessionBook book_;
    std::map<std::uint32_t, Point> pending_;  // K'' awaiting confirmation
};

class VisitorLocationRegister
{
public:
    VisitorLocationRegister(SystemParams params, Bytes vlr_id, IdentityKey vlr_key, Rng rng);

    void add_subscriber(ByteView tmsi, ByteView imsi);
    /// Roaming: the previous VLR's TMSI table merged in directly.
    void merge_tmsi_table(const std::map<Bytes, Bytes>& table);

    M2Challenge challenge(std::uint32_t sid, const M1Tmsi& m1);
    M4ToHlr forward(std::uint32_t sid, const M3Response& m3);
    std::pair<M6Confirm, SessionResult> finish(std::uint32_t sid, const M5FromHlr& m5);
    void abort(std::uint32_t sid, Errc why);

    const Bytes& id() const noexcept { return vlr_id_; }
    const SessionState* session(std::uint32_t sid) const;
    std::size_t replay_cache_size() const;

private:
    struct Pending
    {
        Nonce rand{};
        Bytes tmsi;
        Bytes imsi;
        Digest hk{};
    };

    Nonce fresh_rand();

    SystemParams params_;
    Bytes vlr_id_;
    IdentityKey vlr_key_;
    IdentityPublic hlr_public_;
    Rng rng_;
    std::uint64_t rand_counter_ = 0;

    mutable std::mutex mutex_;
    std::map<Bytes, Bytes> tmsi_table_;
    std::set<std::pair<Bytes, Nonce>> replay_cache_;
    std::map<std::uint32_t, Pending> pending_;
    SessionBook book_;
};

class HomeLocationRegister
{
public:
    /// Setup: master key drawn from rng, own identity key extracted.
    static std::unique_ptr<HomeLocationRegister> setup(std::shared_ptr<const CurveProfile> curve,
        Bytes hlr_id, Rng rng, ScalarRule rule = ScalarRule::hashed);
    HomeLocationRegister(std::shared_ptr<const CurveProfile> curve, Bytes hlr_id, MasterKey master,
        Rng rng, ScalarRule rule = ScalarRule::hashed);

    SystemParams params() const;

    /// Registration: K' = K H(IMSI), stored here and returned for the SIM.
    /// Throws Errc::duplicate_subscriber.
    SimCard register_subscriber(ByteView imsi, ByteView tmsi);
    /// Adds a pre-existing K' (loaded from storage); checked by pairing.
    void restore_subscriber(ByteView imsi, const Point& kp);
    /// Adds vlr_id to the registry and returns its extracted key.
    IdentityKey provision_vlr(ByteView vlr_id);

    M5FromHlr process(std::uint32_t sid, const M4ToHlr& m4);
    void abort(std::uint32_t sid, Errc why);

    const Bytes& id() const noexcept { return hlr_id_; }
    const MasterKey& master() const noexcept { return master_; }
    const SessionState* session(std::uint32_t sid) const;
    std::optional<Point> stored_key(ByteView imsi) const;
    const std::map<Bytes, Point>& subscribers() const noexcept { return subscriber_db_; }
    const std::set<Bytes>& vlr_registry() const noexcept { return vlr_registry_; }

private:
    std::shared_ptr<const CurveProfile> curve_;
    Bytes hlr_id_;
    MasterKey master_;
    IdentityKey hlr_key_;
    Rng rng_;
    ScalarRule rule_;

    mutable std::mutex mutex_;
    std::map<Bytes, Point> subscriber_db_;
    std::set<Bytes> vlr_registry_;
    std::map<Bytes, IdentityPublic> vlr_publics_;
    SessionBook book_;
};

enum class Direction : std::uint8_t
{
    uplink = 0x01,
    downlink = 0x02,
};

/// XOR with expand(session_key || direction || be32(counter)); its own inverse.
Bytes protect_traffic(const SessionKey& key, ByteView data, Direction dir, std::uint32_t counter);

}  // namespace gsmibc
