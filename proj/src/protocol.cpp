// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gsmibc/protocol.hpp"

#include <algorithm>

#include "gsmibc/error.hpp"

namespace gsmibc
{
namespace
{
Nonce random_nonce(Rng& rng)
{
    Nonce n{};
    Bytes b = rng.bytes(n.size());
    std::copy(b.begin(), b.end(), n.begin());
    return n;
}

Nonce xor_nonce(const Nonce& a, const Nonce& b)
{
    Nonce out{};
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a[i] ^ b[i];
    return out;
}

}  // namespace

Scalar session_scalar(const Nonce& rand2, const BigInt& q, ScalarRule rule)
{
    if (rule == ScalarRule::hashed)
        return hash_to_scalar(rand2, q);
    Scalar s(from_be_bytes(rand2), q);
    return s.is_zero() ? Scalar(1, q) : s;
}

Digest network_confirmation(ByteView imsi, const Point& kpp, ByteView vlr_id)
{
    return base_hash(concat(imsi, encode(kpp), vlr_id));
}

SessionState& SessionBook::open(std::uint32_t sid)
{
    auto [it, inserted] = sessions_.try_emplace(sid);
    if (!inserted)
        throw Error(Errc::session_state, "session id already in use");
    return it->second;
}

SessionState& SessionBook::at(std::uint32_t sid)
{
    auto it = sessions_.find(sid);
    if (it == sessions_.end())
        throw Error(Errc::session_state, "no such session");
    if (it->second.phase == Phase::aborted || it->second.phase == Phase::established)
        throw Error(Errc::session_state, "session already terminated");
    return it->second;
}

const SessionState* SessionBook::find(std::uint32_t sid) const
{
    auto it = sessions_.find(sid);
    return it == sessions_.end() ? nullptr : &it->second;
}

void SessionBook::abort(std::uint32_t sid, Errc why)
{
    auto it = sessions_.find(sid);
    if (it == sessions_.end())
        return;
    it->second.phase = Phase::aborted;
    if (!it->second.error)
        it->second.error = why;
    it->second.result.reset();
}

// ---------------------------------------------------------------- MS

MobileStation::MobileStation(SystemParams params, SimCard sim, Rng rng, MsOptions options)
  : params_(std::move(params)), sim_(std::move(sim)), rng_(std::move(rng)), options_(options)
{
    if (sim_.imsi.empty())
        throw Error(Errc::malformed_message, "SIM without IMSI");
}

M1Tmsi MobileStation::start(std::uint32_t sid)
{
    ops::Scope scope(counters_);
    book_.open(sid);
    if (options_.leak_imsi_in_m1)
        return {sim_.imsi};
    return {sim_.tmsi};
}

M3Response MobileStation::respond(std::uint32_t sid, const M2Challenge& m2)
{
    ops::Scope scope(counters_);
    return book_.guard(sid, [&] {
        auto& s = book_.at(sid);
        if (s.phase != Phase::started)
            throw Error(Errc::session_state, "challenge out of order");
        // RAND must grow strictly, compared as a big-endian integer.
        if (sim_.last_rand && !(*sim_.last_rand < m2.rand))
            throw Error(Errc::replay_detected, "RAND not greater than the previous one");
        sim_.last_rand = m2.rand;

        Nonce rand_ms = random_nonce(rng_);  // RAND', never transmitted
        Nonce rand2 = xor_nonce(m2.rand, rand_ms);
        Point kpp = scalar_mul(session_scalar(rand2, params_.curve->q(), params_.rule), sim_.kp);
        M3Response m3{hash_point(kpp), sim_.tmsi, rand2};
        pending_[sid] = std::move(kpp);
        s.phase = Phase::awaiting_confirm;
        return m3;
    });
}

SessionResult MobileStation::finalize(std::uint32_t sid, const M6Confirm& m6)
{
    ops::Scope scope(counters_);
    return book_.guard(sid, [&] {
        auto& s = book_.at(sid);
        auto it = pending_.find(sid);
        if (s.phase != Phase::awaiting_confirm || it == pending_.end())
            throw Error(Errc::session_state, "confirmation out of order");
        Point kpp = std::move(it->second);
        pending_.erase(it);
        if (network_confirmation(sim_.imsi, kpp, m6.vlr_id) != m6.hm)
            throw Error(Errc::network_auth_failure, "confirmation hash does not match");
        SessionResult r{kdf_session(kpp), true, kpp};
        s.phase = Phase::established;
        s.result = r;
        return r;
    });
}

void MobileStation::abort(std::uint32_t sid, Errc why)
{
    pending_.erase(sid);
    book_.abort(sid, why);
}

// ---------------------------------------------------------------- VLR

VisitorLocationRegister::VisitorLocationRegister(
    SystemParams params, Bytes vlr_id, IdentityKey vlr_key, Rng rng)
  : params_(std::move(params)),
    vlr_id_(std::move(vlr_id)),
    vlr_key_(std::move(vlr_key)),
    hlr_public_(IdentityPublic::derive(params_.ppub, params_.hlr_id)),
    rng_(std::move(rng))
{
    if (vlr_key_.id != vlr_id_)
        throw Error(Errc::malformed_message, "VLR key was extracted for a different identity");
}

void VisitorLocationRegister::add_subscriber(ByteView tmsi, ByteView imsi)
{
    std::lock_guard lock(mutex_);
    tmsi_table_[Bytes(tmsi.begin(), tmsi.end())] = Bytes(imsi.begin(), imsi.end());
}

void VisitorLocationRegister::merge_tmsi_table(const std::map<Bytes, Bytes>& table)
{
    std::lock_guard lock(mutex_);
    for (const auto& [t, i] : table)
        tmsi_table_.insert_or_assign(t, i);
}

Nonce VisitorLocationRegister::fresh_rand()
{
    // be64(counter) || 8 random bytes: unpredictable, yet strictly
    // increasing as seen by any one SIM.
    Nonce n{};
    std::uint64_t c = ++rand_counter_;
    for (int i = 0; i < 8; ++i)
        n[i] = static_cast<std::uint8_t>(c >> (56 - 8 * i));
    Bytes tail = rng_.bytes(8);
    std::copy(tail.begin(), tail.end(), n.begin() + 8);
    return n;
}

M2Challenge VisitorLocationRegister::challenge(std::uint32_t sid, const M1Tmsi& m1)
{
    std::lock_guard lock(mutex_);
    book_.open(sid);
    return book_.guard(sid, [&] {
        auto it = tmsi_table_.find(m1.tmsi);
        if (it == tmsi_table_.end())
            it = std::find_if(tmsi_table_.begin(), tmsi_table_.end(),
                [&](const auto& e) { return e.second == m1.tmsi; });
        if (it == tmsi_table_.end())
            throw Error(Errc::unknown_subscriber, "identity in M1 not in the VLR table");
        Pending p;
        p.rand = fresh_rand();
        p.tmsi = m1.tmsi;
        p.imsi = it->second;
        pending_[sid] = p;
        return M2Challenge{p.rand};
    });
}

M4ToHlr VisitorLocationRegister::forward(std::uint32_t sid, const M3Response& m3)
{
    std::lock_guard lock(mutex_);
    return book_.guard(sid, [&] {
        auto& s = book_.at(sid);
        auto pit = pending_.find(sid);
        if (s.phase != Phase::started || pit == pending_.end())
            throw Error(Errc::session_state, "response out of order");
        auto key = std::make_pair(m3.tmsi, m3.rand2);
        if (replay_cache_.count(key) != 0)
            throw Error(Errc::replay_detected, "response already seen");
        replay_cache_.insert(key);
        auto it = tmsi_table_.find(m3.tmsi);
        if (it == tmsi_table_.end())
            throw Error(Errc::unknown_subscriber, "TMSI not in the VLR table");
        pit->second.imsi = it->second;
        pit->second.hk = m3.hk;

        HlrRequest req{it->second, m3.hk, vlr_id_, m3.rand2};
        M4ToHlr m4{ibe_encrypt(hlr_public_, encode(req), rng_)};
        s.phase = Phase::awaiting_confirm;
        return m4;
    });
}

std::pair<M6Confirm, SessionResult> VisitorLocationRegister::finish(
    std::uint32_t sid, const M5FromHlr& m5)
{
    std::lock_guard lock(mutex_);
    return book_.guard(sid, [&] {
        auto& s = book_.at(sid);
        auto pit = pending_.find(sid);
        if (s.phase != Phase::awaiting_confirm || pit == pending_.end())
            throw Error(Errc::session_state, "HLR answer out of order");

        bool valid = false;
        try {
            valid = ibs_verify(params_.ppub, hlr_public_, m5.hm, m5.sig);
        }
        catch (const Error&) {
            valid = false;
        }
        if (!valid)
            throw Error(Errc::signature_invalid, "HLR signature rejected");

        Point kpp = decode_point(*params_.curve, ibe_decrypt(vlr_key_, m5.key_ct));
        if (kpp.is_identity() || hash_point(kpp) != pit->second.hk ||
            network_confirmation(pit->second.imsi, kpp, vlr_id_) != m5.hm)
            throw Error(Errc::replay_detected, "HLR answer does not belong to this session");

        SessionResult r{kdf_session(kpp), true, kpp};
        pending_.erase(pit);
        s.phase = Phase::established;
        s.result = r;
        return std::make_pair(M6Confirm{m5.hm, vlr_id_}, r);
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

std::size_t VisitorLocationRegister::replay_cache_size() const
{
    std::lock_guard lock(mutex_);
    return replay_cache_.size();
}

// ---------------------------------------------------------------- HLR

std::unique_ptr<HomeLocationRegister> HomeLocationRegister::setup(
    std::shared_ptr<const CurveProfile> curve, Bytes hlr_id, Rng rng, ScalarRule rule)
{
    MasterKey mk = MasterKey::setup(*curve, rng);
    return std::make_unique<HomeLocationRegister>(
        std::move(curve), std::move(hlr_id), std::move(mk), std::move(rng), rule);
}

HomeLocationRegister::HomeLocationRegister(std::shared_ptr<const CurveProfile> curve, Bytes hlr_id,
    MasterKey master, Rng rng, ScalarRule rule)
  : curve_(std::move(curve)),
    hlr_id_(std::move(hlr_id)),
    master_(std::move(master)),
    hlr_key_(extract(master_, hlr_id_)),
    rng_(std::move(rng)),
    rule_(rule)
{}

SystemParams HomeLocationRegister::params() const
{
    return {curve_, master_.ppub(), hlr_id_, rule_};
}

SimCard HomeLocationRegister::register_subscriber(ByteView imsi, ByteView tmsi)
{
    std::lock_guard lock(mutex_);
    Bytes key(imsi.begin(), imsi.end());
    if (subscriber_db_.count(key) != 0)
        throw Error(Errc::duplicate_subscriber, "IMSI already registered");
    IdentityKey k = extract(master_, imsi);
    subscriber_db_.emplace(key, k.d_id);
    return {key, Bytes(tmsi.begin(), tmsi.end()), k.d_id, std::nullopt};
}

void HomeLocationRegister::restore_subscriber(ByteView imsi, const Point& kp)
{
    std::lock_guard lock(mutex_);
    Bytes key(imsi.begin(), imsi.end());
    if (subscriber_db_.count(key) != 0)
        throw Error(Errc::duplicate_subscriber, "IMSI already registered");
    if (!key_is_valid(master_.ppub(), {key, map_to_point(imsi, *curve_), kp}))
        throw Error(Errc::invalid_point, "stored K' fails the pairing check");
    subscriber_db_.emplace(key, kp);
}

IdentityKey HomeLocationRegister::provision_vlr(ByteView vlr_id)
{
    std::lock_guard lock(mutex_);
    Bytes key(vlr_id.begin(), vlr_id.end());
    vlr_registry_.insert(key);
    if (vlr_publics_.count(key) == 0)
        vlr_publics_.emplace(key, IdentityPublic::derive(master_.ppub(), vlr_id));
    return extract(master_, vlr_id);
}

M5FromHlr HomeLocationRegister::process(std::uint32_t sid, const M4ToHlr& m4)
{
    std::lock_guard lock(mutex_);
    book_.open(sid);
    return book_.guard(sid, [&] {
        HlrRequest req;
        try {
            req = decode_hlr_request(ibe_decrypt(hlr_key_, m4.ct));
        }
        catch (const Error& e) {
            throw Error(Errc::malformed_message, std::string("undecipherable request: ") + e.what());
        }

        auto sub = subscriber_db_.find(req.imsi);
        if (sub == subscriber_db_.end())
            throw Error(Errc::unknown_subscriber, "IMSI not registered");
        Point kpp = scalar_mul(session_scalar(req.rand2, curve_->q(), rule_), sub->second);
        if (hash_point(kpp) != req.hk)
            throw Error(Errc::ms_auth_failure, "H(K'') mismatch");
        auto vlr = vlr_publics_.find(req.vlr_id);
        if (vlr_registry_.count(req.vlr_id) == 0 || vlr == vlr_publics_.end())
            throw Error(Errc::vlr_auth_failure, "VLR_ID not registered");

        Digest hm = network_confirmation(req.imsi, kpp, req.vlr_id);
        M5FromHlr m5{ibs_sign(hlr_key_, hm, rng_), hm, ibe_encrypt(vlr->second, encode(kpp), rng_)};

        auto& s = book_.at(sid);
        s.phase = Phase::established;
        s.result = SessionResult{kdf_session(kpp), true, kpp};
        return m5;
    });
}

void HomeLocationRegister::abort(std::uint32_t sid, Errc why)
{
    std::lock_guard lock(mutex_);
    book_.abort(sid, why);
}

const SessionState* HomeLocationRegister::session(std::uint32_t sid) const
{
    std::lock_guard lock(mutex_);
    return book_.find(sid);
}

std::optional<Point> HomeLocationRegister::stored_key(ByteView imsi) const
{
    std::lock_guard lock(mutex_);
    auto it = subscriber_db_.find(Bytes(imsi.begin(), imsi.end()));
    if (it == subscriber_db_.end())
        return std::nullopt;
    return it->second;
}

Bytes protect_traffic(const SessionKey& key, ByteView data, Direction dir, std::uint32_t counter)
{
    Bytes seed = concat(key, Bytes{static_cast<std::uint8_t>(dir)}, be32(counter));
    return xor_bytes(data, expand(seed, data.size()));
}

}  // namespace gsmibc
