// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsmibc/baseline.hpp"
#include "gsmibc/protocol.hpp"

namespace gsmibc::harness
{
enum class Channel
{
    air,   // MS <-> VLR
    core,  // VLR <-> HLR
};
std::string_view name_of(Channel c);

/// One message as it crossed a channel, after the adversary had its say.
struct Record
{
    std::size_t seq = 0;
    Channel channel = Channel::air;
    std::string direction;  // "MS->VLR", "VLR->HLR", ...
    Bytes raw;              // bytes delivered (or the dropped bytes)
    std::string summary;
    std::string action;  // "observe", "drop", "replay(3)", "modify(2)", "inject"
};

class Transcript
{
public:
    void append(Record r) { records_.push_back(std::move(r)); }
    const std::vector<Record>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }

    /// One JSON object per line: seq, channel, direction, raw_hex,
    /// parsed_summary, adversary_action.
    std::string to_jsonl() const;
    /// SHA-256 of to_jsonl(), hex.
    std::string hash() const;

private:
    std::vector<Record> records_;
};

/// What the adversary does to one message in flight.
struct AdversaryAction
{
    enum class Kind
    {
        observe,
        drop,
        replay,  // resend transcript record `index`, retargeted to this session
        modify,  // xor the listed bytes
        inject,  // replace with `raw`
    };
    Kind kind = Kind::observe;
    std::size_t index = 0;
    std::vector<std::pair<std::size_t, std::uint8_t>> edits;
    Bytes raw;

    static AdversaryAction observe() { return {}; }
    static AdversaryAction drop() { return {Kind::drop, 0, {}, {}}; }
    static AdversaryAction replay(std::size_t seq) { return {Kind::replay, seq, {}, {}}; }
    static AdversaryAction modify(std::vector<std::pair<std::size_t, std::uint8_t>> e)
    {
        return {Kind::modify, 0, std::move(e), {}};
    }
    static AdversaryAction inject(Bytes b) { return {Kind::inject, 0, {}, std::move(b)}; }
};

/// A message offered to the adversary before delivery.
struct InFlight
{
    std::uint32_t session;
    Channel channel;
    std::string_view direction;
    MsgType type;
    const Bytes& raw;
};

using AdversaryHook = std::function<AdversaryAction(const InFlight&, const Transcript&)>;

template <typename T>
struct Delivered
{
    std::uint32_t session;  // as written in the delivered header
    T msg;
};

/// Replaces the 4-byte session id in an encoded message.
Bytes retarget(ByteView raw, std::uint32_t session);

/// In-memory network: two public channels and one middlebox that sees and
/// may rewrite every byte.
class Network
{
public:
    explicit Network(std::shared_ptr<const CurveProfile> curve) : curve_(std::move(curve)) {}

    void set_hook(AdversaryHook hook) { hook_ = std::move(hook); }
    void clear_hook() { hook_ = nullptr; }

    /// Encodes, offers to the adversary, records. nullopt when dropped.
    std::optional<Bytes> transmit(Channel ch, std::string_view dir, const Envelope& env);
    /// Bytes the adversary originates itself (it plays an entity). Recorded
    /// with the given action label; the hook is not consulted.
    Bytes originate(Channel ch, std::string_view dir, Bytes raw, std::string action = "inject");

    const Transcript& transcript() const noexcept { return transcript_; }
    const CurveProfile& curve() const noexcept { return *curve_; }

private:
    std::shared_ptr<const CurveProfile> curve_;
    AdversaryHook hook_;
    Transcript transcript_;

    void record(Channel ch, std::string_view dir, const Bytes& raw, std::string action);
};

/// Decodes what arrived at a receiver. Loss raises
/// Errc::session_state; anything undecodable or of the wrong type raises
/// Errc::malformed_message.
template <typename T>
Delivered<T> receive(const CurveProfile& curve, const std::optional<Bytes>& raw)
{
    if (!raw)
        throw Error(Errc::session_state, "message lost in transit");
    Envelope env;
    try {
        env = decode_envelope(curve, *raw);
    }
    catch (const Error& e) {
        throw Error(Errc::malformed_message, std::string("undecodable message: ") + e.what());
    }
    auto* m = std::get_if<T>(&env.payload);
    if (m == nullptr)
        throw Error(Errc::malformed_message, "unexpected message type");
    return {env.session, std::move(*m)};
}

template <typename T>
Delivered<T> deliver(Network& net, Channel ch, std::string_view dir, std::uint32_t sid, T msg)
{
    return receive<T>(net.curve(), net.transmit(ch, dir, Envelope{sid, std::move(msg)}));
}

struct Subscription
{
    std::string imsi;
    std::string tmsi;
};

struct WorldConfig
{
    std::string hlr_id = "HLR-01";
    /// The first VLR serves the subscribers; the others are registered but
    /// elsewhere.
    std::vector<std::string> vlr_ids{"VLR-01", "VLR-02"};
    std::vector<Subscription> roster{
        {"IMSI-404685505601234", "T-7001"},
        {"IMSI-404685505601235", "T-7002"},
        {"IMSI-404685505601236", "T-7003"},
    };
    ScalarRule rule = ScalarRule::hashed;
    MsOptions ms_options{};
};

enum class Party
{
    none,
    ms,
    vlr,
    hlr,
};
std::string_view name_of(Party p);

/// Terminal view of one run, read back from the entities' session books.
struct SessionOutcome
{
    std::uint32_t session = 0;
    bool completed = false;
    std::optional<Errc> error;
    Party failed_at = Party::none;
    std::optional<SessionResult> ms;
    std::optional<SessionResult> vlr;
    std::optional<SessionResult> hlr;

    bool keys_agree() const;
};

struct BaselineOutcome
{
    std::uint32_t session = 0;
    bool completed = false;
    std::optional<Errc> error;
    Party failed_at = Party::none;
    std::optional<baseline::Result> ms;
    std::optional<baseline::Result> vlr;
};

/// Keys issued earlier and loaded back from storage. The SIMs are what the
/// phones hold, which need not match the HLR's copies.
struct Deployment
{
    MasterKey master;
    std::vector<IdentityKey> vlr_keys;  // one per WorldConfig::vlr_ids entry
    std::vector<SimCard> sims;          // one per roster entry
    std::vector<Point> hlr_copies;      // the HLR's K' per roster entry
    std::vector<baseline::Ki> hlr_kis;  // the HLR's Ki per roster entry
    std::vector<baseline::Ki> sim_kis;  // the phone's Ki per roster entry
};

/// A complete deployment built from (profile, config, seed): HLR after
/// setup, provisioned VLRs, registered SIMs, the classic-GSM counterparts
/// of all of them, and the network in between.
class World
{
public:
    World(std::shared_ptr<const CurveProfile> curve, WorldConfig config, std::uint64_t seed);
    /// Same wiring, keys taken from d instead of a fresh setup.
    World(std::shared_ptr<const CurveProfile> curve, WorldConfig config, std::uint64_t seed,
        const Deployment& d);

    SessionOutcome run_session(std::size_t ms_index = 0);
    BaselineOutcome run_baseline_session(std::size_t ms_index = 0);

    std::uint32_t next_session() { return ++last_session_; }
    std::uint64_t seed() const noexcept { return seed_; }

    const std::shared_ptr<const CurveProfile>& curve() const noexcept { return curve_; }
    const WorldConfig& config() const noexcept { return config_; }
    SystemParams params() const { return hlr_->params(); }
    HomeLocationRegister& hlr() { return *hlr_; }
    VisitorLocationRegister& vlr(std::size_t i = 0) { return *vlrs_.at(i); }
    MobileStation& ms(std::size_t i = 0) { return *mss_.at(i); }
    std::size_t ms_count() const noexcept { return mss_.size(); }
    /// Keys a registered but non-serving VLR holds (adversarial insiders).
    const IdentityKey& vlr_key(std::size_t i) const { return vlr_keys_.at(i); }
    baseline::MobileStation& baseline_ms(std::size_t i = 0) { return *baseline_mss_.at(i); }
    baseline::VisitorLocationRegister& baseline_vlr() { return baseline_vlr_; }
    baseline::HomeLocationRegister& baseline_hlr() { return baseline_hlr_; }
    Network& network() { return network_; }
    Rng& adversary_rng() { return adversary_rng_; }

private:
    std::shared_ptr<const CurveProfile> curve_;
    WorldConfig config_;
    Rng root_;
    std::unique_ptr<HomeLocationRegister> hlr_;
    std::vector<IdentityKey> vlr_keys_;
    std::vector<std::unique_ptr<VisitorLocationRegister>> vlrs_;
    std::vector<std::unique_ptr<MobileStation>> mss_;
    baseline::HomeLocationRegister baseline_hlr_;
    baseline::VisitorLocationRegister baseline_vlr_;
    std::vector<std::unique_ptr<baseline::MobileStation>> baseline_mss_;
    Network network_;
    Rng adversary_rng_;
    std::uint64_t seed_;
    std::uint32_t last_session_ = 0;
};

struct HonestRun
{
    SessionOutcome outcome;
    Transcript transcript;
};

/// Fresh world from (profile, seed), one unmolested session.
HonestRun run_honest_session(
    std::shared_ptr<const CurveProfile> curve, std::uint64_t seed, const WorldConfig& config = {});

}  // namespace gsmibc::harness
