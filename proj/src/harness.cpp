// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gsmibc/harness.hpp"

#include <json.hpp>

#include "gsmibc/error.hpp"

namespace gsmibc::harness
{
namespace
{
std::string action_label(const AdversaryAction& a)
{
    using K = AdversaryAction::Kind;
    switch (a.kind) {
    case K::observe: return "observe";
    case K::drop: return "drop";
    case K::replay: return "replay(" + std::to_string(a.index) + ")";
    case K::modify: return "modify(" + std::to_string(a.edits.size()) + ")";
    case K::inject: return "inject";
    }
    return "observe";
}

template <typename Entity>
auto result_of(const Entity& e, std::uint32_t sid) -> std::optional<SessionResult>
{
    const SessionState* s = e.session(sid);
    if (s == nullptr || s->phase != Phase::established)
        return std::nullopt;
    return s->result;
}

}  // namespace

std::string_view name_of(Channel c)
{
    return c == Channel::air ? "air" : "core";
}

std::string_view name_of(Party p)
{
    switch (p) {
    case Party::none: return "none";
    case Party::ms: return "MS";
    case Party::vlr: return "VLR";
    case Party::hlr: return "HLR";
    }
    return "none";
}

std::string Transcript::to_jsonl() const
{
    std::string out;
    for (const auto& r : records_) {
        nlohmann::ordered_json j;
        j["seq"] = r.seq;
        j["channel"] = name_of(r.channel);
        j["direction"] = r.direction;
        j["raw_hex"] = to_hex(r.raw);
        j["parsed_summary"] = r.summary;
        j["adversary_action"] = r.action;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string Transcript::hash() const
{
    return to_hex(base_hash(to_bytes(to_jsonl())));
}

Bytes retarget(ByteView raw, std::uint32_t session)
{
    Bytes out(raw.begin(), raw.end());
    if (out.size() >= 8) {
        Bytes sid = be32(session);
        std::copy(sid.begin(), sid.end(), out.begin() + 4);
    }
    return out;
}

std::optional<Bytes> Network::transmit(Channel ch, std::string_view dir, const Envelope& env)
{
    Bytes raw = encode(env);
    AdversaryAction act = AdversaryAction::observe();
    if (hook_)
        act = hook_(InFlight{env.session, ch, dir, type_of(env.payload), raw}, transcript_);

    std::optional<Bytes> out;
    switch (act.kind) {
    case AdversaryAction::Kind::observe: out = raw; break;
    case AdversaryAction::Kind::drop: break;
    case AdversaryAction::Kind::replay:
        if (act.index >= transcript_.size())
            throw Error(Errc::internal, "replay of a message that was never sent");
        out = retarget(transcript_.records()[act.index].raw, env.session);
        break;
    case AdversaryAction::Kind::modify:
        out = raw;
        for (auto [pos, mask] : act.edits)
            if (pos < out->size())
                (*out)[pos] ^= mask;
        break;
    case AdversaryAction::Kind::inject: out = act.raw; break;
    }

    record(ch, dir, out ? *out : raw, action_label(act));
    return out;
}

Bytes Network::originate(Channel ch, std::string_view dir, Bytes raw, std::string action)
{
    record(ch, dir, raw, std::move(action));
    return raw;
}

void Network::record(Channel ch, std::string_view dir, const Bytes& raw, std::string action)
{
    Record r;
    r.seq = transcript_.size();
    r.channel = ch;
    r.direction = std::string(dir);
    r.raw = raw;
    try {
        r.summary = summarize(decode_envelope(*curve_, r.raw));
    }
    catch (const Error& e) {
        r.summary = std::string("undecodable (") + std::string(to_string(e.code())) + ")";
    }
    r.action = std::move(action);
    transcript_.append(std::move(r));
}

bool SessionOutcome::keys_agree() const
{
    return completed && ms && vlr && hlr && ms->session_key == vlr->session_key &&
        vlr->session_key == hlr->session_key;
}

World::World(std::shared_ptr<const CurveProfile> curve, WorldConfig config, std::uint64_t seed)
  : curve_(std::move(curve)),
    config_(std::move(config)),
    root_(seed),
    baseline_hlr_(root_.fork("baseline-hlr")),
    network_(curve_),
    adversary_rng_(root_.fork("adversary")),
    seed_(seed)
{
    if (config_.vlr_ids.empty())
        throw Error(Errc::bad_profile, "world needs at least one VLR");
    hlr_ = HomeLocationRegister::setup(curve_, to_bytes(config_.hlr_id), root_.fork("hlr"),
        config_.rule);
    SystemParams params = hlr_->params();
    for (const auto& id : config_.vlr_ids) {
        vlr_keys_.push_back(hlr_->provision_vlr(to_bytes(id)));
        vlrs_.push_back(std::make_unique<VisitorLocationRegister>(
            params, to_bytes(id), vlr_keys_.back(), root_.fork("vlr:" + id)));
    }
    for (const auto& sub : config_.roster) {
        SimCard sim = hlr_->register_subscriber(to_bytes(sub.imsi), to_bytes(sub.tmsi));
        vlrs_.front()->add_subscriber(sim.tmsi, sim.imsi);
        mss_.push_back(std::make_unique<MobileStation>(
            params, std::move(sim), root_.fork("ms:" + sub.imsi), config_.ms_options));

        auto bsub = baseline_hlr_.register_subscriber(to_bytes(sub.imsi), to_bytes(sub.tmsi));
        baseline_vlr_.add_subscriber(bsub.tmsi, bsub.imsi);
        baseline_mss_.push_back(std::make_unique<baseline::MobileStation>(std::move(bsub)));
    }
}

World::World(std::shared_ptr<const CurveProfile> curve, WorldConfig config, std::uint64_t seed,
    const Deployment& d)
  : curve_(std::move(curve)),
    config_(std::move(config)),
    root_(seed),
    baseline_hlr_(root_.fork("baseline-hlr")),
    network_(curve_),
    adversary_rng_(root_.fork("adversary")),
    seed_(seed)
{
    const std::size_t n = config_.roster.size();
    if (config_.vlr_ids.empty() || d.vlr_keys.size() != config_.vlr_ids.size() ||
        d.sims.size() != n || d.hlr_copies.size() != n || d.hlr_kis.size() != n ||
        d.sim_kis.size() != n)
        throw Error(Errc::malformed_message, "deployment does not match the world layout");
    hlr_ = std::make_unique<HomeLocationRegister>(
        curve_, to_bytes(config_.hlr_id), d.master, root_.fork("hlr"), config_.rule);
    SystemParams params = hlr_->params();
    for (std::size_t i = 0; i < config_.vlr_ids.size(); ++i) {
        const auto& id = config_.vlr_ids[i];
        hlr_->provision_vlr(to_bytes(id));
        vlr_keys_.push_back(d.vlr_keys[i]);
        vlrs_.push_back(std::make_unique<VisitorLocationRegister>(
            params, to_bytes(id), vlr_keys_.back(), root_.fork("vlr:" + id)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& sub = config_.roster[i];
        Bytes imsi = to_bytes(sub.imsi);
        Bytes tmsi = to_bytes(sub.tmsi);
        hlr_->restore_subscriber(imsi, d.hlr_copies[i]);
        vlrs_.front()->add_subscriber(tmsi, imsi);
        mss_.push_back(std::make_unique<MobileStation>(
            params, d.sims[i], root_.fork("ms:" + sub.imsi), config_.ms_options));

        baseline_hlr_.restore_subscriber(imsi, d.hlr_kis[i]);
        baseline_vlr_.add_subscriber(tmsi, imsi);
        baseline_mss_.push_back(
            std::make_unique<baseline::MobileStation>(baseline::Subscriber{imsi, tmsi, d.sim_kis[i]}));
    }
}

SessionOutcome World::run_session(std::size_t ms_index)
{
    MobileStation& ms = *mss_.at(ms_index);
    VisitorLocationRegister& vlr = *vlrs_.front();
    HomeLocationRegister& hlr = *hlr_;

    SessionOutcome out;
    out.session = next_session();
    const std::uint32_t sid = out.session;
    Party at = Party::ms;
    try {
        M1Tmsi m1 = ms.start(sid);
        at = Party::vlr;
        auto d1 = deliver(network_, Channel::air, "MS->VLR", sid, std::move(m1));
        M2Challenge m2 = vlr.challenge(d1.session, d1.msg);
        at = Party::ms;
        auto d2 = deliver(network_, Channel::air, "VLR->MS", sid, m2);
        M3Response m3 = ms.respond(d2.session, d2.msg);
        at = Party::vlr;
        auto d3 = deliver(network_, Channel::air, "MS->VLR", sid, std::move(m3));
        M4ToHlr m4 = vlr.forward(d3.session, d3.msg);
        at = Party::hlr;
        auto d4 = deliver(network_, Channel::core, "VLR->HLR", sid, std::move(m4));
        M5FromHlr m5 = hlr.process(d4.session, d4.msg);
        at = Party::vlr;
        auto d5 = deliver(network_, Channel::core, "HLR->VLR", sid, std::move(m5));
        M6Confirm m6 = vlr.finish(d5.session, d5.msg).first;
        at = Party::ms;
        auto d6 = deliver(network_, Channel::air, "VLR->MS", sid, std::move(m6));
        ms.finalize(d6.session, d6.msg);
        out.completed = true;
    }
    catch (const Error& e) {
        out.error = e.code();
        out.failed_at = at;
        ms.abort(sid, e.code());
        vlr.abort(sid, e.code());
        hlr.abort(sid, e.code());
    }
    out.ms = result_of(ms, sid);
    out.vlr = result_of(vlr, sid);
    out.hlr = result_of(hlr, sid);
    return out;
}

BaselineOutcome World::run_baseline_session(std::size_t ms_index)
{
    baseline::MobileStation& ms = *baseline_mss_.at(ms_index);

    BaselineOutcome out;
    out.session = next_session();
    const std::uint32_t sid = out.session;
    Party at = Party::ms;
    try {
        M1Tmsi m1 = ms.start(sid);
        at = Party::vlr;
        auto d1 = deliver(network_, Channel::air, "MS->VLR", sid, std::move(m1));
        BaselineImsi req = baseline_vlr_.request_triplets(d1.session, d1.msg);
        at = Party::hlr;
        auto d2 = deliver(network_, Channel::core, "VLR->HLR", sid, std::move(req));
        BaselineTriplets trips = baseline_hlr_.process(d2.session, d2.msg);
        at = Party::vlr;
        auto d3 = deliver(network_, Channel::core, "HLR->VLR", sid, std::move(trips));
        M2Challenge m2 = baseline_vlr_.challenge(d3.session, d3.msg);
        at = Party::ms;
        auto d4 = deliver(network_, Channel::air, "VLR->MS", sid, m2);
        BaselineSres sres = ms.respond(d4.session, d4.msg);
        at = Party::vlr;
        auto d5 = deliver(network_, Channel::air, "MS->VLR", sid, sres);
        out.vlr = baseline_vlr_.verify(d5.session, d5.msg);
        out.completed = true;
    }
    catch (const Error& e) {
        out.error = e.code();
        out.failed_at = at;
        out.vlr.reset();
        ms.abort(sid, e.code());
        baseline_vlr_.abort(sid, e.code());
    }
    out.ms = ms.result(sid);
    return out;
}

HonestRun run_honest_session(
    std::shared_ptr<const CurveProfile> curve, std::uint64_t seed, const WorldConfig& config)
{
    World world(std::move(curve), config, seed);
    SessionOutcome outcome = world.run_session();
    return {outcome, world.network().transcript()};
}

}  // namespace gsmibc::harness
