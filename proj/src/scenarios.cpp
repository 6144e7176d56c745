// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gsmibc/scenarios.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "gsmibc/error.hpp"

namespace gsmibc::harness
{
namespace
{
using Json = nlohmann::ordered_json;

Json optional_error(const std::optional<Errc>& e)
{
    return e ? Json(std::string(to_string(*e))) : Json(nullptr);
}

/// Index of the last record carrying (sid, type).
std::size_t find_record(const Transcript& t, std::uint32_t sid, MsgType type)
{
    const auto& rs = t.records();
    for (std::size_t i = rs.size(); i-- > 0;) {
        try {
            Header h = peek_header(rs[i].raw);
            if (h.session == sid && h.type == type)
                return i;
        }
        catch (const Error&) {
        }
    }
    throw Error(Errc::internal, "expected message missing from transcript");
}

SubCase sub_case(std::string name, bool accepted, const std::optional<Errc>& error, Party at)
{
    SubCase c;
    c.name = std::move(name);
    c.outcome = accepted ? Outcome::attack_succeeded : Outcome::attack_blocked;
    c.error = error;
    c.stopped_by = accepted ? Party::none : at;
    c.successes = accepted ? 1 : 0;
    return c;
}

void close_report(ScenarioReport& rep, World& world)
{
    bool any = std::any_of(rep.cases.begin(), rep.cases.end(),
        [](const SubCase& c) { return c.outcome == Outcome::attack_succeeded; });
    rep.outcome = any ? Outcome::attack_succeeded : Outcome::attack_blocked;
    for (const auto& c : rep.cases)
        if (c.error) {
            rep.error = c.error;
            break;
        }
    world.network().clear_hook();
    rep.transcript_hash = world.network().transcript().hash();
    rep.transcript_messages = world.network().transcript().size();
}

Nonce add_to_nonce(Nonce n, unsigned k)
{
    unsigned carry = k;
    for (std::size_t i = n.size(); i-- > 0 && carry != 0;) {
        unsigned v = n[i] + carry;
        n[i] = static_cast<std::uint8_t>(v);
        carry = v >> 8;
    }
    return n;
}

template <typename T>
T decoded_record(World& world, std::size_t index)
{
    auto env = decode_envelope(*world.curve(), world.network().transcript().records()[index].raw);
    return std::get<T>(env.payload);
}

template <std::size_t N>
std::array<std::uint8_t, N> random_array(Rng& rng)
{
    std::array<std::uint8_t, N> out{};
    Bytes b = rng.bytes(N);
    std::copy(b.begin(), b.end(), out.begin());
    return out;
}

std::size_t count_occurrences(ByteView hay, ByteView needle)
{
    if (needle.empty() || hay.size() < needle.size())
        return 0;
    std::size_t n = 0;
    for (auto it = hay.begin();;) {
        it = std::search(it, hay.end(), needle.begin(), needle.end());
        if (it == hay.end())
            return n;
        ++n;
        ++it;
    }
}

}  // namespace

std::string_view name_of(Outcome o)
{
    return o == Outcome::attack_succeeded ? "attack_succeeded" : "attack_blocked";
}

std::string_view name_of(Mode m)
{
    return m == Mode::ibc ? "ibc" : "baseline";
}

std::string ScenarioReport::to_jsonl() const
{
    std::string out;
    for (const auto& c : cases) {
        Json j;
        j["type"] = "case";
        j["scenario"] = scenario;
        j["name"] = c.name;
        j["outcome"] = name_of(c.outcome);
        j["error"] = optional_error(c.error);
        j["stopped_by"] = name_of(c.stopped_by);
        j["attempts"] = c.attempts;
        j["successes"] = c.successes;
        out += j.dump() + "\n";
    }
    Json j;
    j["type"] = "report";
    j["scenario"] = scenario;
    j["mode"] = name_of(mode);
    j["seed"] = seed;
    j["outcome"] = name_of(outcome);
    j["expected"] = name_of(expected_outcome(scenario, mode));
    j["error"] = optional_error(error);
    j["control_passed"] = control_passed;
    j["transcript_hash"] = transcript_hash;
    j["transcript_messages"] = transcript_messages;
    out += j.dump() + "\n";
    return out;
}

Outcome expected_outcome(std::string_view scenario, Mode mode)
{
    if (scenario == "false-network" && mode == Mode::baseline)
        return Outcome::attack_succeeded;
    return Outcome::attack_blocked;
}

ScenarioReport scenario_replay(World& world)
{
    ScenarioReport rep;
    rep.scenario = "replay";
    rep.seed = world.seed();
    Network& net = world.network();

    net.clear_hook();
    SessionOutcome control = world.run_session();
    rep.control_passed = control.keys_agree();
    std::size_t m2 = find_record(net.transcript(), control.session, MsgType::challenge);
    std::size_t m3 = find_record(net.transcript(), control.session, MsgType::response);

    // The old response, retargeted into a new session.
    net.set_hook([&](const InFlight& m, const Transcript&) {
        return m.type == MsgType::response && m.session != control.session
            ? AdversaryAction::replay(m3)
            : AdversaryAction::observe();
    });
    SessionOutcome o = world.run_session();
    rep.cases.push_back(sub_case("replayed-M3", o.vlr || o.hlr, o.error, o.failed_at));

    // The old challenge, shown to the MS again.
    std::uint32_t replay_sid = o.session;
    net.set_hook([&](const InFlight& m, const Transcript&) {
        return m.type == MsgType::challenge && m.session > replay_sid
            ? AdversaryAction::replay(m2)
            : AdversaryAction::observe();
    });
    o = world.run_session();
    rep.cases.push_back(sub_case("replayed-M2", o.ms.has_value(), o.error, o.failed_at));

    close_report(rep, world);
    return rep;
}

ScenarioReport scenario_impersonate_ms(World& world, std::size_t attempts)
{
    ScenarioReport rep;
    rep.scenario = "impersonate-ms";
    rep.seed = world.seed();
    Network& net = world.network();

    net.clear_hook();
    SessionOutcome control = world.run_session();
    rep.control_passed = control.keys_agree();

    // TMSI is on the air in every M1; H(K'') and RAND'' are made up.
    Bytes tmsi = decoded_record<M1Tmsi>(
        world, find_record(net.transcript(), control.session, MsgType::tmsi))
                     .tmsi;
    Rng& adv = world.adversary_rng();
    net.set_hook([&](const InFlight& m, const Transcript&) {
        if (m.type != MsgType::response)
            return AdversaryAction::observe();
        M3Response fake{random_array<32>(adv), tmsi, random_array<16>(adv)};
        return AdversaryAction::inject(encode(Envelope{m.session, fake}));
    });

    SubCase agg;
    agg.name = "fabricated-M3";
    agg.attempts = attempts;
    for (std::size_t i = 0; i < attempts; ++i) {
        SessionOutcome o = world.run_session();
        if (o.hlr || o.vlr)
            ++agg.successes;
        else if (!agg.error) {
            agg.error = o.error;
            agg.stopped_by = o.failed_at;
        }
    }
    agg.outcome = agg.successes > 0 ? Outcome::attack_succeeded : Outcome::attack_blocked;
    rep.cases.push_back(agg);

    close_report(rep, world);
    return rep;
}

namespace
{
void false_network_baseline(World& world, ScenarioReport& rep)
{
    Network& net = world.network();
    BaselineOutcome control = world.run_baseline_session();
    rep.control_passed = control.completed;
    std::size_t m2 = find_record(net.transcript(), control.session, MsgType::challenge);

    // The adversary answers the MS itself with a challenge it overheard.
    baseline::MobileStation& ms = world.baseline_ms();
    std::uint32_t sid = world.next_session();
    std::optional<Errc> error;
    try {
        M1Tmsi m1 = ms.start(sid);
        net.transmit(Channel::air, "MS->VLR", Envelope{sid, m1});
        Bytes raw = net.originate(Channel::air, "VLR->MS",
            retarget(net.transcript().records()[m2].raw, sid), "replay(" + std::to_string(m2) + ")");
        auto d = receive<M2Challenge>(*world.curve(), raw);
        BaselineSres sres = ms.respond(d.session, d.msg);
        net.transmit(Channel::air, "MS->VLR", Envelope{sid, sres});
    }
    catch (const Error& e) {
        error = e.code();
        ms.abort(sid, e.code());
    }
    rep.cases.push_back(
        sub_case("replayed-triplet", ms.result(sid).has_value(), error, Party::ms));
}

void false_network_ibc(World& world, ScenarioReport& rep)
{
    Network& net = world.network();
    SessionOutcome control = world.run_session();
    rep.control_passed = control.keys_agree();
    std::size_t m2 = find_record(net.transcript(), control.session, MsgType::challenge);
    std::size_t m6 = find_record(net.transcript(), control.session, MsgType::confirm);
    Nonce seen_rand = decoded_record<M2Challenge>(world, m2).rand;
    Rng& adv = world.adversary_rng();
    MobileStation& ms = world.ms();
    const Bytes serving = world.vlr().id();

    // The adversary is the whole network: it issues a RAND the SIM will
    // accept, then must produce an M6 without ever learning K''.
    auto impersonate = [&](std::string name, unsigned bump, auto make_m6) {
        std::uint32_t sid = world.next_session();
        std::optional<Errc> error;
        try {
            net.transmit(Channel::air, "MS->VLR", Envelope{sid, ms.start(sid)});
            Bytes raw = net.originate(Channel::air, "VLR->MS",
                encode(Envelope{sid, M2Challenge{add_to_nonce(seen_rand, bump)}}));
            auto d2 = receive<M2Challenge>(*world.curve(), raw);
            M3Response m3 = ms.respond(d2.session, d2.msg);
            net.transmit(Channel::air, "MS->VLR", Envelope{sid, m3});
            auto [bytes, label] = make_m6(sid);
            auto d6 = receive<M6Confirm>(
                *world.curve(), net.originate(Channel::air, "VLR->MS", bytes, label));
            ms.finalize(d6.session, d6.msg);
        }
        catch (const Error& e) {
            error = e.code();
            ms.abort(sid, e.code());
        }
        const SessionState* s = ms.session(sid);
        bool accepted = s != nullptr && s->phase == Phase::established;
        rep.cases.push_back(sub_case(std::move(name), accepted, error, Party::ms));
    };

    impersonate("forged-M6", 1, [&](std::uint32_t sid) {
        M6Confirm forged{random_array<32>(adv), serving};
        return std::make_pair(encode(Envelope{sid, forged}), std::string("inject"));
    });
    impersonate("replayed-M6", 2, [&](std::uint32_t sid) {
        return std::make_pair(retarget(net.transcript().records()[m6].raw, sid),
            "replay(" + std::to_string(m6) + ")");
    });

    // A registered VLR turned adversary relays a genuine session and tries
    // to pass itself off as the MS's network. It holds its own identity key
    // but cannot open key_ct, which is encrypted to the serving VLR.
    const IdentityKey& insider = world.vlr_key(1);
    const Bytes imsi = ms.sim().imsi;
    std::optional<Point> guess;
    Digest overheard_hm{};
    net.set_hook([&](const InFlight& m, const Transcript&) {
        if (m.type == MsgType::from_hlr) {
            auto env = decode_envelope(*world.curve(), m.raw);
            const auto& m5 = std::get<M5FromHlr>(env.payload);
            overheard_hm = m5.hm;
            try {
                guess = decode_point(*world.curve(), ibe_decrypt(insider, m5.key_ct));
            }
            catch (const Error&) {
                guess.reset();
            }
            return AdversaryAction::observe();
        }
        if (m.type == MsgType::confirm) {
            Digest hm = guess ? network_confirmation(imsi, *guess, insider.id) : overheard_hm;
            return AdversaryAction::inject(encode(Envelope{m.session, M6Confirm{hm, insider.id}}));
        }
        return AdversaryAction::observe();
    });
    SessionOutcome o = world.run_session();
    net.clear_hook();
    rep.cases.push_back(sub_case("insider-VLR-relay", o.ms.has_value(), o.error, o.failed_at));
}

}  // namespace

ScenarioReport scenario_false_network(World& world, Mode mode)
{
    ScenarioReport rep;
    rep.scenario = "false-network";
    rep.mode = mode;
    rep.seed = world.seed();
    world.network().clear_hook();
    if (mode == Mode::baseline)
        false_network_baseline(world, rep);
    else
        false_network_ibc(world, rep);
    close_report(rep, world);
    return rep;
}

ScenarioReport scenario_anonymity(World& world, std::size_t sessions)
{
    ScenarioReport rep;
    rep.scenario = "anonymity";
    rep.seed = world.seed();
    Network& net = world.network();
    net.clear_hook();

    std::size_t first = net.transcript().size();
    rep.control_passed = true;
    for (std::size_t i = 0; i < sessions; ++i)
        rep.control_passed = world.run_session(i % world.ms_count()).completed && rep.control_passed;

    std::vector<Bytes> imsis;
    for (const auto& sub : world.config().roster)
        imsis.push_back(to_bytes(sub.imsi));

    SubCase air{"air-channel", Outcome::attack_blocked, std::nullopt, Party::none, 0, 0};
    SubCase core{"core-channel-outside-ciphertext", Outcome::attack_blocked, std::nullopt,
        Party::none, 0, 0};
    const auto& rs = net.transcript().records();
    for (std::size_t i = first; i < rs.size(); ++i) {
        Bytes visible = rs[i].raw;
        SubCase& target = rs[i].channel == Channel::air ? air : core;
        if (rs[i].channel == Channel::core) {
            try {
                for (const auto& f : field_spans(visible))
                    if (f.tag == tag::ibe_ct || f.tag == tag::key_ct)
                        std::fill_n(visible.begin() + static_cast<std::ptrdiff_t>(f.offset), f.len, 0);
            }
            catch (const Error&) {
            }
        }
        ++target.attempts;
        for (const auto& imsi : imsis)
            target.successes += count_occurrences(visible, imsi);
    }
    for (SubCase* c : {&air, &core})
        c->outcome = c->successes > 0 ? Outcome::attack_succeeded : Outcome::attack_blocked;
    rep.cases = {air, core};

    close_report(rep, world);
    return rep;
}

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names{
        "replay", "impersonate-ms", "false-network", "anonymity"};
    return names;
}

ScenarioReport run_scenario(std::string_view name, World& world, Mode mode)
{
    if (name == "false-network")
        return scenario_false_network(world, mode);
    if (mode == Mode::baseline)
        throw std::invalid_argument("scenario '" + std::string(name) + "' has no baseline variant");
    if (name == "replay")
        return scenario_replay(world);
    if (name == "impersonate-ms")
        return scenario_impersonate_ms(world);
    if (name == "anonymity")
        return scenario_anonymity(world);
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

}  // namespace gsmibc::harness
