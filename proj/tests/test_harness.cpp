// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gsmibc/error.hpp"
#include "gsmibc/scenarios.hpp"
#include "gsmibc/store.hpp"

using namespace gsmibc;
using namespace gsmibc::harness;

namespace
{
std::shared_ptr<const CurveProfile> demo()
{
    return CurveProfile::demo();
}

std::vector<nlohmann::json> lines_of(const std::string& jsonl)
{
    std::vector<nlohmann::json> out;
    std::istringstream in(jsonl);
    for (std::string line; std::getline(in, line);)
        out.push_back(nlohmann::json::parse(line));
    return out;
}
}  // namespace

TEST_CASE("honest session: six messages, equal keys, reproducible transcript")
{
    HonestRun a = run_honest_session(demo(), 42);
    HonestRun b = run_honest_session(demo(), 42);
    HonestRun c = run_honest_session(demo(), 43);
    CHECK(a.outcome.completed);
    CHECK(a.outcome.keys_agree());
    CHECK(a.outcome.ms->peer_authenticated);
    CHECK(a.outcome.vlr->peer_authenticated);
    CHECK(a.transcript.size() == 6);
    CHECK(a.transcript.to_jsonl() == b.transcript.to_jsonl());
    CHECK(a.transcript.hash() == b.transcript.hash());
    CHECK(a.transcript.hash() != c.transcript.hash());

    std::vector<std::string> dirs;
    for (const auto& r : a.transcript.records())
        dirs.push_back(r.direction);
    CHECK(dirs == std::vector<std::string>{
                      "MS->VLR", "VLR->MS", "MS->VLR", "VLR->HLR", "HLR->VLR", "VLR->MS"});
    CHECK(a.transcript.records()[3].channel == Channel::core);
    CHECK(a.transcript.records()[4].channel == Channel::core);
}

TEST_CASE("transcript lines carry the documented keys in order")
{
    HonestRun run = run_honest_session(demo(), 1);
    std::istringstream in(run.transcript.to_jsonl());
    std::string line;
    std::size_t seq = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::ordered_json::parse(line);
        std::vector<std::string> keys;
        for (auto it = j.begin(); it != j.end(); ++it)
            keys.push_back(it.key());
        CHECK(keys == std::vector<std::string>{"seq", "channel", "direction", "raw_hex",
                          "parsed_summary", "adversary_action"});
        CHECK(j["seq"] == seq);
        CHECK(j["adversary_action"] == "observe");
        CHECK(from_hex(j["raw_hex"].get<std::string>()) == run.transcript.records()[seq].raw);
        ++seq;
    }
    CHECK(seq == 6);
}

TEST_CASE("adversary hook sees and controls every message")
{
    World w(demo(), {}, 5);
    std::vector<MsgType> seen;
    w.network().set_hook([&](const InFlight& f, const Transcript&) {
        seen.push_back(f.type);
        return AdversaryAction::observe();
    });
    CHECK(w.run_session().completed);
    CHECK(seen == std::vector<MsgType>{MsgType::tmsi, MsgType::challenge, MsgType::response,
                      MsgType::to_hlr, MsgType::from_hlr, MsgType::confirm});

    w.network().set_hook([](const InFlight& f, const Transcript&) {
        return f.type == MsgType::from_hlr ? AdversaryAction::drop() : AdversaryAction::observe();
    });
    SessionOutcome dropped = w.run_session();
    CHECK_FALSE(dropped.completed);
    CHECK(dropped.error == Errc::session_state);
    CHECK(dropped.failed_at == Party::vlr);
    CHECK(w.network().transcript().records().back().action == "drop");

    w.network().set_hook([](const InFlight& f, const Transcript&) {
        return f.type == MsgType::confirm ? AdversaryAction::modify({{15, 0x01}})
                                          : AdversaryAction::observe();
    });
    SessionOutcome modified = w.run_session();
    CHECK(modified.error == Errc::network_auth_failure);
    CHECK(modified.failed_at == Party::ms);
    CHECK_FALSE(modified.ms.has_value());
    CHECK_FALSE(modified.hlr.has_value());

    w.network().set_hook([](const InFlight& f, const Transcript&) {
        return f.type == MsgType::tmsi ? AdversaryAction::inject(Bytes{1, 2, 3})
                                       : AdversaryAction::observe();
    });
    SessionOutcome injected = w.run_session();
    CHECK(injected.error == Errc::malformed_message);
    CHECK(w.network().transcript().records().back().summary == "undecodable (malformed-message)");

    w.network().clear_hook();
    CHECK(w.run_session().keys_agree());
}

TEST_CASE("replay retargets the session id and keeps the rest")
{
    Bytes raw{'G', 'I', 1, 2, 0, 0, 0, 9, 0xAA};
    Bytes r = retarget(raw, 0x01020304);
    CHECK(r == Bytes{'G', 'I', 1, 2, 1, 2, 3, 4, 0xAA});
}

TEST_CASE("baseline sessions run through the same network")
{
    World w(demo(), {}, 8);
    BaselineOutcome o = w.run_baseline_session(1);
    CHECK(o.completed);
    CHECK(o.ms->kc == o.vlr->kc);
    CHECK(o.vlr->authenticated);
    bool saw_imsi_on_core = false;
    for (const auto& r : w.network().transcript().records())
        if (r.channel == Channel::core && contains(r.raw, to_bytes("IMSI-404685505601235")))
            saw_imsi_on_core = true;
    CHECK(saw_imsi_on_core);
}

TEST_CASE("a stored deployment reproduces the generated one")
{
    auto c = demo();
    World fresh(c, {}, 12);
    Deployment d{fresh.hlr().master(), {}, {}, {}, {}, {}};
    for (std::size_t i = 0; i < fresh.config().vlr_ids.size(); ++i)
        d.vlr_keys.push_back(fresh.vlr_key(i));
    for (std::size_t i = 0; i < fresh.ms_count(); ++i) {
        d.sims.push_back(fresh.ms(i).sim());
        d.hlr_copies.push_back(*fresh.hlr().stored_key(fresh.ms(i).sim().imsi));
        d.hlr_kis.push_back(fresh.baseline_ms(i).subscriber().ki);
        d.sim_kis.push_back(fresh.baseline_ms(i).subscriber().ki);
    }
    World restored(c, {}, 12, d);
    SessionOutcome a = restored.run_session(2);
    CHECK(a.keys_agree());
    CHECK(restored.run_baseline_session(2).completed);

    Deployment bad = d;
    bad.sims[0].kp = -bad.sims[0].kp;
    World corrupted(c, {}, 12, bad);
    SessionOutcome o = corrupted.run_session(0);
    CHECK(o.error == Errc::ms_auth_failure);
    CHECK(o.failed_at == Party::hlr);
}

TEST_CASE("scenario reports")
{
    World w(demo(), {}, 3);
    ScenarioReport rep = scenario_replay(w);
    CHECK(rep.outcome == Outcome::attack_blocked);
    CHECK(rep.control_passed);
    REQUIRE(rep.cases.size() == 2);
    CHECK(rep.cases[0].error == Errc::replay_detected);
    CHECK(rep.cases[0].stopped_by == Party::vlr);
    CHECK(rep.cases[1].error == Errc::replay_detected);
    CHECK(rep.cases[1].stopped_by == Party::ms);
    CHECK(rep.transcript_hash == w.network().transcript().hash());

    auto lines = lines_of(rep.to_jsonl());
    REQUIRE(lines.size() == 3);
    CHECK(lines.back()["type"] == "report");
    CHECK(lines.back()["outcome"] == "attack_blocked");
    CHECK(lines.back()["expected"] == "attack_blocked");
    CHECK(lines.back()["control_passed"] == true);

    World w2(demo(), {}, 3);
    CHECK(scenario_replay(w2).to_jsonl() == rep.to_jsonl());
}

TEST_CASE("expected outcomes and scenario dispatch")
{
    CHECK(expected_outcome("false-network", Mode::baseline) == Outcome::attack_succeeded);
    for (const auto& s : scenario_names())
        CHECK(expected_outcome(s, Mode::ibc) == Outcome::attack_blocked);
    World w(demo(), {}, 4);
    CHECK_THROWS_AS(run_scenario("teleport", w, Mode::ibc), std::invalid_argument);
    CHECK_THROWS_AS(run_scenario("replay", w, Mode::baseline), std::invalid_argument);
    CHECK(run_scenario("false-network", w, Mode::baseline).outcome == Outcome::attack_succeeded);
}

TEST_CASE("impersonation, false network and anonymity on one seed")
{
    World w(demo(), {}, 21);
    ScenarioReport imp = scenario_impersonate_ms(w, 25);
    CHECK(imp.outcome == Outcome::attack_blocked);
    CHECK(imp.cases.at(0).attempts == 25);
    CHECK(imp.cases.at(0).successes == 0);
    CHECK(imp.cases.at(0).error == Errc::ms_auth_failure);

    ScenarioReport fn = scenario_false_network(w, Mode::ibc);
    CHECK(fn.outcome == Outcome::attack_blocked);
    CHECK(fn.cases.size() == 3);
    for (const auto& c : fn.cases)
        CHECK(c.error == Errc::network_auth_failure);

    ScenarioReport an = scenario_anonymity(w, 6);
    CHECK(an.outcome == Outcome::attack_blocked);
    CHECK(an.control_passed);

    WorldConfig leaky;
    leaky.ms_options.leak_imsi_in_m1 = true;
    World lw(demo(), leaky, 21);
    ScenarioReport caught = scenario_anonymity(lw, 6);
    CHECK(caught.outcome == Outcome::attack_succeeded);
    CHECK(caught.cases.at(0).successes > 0);
}

TEST_CASE("freshness game bookkeeping")
{
    World w(demo(), {}, 9);
    auto random = make_random_intruder();
    auto omni = make_intruder("omniscient", w);
    auto corr = make_intruder("correlation", w);
    CHECK_THROWS_AS(make_intruder("psychic", w), std::invalid_argument);
    auto res = freshness_game(w, 40, 4, {random.get(), corr.get(), omni.get()});
    REQUIRE(res.size() == 3);
    CHECK(res[0].strategy == "random");
    CHECK(res[1].strategy == "transcript-correlation");
    CHECK(res[2].ceiling);
    CHECK(res[2].correct == 40);
    CHECK(res[2].advantage == doctest::Approx(0.5));
    for (const auto& r : res) {
        CHECK(r.trials == 40);
        CHECK(r.pool == 4);
        CHECK(r.ci_low <= r.advantage + 1e-12);
        CHECK(r.advantage <= r.ci_high + 1e-12);
        auto j = nlohmann::json::parse(r.to_json());
        CHECK(j["type"] == "freshness");
    }
    CHECK_THROWS_AS(freshness_game(w, 0, 4, {}), std::invalid_argument);
}

TEST_CASE("key files")
{
    store::KeyFile f = store::KeyFile::parse("# header\n a = 1 \nb=two words\n\na = 3\n");
    CHECK(f.get("a") == "1");
    CHECK(f.all("a") == std::vector<std::string>{"1", "3"});
    CHECK(f.require("b") == "two words");
    CHECK_FALSE(f.get("c").has_value());
    CHECK_THROWS_AS(f.require("c"), Error);
    CHECK_THROWS_AS(store::KeyFile::parse("no equals sign\n"), Error);
    f.set("b", "x");
    CHECK(f.get("b") == "x");
    CHECK(store::KeyFile::parse(f.str()).str() == f.str());

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "gsmibc-keyfile-test";
    fs::create_directories(dir);
    f.save(dir / "k.txt", true);
    CHECK((fs::status(dir / "k.txt").permissions() & fs::perms::group_read) == fs::perms::none);
    CHECK(store::KeyFile::load(dir / "k.txt").str() == f.str());
    fs::remove_all(dir);
    CHECK_THROWS_AS(store::KeyFile::load(dir / "k.txt"), Error);
}
