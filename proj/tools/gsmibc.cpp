// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

// gsmibc: key ceremony, registration, handshakes, attack scenarios, the
// freshness game, operation-count benchmarks and transcript inspection.
//
// Exit status: 0 success or expected outcome, 1 protocol or verification
// failure, 2 usage error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsmibc/error.hpp"
#include "gsmibc/ops.hpp"
#include "gsmibc/scenarios.hpp"
#include "state.hpp"

namespace
{
using namespace gsmibc;
namespace fs = std::filesystem;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Options
{
    std::string profile = "demo";
    std::uint64_t seed = 0;
    std::string out;
    std::string mode = "ibc";
    std::string scenario;
    std::size_t trials = 10000;
    std::size_t pool = 32;
    std::string strategy = "all";

    std::string hlr_id = "HLR-01";
    std::vector<std::string> vlr_ids{"VLR-01", "VLR-02"};
    std::string rule = "hashed";
    std::string imsi;
    std::string tmsi;
    std::string transcript_path;
    std::size_t attempts = 1000;
    std::size_t sessions = 100;
    bool leak_imsi = false;
    double threshold = 0.05;
    std::size_t iterations = 20;
    std::string file;
    bool verify = false;
};

void write_text(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text))
        throw Error(Errc::io, "cannot write " + path.string());
}

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

harness::Mode parse_mode(const std::string& m)
{
    if (m == "ibc")
        return harness::Mode::ibc;
    if (m == "baseline")
        return harness::Mode::baseline;
    throw UsageError("--mode must be ibc or baseline");
}

std::shared_ptr<const CurveProfile> select_profile(const std::string& selector)
{
    try {
        return CurveProfile::select(selector);
    }
    catch (const Error& e) {
        if (e.code() == Errc::io)
            throw UsageError("unknown profile '" + selector + "' (use test, demo or a file path)");
        throw;
    }
}

fs::path state_dir(const Options& o)
{
    return o.out.empty() ? fs::path("gsmibc-state") : fs::path(o.out);
}

// ------------------------------------------------------------ setup

int cmd_setup(const Options& o)
{
    auto curve = select_profile(o.profile);
    ScalarRule rule = o.rule == "direct" ? ScalarRule::direct : ScalarRule::hashed;
    if (o.rule != "direct" && o.rule != "hashed")
        throw UsageError("--rule must be hashed or direct");
    if (o.vlr_ids.empty())
        throw UsageError("at least one --vlr is required");

    Rng rng(o.seed);
    Rng hlr_rng = rng.fork("hlr");
    MasterKey master = MasterKey::setup(*curve, hlr_rng);
    std::string profile = o.profile == "test" || o.profile == "demo" ? o.profile : "file";
    fs::path dir = state_dir(o);
    cli::write_setup(dir, *curve, profile, o.hlr_id, o.vlr_ids, rule, master);

    std::cout << "profile: " << profile << " (p: " << bit_length(curve->p())
              << " bits, q: " << bit_length(curve->q()) << " bits)\n";
    std::cout << "P_pub fingerprint: " << cli::fingerprint(master.ppub()) << "\n";
    std::cout << "Q_id(" << o.hlr_id << ") fingerprint: "
              << cli::fingerprint(map_to_point(to_bytes(o.hlr_id), *curve)) << "\n";
    for (const auto& v : o.vlr_ids)
        std::cout << "Q_id(" << v << ") fingerprint: "
                  << cli::fingerprint(map_to_point(to_bytes(v), *curve)) << "\n";
    std::cout << "wrote " << dir.string() << "\n";
    return exit_ok;
}

// ------------------------------------------------------------ register

int cmd_register(const Options& o)
{
    if (o.imsi.empty() || o.tmsi.empty())
        throw UsageError("register needs --imsi and --tmsi");
    for (const auto& s : {o.imsi, o.tmsi})
        if (s.find_first_of(" \t\r\n#=") != std::string::npos)
            throw UsageError("identities may not contain whitespace, '#' or '='");

    cli::PublicState st = cli::load_public(state_dir(o));
    MasterKey master = cli::load_master(st);
    std::vector<cli::DbEntry> db = cli::load_db(st);
    for (const auto& e : db) {
        if (e.imsi == o.imsi)
            throw Error(Errc::duplicate_subscriber, "IMSI " + o.imsi + " is already registered");
        if (e.tmsi == o.tmsi)
            throw Error(Errc::duplicate_subscriber, "TMSI " + o.tmsi + " is already in use");
    }

    IdentityKey key = extract(master, to_bytes(o.imsi));
    bool valid = key_is_valid(st.ppub, key);
    Rng rng = Rng(o.seed).fork("ki:" + o.imsi);
    Bytes ki_bytes = rng.bytes(16);
    baseline::Ki ki{};
    std::copy(ki_bytes.begin(), ki_bytes.end(), ki.begin());

    cli::SimFile sim{SimCard{to_bytes(o.imsi), to_bytes(o.tmsi), key.d_id, std::nullopt}, ki};
    cli::save_sim(st, sim);
    db.push_back({o.imsi, o.tmsi, key.d_id, ki});
    cli::save_db(st, db);

    std::cout << "Q_id(" << o.imsi << ") fingerprint: " << cli::fingerprint(key.q_id) << "\n";
    std::cout << "K' check e(K', G) = e(H(IMSI), P_pub): " << (valid ? "ok" : "FAILED") << "\n";
    std::cout << "wrote " << cli::sim_path(st, o.imsi).string() << "\n";
    return valid ? exit_ok : exit_failure;
}

// ------------------------------------------------------------ handshake

std::size_t roster_index(const harness::WorldConfig& cfg, const std::string& imsi)
{
    if (imsi.empty())
        return 0;
    for (std::size_t i = 0; i < cfg.roster.size(); ++i)
        if (cfg.roster[i].imsi == imsi)
            return i;
    throw Error(Errc::unknown_subscriber, "IMSI " + imsi + " is not registered");
}

std::string key_line(const std::optional<SessionResult>& r)
{
    return r ? cli::fingerprint(r->session_key) : std::string("(none)");
}

int cmd_handshake(const Options& o)
{
    harness::Mode mode = parse_mode(o.mode);
    cli::PublicState st = cli::load_public(state_dir(o));
    cli::Loaded loaded = cli::load_deployment(st);
    std::size_t idx = roster_index(loaded.config, o.imsi);
    harness::World world(st.curve, loaded.config, o.seed, loaded.deployment);

    fs::path tpath = o.transcript_path.empty()
        ? st.dir / ("transcript-" + o.mode + ".jsonl")
        : fs::path(o.transcript_path);
    int rc = exit_ok;
    std::optional<Errc> error;

    if (mode == harness::Mode::ibc) {
        harness::SessionOutcome out = world.run_session(idx);
        const ops::Counters& c = world.ms(idx).counters();
        std::cout << "session " << out.session << ": "
                  << (out.completed ? "established" : "aborted") << "\n";
        std::cout << "MS  key fingerprint: " << key_line(out.ms) << "\n";
        std::cout << "VLR key fingerprint: " << key_line(out.vlr) << "\n";
        std::cout << "HLR key fingerprint: " << key_line(out.hlr) << "\n";
        std::cout << "keys match: " << (out.keys_agree() ? "yes" : "no") << "\n";
        std::cout << "MS ops: scalar_mul=" << c.scalar_mul << " pairing=" << c.pairing
                  << " ibe=" << c.ibe << " ibs=" << c.ibs << "\n";
        if (!out.keys_agree()) {
            error = out.error;
            std::cerr << "stopped at " << harness::name_of(out.failed_at) << "\n";
            rc = exit_failure;
        }
    }
    else {
        harness::BaselineOutcome out = world.run_baseline_session(idx);
        std::cout << "session " << out.session << ": "
                  << (out.completed ? "established" : "aborted") << "\n";
        std::cout << "SRES = SRES': " << (out.completed ? "match" : "no match") << "\n";
        if (out.ms)
            std::cout << "MS  Kc fingerprint: " << cli::fingerprint(out.ms->kc) << "\n";
        if (out.vlr)
            std::cout << "VLR Kc fingerprint: " << cli::fingerprint(out.vlr->kc) << "\n";
        std::cout << "network authenticated by MS: no (one-way protocol)\n";
        if (!out.completed) {
            error = out.error;
            rc = exit_failure;
        }
    }
    write_text(tpath, world.network().transcript().to_jsonl());
    std::cout << "transcript: " << tpath.string() << " ("
              << world.network().transcript().hash().substr(0, 16) << ")\n";
    if (error)
        std::cerr << "error: " << to_string(*error) << "\n";
    return rc;
}

// ------------------------------------------------------------ attack

int cmd_attack(const Options& o)
{
    const auto& names = harness::scenario_names();
    if (std::find(names.begin(), names.end(), o.scenario) == names.end())
        throw UsageError("unknown scenario '" + o.scenario + "'");
    harness::Mode mode = parse_mode(o.mode);
    if (mode == harness::Mode::baseline && o.scenario != "false-network")
        throw UsageError("scenario '" + o.scenario + "' has no baseline variant");

    auto curve = select_profile(o.profile);
    harness::WorldConfig cfg;
    cfg.ms_options.leak_imsi_in_m1 = o.leak_imsi;
    harness::World world(curve, cfg, o.seed);
    harness::ScenarioReport rep = o.scenario == "impersonate-ms"
        ? harness::scenario_impersonate_ms(world, o.attempts)
        : o.scenario == "anonymity" ? harness::scenario_anonymity(world, o.sessions)
                                    : harness::run_scenario(o.scenario, world, mode);

    std::cout << "scenario: " << rep.scenario << " (" << harness::name_of(mode)
              << ") seed=" << o.seed << "\n";
    for (const auto& c : rep.cases) {
        std::cout << "  " << c.name << ": " << harness::name_of(c.outcome);
        if (c.attempts > 1 || c.successes > 1)
            std::cout << " [" << c.successes << "/" << c.attempts << "]";
        if (c.error)
            std::cout << " (" << to_string(*c.error) << " at " << harness::name_of(c.stopped_by)
                      << ")";
        std::cout << "\n";
    }
    harness::Outcome expected = harness::expected_outcome(rep.scenario, mode);
    std::cout << "control: " << (rep.control_passed ? "passed" : "FAILED") << "\n";
    std::cout << "outcome: " << harness::name_of(rep.outcome) << " (expected "
              << harness::name_of(expected) << ")\n";

    if (!o.out.empty()) {
        fs::path dir(o.out);
        std::string stem = rep.scenario + "-" + std::string(harness::name_of(mode));
        write_text(dir / ("report-" + stem + ".jsonl"), rep.to_jsonl());
        write_text(dir / ("transcript-" + stem + ".jsonl"), world.network().transcript().to_jsonl());
        std::cout << "report: " << (dir / ("report-" + stem + ".jsonl")).string() << "\n";
    }
    return rep.outcome == expected && rep.control_passed ? exit_ok : exit_failure;
}

// ------------------------------------------------------------ freshness

int cmd_freshness(const Options& o)
{
    if (o.trials == 0 || o.pool == 0)
        throw UsageError("--trials and --pool must be positive");
    std::vector<std::string> wanted;
    if (o.strategy == "all")
        wanted = harness::strategy_names();
    else
        wanted.push_back(o.strategy);

    auto curve = select_profile(o.profile);
    harness::World world(curve, {}, o.seed);
    std::vector<std::unique_ptr<harness::Intruder>> owned;
    std::vector<harness::Intruder*> intruders;
    for (const auto& s : wanted) {
        try {
            owned.push_back(harness::make_intruder(s, world));
        }
        catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        intruders.push_back(owned.back().get());
    }

    auto results = harness::freshness_game(world, o.trials, o.pool, intruders);
    std::cout << "freshness game: trials=" << o.trials << " pool=" << o.pool << " seed=" << o.seed
              << "\n";
    bool ok = true;
    std::string report;
    for (const auto& r : results) {
        std::cout << std::fixed << std::setprecision(4) << "  " << r.strategy << ": correct "
                  << r.correct << "/" << r.trials << " advantage " << r.advantage << " ci95 ["
                  << r.ci_low << ", " << r.ci_high << "]";
        if (r.ceiling)
            std::cout << " (ceiling: intruder holds K')";
        else if (r.advantage > o.threshold) {
            std::cout << " ABOVE THRESHOLD " << o.threshold;
            ok = false;
        }
        std::cout << "\n";
        report += r.to_json() + "\n";
    }
    if (!o.out.empty())
        write_text(o.out, report);
    return ok ? exit_ok : exit_failure;
}

// ------------------------------------------------------------ bench

struct Timed
{
    std::string name;
    double micros;
};

template <typename Fn>
Timed time_op(std::string name, std::size_t n, Fn&& fn)
{
    auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < n; ++i)
        fn(i);
    auto dt = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0);
    return {std::move(name), dt.count() / static_cast<double>(n)};
}

std::string counters_json(const ops::Counters& c)
{
    nlohmann::ordered_json j;
    j["scalar_mul"] = c.scalar_mul;
    j["pairing"] = c.pairing;
    j["ibe"] = c.ibe;
    j["ibs"] = c.ibs;
    return j.dump();
}

int cmd_bench(const Options& o)
{
    auto curve = select_profile(o.profile);
    const std::size_t n = std::max<std::size_t>(1, o.iterations);
    harness::World world(curve, {}, o.seed);
    SystemParams params = world.params();

    // Per-entity operation counts for one session, handler by handler.
    ops::Counters ms_c, vlr_c, hlr_c;
    auto& ms = world.ms();
    auto& vlr = world.vlr();
    auto& hlr = world.hlr();
    std::uint32_t sid = world.next_session();
    M1Tmsi m1;
    M2Challenge m2;
    M3Response m3;
    M4ToHlr m4;
    M5FromHlr m5;
    M6Confirm m6;
    { ops::Scope s(ms_c); m1 = ms.start(sid); }
    { ops::Scope s(vlr_c); m2 = vlr.challenge(sid, m1); }
    { ops::Scope s(ms_c); m3 = ms.respond(sid, m2); }
    { ops::Scope s(vlr_c); m4 = vlr.forward(sid, m3); }
    { ops::Scope s(hlr_c); m5 = hlr.process(sid, m4); }
    { ops::Scope s(vlr_c); m6 = vlr.finish(sid, m5).first; }
    { ops::Scope s(ms_c); ms.finalize(sid, m6); }

    std::cout << "operation counts per session (" << curve->name() << " profile):\n";
    std::cout << "  MS : " << counters_json(ms_c) << "\n";
    std::cout << "  VLR: " << counters_json(vlr_c) << "\n";
    std::cout << "  HLR: " << counters_json(hlr_c) << "\n";

    Rng rng = Rng(o.seed).fork("bench");
    const Point& G = curve->generator();
    IdentityKey hlr_key = extract(hlr.master(), to_bytes(world.config().hlr_id));
    IdentityPublic hlr_pub = IdentityPublic::derive(params.ppub, hlr_key.id);
    Bytes msg = to_bytes("benchmark message");
    IbeCiphertext ct = ibe_encrypt(hlr_pub, msg, rng);
    IbsSignature sig = ibs_sign(hlr_key, msg, rng);
    std::vector<Timed> rows;
    std::vector<BigInt> scalars;
    for (std::size_t i = 0; i < n; ++i)
        scalars.push_back(rng.below(curve->q()));
    rows.push_back(time_op("scalar_mul", n, [&](std::size_t i) { scalar_mul(scalars[i], G); }));
    rows.push_back(time_op("pairing", n, [&](std::size_t) { pairing(G, params.ppub); }));
    rows.push_back(time_op("map_to_point", n, [&](std::size_t i) {
        map_to_point(to_bytes("bench-" + std::to_string(i)), *curve);
    }));
    rows.push_back(time_op("ibe_encrypt", n, [&](std::size_t) { ibe_encrypt(hlr_pub, msg, rng); }));
    rows.push_back(time_op("ibe_decrypt", n, [&](std::size_t) { ibe_decrypt(hlr_key, ct); }));
    rows.push_back(time_op("ibs_sign", n, [&](std::size_t) { ibs_sign(hlr_key, msg, rng); }));
    rows.push_back(time_op("ibs_verify", n, [&](std::size_t) { ibs_verify(params.ppub, hlr_pub, msg, sig); }));
    rows.push_back(time_op("session", n, [&](std::size_t) { world.run_session(); }));

    std::cout << "timings (" << n << " iterations, microseconds per op):\n";
    for (const auto& r : rows)
        std::cout << "  " << std::left << std::setw(14) << r.name << std::right << std::fixed
                  << std::setprecision(1) << r.micros << "\n";

    if (!o.out.empty()) {
        nlohmann::ordered_json j;
        j["type"] = "op-counts";
        j["profile"] = curve->name();
        j["ms"] = nlohmann::json::parse(counters_json(ms_c));
        j["vlr"] = nlohmann::json::parse(counters_json(vlr_c));
        j["hlr"] = nlohmann::json::parse(counters_json(hlr_c));
        write_text(o.out, j.dump() + "\n");
    }
    return exit_ok;
}

// ------------------------------------------------------------ transcript

int cmd_transcript(const Options& o)
{
    auto curve = select_profile(o.profile);
    std::string text = read_text(o.file);
    std::istringstream in(text);
    std::string line;
    harness::Transcript rebuilt;
    std::size_t mismatches = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        }
        catch (const nlohmann::json::exception&) {
            throw Error(Errc::malformed_message, "line " + std::to_string(lineno) + " is not JSON");
        }
        harness::Record r;
        r.seq = j.at("seq").get<std::size_t>();
        std::string ch = j.at("channel").get<std::string>();
        r.channel = ch == "core" ? harness::Channel::core : harness::Channel::air;
        r.direction = j.at("direction").get<std::string>();
        r.raw = from_hex(j.at("raw_hex").get<std::string>());
        r.summary = j.at("parsed_summary").get<std::string>();
        r.action = j.at("adversary_action").get<std::string>();

        std::string decoded;
        try {
            decoded = summarize(decode_envelope(*curve, r.raw));
        }
        catch (const Error& e) {
            decoded = std::string("undecodable (") + std::string(to_string(e.code())) + ")";
        }
        bool same = decoded == r.summary;
        if (!same)
            ++mismatches;
        std::cout << std::setw(4) << r.seq << "  " << std::left << std::setw(4) << ch << " "
                  << std::setw(9) << r.direction << " " << std::setw(10) << r.action << std::right
                  << " " << decoded << (same ? "" : "   [summary differs]") << "\n";
        rebuilt.append(std::move(r));
    }
    std::cout << "messages: " << rebuilt.size() << "\n";
    std::cout << "hash: " << rebuilt.hash() << "\n";
    if (o.verify) {
        bool canonical = rebuilt.to_jsonl() == text;
        std::cout << "verify: " << (mismatches == 0 && canonical ? "ok" : "FAILED") << "\n";
        return mismatches == 0 && canonical ? exit_ok : exit_failure;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"gsmibc: identity-based authenticated key exchange for GSM networks"};
    app.require_subcommand(1);
    Options o;
    if (const char* env = std::getenv("GSMIBC_PROFILE"); env != nullptr && *env != '\0')
        o.profile = env;

    auto profile_opt = [&](CLI::App* sub) {
        sub->add_option("--profile", o.profile, "Curve profile: test, demo or a file path")
            ->envname("GSMIBC_PROFILE");
    };

    auto* setup = app.add_subcommand("setup", "Generate system parameters and key files");
    profile_opt(setup);
    setup->add_option("--seed", o.seed, "Randomness seed");
    setup->add_option("--out", o.out, "Deployment directory (default gsmibc-state)");
    setup->add_option("--hlr-id", o.hlr_id, "HLR identity");
    setup->add_option("--vlr", o.vlr_ids, "VLR identity (repeatable)");
    setup->add_option("--rule", o.rule, "Session scalar rule: hashed or direct");

    auto* reg = app.add_subcommand("register", "Register a subscriber and write its SIM file");
    reg->add_option("--out", o.out, "Deployment directory (default gsmibc-state)");
    reg->add_option("--imsi", o.imsi, "Subscriber IMSI")->required();
    reg->add_option("--tmsi", o.tmsi, "Subscriber TMSI")->required();
    reg->add_option("--seed", o.seed, "Seed for the classic-GSM Ki");

    auto* hs = app.add_subcommand("handshake", "Run one authenticated key exchange");
    hs->add_option("--out", o.out, "Deployment directory (default gsmibc-state)");
    hs->add_option("--seed", o.seed, "Session randomness seed");
    hs->add_option("--mode", o.mode, "ibc or baseline");
    hs->add_option("--imsi", o.imsi, "Subscriber (default: first registered)");
    hs->add_option("--transcript", o.transcript_path, "Transcript file");

    auto* atk = app.add_subcommand("attack", "Run an attack scenario");
    profile_opt(atk);
    atk->add_option("--scenario", o.scenario, "replay, impersonate-ms, false-network, anonymity")
        ->required();
    atk->add_option("--mode", o.mode, "ibc or baseline");
    atk->add_option("--seed", o.seed, "Scenario seed")->required();
    atk->add_option("--out", o.out, "Directory for report and transcript");
    atk->add_option("--attempts", o.attempts, "Fabrications for impersonate-ms");
    atk->add_option("--sessions", o.sessions, "Sessions scanned by anonymity");
    atk->add_flag("--leak-imsi", o.leak_imsi, "Negative control: MS sends its IMSI in M1");

    auto* fr = app.add_subcommand("freshness", "Play the session-key freshness game");
    profile_opt(fr);
    fr->add_option("--seed", o.seed, "Game seed")->required();
    fr->add_option("--trials", o.trials, "Number of trials");
    fr->add_option("--pool", o.pool, "Size of the pool of earlier session keys");
    fr->add_option("--strategy", o.strategy,
        "random, transcript-correlation, omniscient or all");
    fr->add_option("--threshold", o.threshold, "Largest acceptable advantage");
    fr->add_option("--out", o.out, "Report file");

    auto* bench = app.add_subcommand("bench", "Operation counts and timings");
    profile_opt(bench);
    bench->add_option("--seed", o.seed, "Seed");
    bench->add_option("--iterations", o.iterations, "Iterations per timed operation");
    bench->add_option("--out", o.out, "Write the operation counts here");

    auto* tr = app.add_subcommand("transcript", "Decode and check a transcript file");
    profile_opt(tr);
    tr->add_option("file", o.file, "Transcript (JSON lines)")->required();
    tr->add_flag("--verify", o.verify, "Fail unless every record re-decodes to its summary");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*setup)
            return cmd_setup(o);
        if (*reg)
            return cmd_register(o);
        if (*hs)
            return cmd_handshake(o);
        if (*atk)
            return cmd_attack(o);
        if (*fr)
            return cmd_freshness(o);
        if (*bench)
            return cmd_bench(o);
        if (*tr)
            return cmd_transcript(o);
    }
    catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_usage;
}
