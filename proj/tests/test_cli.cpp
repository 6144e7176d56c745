// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "gsmibc/curve.hpp"
#include "gsmibc/ibc.hpp"
#include "gsmibc/store.hpp"

namespace fs = std::filesystem;
using namespace gsmibc;

namespace
{
struct Result
{
    int code;
    std::string out;
};

Result cli(const std::string& args)
{
    std::string cmd = std::string(GSMIBC_CLI) + " " + args + " 2>&1";
    Result r{-1, {}};
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool has(const std::string& text, const std::string& needle)
{
    return text.find(needle) != std::string::npos;
}

struct Dir
{
    fs::path path;
    explicit Dir(const std::string& name) : path(fs::temp_directory_path() / ("gsmibc-cli-" + name))
    {
        fs::remove_all(path);
    }
    ~Dir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

const std::string imsi = "IMSI-404685505601234";

Result provision(const Dir& d, const std::string& profile = "demo")
{
    Result s = cli("setup --profile " + profile + " --seed 7 --out " + d.str());
    REQUIRE(s.code == 0);
    return cli("register --out " + d.str() + " --imsi " + imsi + " --tmsi T-7001 --seed 7");
}
}  // namespace

TEST_CASE("setup twice with the same seed writes identical files")
{
    Dir a("setup-a"), b("setup-b");
    Result ra = cli("setup --profile demo --seed 11 --out " + a.str());
    Result rb = cli("setup --profile demo --seed 11 --out " + b.str());
    CHECK(ra.code == 0);
    CHECK(rb.code == 0);
    CHECK(has(ra.out, "P_pub fingerprint: "));
    CHECK(has(ra.out, "Q_id(HLR-01) fingerprint: "));
    for (const char* f : {"curve.txt", "params.txt", "hlr.key", "hlr-db.txt", "vlr-VLR-01.key"}) {
        CHECK(fs::exists(a.path / f));
        CHECK(slurp(a.path / f) == slurp(b.path / f));
    }
    auto perms = fs::status(a.path / "hlr.key").permissions();
    CHECK((perms & (fs::perms::group_all | fs::perms::others_all)) == fs::perms::none);

    // The master scalar lives only in hlr.key.
    std::string master = store::KeyFile::load(a.path / "hlr.key").require("master");
    CHECK_FALSE(has(ra.out, master));
    for (const char* f : {"curve.txt", "params.txt", "hlr-db.txt", "vlr-VLR-01.key"})
        CHECK_FALSE(has(slurp(a.path / f), master));

    Dir c("setup-c");
    cli("setup --profile demo --seed 12 --out " + c.str());
    CHECK(slurp(a.path / "params.txt") != slurp(c.path / "params.txt"));
}

TEST_CASE("register writes a SIM whose K' passes the pairing check; duplicates fail")
{
    Dir d("register");
    Result r = provision(d);
    CHECK(r.code == 0);
    CHECK(has(r.out, "K' check e(K', G) = e(H(IMSI), P_pub): ok"));

    // Independent re-check from the files.
    auto curve = CurveProfile::demo();
    auto sim = store::KeyFile::load(d.path / "sims" / ("sim-" + imsi + ".txt"));
    auto params = store::KeyFile::load(d.path / "params.txt");
    Point ppub = decode_point(*curve, from_hex(params.require("ppub")));
    Point kp = decode_point(*curve, from_hex(sim.require("kp")));
    Point q = map_to_point(to_bytes(imsi), *curve);
    CHECK(pairing(kp, curve->generator()) == pairing(q, ppub));
    CHECK_FALSE(has(r.out, sim.require("kp")));

    Result dup = cli("register --out " + d.str() + " --imsi " + imsi + " --tmsi T-7002");
    CHECK(dup.code == 1);
    CHECK(has(dup.out, "duplicate-subscriber"));
    Result dup_tmsi = cli("register --out " + d.str() + " --imsi IMSI-1 --tmsi T-7001");
    CHECK(dup_tmsi.code == 1);

    Result missing = cli("register --out " + d.str() + " --imsi X");
    CHECK(missing.code == 2);
    Result nowhere = cli("register --out /nonexistent/dir --imsi X --tmsi Y");
    CHECK(nowhere.code == 1);
}

TEST_CASE("honest handshake prints fingerprints and the MS operation counters")
{
    Dir d("handshake");
    provision(d);
    Result r = cli("handshake --out " + d.str() + " --seed 3");
    CHECK(r.code == 0);
    CHECK(has(r.out, "keys match: yes"));
    CHECK(has(r.out, "MS ops: scalar_mul=1 pairing=0 ibe=0 ibs=0"));
    std::smatch m;
    std::string out = r.out;
    REQUIRE(std::regex_search(out, m, std::regex("MS  key fingerprint: ([0-9a-f]{16})")));
    std::string fp = m[1];
    CHECK(has(r.out, "VLR key fingerprint: " + fp));
    CHECK(has(r.out, "HLR key fingerprint: " + fp));

    std::string t = slurp(d.path / "transcript-ibc.jsonl");
    CHECK(std::count(t.begin(), t.end(), '\n') == 6);
    Result again = cli("handshake --out " + d.str() + " --seed 3");
    CHECK(again.out == r.out);
    CHECK(slurp(d.path / "transcript-ibc.jsonl") == t);

    Result v = cli("transcript " + (d.path / "transcript-ibc.jsonl").string() + " --verify");
    CHECK(v.code == 0);
    CHECK(has(v.out, "verify: ok"));
    CHECK(has(v.out, "messages: 6"));
}

TEST_CASE("a corrupted SIM key fails with ms-auth-failure")
{
    Dir d("corrupt");
    provision(d);
    fs::path simf = d.path / "sims" / ("sim-" + imsi + ".txt");
    auto sim = store::KeyFile::load(simf);
    std::string kp = sim.require("kp");
    kp[1] = kp[1] == '2' ? '3' : '2';
    sim.set("kp", kp);
    sim.save(simf, true);
    Result r = cli("handshake --out " + d.str() + " --seed 3");
    CHECK(r.code == 1);
    CHECK(has(r.out, "error: ms-auth-failure"));
    CHECK(has(r.out, "keys match: no"));
}

TEST_CASE("baseline handshake reports the SRES comparison")
{
    Dir d("baseline");
    provision(d);
    Result r = cli("handshake --out " + d.str() + " --seed 3 --mode baseline");
    CHECK(r.code == 0);
    CHECK(has(r.out, "SRES = SRES': match"));

    fs::path simf = d.path / "sims" / ("sim-" + imsi + ".txt");
    auto sim = store::KeyFile::load(simf);
    std::string ki = sim.require("ki");
    ki[0] = ki[0] == '0' ? '1' : '0';
    sim.set("ki", ki);
    sim.save(simf, true);
    Result bad = cli("handshake --out " + d.str() + " --seed 3 --mode baseline");
    CHECK(bad.code == 1);
    CHECK(has(bad.out, "SRES = SRES': no match"));
    CHECK(has(bad.out, "ms-auth-failure"));
}

TEST_CASE("attack scenarios follow the expectation table")
{
    Dir d("attack");
    Result replay = cli("attack --scenario replay --seed 1 --out " + d.str());
    CHECK(replay.code == 0);
    CHECK(has(replay.out, "outcome: attack_blocked"));
    CHECK(fs::exists(d.path / "report-replay-ibc.jsonl"));
    CHECK(fs::exists(d.path / "transcript-replay-ibc.jsonl"));

    Result base = cli("attack --scenario false-network --mode baseline --seed 1");
    CHECK(base.code == 0);
    CHECK(has(base.out, "outcome: attack_succeeded (expected attack_succeeded)"));
    Result ibc = cli("attack --scenario false-network --seed 1");
    CHECK(ibc.code == 0);
    CHECK(has(ibc.out, "outcome: attack_blocked"));
    Result imp = cli("attack --scenario impersonate-ms --seed 1 --attempts 20");
    CHECK(imp.code == 0);
    CHECK(has(imp.out, "[0/20]"));
    Result anon = cli("attack --scenario anonymity --seed 1 --sessions 4");
    CHECK(anon.code == 0);
    Result leak = cli("attack --scenario anonymity --seed 1 --sessions 4 --leak-imsi");
    CHECK(leak.code == 1);
    CHECK(has(leak.out, "outcome: attack_succeeded"));
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(cli("attack --scenario teleport --seed 1").code == 2);
    CHECK(cli("attack --scenario replay").code == 2);
    CHECK(cli("attack --scenario replay --mode baseline --seed 1").code == 2);
    CHECK(cli("attack --scenario replay --mode quantum --seed 1").code == 2);
    CHECK(cli("freshness --trials 10").code == 2);
    CHECK(cli("freshness --seed 1 --strategy psychic --trials 2").code == 2);
    CHECK(cli("setup --profile nonsense").code == 2);
    CHECK(cli("").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("--help").code == 0);
}

TEST_CASE("freshness flags the omniscient intruder as a ceiling and passes")
{
    Dir d("fresh");
    fs::create_directories(d.path);
    Result r = cli("freshness --seed 2 --trials 60 --pool 4 --out " + (d.path / "f.jsonl").string());
    CHECK(r.code == 0);
    CHECK(has(r.out, "omniscient: correct 60/60 advantage 0.5000"));
    CHECK(has(r.out, "(ceiling: intruder holds K')"));
    std::string rep = slurp(d.path / "f.jsonl");
    CHECK(std::count(rep.begin(), rep.end(), '\n') == 3);

    Result strict = cli("freshness --seed 2 --trials 60 --pool 4 --strategy random --threshold -1");
    CHECK(strict.code == 1);
}

TEST_CASE("GSMIBC_PROFILE selects the default profile")
{
    Dir d("env");
    Result r = cli("setup --seed 1 --out " + d.str() + " --hlr-id H --vlr V");
    CHECK(has(r.out, "profile: demo"));
    std::string cmd = "GSMIBC_PROFILE=test " + std::string(GSMIBC_CLI) + " setup --seed 1 --out " +
        d.str() + " --hlr-id HLR-A --vlr VLR-C > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(has(slurp(d.path / "curve.txt"), "p = 11"));
}

TEST_CASE("bench reports per-entity operation counts")
{
    Result r = cli("bench --iterations 1");
    CHECK(r.code == 0);
    CHECK(has(r.out, "MS : {\"scalar_mul\":1,\"pairing\":0,\"ibe\":0,\"ibs\":0}"));
}
