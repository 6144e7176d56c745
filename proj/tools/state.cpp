// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "state.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gsmibc/error.hpp"

namespace gsmibc::cli
{
namespace
{
std::string rule_name(ScalarRule r)
{
    return r == ScalarRule::hashed ? "hashed" : "direct";
}

ScalarRule parse_rule(const std::string& s)
{
    if (s == "hashed")
        return ScalarRule::hashed;
    if (s == "direct")
        return ScalarRule::direct;
    throw Error(Errc::malformed_message, "unknown scalar rule '" + s + "'");
}

baseline::Ki parse_ki(const std::string& hex)
{
    Bytes b = from_hex(hex);
    baseline::Ki ki{};
    if (b.size() != ki.size())
        throw Error(Errc::malformed_message, "Ki must be 16 bytes");
    std::copy(b.begin(), b.end(), ki.begin());
    return ki;
}

std::vector<std::string> split_ws(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;)
        out.push_back(w);
    return out;
}

}  // namespace

std::string file_token(std::string_view id)
{
    std::string out;
    for (char c : id)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
    return out;
}

std::string fingerprint(ByteView b)
{
    return to_hex(base_hash(b)).substr(0, 16);
}

std::string fingerprint(const Point& P)
{
    return fingerprint(encode(P));
}

void write_setup(const fs::path& dir, const CurveProfile& curve, const std::string& profile,
    const std::string& hlr_id, const std::vector<std::string>& vlr_ids, ScalarRule rule,
    const MasterKey& master)
{
    std::error_code ec;
    fs::create_directories(dir / "sims", ec);
    if (ec)
        throw Error(Errc::io, "cannot create " + (dir / "sims").string());

    store::KeyFile c = store::KeyFile::parse(curve.to_config());
    c.set_header("gsm-ibc curve profile");
    c.add("name", profile);
    c.save(dir / "curve.txt");

    store::KeyFile p;
    p.set_header("gsm-ibc public system parameters");
    p.add("profile", profile);
    p.add("hlr_id", hlr_id);
    p.add("ppub", to_hex(encode(master.ppub())));
    p.add("rule", rule_name(rule));
    for (const auto& v : vlr_ids)
        p.add("vlr", v);
    p.save(dir / "params.txt");

    store::KeyFile h;
    h.set_header("gsm-ibc HLR master key: keep private");
    h.add("hlr_id", hlr_id);
    h.add("master", to_hex(to_be_bytes(master.secret().value(), (bit_length(curve.q()) + 7) / 8)));
    h.save(dir / "hlr.key", true);

    for (const auto& v : vlr_ids) {
        IdentityKey k = extract(master, to_bytes(v));
        store::KeyFile f;
        f.set_header("gsm-ibc VLR identity key: keep private");
        f.add("vlr_id", v);
        f.add("d_id", to_hex(encode(k.d_id)));
        f.save(dir / ("vlr-" + file_token(v) + ".key"), true);
    }

    PublicState st;
    st.dir = dir;
    save_db(st, {});
}

PublicState load_public(const fs::path& dir)
{
    PublicState st;
    st.dir = dir;
    store::KeyFile c = store::KeyFile::load(dir / "curve.txt");
    st.profile = c.get("name").value_or("file");
    st.curve = st.profile == "demo" ? CurveProfile::demo()
        : st.profile == "test"      ? CurveProfile::test()
                                    : CurveProfile::from_config(c.str());
    if (st.curve->to_config() != CurveProfile::from_config(c.str())->to_config())
        throw Error(Errc::bad_profile, "curve.txt does not match the named profile");

    store::KeyFile p = store::KeyFile::load(dir / "params.txt");
    st.hlr_id = p.require("hlr_id");
    st.vlr_ids = p.all("vlr");
    if (st.vlr_ids.empty())
        throw Error(Errc::malformed_message, "params.txt names no VLR");
    st.rule = parse_rule(p.require("rule"));
    st.ppub = decode_point(*st.curve, from_hex(p.require("ppub")));
    return st;
}

MasterKey load_master(const PublicState& st)
{
    store::KeyFile h = store::KeyFile::load(st.dir / "hlr.key");
    if (h.require("hlr_id") != st.hlr_id)
        throw Error(Errc::malformed_message, "hlr.key belongs to a different HLR");
    MasterKey mk = MasterKey::from_secret(*st.curve, from_be_bytes(from_hex(h.require("master"))));
    if (mk.ppub() != st.ppub)
        throw Error(Errc::degenerate_key, "hlr.key does not match P_pub in params.txt");
    return mk;
}

IdentityKey load_vlr_key(const PublicState& st, const std::string& vlr_id)
{
    store::KeyFile f = store::KeyFile::load(st.dir / ("vlr-" + file_token(vlr_id) + ".key"));
    if (f.require("vlr_id") != vlr_id)
        throw Error(Errc::malformed_message, "VLR key file belongs to a different VLR");
    Bytes id = to_bytes(vlr_id);
    return {id, map_to_point(id, *st.curve), decode_point(*st.curve, from_hex(f.require("d_id")))};
}

std::vector<DbEntry> load_db(const PublicState& st)
{
    std::vector<DbEntry> out;
    store::KeyFile f = store::KeyFile::load(st.dir / "hlr-db.txt");
    for (const auto& line : f.all("subscriber")) {
        auto w = split_ws(line);
        if (w.size() != 4)
            throw Error(Errc::malformed_message, "hlr-db.txt: expected 'imsi tmsi kp ki'");
        out.push_back({w[0], w[1], decode_point(*st.curve, from_hex(w[2])), parse_ki(w[3])});
    }
    return out;
}

void save_db(const PublicState& st, const std::vector<DbEntry>& db)
{
    store::KeyFile f;
    f.set_header("gsm-ibc HLR subscriber database: keep private");
    for (const auto& e : db)
        f.add("subscriber", e.imsi + " " + e.tmsi + " " + to_hex(encode(e.kp)) + " " + to_hex(e.ki));
    f.save(st.dir / "hlr-db.txt", true);
}

fs::path sim_path(const PublicState& st, const std::string& imsi)
{
    return st.dir / "sims" / ("sim-" + file_token(imsi) + ".txt");
}

SimFile load_sim(const PublicState& st, const std::string& imsi)
{
    store::KeyFile f = store::KeyFile::load(sim_path(st, imsi));
    SimFile s;
    s.sim.imsi = to_bytes(f.require("imsi"));
    s.sim.tmsi = to_bytes(f.require("tmsi"));
    s.sim.kp = decode_point(*st.curve, from_hex(f.require("kp")));
    s.ki = parse_ki(f.require("ki"));
    return s;
}

void save_sim(const PublicState& st, const SimFile& s)
{
    store::KeyFile f;
    f.set_header("gsm-ibc SIM card");
    f.add("imsi", to_string(s.sim.imsi));
    f.add("tmsi", to_string(s.sim.tmsi));
    f.add("kp", to_hex(encode(s.sim.kp)));
    f.add("ki", to_hex(s.ki));
    f.save(sim_path(st, to_string(s.sim.imsi)), true);
}

Loaded load_deployment(const PublicState& st)
{
    std::vector<DbEntry> db = load_db(st);
    if (db.empty())
        throw Error(Errc::unknown_subscriber, "no subscriber registered yet");
    Loaded out{harness::WorldConfig{}, harness::Deployment{load_master(st), {}, {}, {}, {}, {}}};
    out.config.hlr_id = st.hlr_id;
    out.config.vlr_ids = st.vlr_ids;
    out.config.rule = st.rule;
    out.config.roster.clear();
    for (const auto& v : st.vlr_ids)
        out.deployment.vlr_keys.push_back(load_vlr_key(st, v));
    for (const auto& e : db) {
        out.config.roster.push_back({e.imsi, e.tmsi});
        SimFile s = load_sim(st, e.imsi);
        out.deployment.sims.push_back(s.sim);
        out.deployment.hlr_copies.push_back(e.kp);
        out.deployment.hlr_kis.push_back(e.ki);
        out.deployment.sim_kis.push_back(s.ki);
    }
    return out;
}

}  // namespace gsmibc::cli
