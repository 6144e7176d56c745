// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "gsmibc/baseline.hpp"
#include "gsmibc/harness.hpp"
#include "gsmibc/store.hpp"

// On-disk layout of a deployment directory:
//
//   curve.txt            profile parameters (decimal)
//   params.txt           public system parameters: HLR id, P_pub, VLR ids, rule
//   hlr.key              master secret K                        (0600)
//   hlr-db.txt           the HLR's copies: IMSI, TMSI, K', Ki   (0600)
//   vlr-<id>.key         VLR identity key D_id                  (0600)
//   sims/sim-<imsi>.txt  what the phone holds: IMSI, TMSI, K', Ki
namespace gsmibc::cli
{
namespace fs = std::filesystem;

struct PublicState
{
    fs::path dir;
    std::shared_ptr<const CurveProfile> curve;
    std::string profile;
    std::string hlr_id;
    std::vector<std::string> vlr_ids;
    ScalarRule rule = ScalarRule::hashed;
    Point ppub;
};

struct DbEntry
{
    std::string imsi;
    std::string tmsi;
    Point kp;
    baseline::Ki ki{};
};

struct SimFile
{
    SimCard sim;
    baseline::Ki ki{};
};

std::string file_token(std::string_view id);
std::string fingerprint(ByteView b);
std::string fingerprint(const Point& P);

void write_setup(const fs::path& dir, const CurveProfile& curve, const std::string& profile,
    const std::string& hlr_id, const std::vector<std::string>& vlr_ids, ScalarRule rule,
    const MasterKey& master);

PublicState load_public(const fs::path& dir);
MasterKey load_master(const PublicState& st);
IdentityKey load_vlr_key(const PublicState& st, const std::string& vlr_id);

std::vector<DbEntry> load_db(const PublicState& st);
void save_db(const PublicState& st, const std::vector<DbEntry>& db);

fs::path sim_path(const PublicState& st, const std::string& imsi);
SimFile load_sim(const PublicState& st, const std::string& imsi);
void save_sim(const PublicState& st, const SimFile& f);

/// The deployment as stored: roster from hlr-db.txt, phones from sims/.
struct Loaded
{
    harness::WorldConfig config;
    harness::Deployment deployment;
};
Loaded load_deployment(const PublicState& st);

}  // namespace gsmibc::cli
