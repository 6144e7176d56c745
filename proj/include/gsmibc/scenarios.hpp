// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsmibc/harness.hpp"

namespace gsmibc::harness
{
enum class Outcome
{
    attack_succeeded,
    attack_blocked,
};
std::string_view name_of(Outcome o);

enum class Mode
{
    ibc,
    baseline,
};
std::string_view name_of(Mode m);

/// One attack attempt (or a batch of identical ones) inside a scenario.
struct SubCase
{
    std::string name;
    Outcome outcome = Outcome::attack_blocked;
    std::optional<Errc> error;  // first terminating error seen
    Party stopped_by = Party::none;
    std::size_t attempts = 1;
    std::size_t successes = 0;
};

struct ScenarioReport
{
    std::string scenario;
    Mode mode = Mode::ibc;
    std::uint64_t seed = 0;
    Outcome outcome = Outcome::attack_blocked;
    std::optional<Errc> error;
    bool control_passed = false;
    std::vector<SubCase> cases;
    std::string transcript_hash;
    std::size_t transcript_messages = 0;

    /// One JSON line per sub-case, then one summary line.
    std::string to_jsonl() const;
};

/// Outcome the protocol is supposed to force: the classic flow falls to a
/// false network, everything else is blocked.
Outcome expected_outcome(std::string_view scenario, Mode mode);

/// Captured M3 and M2 are replayed into later sessions.
ScenarioReport scenario_replay(World& world);
/// `attempts` sessions whose M3 is fabricated from TMSI and public data.
ScenarioReport scenario_impersonate_ms(World& world, std::size_t attempts = 1000);
/// The adversary plays the serving network without the HLR's keys.
ScenarioReport scenario_false_network(World& world, Mode mode);
/// Scans both channels of `sessions` honest runs for any registered IMSI.
ScenarioReport scenario_anonymity(World& world, std::size_t sessions = 100);

/// Names accepted by the CLI, in display order.
const std::vector<std::string>& scenario_names();
/// Dispatch by name ("replay", "impersonate-ms", "false-network",
/// "anonymity"). Throws std::invalid_argument for an unknown name or a
/// scenario without the requested mode.
ScenarioReport run_scenario(std::string_view name, World& world, Mode mode);

// ------------------------------------------------------------ freshness

/// The public bytes of one session: its six messages in order.
struct PublicSession
{
    std::uint32_t session = 0;
    std::vector<Bytes> messages;
};

struct TrialView
{
    const SystemParams& params;
    const PublicSession& fresh;
    const std::vector<PublicSession>& pool;
    const SessionKey& candidate;
};

/// An intruder in the freshness game: sees public transcripts and the
/// candidate key, answers 0 (candidate is the fresh key) or 1 (it was
/// drawn from the pool of earlier keys).
class Intruder
{
public:
    virtual ~Intruder() = default;
    virtual std::string_view name() const = 0;
    virtual int guess(const TrialView& view, Rng& rng) = 0;
    /// True for reference strategies that are handed secrets.
    virtual bool is_ceiling() const { return false; }
};

/// A fair coin.
std::unique_ptr<Intruder> make_random_intruder();
/// Tries kdf over every point recoverable from public data: transcript
/// points, P_pub, G and their multiples by the public session scalar.
std::unique_ptr<Intruder> make_correlation_intruder();
/// Holds K' of the subscriber under test: a perfect distinguisher.
std::unique_ptr<Intruder> make_omniscient_intruder(const SimCard& sim);

/// "random", "transcript-correlation" (or "correlation"), "omniscient".
std::unique_ptr<Intruder> make_intruder(std::string_view strategy, World& world);
const std::vector<std::string>& strategy_names();

struct FreshnessResult
{
    std::string strategy;
    bool ceiling = false;
    std::size_t trials = 0;
    std::size_t pool = 0;
    std::size_t correct = 0;
    double advantage = 0;  // max(0, correct / trials - 1/2)
    double ci_low = 0;     // 95% Wilson interval, mapped to advantage
    double ci_high = 0;

    std::string to_json() const;
};

/// Runs pool_size sessions to fill S, then `trials` fresh sessions. Each
/// trial flips b, shows sk_fh (b = 0) or a uniform member of S (b = 1), and
/// asks every intruder. All intruders face the same challenge sequence.
std::vector<FreshnessResult> freshness_game(World& world, std::size_t trials,
    std::size_t pool_size, const std::vector<Intruder*>& intruders);

}  // namespace gsmibc::harness
