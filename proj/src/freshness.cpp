// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "gsmibc/error.hpp"
#include "gsmibc/scenarios.hpp"

namespace gsmibc::harness
{
namespace
{
class RandomIntruder final : public Intruder
{
public:
    std::string_view name() const override { return "random"; }
    int guess(const TrialView&, Rng& rng) override { return rng.coin() ? 1 : 0; }
};

/// Everything a passive observer can turn into a candidate K'' and hash.
class CorrelationIntruder final : public Intruder
{
public:
    std::string_view name() const override { return "transcript-correlation"; }

    int guess(const TrialView& v, Rng& rng) override
    {
        if (derive(v.params, v.fresh).count(v.candidate) != 0)
            return 0;
        for (const auto& s : v.pool) {
            auto it = pool_cache_.find(s.session);
            if (it == pool_cache_.end())
                it = pool_cache_.emplace(s.session, derive(v.params, s)).first;
            if (it->second.count(v.candidate) != 0)
                return 1;
        }
        return rng.coin() ? 1 : 0;
    }

private:
    static std::set<SessionKey> derive(const SystemParams& params, const PublicSession& s)
    {
        const CurveProfile& curve = *params.curve;
        std::vector<Point> points{curve.generator(), params.ppub};
        std::optional<Nonce> rand2;
        for (const auto& raw : s.messages) {
            Envelope env;
            try {
                env = decode_envelope(curve, raw);
            }
            catch (const Error&) {
                continue;
            }
            if (auto* m3 = std::get_if<M3Response>(&env.payload))
                rand2 = m3->rand2;
            else if (auto* m4 = std::get_if<M4ToHlr>(&env.payload))
                points.push_back(m4->ct.u);
            else if (auto* m5 = std::get_if<M5FromHlr>(&env.payload)) {
                points.push_back(m5->sig.u);
                points.push_back(m5->sig.v);
                points.push_back(m5->key_ct.u);
            }
        }
        std::set<SessionKey> keys;
        for (const auto& P : points)
            if (!P.is_identity())
                keys.insert(kdf_session(P));
        if (rand2) {
            Scalar h = session_scalar(*rand2, curve.q(), params.rule);
            for (const Point* P : {&curve.generator(), &params.ppub})
                keys.insert(kdf_session(scalar_mul(h, *P)));
        }
        return keys;
    }

    std::map<std::uint32_t, std::set<SessionKey>> pool_cache_;
};

class OmniscientIntruder final : public Intruder
{
public:
    explicit OmniscientIntruder(Point kp) : kp_(std::move(kp)) {}

    std::string_view name() const override { return "omniscient"; }
    bool is_ceiling() const override { return true; }

    int guess(const TrialView& v, Rng& rng) override
    {
        for (const auto& raw : v.fresh.messages) {
            Envelope env = decode_envelope(*v.params.curve, raw);
            if (auto* m3 = std::get_if<M3Response>(&env.payload)) {
                Scalar h = session_scalar(m3->rand2, v.params.curve->q(), v.params.rule);
                return kdf_session(scalar_mul(h, kp_)) == v.candidate ? 0 : 1;
            }
        }
        return rng.coin() ? 1 : 0;
    }

private:
    Point kp_;
};

PublicSession capture(const Transcript& t, std::size_t from, std::uint32_t session)
{
    PublicSession s;
    s.session = session;
    for (std::size_t i = from; i < t.size(); ++i)
        s.messages.push_back(t.records()[i].raw);
    return s;
}

SessionKey honest_key(World& world, PublicSession& out)
{
    std::size_t from = world.network().transcript().size();
    SessionOutcome o = world.run_session();
    if (!o.keys_agree())
        throw Error(Errc::internal, "honest session failed inside the freshness game");
    out = capture(world.network().transcript(), from, o.session);
    return o.ms->session_key;
}

}  // namespace

std::unique_ptr<Intruder> make_random_intruder()
{
    return std::make_unique<RandomIntruder>();
}

std::unique_ptr<Intruder> make_correlation_intruder()
{
    return std::make_unique<CorrelationIntruder>();
}

std::unique_ptr<Intruder> make_omniscient_intruder(const SimCard& sim)
{
    return std::make_unique<OmniscientIntruder>(sim.kp);
}

const std::vector<std::string>& strategy_names()
{
    static const std::vector<std::string> names{"random", "transcript-correlation", "omniscient"};
    return names;
}

std::unique_ptr<Intruder> make_intruder(std::string_view strategy, World& world)
{
    if (strategy == "random")
        return make_random_intruder();
    if (strategy == "transcript-correlation" || strategy == "correlation")
        return make_correlation_intruder();
    if (strategy == "omniscient")
        return make_omniscient_intruder(world.ms().sim());
    throw std::invalid_argument("unknown strategy '" + std::string(strategy) + "'");
}

std::string FreshnessResult::to_json() const
{
    nlohmann::ordered_json j;
    j["type"] = "freshness";
    j["strategy"] = strategy;
    j["ceiling"] = ceiling;
    j["trials"] = trials;
    j["pool"] = pool;
    j["correct"] = correct;
    j["advantage"] = advantage;
    j["ci95"] = {ci_low, ci_high};
    return j.dump();
}

std::vector<FreshnessResult> freshness_game(World& world, std::size_t trials,
    std::size_t pool_size, const std::vector<Intruder*>& intruders)
{
    if (trials == 0 || pool_size == 0)
        throw std::invalid_argument("freshness game needs trials >= 1 and pool >= 1");
    world.network().clear_hook();
    const SystemParams params = world.params();

    std::vector<SessionKey> pool_keys(pool_size);
    std::vector<PublicSession> pool(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i)
        pool_keys[i] = honest_key(world, pool[i]);

    Rng challenger = world.adversary_rng().fork("challenger");
    std::vector<Rng> intruder_rngs;
    for (std::size_t i = 0; i < intruders.size(); ++i)
        intruder_rngs.push_back(world.adversary_rng().fork("intruder:" + std::to_string(i)));
    std::vector<std::size_t> correct(intruders.size(), 0);

    for (std::size_t t = 0; t < trials; ++t) {
        PublicSession fresh;
        SessionKey sk_fh = honest_key(world, fresh);
        int b = challenger.coin() ? 1 : 0;
        const SessionKey& candidate = b == 0 ? sk_fh : pool_keys[challenger.below(pool_size)];
        TrialView view{params, fresh, pool, candidate};
        for (std::size_t i = 0; i < intruders.size(); ++i)
            if (intruders[i]->guess(view, intruder_rngs[i]) == b)
                ++correct[i];
    }

    std::vector<FreshnessResult> out;
    const double n = static_cast<double>(trials);
    const double z = 1.96;
    for (std::size_t i = 0; i < intruders.size(); ++i) {
        FreshnessResult r;
        r.strategy = std::string(intruders[i]->name());
        r.ceiling = intruders[i]->is_ceiling();
        r.trials = trials;
        r.pool = pool_size;
        r.correct = correct[i];
        double p = static_cast<double>(correct[i]) / n;
        r.advantage = std::max(0.0, p - 0.5);
        double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
        double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
        r.ci_low = std::max(0.0, centre - half - 0.5);
        r.ci_high = std::max(0.0, centre + half - 0.5);
        out.push_back(r);
    }
    return out;
}

}  // namespace gsmibc::harness
