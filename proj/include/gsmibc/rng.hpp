// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "gsmibc/bytes.hpp"

namespace gsmibc
{
/// Seedable deterministic generator. Output depends only on the seed:
/// mt19937_64 is fully specified by the standard, and no std distribution
/// (whose algorithms are implementation-defined) is used.
///
/// Not thread-safe; give every actor its own instance.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Child generator whose stream is a function of (this stream, label).
    Rng fork(std::string_view label);

    std::uint64_t next_u64() { return engine_(); }
    Bytes bytes(std::size_t n);
    /// Uniform in [0, bound). bound must be >= 1.
    BigInt below(const BigInt& bound);
    /// Uniform in [lo, hi].
    BigInt between(const BigInt& lo, const BigInt& hi);
    bool coin() { return (engine_() & 1U) != 0; }
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

}  // namespace gsmibc
