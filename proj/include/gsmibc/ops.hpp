// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace gsmibc::ops
{
/// Per-thread tallies of the expensive primitives. Every scalar
/// multiplication, pairing evaluation and IBE/IBS operation bumps these.
struct Counters
{
    std::uint64_t scalar_mul = 0;
    std::uint64_t pairing = 0;
    std::uint64_t ibe = 0;
    std::uint64_t ibs = 0;

    Counters& operator+=(const Counters& o)
    {
        scalar_mul += o.scalar_mul;
        pairing += o.pairing;
        ibe += o.ibe;
        ibs += o.ibs;
        return *this;
    }
    friend Counters operator-(Counters a, const Counters& b)
    {
        a.scalar_mul -= b.scalar_mul;
        a.pairing -= b.pairing;
        a.ibe -= b.ibe;
        a.ibs -= b.ibs;
        return a;
    }
    bool operator==(const Counters&) const = default;
};

Counters& thread_counters() noexcept;

/// Adds whatever the current thread spent during the scope to `sink`.
class Scope
{
public:
    explicit Scope(Counters& sink) : sink_(sink), start_(thread_counters()) {}
    ~Scope() { sink_ += thread_counters() - start_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

private:
    Counters& sink_;
    Counters start_;
};

}  // namespace gsmibc::ops
