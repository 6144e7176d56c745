// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>

#include "gsmibc/bytes.hpp"

namespace gsmibc
{
class Fp;

/// The prime field F_p. Elements keep a pointer back to their field, so a
/// PrimeField must outlive every Fp it hands out (CurveProfile owns one and
/// is itself only ever held through shared_ptr).
class PrimeField
{
public:
    explicit PrimeField(BigInt p);
    PrimeField(const PrimeField&) = delete;
    PrimeField& operator=(const PrimeField&) = delete;

    const BigInt& modulus() const noexcept { return p_; }
    /// ceil(bitlen(p) / 8)
    std::size_t byte_len() const noexcept { return flen_; }

    Fp operator()(const BigInt& v) const;
    Fp operator()(long v) const;
    Fp zero() const;
    Fp one() const;
    /// Big-endian, exactly byte_len() bytes, value < p.
    Fp from_bytes(ByteView b) const;

private:
    friend class Fp;
    BigInt p_;
    BigInt sqrt_exp_;  // (p + 1) / 4
    std::size_t flen_;
};

class Fp
{
public:
    Fp() = default;

    const BigInt& value() const noexcept { return v_; }
    const PrimeField& field() const noexcept { return *field_; }
    bool is_zero() const noexcept { return v_ == 0; }
    bool is_one() const noexcept { return v_ == 1; }

    friend Fp operator+(const Fp& a, const Fp& b);
    friend Fp operator-(const Fp& a, const Fp& b);
    friend Fp operator*(const Fp& a, const Fp& b);
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
    Fp operator-() const;
    friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }

    Fp square() const { return *this * *this; }
    /// Throws Errc::division_by_zero on zero.
    Fp inverse() const;
    Fp pow(const BigInt& e) const;
    /// Euler's criterion; zero counts as a square.
    bool is_square() const;
    /// Both square roots {r, p - r} via x^((p+1)/4). Throws Errc::non_residue.
    std::array<Fp, 2> sqrt() const;

    Bytes to_bytes() const;

private:
    friend class PrimeField;
    Fp(const PrimeField* f, BigInt v) : field_(f), v_(std::move(v)) {}

    const PrimeField* field_ = nullptr;
    BigInt v_;
};

/// F_{p^2} = F_p[i] / (i^2 + 1); valid because p = 3 mod 4.
class Fp2
{
public:
    Fp2() = default;
    Fp2(Fp c0, Fp c1) : c0_(std::move(c0)), c1_(std::move(c1)) {}
    static Fp2 from_base(const Fp& c0) { return {c0, c0.field().zero()}; }
    static Fp2 one(const PrimeField& f) { return {f.one(), f.zero()}; }

    const Fp& c0() const noexcept { return c0_; }
    const Fp& c1() const noexcept { return c1_; }
    const PrimeField& field() const noexcept { return c0_.field(); }

    bool is_zero() const noexcept { return c0_.is_zero() && c1_.is_zero(); }
    bool is_one() const noexcept { return c0_.is_one() && c1_.is_zero(); }

    friend Fp2 operator+(const Fp2& a, const Fp2& b) { return {a.c0_ + b.c0_, a.c1_ + b.c1_}; }
    friend Fp2 operator-(const Fp2& a, const Fp2& b) { return {a.c0_ - b.c0_, a.c1_ - b.c1_}; }
    friend Fp2 operator*(const Fp2& a, const Fp2& b);
    friend Fp2 operator*(const Fp2& a, const Fp& s) { return {a.c0_ * s, a.c1_ * s}; }
    friend Fp2 operator/(const Fp2& a, const Fp2& b) { return a * b.inverse(); }
    Fp2 operator-() const { return {-c0_, -c1_}; }
    friend bool operator==(const Fp2& a, const Fp2& b) = default;

    Fp2 square() const;
    /// The p-power Frobenius: c0 - c1 i.
    Fp2 conjugate() const { return {c0_, -c1_}; }
    Fp2 inverse() const;
    Fp2 pow(const BigInt& e) const;

    /// c0 || c1, each big-endian byte_len() bytes.
    Bytes to_bytes() const;

private:
    Fp c0_;
    Fp c1_;
};

}  // namespace gsmibc
