// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gsmibc/field.hpp"

#include "gsmibc/error.hpp"

namespace gsmibc
{
PrimeField::PrimeField(BigInt p)
  : p_(std::move(p)), sqrt_exp_((p_ + 1) / 4), flen_((bit_length(p_) + 7) / 8)
{
    if (p_ < 3)
        throw Error(Errc::bad_profile, "field modulus must be an odd prime");
}

Fp PrimeField::operator()(const BigInt& v) const
{
    BigInt r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
    return {this, std::move(r)};
}

Fp PrimeField::operator()(long v) const
{
    return (*this)(BigInt(v));
}

Fp PrimeField::zero() const
{
    return {this, BigInt(0)};
}

Fp PrimeField::one() const
{
    return {this, BigInt(1)};
}

Fp PrimeField::from_bytes(ByteView b) const
{
    if (b.size() != flen_)
        throw Error(Errc::malformed_message, "field element has wrong width");
    BigInt v = from_be_bytes(b);
    if (v >= p_)
        throw Error(Errc::malformed_message, "field element not canonical");
    return {this, std::move(v)};
}

Fp operator+(const Fp& a, const Fp& b)
{
    BigInt r = a.v_ + b.v_;
    if (r >= a.field_->modulus())
        r -= a.field_->modulus();
    return {a.field_, std::move(r)};
}

Fp operator-(const Fp& a, const Fp& b)
{
    BigInt r = a.v_ - b.v_;
    if (r < 0)
        r += a.field_->modulus();
    return {a.field_, std::move(r)};
}

Fp operator*(const Fp& a, const Fp& b)
{
    BigInt r = a.v_ * b.v_;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), a.field_->modulus().get_mpz_t());
    return {a.field_, std::move(r)};
}

Fp Fp::operator-() const
{
    if (v_ == 0)
        return *this;
    return {field_, field_->p_ - v_};
}

Fp Fp::inverse() const
{
    if (v_ == 0)
        throw Error(Errc::division_by_zero, "inverse of zero in F_p");
    BigInt r;
    mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), field_->p_.get_mpz_t());
    return {field_, std::move(r)};
}

Fp Fp::pow(const BigInt& e) const
{
    BigInt r;
    mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), e.get_mpz_t(), field_->p_.get_mpz_t());
    return {field_, std::move(r)};
}

bool Fp::is_square() const
{
    return v_ == 0 || mpz_legendre(v_.get_mpz_t(), field_->p_.get_mpz_t()) == 1;
}

std::array<Fp, 2> Fp::sqrt() const
{
    if (!is_square())
        throw Error(Errc::non_residue, "element is not a quadratic residue");
    Fp r = pow(field_->sqrt_exp_);
    return {r, -r};
}

Bytes Fp::to_bytes() const
{
    return to_be_bytes(v_, field_->flen_);
}

Fp2 operator*(const Fp2& a, const Fp2& b)
{
    // (a0 + a1 i)(b0 + b1 i) with i^2 = -1, Karatsuba-style.
    Fp t0 = a.c0_ * b.c0_;
    Fp t1 = a.c1_ * b.c1_;
    Fp mid = (a.c0_ + a.c1_) * (b.c0_ + b.c1_);
    return {t0 - t1, mid - t0 - t1};
}

Fp2 Fp2::square() const
{
    // (c0 + c1 i)^2 = (c0 + c1)(c0 - c1) + 2 c0 c1 i
    Fp t = c0_ * c1_;
    return {(c0_ + c1_) * (c0_ - c1_), t + t};
}

Fp2 Fp2::inverse() const
{
    Fp norm = c0_.square() + c1_.square();
    if (norm.is_zero())
        throw Error(Errc::division_by_zero, "inverse of zero in F_p^2");
    Fp inv = norm.inverse();
    return {c0_ * inv, -(c1_ * inv)};
}

Fp2 Fp2::pow(const BigInt& e) const
{
    if (e < 0)
        return inverse().pow(-e);
    Fp2 acc = one(field());
    for (auto i = static_cast<long>(bit_length(e)) - 1; i >= 0; --i) {
        acc = acc.square();
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            acc = acc * *this;
    }
    return acc;
}

Bytes Fp2::to_bytes() const
{
    return concat(c0_.to_bytes(), c1_.to_bytes());
}

}  // namespace gsmibc
