// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gsmibc/curve.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "gsmibc/error.hpp"
#include "gsmibc/ops.hpp"
#include "gsmibc/rng.hpp"

namespace gsmibc
{
namespace
{
bool is_prime(const BigInt& n)
{
    return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

void require_on_curve(const Point& P)
{
    if (!is_on_curve(P))
        throw Error(Errc::invalid_point, "point is not on the curve");
}

Point double_unchecked(const Point& P)
{
    if (P.is_identity() || P.y().is_zero())
        return P.curve().identity();
    const auto& f = P.curve().field();
    Fp lambda = (f(3) * P.x().square() + P.curve().a()) / (P.y() + P.y());
    Fp x3 = lambda.square() - P.x() - P.x();
    Fp y3 = lambda * (P.x() - x3) - P.y();
    return Point::affine(P.curve(), std::move(x3), std::move(y3));
}

Point add_unchecked(const Point& P, const Point& Q)
{
    if (P.is_identity())
        return Q;
    if (Q.is_identity())
        return P;
    if (P.x() == Q.x()) {
        if (P.y() == Q.y())
            return double_unchecked(P);
        return P.curve().identity();  // Q = -P
    }
    Fp lambda = (Q.y() - P.y()) / (Q.x() - P.x());
    Fp x3 = lambda.square() - P.x() - Q.x();
    Fp y3 = lambda * (P.x() - x3) - P.y();
    return Point::affine(P.curve(), std::move(x3), std::move(y3));
}

Point mul_unchecked(const BigInt& n, const Point& P)
{
    ++ops::thread_counters().scalar_mul;
    Point acc = P.curve().identity();
    for (auto i = static_cast<long>(bit_length(n)) - 1; i >= 0; --i) {
        acc = double_unchecked(acc);
        if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) != 0)
            acc = add_unchecked(acc, P);
    }
    return acc;
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Scalar::Scalar(const BigInt& v, const BigInt& q)
{
    mpz_mod(v_.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
}

CurveProfile::CurveProfile(const Params& params)
  : name_(params.name),
    field_(params.p),
    a_(field_(params.a)),
    b_(field_(params.b)),
    m_(params.m),
    q_(params.q)
{
    if (!is_prime(params.p) || mpz_fdiv_ui(params.p.get_mpz_t(), 4) != 3)
        throw Error(Errc::bad_profile, "p must be a prime congruent to 3 mod 4");
    if (!is_prime(q_))
        throw Error(Errc::bad_profile, "q must be prime");
    if (m_ <= 0 || mpz_divisible_p(m_.get_mpz_t(), q_.get_mpz_t()) == 0)
        throw Error(Errc::bad_profile, "q must divide the group order m");
    cofactor_ = m_ / q_;
    cofactor_clears_ = mpz_divisible_p(cofactor_.get_mpz_t(), q_.get_mpz_t()) == 0;

    Fp disc = field_(4) * a_.square() * a_ + field_(27) * b_.square();
    if (disc.is_zero())
        throw Error(Errc::bad_profile, "curve is singular");

    if (params.gx == 0 && params.gy == 0) {
        g_ = find_generator();
        g_.subgroup_known_ = true;
        return;
    }
    g_ = point(params.gx, params.gy);
    if (params.gx >= params.p || params.gy >= params.p || !is_on_curve(g_))
        throw Error(Errc::bad_profile, "generator is not on the curve");
    if (g_.is_identity() || !mul_unchecked(q_, g_).is_identity())
        throw Error(Errc::bad_profile, "generator does not have order q");
    if (!mul_unchecked(m_, g_).is_identity())
        throw Error(Errc::bad_profile, "group order m is inconsistent with G");
    g_.subgroup_known_ = true;
}

Point CurveProfile::find_generator() const
{
    for (BigInt x = 1;; ++x) {
        Fp fx = field_(x);
        Fp rhs = this->rhs(fx);
        if (!rhs.is_square())
            continue;
        auto roots = rhs.sqrt();
        Point candidate = mul_unchecked(cofactor_, Point::affine(*this, fx, roots[0]));
        if (!candidate.is_identity() && mul_unchecked(q_, candidate).is_identity())
            return candidate;
    }
}

std::shared_ptr<const CurveProfile> CurveProfile::create(const Params& params)
{
    return std::shared_ptr<const CurveProfile>(new CurveProfile(params));
}

std::shared_ptr<const CurveProfile> CurveProfile::test()
{
    static const auto profile = create({"test", 11, 1, 0, 12, 3, 5, 3});
    return profile;
}

std::shared_ptr<const CurveProfile> CurveProfile::demo()
{
    static const auto profile = generate_supersingular(160, 256, 0x6d6f6e6f, "demo");
    return profile;
}

std::shared_ptr<const CurveProfile> CurveProfile::generate_supersingular(
    std::size_t qbits, std::size_t pbits, std::uint64_t seed, std::string name)
{
    if (qbits < 2 || pbits <= qbits + 2)
        throw Error(Errc::bad_profile, "pbits must exceed qbits by at least 3");
    Rng rng(seed);

    BigInt q;
    do {
        BigInt start = rng.below(BigInt(1) << qbits);
        mpz_setbit(start.get_mpz_t(), qbits - 1);
        mpz_nextprime(q.get_mpz_t(), start.get_mpz_t());
    } while (bit_length(q) != qbits);

    const BigInt c_lo = (BigInt(1) << (pbits - 1)) / q + 1;
    const BigInt c_span = ((BigInt(1) << pbits) / q) - c_lo;
    BigInt p;
    for (;;) {
        BigInt c = c_lo + rng.below(c_span);
        c -= mpz_fdiv_ui(c.get_mpz_t(), 4);
        p = c * q - 1;
        if (bit_length(p) == pbits && is_prime(p))
            break;
    }

    // #E = p + 1 for y^2 = x^3 + x when p = 3 mod 4; (0, 0) asks the
    // constructor to search for a generator.
    return create({std::move(name), p, 1, 0, p + 1, q, 0, 0});
}

std::shared_ptr<const CurveProfile> CurveProfile::from_config(const std::string& text)
{
    std::map<std::string, BigInt> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        auto sep = line.find_first_of("= \t");
        if (sep == std::string::npos)
            throw Error(Errc::bad_profile, "profile line without value: " + line);
        std::string key = trim(line.substr(0, sep));
        std::string value = trim(line.substr(sep + 1));
        if (!value.empty() && value.front() == '=')
            value = trim(value.substr(1));
        if (key == "name")
            continue;
        BigInt v;
        if (value.empty() || v.set_str(value, 10) != 0)
            throw Error(Errc::bad_profile, "not a decimal integer for key " + key);
        kv[key] = v;
    }
    Params params{"file", 0, 0, 0, 0, 0, 0, 0};
    const std::pair<const char*, BigInt*> fields[] = {{"p", &params.p}, {"a", &params.a},
        {"b", &params.b}, {"m", &params.m}, {"q", &params.q}, {"gx", &params.gx}, {"gy", &params.gy}};
    for (auto [key, dst] : fields) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw Error(Errc::bad_profile, std::string("missing profile key ") + key);
        *dst = it->second;
    }
    return create(params);
}

std::shared_ptr<const CurveProfile> CurveProfile::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::io, "cannot read profile " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_config(ss.str());
}

std::shared_ptr<const CurveProfile> CurveProfile::select(const std::string& selector)
{
    if (selector == "test")
        return test();
    if (selector == "demo")
        return demo();
    return load(selector);
}

std::string CurveProfile::to_config() const
{
    std::ostringstream out;
    out << "p = " << p().get_str() << '\n'
        << "a = " << a_.value().get_str() << '\n'
        << "b = " << b_.value().get_str() << '\n'
        << "m = " << m_.get_str() << '\n'
        << "q = " << q_.get_str() << '\n'
        << "gx = " << g_.x().value().get_str() << '\n'
        << "gy = " << g_.y().value().get_str() << '\n';
    return out.str();
}

bool is_on_curve(const Point& P)
{
    if (P.is_identity())
        return true;
    return P.y().square() == P.curve().rhs(P.x());
}

Point Point::operator-() const
{
    if (inf_)
        return *this;
    Point R(curve_, x_, -y_);
    R.subgroup_known_ = subgroup_known_;
    return R;
}

Point point_add(const Point& P, const Point& Q)
{
    require_on_curve(P);
    require_on_curve(Q);
    Point R = add_unchecked(P, Q);
    R.subgroup_known_ = P.subgroup_known_ && Q.subgroup_known_;
    return R;
}

Point operator+(const Point& a, const Point& b)
{
    return point_add(a, b);
}

Point scalar_mul(const BigInt& n, const Point& P)
{
    if (n < 0)
        throw Error(Errc::internal, "negative scalar");
    require_on_curve(P);
    Point R = mul_unchecked(n, P);
    R.subgroup_known_ = P.subgroup_known_;
    return R;
}

bool in_subgroup(const Point& P)
{
    if (P.subgroup_known_ || P.is_identity())
        return true;
    P.subgroup_known_ = is_on_curve(P) && mul_unchecked(P.curve().q(), P).is_identity();
    return P.subgroup_known_;
}

Point mark_in_subgroup(Point P)
{
    P.subgroup_known_ = true;
    return P;
}

Bytes encode(const Point& P)
{
    if (P.is_identity())
        return Bytes{0x00};
    Bytes out{static_cast<std::uint8_t>(0x02 | mpz_tstbit(P.y().value().get_mpz_t(), 0))};
    append(out, P.x().to_bytes());
    return out;
}

std::size_t encoded_point_size(const CurveProfile& curve, std::uint8_t prefix)
{
    if (prefix == 0x00)
        return 1;
    if (prefix == 0x02 || prefix == 0x03)
        return 1 + curve.flen();
    throw Error(Errc::malformed_message, "bad point prefix");
}

Point decode_point(const CurveProfile& curve, ByteView b)
{
    if (b.empty())
        throw Error(Errc::malformed_message, "empty point encoding");
    if (b.size() != encoded_point_size(curve, b[0]))
        throw Error(Errc::malformed_message, "point encoding has wrong length");
    if (b[0] == 0x00)
        return curve.identity();
    Fp x = curve.field().from_bytes(b.subspan(1));
    Fp rhs = curve.rhs(x);
    if (!rhs.is_square())
        throw Error(Errc::invalid_point, "no curve point with this x");
    auto roots = rhs.sqrt();
    unsigned want = b[0] & 1U;
    const Fp& y = (mpz_tstbit(roots[0].value().get_mpz_t(), 0) == int(want)) ? roots[0] : roots[1];
    if (mpz_tstbit(y.value().get_mpz_t(), 0) != int(want))
        throw Error(Errc::invalid_point, "non-canonical point prefix");
    return Point::affine(curve, x, y);
}

}  // namespace gsmibc
