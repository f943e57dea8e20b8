#pragma once

// Exact integers and rationals, p-adic valuations and absolute values.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "padyn/error.hpp"

namespace padyn {

using Integer = mpz_class;

inline Integer pow(const Integer &base, unsigned long exponent)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

inline Integer gcd(const Integer &a, const Integer &b)
{
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer &a, const Integer &b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Quotient of an exact division; the caller guarantees b | a.
inline Integer divexact(const Integer &a, const Integer &b)
{
    Integer r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Non-negative residue of a modulo m (m > 0).
inline Integer mod(const Integer &a, const Integer &m)
{
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline int sign(const Integer &a) { return sgn(a); }

inline bool is_probable_prime(const Integer &n)
{
    return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

/// A rational prime. Construction rejects anything else, so every function
/// taking a Prime can rely on primality.
class Prime
{
public:
    explicit Prime(long p) : value_(p)
    {
        if (!is_probable_prime(Integer(p)))
            throw InvalidArgument("not a prime: " + std::to_string(p));
    }

    long value() const noexcept { return value_; }
    Integer integer() const { return Integer(value_); }

    friend auto operator<=>(const Prime &, const Prime &) = default;

private:
    long value_;
};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator, so structural equality coincides with numeric equality.
class Rational
{
public:
    Rational() = default;
    Rational(long n) : q_(n) {} // NOLINT(google-explicit-constructor)
    Rational(const Integer &n) : q_(n) {} // NOLINT(google-explicit-constructor)
    Rational(const Integer &num, const Integer &den)
    {
        if (den == 0)
            throw InvalidArgument("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(const mpq_class &q) : q_(q) { q_.canonicalize(); }

    /// Parses "p" or "p/q" with optional sign.
    static Rational parse(std::string_view text)
    {
        std::string s(text);
        auto slash = s.find('/');
        Integer num, den(1);
        try {
            if (slash == std::string::npos) {
                num = Integer(s, 10);
            } else {
                num = Integer(s.substr(0, slash), 10);
                den = Integer(s.substr(slash + 1), 10);
            }
        } catch (const std::invalid_argument &) {
            throw InvalidArgument("not a rational number: '" + s + "'");
        }
        return Rational(num, den);
    }

    const Integer &num() const { return q_.get_num(); }
    const Integer &den() const { return q_.get_den(); }
    const mpq_class &get() const { return q_; }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational inverse() const
    {
        if (is_zero())
            throw InvalidArgument("inverse of zero");
        return Rational(den(), num());
    }

    /// Always "p/q", also for integers.
    std::string to_string() const { return num().get_str() + "/" + den().get_str(); }

    Rational &operator+=(const Rational &o) { q_ += o.q_; return *this; }
    Rational &operator-=(const Rational &o) { q_ -= o.q_; return *this; }
    Rational &operator*=(const Rational &o) { q_ *= o.q_; return *this; }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero())
            throw InvalidArgument("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r)
    {
        return os << r.to_string();
    }

private:
    mpq_class q_{0};
};

inline Rational abs(const Rational &r) { return r.sign() < 0 ? -r : r; }

/// Integer power with possibly negative exponent.
inline Rational pow(const Rational &base, long exponent)
{
    if (exponent >= 0)
        return Rational(pow(base.num(), static_cast<unsigned long>(exponent)),
                        pow(base.den(), static_cast<unsigned long>(exponent)));
    return pow(base.inverse(), -exponent);
}

/// A finite integer or +infinity. Holds v_p values, with v_p(0) = +infinity.
class ExtendedInteger
{
public:
    ExtendedInteger() = default; // +infinity
    ExtendedInteger(long v) : value_(v) {} // NOLINT(google-explicit-constructor)

    static ExtendedInteger infinity() { return {}; }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    long value() const
    {
        if (!value_)
            throw InvalidArgument("value() of infinite ExtendedInteger");
        return *value_;
    }

    friend ExtendedInteger operator+(const ExtendedInteger &a, const ExtendedInteger &b)
    {
        if (a.is_infinite() || b.is_infinite())
            return infinity();
        return *a.value_ + *b.value_;
    }

    friend bool operator==(const ExtendedInteger &, const ExtendedInteger &) = default;
    friend std::strong_ordering operator<=>(const ExtendedInteger &a, const ExtendedInteger &b)
    {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() <=> b.is_infinite();
        return *a.value_ <=> *b.value_;
    }

    std::string to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

    friend std::ostream &operator<<(std::ostream &os, const ExtendedInteger &e)
    {
        return os << e.to_string();
    }

private:
    std::optional<long> value_;
};

/// Exponent of p in a nonzero integer, or +infinity for zero.
inline ExtendedInteger vp(const Integer &x, const Prime &p)
{
    if (x == 0)
        return ExtendedInteger::infinity();
    Integer rest;
    auto v = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.integer().get_mpz_t());
    return static_cast<long>(v);
}

inline ExtendedInteger vp(const Rational &x, const Prime &p)
{
    if (x.is_zero())
        return ExtendedInteger::infinity();
    return vp(x.num(), p).value() - vp(x.den(), p).value();
}

/// |x|_p = p^(-v_p(x)), exactly.
inline Rational padic_abs(const Rational &x, const Prime &p)
{
    if (x.is_zero())
        return Rational(0);
    return pow(Rational(p.integer()), -vp(x, p).value());
}

/// Integer with its p-part removed.
inline Integer remove_prime(const Integer &x, const Prime &p)
{
    if (x == 0)
        return x;
    Integer rest;
    mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.integer().get_mpz_t());
    return rest;
}

} // namespace padyn
