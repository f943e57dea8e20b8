#pragma once

// Rational self-maps of P^1 over Q in globally normalized form.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padyn/arith.hpp"
#include "padyn/error.hpp"
#include "padyn/poly.hpp"

namespace padyn {

/// A point of P^1(Q).
class ProjPoint
{
public:
    ProjPoint() : value_(Rational(0)) {}
    ProjPoint(const Rational &r) : value_(r) {} // NOLINT(google-explicit-constructor)
    ProjPoint(long n) : value_(Rational(n)) {} // NOLINT(google-explicit-constructor)

    static ProjPoint infinity()
    {
        ProjPoint p;
        p.value_.reset();
        return p;
    }

    /// Point with homogeneous coordinates [x : y], not both zero.
    static ProjPoint from_lift(const Integer &x, const Integer &y)
    {
        if (y == 0) {
            if (x == 0)
                throw InvalidArgument("[0 : 0] is not a point");
            return infinity();
        }
        return Rational(x, y);
    }

    /// "inf", "infinity" or a rational "p" / "p/q".
    static ProjPoint parse(const std::string &text)
    {
        if (text == "inf" || text == "infinity" || text == "Infinity")
            return infinity();
        return Rational::parse(text);
    }

    bool is_infinity() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    const Rational &value() const
    {
        if (!value_)
            throw InvalidArgument("value() of the point at infinity");
        return *value_;
    }

    /// Coprime integer coordinates (num, den); (1, 0) for infinity.
    std::pair<Integer, Integer> lift() const
    {
        if (!value_)
            return {Integer(1), Integer(0)};
        return {value_->num(), value_->den()};
    }

    std::string to_string() const { return value_ ? value_->to_string() : "inf"; }

    friend bool operator==(const ProjPoint &, const ProjPoint &) = default;
    /// Infinity sorts after every finite point.
    friend std::strong_ordering operator<=>(const ProjPoint &a, const ProjPoint &b)
    {
        if (a.is_infinity() || b.is_infinity())
            return a.is_infinity() <=> b.is_infinity();
        return *a.value_ <=> *b.value_;
    }

private:
    std::optional<Rational> value_;
};

/// Size cap for iterates; exact coefficients grow doubly exponentially.
struct IterationLimits
{
    std::uint64_t max_degree = 4096;

    /// Default limits, with PADYN_MAX_DEGREE overriding the degree cap.
    static IterationLimits from_environment()
    {
        IterationLimits limits;
        if (const char *env = std::getenv("PADYN_MAX_DEGREE")) {
            try {
                long long v = std::stoll(env);
                if (v > 0)
                    limits.max_degree = static_cast<std::uint64_t>(v);
            } catch (const std::exception &) {
                throw InvalidArgument(std::string("PADYN_MAX_DEGREE is not a positive integer: ") + env);
            }
        }
        return limits;
    }
};

/// Resultant of g and h viewed as binary forms of degree d (the Sylvester
/// matrix with formal degree d for both). Vanishes iff g/h degenerates at
/// some place, including at infinity.
inline Integer homogeneous_resultant(const IntPolynomial &g, const IntPolynomial &h, int d)
{
    if (g.degree() == d)
        return formal_resultant(g, h, d);
    if (h.degree() != d)
        throw InvalidArgument("homogeneous_resultant: neither form has full degree");
    Integer r = formal_resultant(h, g, d);
    return (d & 1) ? Integer(-r) : r;
}

/// f = g/h with integer g, h of joint content 1, no common root, and
/// h's leading coefficient positive. Degree d = max(deg g, deg h) >= 1.
class RationalMap
{
public:
    static RationalMap normalize(const RatPolynomial &g, const RatPolynomial &h)
    {
        Integer l = lcm(denominator_lcm(g), denominator_lcm(h));
        return normalize(clear_denominators(g, l), clear_denominators(h, l));
    }

    static RationalMap normalize(const IntPolynomial &g, const IntPolynomial &h)
    {
        if (g.is_zero() && h.is_zero())
            throw DegenerateMap("g and h are both zero");
        RationalMap f = from_coprime(g, h);
        if (f.degree_ < 1)
            throw DegenerateMap("constant map " + f.to_string());
        if (padyn::resultant(f.g_, f.h_) == 0)
            throw DegenerateMap("g = " + padyn::to_string(f.g_) + " and h = " + padyn::to_string(f.h_) +
                                " share a root");
        return f;
    }

    static RationalMap identity() { return from_coprime(IntPolynomial::x(), IntPolynomial{Integer(1)}); }

    const IntPolynomial &numerator() const { return g_; }
    const IntPolynomial &denominator() const { return h_; }
    int degree() const { return degree_; }
    bool is_polynomial() const { return h_.degree() == 0; }

    /// "(g)/(h)", or just "g" when h = 1.
    std::string to_string() const
    {
        if (h_ == IntPolynomial{Integer(1)})
            return padyn::to_string(g_);
        return "(" + padyn::to_string(g_) + ")/(" + padyn::to_string(h_) + ")";
    }

    /// Resultant of the degree-d forms G, H; the quantity whose p-adic
    /// valuation decides reduction type.
    Integer resultant() const { return homogeneous_resultant(g_, h_, degree_); }

    friend bool operator==(const RationalMap &a, const RationalMap &b)
    {
        return a.g_ == b.g_ && a.h_ == b.h_;
    }

    /// Normalizes a pair already known to have no common root. Skips the
    /// resultant check, which is the dominant cost for large iterates.
    static RationalMap from_coprime(IntPolynomial g, IntPolynomial h)
    {
        Integer c = gcd(content(g), content(h));
        if (c == 0)
            throw DegenerateMap("g and h are both zero");
        if (!h.is_zero() && h.leading() < 0)
            c = -c;
        RationalMap f;
        f.g_ = divide_by_integer(g, c);
        f.h_ = divide_by_integer(h, c);
        f.degree_ = std::max(f.g_.degree(), f.h_.degree());
        return f;
    }

private:
    RationalMap() = default;

    IntPolynomial g_;
    IntPolynomial h_;
    int degree_ = 0;
};

/// (G(x, y), H(x, y)) for the degree-d homogenizations of g and h.
inline std::pair<Integer, Integer> apply_lift(const RationalMap &f, const Integer &x, const Integer &y)
{
    int d = f.degree();
    return {evaluate_homogeneous(f.numerator(), x, y, d), evaluate_homogeneous(f.denominator(), x, y, d)};
}

inline ProjPoint apply(const RationalMap &f, const ProjPoint &p)
{
    auto [x, y] = p.lift();
    auto [gx, hx] = apply_lift(f, x, y);
    return ProjPoint::from_lift(gx, hx);
}

/// Orbit p, f(p), ..., f^n(p).
inline std::vector<ProjPoint> forward_orbit(const RationalMap &f, ProjPoint p, int n)
{
    std::vector<ProjPoint> orbit{p};
    for (int i = 0; i < n; ++i) {
        p = apply(f, p);
        orbit.push_back(p);
    }
    return orbit;
}

/// f o q.
inline RationalMap compose(const RationalMap &f, const RationalMap &q, const IterationLimits &limits = {})
{
    std::uint64_t deg = static_cast<std::uint64_t>(f.degree()) * static_cast<std::uint64_t>(q.degree());
    if (deg > limits.max_degree)
        throw ResourceLimit("composition degree " + std::to_string(deg) + " exceeds limit " +
                                std::to_string(limits.max_degree),
                            deg);
    int d = f.degree();
    const IntPolynomial &qg = q.numerator();
    const IntPolynomial &qh = q.denominator();
    std::vector<IntPolynomial> gpow(static_cast<std::size_t>(d) + 1), hpow(static_cast<std::size_t>(d) + 1);
    gpow[0] = hpow[0] = IntPolynomial{Integer(1)};
    for (std::size_t i = 1; i <= static_cast<std::size_t>(d); ++i) {
        gpow[i] = gpow[i - 1] * qg;
        hpow[i] = hpow[i - 1] * qh;
    }
    IntPolynomial num, den;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) {
        IntPolynomial term = gpow[i] * hpow[static_cast<std::size_t>(d) - i];
        const Integer &a = f.numerator()[i];
        const Integer &b = f.denominator()[i];
        if (a != 0)
            num += term * a;
        if (b != 0)
            den += term * b;
    }
    return RationalMap::from_coprime(std::move(num), std::move(den));
}

/// f^(n) as a normalized pair (g_n, h_n); n = 0 gives the identity.
inline RationalMap iterate(const RationalMap &f, int n, const IterationLimits &limits = {})
{
    if (n < 0)
        throw InvalidArgument("negative iteration count");
    std::uint64_t deg = 1;
    for (int i = 0; i < n; ++i) {
        deg *= static_cast<std::uint64_t>(f.degree());
        if (deg > limits.max_degree)
            throw ResourceLimit("iterate degree " + std::to_string(f.degree()) + "^" + std::to_string(n) +
                                    " exceeds limit " + std::to_string(limits.max_degree),
                                deg);
    }
    RationalMap r = RationalMap::identity();
    for (int i = 0; i < n; ++i)
        r = compose(f, r, limits);
    return r;
}

/// Derivative f'(a) at a finite point with h(a) != 0.
inline Rational derivative_at(const RationalMap &f, const Rational &a)
{
    Rational g = evaluate(f.numerator(), a);
    Rational h = evaluate(f.denominator(), a);
    if (h.is_zero())
        throw OrbitThroughInfinity("f(" + a.to_string() + ") is infinity");
    Rational gp = evaluate(f.numerator().derivative(), a);
    Rational hp = evaluate(f.denominator().derivative(), a);
    return (gp * h - g * hp) / (h * h);
}

struct ReductionReport
{
    Prime prime;
    ExtendedInteger resultant_valuation;
    bool good;
};

inline ReductionReport good_reduction(const RationalMap &f, const Prime &p)
{
    ExtendedInteger v = vp(f.resultant(), p);
    return {p, v, v == ExtendedInteger(0)};
}

/// p-adic chordal distance; always 0 or a power of p in (0, 1].
inline Rational chordal_distance(const ProjPoint &a, const ProjPoint &b, const Prime &p)
{
    auto clamp = [&](const Rational &x) {
        Rational ax = padic_abs(x, p);
        return ax > Rational(1) ? ax : Rational(1);
    };
    if (a.is_infinity() && b.is_infinity())
        return Rational(0);
    if (b.is_infinity())
        return Rational(1) / clamp(a.value());
    if (a.is_infinity())
        return Rational(1) / clamp(b.value());
    return padic_abs(a.value() - b.value(), p) / (clamp(a.value()) * clamp(b.value()));
}

} // namespace padyn
