#pragma once

// Dense univariate polynomials over Z and Q.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padyn/arith.hpp"
#include "padyn/error.hpp"

namespace padyn {

/// Dense polynomial, coefficient i multiplies x^i. Trailing zeros are always
/// trimmed, so the zero polynomial has no coefficients and degree -1.
template <class Coeff>
class Polynomial
{
public:
    static constexpr int zero_degree = -1;

    Polynomial() = default;
    explicit Polynomial(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<Coeff> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(const Coeff &c) { return Polynomial(std::vector<Coeff>{c}); }
    static Polynomial monomial(const Coeff &c, std::size_t k)
    {
        std::vector<Coeff> v(k + 1, Coeff(0));
        v[k] = c;
        return Polynomial(std::move(v));
    }
    static Polynomial x() { return monomial(Coeff(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    /// Coefficient of x^i, zero beyond the degree.
    Coeff operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(0); }
    const std::vector<Coeff> &coefficients() const { return c_; }
    const Coeff &leading() const
    {
        if (c_.empty())
            throw InvalidArgument("leading coefficient of the zero polynomial");
        return c_.back();
    }

    template <class T>
    T evaluate(const T &at) const
    {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * at + T(*it);
        return acc;
    }

    Polynomial derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<Coeff> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * Coeff(static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    /// x^deg * p(1/x).
    Polynomial reversed() const
    {
        std::vector<Coeff> r(c_.rbegin(), c_.rend());
        return Polynomial(std::move(r));
    }

    /// this(q(x)) by Horner's rule.
    Polynomial compose(const Polynomial &q) const
    {
        Polynomial acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * q + constant(*it);
        return acc;
    }

    Polynomial &operator+=(const Polynomial &o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), Coeff(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial &operator-=(const Polynomial &o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), Coeff(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Polynomial &operator*=(const Coeff &s)
    {
        for (auto &c : c_)
            c *= s;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator-(Polynomial a)
    {
        for (auto &c : a.c_)
            c = -c;
        return a;
    }
    friend Polynomial operator*(Polynomial a, const Coeff &s) { return a *= s; }
    friend Polynomial operator*(const Coeff &s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Coeff> r(a.c_.size() + b.c_.size() - 1, Coeff(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(r));
    }
    Polynomial &operator*=(const Polynomial &o) { return *this = *this * o; }

    friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.c_ == b.c_; }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<Coeff> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

template <class Coeff>
Polynomial<Coeff> power(const Polynomial<Coeff> &base, unsigned exponent)
{
    Polynomial<Coeff> result = Polynomial<Coeff>::constant(Coeff(1));
    Polynomial<Coeff> b = base;
    while (exponent) {
        if (exponent & 1u)
            result *= b;
        exponent >>= 1u;
        if (exponent)
            b *= b;
    }
    return result;
}

/// Human-readable rendering such as "x^2 - 7*x + 1/2"; reparseable by the
/// CLI grammar when coefficients are integers.
template <class Coeff>
std::string to_string(const Polynomial<Coeff> &p, const std::string &var = "x")
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        Coeff c = p[static_cast<std::size_t>(i)];
        if (c == 0)
            continue;
        bool negative = c < Coeff(0);
        Coeff mag = negative ? Coeff(-c) : c;
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        bool unit = mag == Coeff(1);
        if (i == 0 || !unit) {
            if constexpr (std::is_same_v<Coeff, Rational>)
                os << (mag.is_integer() ? mag.num().get_str() : mag.to_string());
            else
                os << mag.get_str();
            if (i > 0)
                os << "*";
        }
        if (i >= 1)
            os << var;
        if (i >= 2)
            os << "^" << i;
    }
    return os.str();
}

/// Coefficients as decimal strings, ascending degree.
inline std::vector<std::string> coefficient_strings(const IntPolynomial &p)
{
    std::vector<std::string> out;
    for (const auto &c : p.coefficients())
        out.push_back(c.get_str());
    return out;
}

// ---------------------------------------------------------------------------
// Content, primitive parts, conversions

/// Non-negative gcd of the coefficients; 0 for the zero polynomial.
inline Integer content(const IntPolynomial &p)
{
    Integer g(0);
    for (const auto &c : p.coefficients()) {
        g = gcd(g, c);
        if (g == 1)
            break;
    }
    return g;
}

/// p / content(p) with positive leading coefficient.
inline IntPolynomial primitive_part(const IntPolynomial &p)
{
    if (p.is_zero())
        return p;
    Integer c = content(p);
    if (p.leading() < 0)
        c = -c;
    std::vector<Integer> v;
    v.reserve(p.coefficients().size());
    for (const auto &a : p.coefficients())
        v.push_back(divexact(a, c));
    return IntPolynomial(std::move(v));
}

inline IntPolynomial divide_by_integer(const IntPolynomial &p, const Integer &c)
{
    std::vector<Integer> v;
    v.reserve(p.coefficients().size());
    for (const auto &a : p.coefficients())
        v.push_back(divexact(a, c));
    return IntPolynomial(std::move(v));
}

inline RatPolynomial to_rational(const IntPolynomial &p)
{
    std::vector<Rational> v;
    v.reserve(p.coefficients().size());
    for (const auto &a : p.coefficients())
        v.emplace_back(a);
    return RatPolynomial(std::move(v));
}

/// Common denominator (positive lcm of coefficient denominators).
inline Integer denominator_lcm(const RatPolynomial &p)
{
    Integer l(1);
    for (const auto &c : p.coefficients())
        l = lcm(l, c.den());
    return l;
}

/// p multiplied by the lcm of its denominators; not made primitive.
inline IntPolynomial clear_denominators(const RatPolynomial &p, const Integer &multiplier)
{
    std::vector<Integer> v;
    v.reserve(p.coefficients().size());
    for (const auto &c : p.coefficients())
        v.push_back(divexact(c.num() * multiplier, c.den()));
    return IntPolynomial(std::move(v));
}

/// Primitive integer polynomial with the same roots as p.
inline IntPolynomial primitive_associate(const RatPolynomial &p)
{
    return primitive_part(clear_denominators(p, denominator_lcm(p)));
}

/// Numerator of p(r) after homogenizing at degree `degree`:
/// sum a_i num^i den^(degree - i). Equals den^degree * p(r).
inline Integer evaluate_homogeneous(const IntPolynomial &p, const Integer &x, const Integer &y,
                                    int degree)
{
    Integer acc(0);
    Integer ypow(1);
    for (int i = degree; i >= 0; --i) {
        acc = acc * x + p[static_cast<std::size_t>(i)] * ypow;
        ypow *= y;
    }
    return acc;
}

inline Rational evaluate(const IntPolynomial &p, const Rational &r)
{
    int d = std::max(p.degree(), 0);
    return Rational(evaluate_homogeneous(p, r.num(), r.den(), d), pow(r.den(), static_cast<unsigned long>(d)));
}

/// p(shift + scale * y) as a polynomial in y.
inline IntPolynomial taylor_shift(const IntPolynomial &p, const Integer &shift, const Integer &scale)
{
    // Horner with the linear polynomial shift + scale*y.
    IntPolynomial lin({shift, scale});
    IntPolynomial acc;
    const auto &c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * lin + IntPolynomial::constant(*it);
    return acc;
}

// ---------------------------------------------------------------------------
// Division

/// Quotient and remainder over Q.
inline std::pair<RatPolynomial, RatPolynomial> div_rem(const RatPolynomial &a, const RatPolynomial &b)
{
    if (b.is_zero())
        throw InvalidArgument("polynomial division by zero");
    std::vector<Rational> rem = a.coefficients();
    int db = b.degree();
    int da = a.degree();
    if (da < db)
        return {RatPolynomial(), a};
    std::vector<Rational> quo(static_cast<std::size_t>(da - db) + 1);
    Rational lb = b.leading();
    for (int k = da - db; k >= 0; --k) {
        Rational q = rem[static_cast<std::size_t>(k + db)] / lb;
        quo[static_cast<std::size_t>(k)] = q;
        if (q.is_zero())
            continue;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(k + j)] -= q * b[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {RatPolynomial(std::move(quo)), RatPolynomial(std::move(rem))};
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
inline IntPolynomial pseudo_remainder(const IntPolynomial &a, const IntPolynomial &b)
{
    if (b.is_zero())
        throw InvalidArgument("pseudo-remainder by zero");
    int db = b.degree();
    if (a.degree() < db)
        return a;
    std::vector<Integer> r = a.coefficients();
    const Integer &lb = b.leading();
    int e = a.degree() - db + 1;
    for (int k = a.degree(); k >= db; --k) {
        Integer t = r[static_cast<std::size_t>(k)];
        for (auto &c : r)
            c *= lb;
        --e;
        if (t != 0) {
            for (int j = 0; j <= db; ++j)
                r[static_cast<std::size_t>(k - db + j)] -= t * b[static_cast<std::size_t>(j)];
        }
        r.resize(static_cast<std::size_t>(k)); // coefficient k is now zero
    }
    Integer scale = pow(lb, static_cast<unsigned long>(e));
    IntPolynomial out(std::move(r));
    if (e > 0)
        out *= scale;
    return out;
}

/// Exact quotient a / b in Z[x]; throws if b does not divide a there.
inline IntPolynomial exact_quotient(const IntPolynomial &a, const IntPolynomial &b)
{
    if (b.is_zero())
        throw InvalidArgument("polynomial division by zero");
    if (a.is_zero())
        return a;
    int db = b.degree();
    int da = a.degree();
    if (da < db)
        throw InvalidArgument("exact_quotient: divisor does not divide");
    std::vector<Integer> rem = a.coefficients();
    std::vector<Integer> quo(static_cast<std::size_t>(da - db) + 1);
    const Integer &lb = b.leading();
    for (int k = da - db; k >= 0; --k) {
        const Integer &top = rem[static_cast<std::size_t>(k + db)];
        if (top == 0)
            continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t()))
            throw InvalidArgument("exact_quotient: divisor does not divide");
        Integer q = divexact(top, lb);
        quo[static_cast<std::size_t>(k)] = q;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(k + j)] -= q * b[static_cast<std::size_t>(j)];
    }
    for (const auto &r : rem)
        if (r != 0)
            throw InvalidArgument("exact_quotient: nonzero remainder");
    return IntPolynomial(std::move(quo));
}

// ---------------------------------------------------------------------------
// GCD, resultant, discriminant

/// Primitive gcd in Z[x] with positive leading coefficient. gcd(0, 0) = 0.
inline IntPolynomial gcd(const IntPolynomial &a, const IntPolynomial &b)
{
    if (a.is_zero())
        return primitive_part(b);
    if (b.is_zero())
        return primitive_part(a);
    IntPolynomial r0 = primitive_part(a);
    IntPolynomial r1 = primitive_part(b);
    if (r0.degree() < r1.degree())
        std::swap(r0, r1);
    // Primitive PRS.
    while (!r1.is_zero()) {
        IntPolynomial r = pseudo_remainder(r0, r1);
        r0 = std::move(r1);
        r1 = primitive_part(r);
    }
    return primitive_part(r0);
}

/// Sylvester resultant Res(a, b) = det of the Sylvester matrix for the actual
/// degrees, computed by the subresultant PRS. Res(a, c) = c^deg(a) for a
/// constant c, and Res(a, 0) = 0 when a is nonzero.
inline Integer resultant(const IntPolynomial &a, const IntPolynomial &b)
{
    if (a.is_zero() && b.is_zero())
        throw InvalidArgument("resultant of two zero polynomials");
    if (a.is_zero() || b.is_zero())
        return Integer(0);
    if (a.degree() == 0)
        return pow(a.leading(), static_cast<unsigned long>(b.degree()));
    if (b.degree() == 0)
        return pow(b.leading(), static_cast<unsigned long>(a.degree()));

    IntPolynomial A = a, B = b;
    int s = 1;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if ((A.degree() & 1) && (B.degree() & 1))
            s = -1;
    }
    Integer ca = content(A), cb = content(B);
    Integer t = pow(ca, static_cast<unsigned long>(B.degree())) * pow(cb, static_cast<unsigned long>(A.degree()));
    A = divide_by_integer(A, ca);
    B = divide_by_integer(B, cb);
    Integer g(1), h(1);
    for (;;) {
        int delta = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1))
            s = -s;
        IntPolynomial R = pseudo_remainder(A, B);
        A = std::move(B);
        if (R.is_zero())
            return Integer(0);
        B = divide_by_integer(R, g * pow(h, static_cast<unsigned long>(delta)));
        g = A.leading();
        if (delta > 0)
            h = divexact(pow(g, static_cast<unsigned long>(delta)), pow(h, static_cast<unsigned long>(delta - 1)));
        if (B.degree() == 0)
            break;
    }
    int da = A.degree();
    h = divexact(pow(B.leading(), static_cast<unsigned long>(da)), pow(h, static_cast<unsigned long>(da - 1)));
    return s * t * h;
}

/// Resultant with a formal degree for b that may exceed its actual degree
/// (the Sylvester matrix then has leading zeros in the b rows):
/// Res_{deg a, n}(a, b) = lc(a)^(n - deg b) * Res(a, b). Requires a nonconstant
/// or b nonzero.
inline Integer formal_resultant(const IntPolynomial &a, const IntPolynomial &b, int b_formal_degree)
{
    if (b.is_zero())
        return Integer(0);
    if (b_formal_degree < b.degree())
        throw InvalidArgument("formal degree below actual degree");
    return pow(a.leading(), static_cast<unsigned long>(b_formal_degree - b.degree())) * resultant(a, b);
}

/// disc(a) = (-1)^(d(d-1)/2) Res(a, a') / lc(a).
inline Integer discriminant(const IntPolynomial &a)
{
    int d = a.degree();
    if (d < 1)
        throw InvalidArgument("discriminant of a constant polynomial");
    Integer r = divexact(resultant(a, a.derivative()), a.leading());
    return ((d * (d - 1) / 2) % 2) ? Integer(-r) : r;
}

/// Primitive polynomial with the same roots as a, all simple, lc > 0.
inline IntPolynomial squarefree_part(const IntPolynomial &a)
{
    if (a.is_zero())
        throw InvalidArgument("squarefree part of the zero polynomial");
    if (a.degree() == 0)
        return IntPolynomial{Integer(1)};
    IntPolynomial g = gcd(a, a.derivative());
    return primitive_part(exact_quotient(primitive_part(a), g));
}

inline bool is_squarefree(const IntPolynomial &a)
{
    if (a.is_zero())
        return false;
    return gcd(a, a.derivative()).degree() <= 0;
}

/// Yun's algorithm: returns (s_1, s_2, ...) primitive, squarefree, pairwise
/// coprime, with primitive_part(a) = prod s_i^i (s_i may be 1).
inline std::vector<IntPolynomial> squarefree_decomposition(const IntPolynomial &a)
{
    if (a.is_zero())
        throw InvalidArgument("squarefree decomposition of the zero polynomial");
    std::vector<IntPolynomial> out;
    IntPolynomial f = primitive_part(a);
    if (f.degree() == 0)
        return out;
    // Over Q: b = f/g, d = f'/g - b', then a_i = gcd(b, d), b /= a_i, d = d/a_i - b'.
    RatPolynomial g = to_rational(gcd(f, f.derivative()));
    RatPolynomial b = div_rem(to_rational(f), g).first;
    RatPolynomial d = div_rem(to_rational(f.derivative()), g).first - b.derivative();
    while (b.degree() > 0) {
        IntPolynomial ai = gcd(primitive_associate(b), d.is_zero() ? IntPolynomial() : primitive_associate(d));
        RatPolynomial aq = to_rational(ai);
        out.push_back(ai);
        b = div_rem(b, aq).first;
        d = div_rem(d, aq).first - b.derivative();
    }
    return out;
}

} // namespace padyn
