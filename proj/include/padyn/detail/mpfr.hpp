#pragma once

// Thin RAII layer over MPFR: a round-to-nearest Real for numerics, a
// directed-rounding Interval for certified enclosures, and a Complex pair.

#include <mpfr.h>

#include <algorithm>
#include <utility>

#include "padyn/arith.hpp"

namespace padyn::detail {

class Real
{
public:
    explicit Real(mpfr_prec_t prec = 128)
    {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real &o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real &&o) noexcept
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real &operator=(const Real &o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real &operator=(Real &&o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real from(const Integer &z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN)
    {
        Real r(prec);
        mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
        return r;
    }
    static Real from(double x, mpfr_prec_t prec)
    {
        Real r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    friend Real operator+(const Real &a, const Real &b) { return binary(a, b, mpfr_add); }
    friend Real operator-(const Real &a, const Real &b) { return binary(a, b, mpfr_sub); }
    friend Real operator*(const Real &a, const Real &b) { return binary(a, b, mpfr_mul); }
    friend Real operator/(const Real &a, const Real &b) { return binary(a, b, mpfr_div); }
    friend Real operator-(const Real &a)
    {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend bool operator<(const Real &a, const Real &b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real &a, const Real &b) { return mpfr_greater_p(a.v_, b.v_) != 0; }

private:
    template <class Op>
    static Real binary(const Real &a, const Real &b, Op op)
    {
        Real r(std::max(a.prec(), b.prec()));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

inline Real log(const Real &a)
{
    Real r(a.prec());
    mpfr_log(r.get(), a.get(), MPFR_RNDN);
    return r;
}
inline Real exp(const Real &a)
{
    Real r(a.prec());
    mpfr_exp(r.get(), a.get(), MPFR_RNDN);
    return r;
}
inline Real sqrt(const Real &a)
{
    Real r(a.prec());
    mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
    return r;
}
inline Real abs(const Real &a)
{
    Real r(a.prec());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}

struct Complex
{
    Real re, im;

    explicit Complex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    friend Complex operator+(const Complex &a, const Complex &b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex &a, const Complex &b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex &a, const Complex &b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex &a, const Complex &b)
    {
        Real den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    Real norm() const { return re * re + im * im; }
    Real modulus() const { return sqrt(norm()); }
};

/// Closed interval [lo, hi] with outward rounding on every operation.
class Interval
{
public:
    explicit Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

    static Interval from(const Integer &z, mpfr_prec_t prec)
    {
        Interval r(prec);
        mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static Interval from(const Rational &q, mpfr_prec_t prec)
    {
        return from(q.num(), prec) / from(q.den(), prec);
    }

    const Real &lo() const { return lo_; }
    const Real &hi() const { return hi_; }
    mpfr_prec_t prec() const { return lo_.prec(); }

    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool is_finite() const { return lo_.is_finite() && hi_.is_finite(); }

    /// Lower bound of |x| over the interval.
    Real mignitude() const
    {
        if (contains_zero())
            return Real(prec());
        Real r(prec());
        if (lo_.sign() > 0)
            mpfr_set(r.get(), lo_.get(), MPFR_RNDD);
        else
            mpfr_neg(r.get(), hi_.get(), MPFR_RNDD);
        return r;
    }

    friend Interval operator+(const Interval &a, const Interval &b)
    {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval &a, const Interval &b)
    {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
        mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval &a, const Interval &b)
    {
        mpfr_prec_t prec = std::max(a.prec(), b.prec());
        Interval r(prec);
        Real t(prec);
        bool first = true;
        for (const Real *x : {&a.lo_, &a.hi_}) {
            for (const Real *y : {&b.lo_, &b.hi_}) {
                mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
                if (first || t < r.lo_)
                    mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
                if (first || t > r.hi_)
                    mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        }
        return r;
    }
    /// Requires 0 not in b.
    friend Interval operator/(const Interval &a, const Interval &b)
    {
        Interval inv(b.prec());
        mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
        mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
        return a * inv;
    }

    friend Interval abs(const Interval &a)
    {
        Interval r(a.prec());
        if (a.lo_.sign() >= 0) {
            return a;
        } else if (a.hi_.sign() <= 0) {
            mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
            mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
        } else {
            mpfr_set_zero(r.lo_.get(), 1);
            mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
            if (a.hi_ > r.hi_)
                mpfr_set(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        }
        return r;
    }
    friend Interval max(const Interval &a, const Interval &b)
    {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }
    /// Requires lo > 0.
    friend Interval log(const Interval &a)
    {
        Interval r(a.prec());
        mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }

    /// Double nearest the midpoint, and an upper bound on the distance from
    /// that double to any point of the interval.
    std::pair<double, double> to_double_with_error() const
    {
        Real mid(prec() + 2);
        mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
        double v = mid.to_double();
        Real vd = Real::from(v, 64);
        Real up(prec()), down(prec());
        mpfr_sub(up.get(), hi_.get(), vd.get(), MPFR_RNDU);
        mpfr_sub(down.get(), vd.get(), lo_.get(), MPFR_RNDU);
        double e = std::max(up.to_double(MPFR_RNDU), down.to_double(MPFR_RNDU));
        return {v, std::max(e, 0.0)};
    }

    /// Upper bound on hi - lo.
    double width() const
    {
        Real w(prec());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w.to_double(MPFR_RNDU);
    }

private:
    Real lo_, hi_;
};

/// log(n) for an integer n >= 1, rounded in the given direction to a double.
inline double log_integer(const Integer &n, mpfr_rnd_t rnd)
{
    Real x = Real::from(n, 256, rnd);
    Real r(256);
    mpfr_log(r.get(), x.get(), rnd);
    return r.to_double(rnd);
}

} // namespace padyn::detail
