#pragma once

// Weil heights, the height-comparison constant C_f, certified canonical
// heights of rational points, and Mahler-measure heights of algebraic points.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padyn/arith.hpp"
#include "padyn/detail/mpfr.hpp"
#include "padyn/error.hpp"
#include "padyn/poly.hpp"
#include "padyn/ratmap.hpp"

namespace padyn {

enum class HeightMethod { exact, certified_iterate, mahler_numeric };

inline std::string to_string(HeightMethod m)
{
    switch (m) {
    case HeightMethod::exact:
        return "exact";
    case HeightMethod::certified_iterate:
        return "certified_iterate";
    case HeightMethod::mahler_numeric:
        return "mahler_numeric";
    }
    return "unknown";
}

/// Natural-log height value with an error radius. For exact and
/// certified_iterate the true value lies within [value - error, value + error];
/// for mahler_numeric the radius is a numerical tolerance only.
struct HeightEstimate
{
    double value = 0.0;
    double error = 0.0;
    HeightMethod method = HeightMethod::exact;
};

/// max(|p|, |q|) for the reduced lift; 1 for infinity.
inline Integer weil_height_argument(const ProjPoint &P)
{
    auto [x, y] = P.lift();
    Integer ax = abs(x), ay = abs(y);
    return ax > ay ? ax : ay;
}

inline HeightEstimate weil_height(const ProjPoint &P)
{
    return {detail::log_integer(weil_height_argument(P), MPFR_RNDN), 0.0, HeightMethod::exact};
}

/// |h(f(P)) - d h(P)| <= C for all P over the algebraic closure, with the two
/// directions kept separately: d h - lower <= h(f(P)) <= d h + upper.
struct HeightConstant
{
    RationalMap map;
    double C;
    double upper;
    double lower;
    /// gcd(G(x, y), H(x, y)) divides this for every coprime integer pair.
    Integer gcd_bound;
};

namespace detail {

/// Solves S v = e_row over Q by Gaussian elimination; S is square and
/// nonsingular.
inline std::vector<Rational> solve_unit(std::vector<std::vector<Rational>> S, std::size_t row)
{
    std::size_t n = S.size();
    std::vector<Rational> rhs(n, Rational(0));
    rhs[row] = Rational(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && S[piv][col].is_zero())
            ++piv;
        if (piv == n)
            throw DegenerateMap("singular Sylvester system");
        std::swap(S[piv], S[col]);
        std::swap(rhs[piv], rhs[col]);
        Rational inv = S[col][col].inverse();
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || S[r][col].is_zero())
                continue;
            Rational factor = S[r][col] * inv;
            for (std::size_t c = col; c < n; ++c)
                S[r][c] -= factor * S[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        rhs[i] /= S[i][i];
    return rhs;
}

/// Upward-rounded log of a positive rational.
inline double log_rational_up(const Rational &q)
{
    Interval v = log(Interval::from(q, 256));
    return v.hi().to_double(MPFR_RNDU);
}

} // namespace detail

/// C_f from the coefficient bound (upper direction) and from the cofactor
/// identities A G + B H = R_X X^(2d-1), A' G + B' H = R_Y Y^(2d-1) (lower).
inline HeightConstant height_bound_constant(const RationalMap &f)
{
    int d = f.degree();
    if (d < 2)
        throw InvalidArgument("height_bound_constant needs degree >= 2, got " + std::to_string(d));
    auto coeff = [](const IntPolynomial &p, int i) {
        return i <= p.degree() ? p[static_cast<std::size_t>(i)] : Integer(0);
    };
    Integer M = 0;
    for (int i = 0; i <= d; ++i) {
        M = std::max(M, Integer(abs(coeff(f.numerator(), i))));
        M = std::max(M, Integer(abs(coeff(f.denominator(), i))));
    }
    double upper = detail::log_rational_up(Rational(Integer((d + 1) * M)));

    // Columns: x^i g for i < d, then x^i h; rows: coefficient of x^k, k < 2d.
    std::size_t n = static_cast<std::size_t>(2 * d);
    std::vector<std::vector<Rational>> S(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k <= d; ++k) {
            S[static_cast<std::size_t>(i + k)][static_cast<std::size_t>(i)] = Rational(coeff(f.numerator(), k));
            S[static_cast<std::size_t>(i + k)][static_cast<std::size_t>(d + i)] =
                Rational(coeff(f.denominator(), k));
        }
    }
    struct Identity
    {
        Integer R, K;
    };
    std::vector<Identity> ids;
    for (std::size_t row : {n - 1, std::size_t(0)}) {
        std::vector<Rational> v = detail::solve_unit(S, row);
        Integer den = 1;
        for (const auto &q : v)
            den = lcm(den, q.den());
        Integer K = 0;
        for (const auto &q : v)
            K = std::max(K, Integer(abs(q.num() * divexact(den, q.den()))));
        ids.push_back({den, K});
    }
    Integer L = lcm(ids[0].R, ids[1].R);
    double lower = 0.0;
    for (const auto &id : ids) {
        Rational bound{Integer(Integer(2 * d) * id.K * divexact(L, id.R))};
        lower = std::max(lower, detail::log_rational_up(bound));
    }
    return {f, std::max(upper, lower), upper, lower, L};
}

namespace detail {

/// Upward-rounded C / ((d - 1) d^N).
inline double tail_bound(double C, int d, long N)
{
    Real t = Real::from(C, 64);
    mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(d - 1), MPFR_RNDU);
    for (long i = 0; i < N; ++i)
        mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(d), MPFR_RNDU);
    return t.to_double(MPFR_RNDU);
}

/// Smallest N >= 0 with C / ((d - 1) d^N) <= target.
inline long truncation_depth(double C, int d, double target)
{
    long N = 0;
    while (tail_bound(C, d, N) > target) {
        ++N;
        if (N > 1000000)
            throw ResourceLimit("canonical height truncation depth exceeds 10^6", static_cast<std::uint64_t>(N));
    }
    return N;
}

/// log gcd(G, H) of the first N lifts along the orbit, computed exactly from
/// residues modulo gcd_bound^(N+1).
inline std::vector<Integer> orbit_gcds(const RationalMap &f, const ProjPoint &P, long N, const Integer &L)
{
    std::vector<Integer> out(static_cast<std::size_t>(N), Integer(1));
    if (L == 1 || N == 0)
        return out;
    Integer M = pow(L, static_cast<unsigned long>(N + 1));
    auto [x, y] = P.lift();
    x = mod(x, M);
    y = mod(y, M);
    for (long n = 0; n < N; ++n) {
        auto [G, H] = apply_lift(f, x, y);
        G = mod(G, M);
        H = mod(H, M);
        Integer g = gcd(gcd(G, H), L);
        out[static_cast<std::size_t>(n)] = g;
        M = divexact(M, g);
        x = mod(divexact(G, g), M);
        y = mod(divexact(H, g), M);
    }
    return out;
}

/// Enclosure of h(P) + sum_{n<N} delta_n / d^(n+1) at the given precision,
/// where delta_n is the archimedean defect at f^n(P). Returns nullopt when
/// the precision is too low to keep the orbit enclosure meaningful.
inline std::optional<Interval> certified_partial_sum(const RationalMap &f, const ProjPoint &P, long N,
                                                     const std::vector<Integer> &gcds, mpfr_prec_t prec)
{
    int d = f.degree();
    auto pad = [&](const IntPolynomial &p) {
        std::vector<Interval> c;
        for (int i = 0; i <= d; ++i)
            c.push_back(Interval::from(i <= p.degree() ? p[static_cast<std::size_t>(i)] : Integer(0), prec));
        return c;
    };
    std::vector<Interval> gc = pad(f.numerator()), hc = pad(f.denominator());
    Interval one = Interval::from(Integer(1), prec);
    Interval dd = Interval::from(Integer(d), prec);

    auto [X, Y] = P.lift();
    Interval sum = log(Interval::from(weil_height_argument(P), prec));
    // Chart (1 : s) when x_chart, else (s : 1).
    bool x_chart = abs(X) >= abs(Y);
    Interval s = x_chart ? Interval::from(Rational(Y, X), prec) : Interval::from(Rational(X, Y), prec);

    auto eval = [&](const std::vector<Interval> &c) {
        Interval acc(prec);
        if (x_chart) {
            acc = c[0];
            for (int i = 1; i <= d; ++i)
                acc = acc * s + c[static_cast<std::size_t>(i)];
        } else {
            acc = c[static_cast<std::size_t>(d)];
            for (int i = d - 1; i >= 0; --i)
                acc = acc * s + c[static_cast<std::size_t>(i)];
        }
        return acc;
    };

    Interval weight = one;
    for (long n = 0; n < N; ++n) {
        Interval G = eval(gc), H = eval(hc);
        if (!G.is_finite() || !H.is_finite())
            return std::nullopt;
        Interval big = max(abs(G), abs(H));
        if (big.lo().sign() <= 0)
            return std::nullopt;
        Interval delta = log(big) - dd * log(max(one, abs(s)));
        delta = delta - log(Interval::from(gcds[static_cast<std::size_t>(n)], prec));
        weight = weight / dd;
        sum = sum + delta * weight;
        Real mg = G.mignitude(), mh = H.mignitude();
        if (mg.is_zero() && mh.is_zero())
            return std::nullopt;
        if (!(mh > mg)) {
            x_chart = true;
            s = H / G;
        } else {
            x_chart = false;
            s = G / H;
        }
    }
    if (!sum.is_finite())
        return std::nullopt;
    return sum;
}

} // namespace detail

/// hhat_f(P) to within eps, rigorously. Evaluates h(f^N P) / d^N without
/// forming f^N(P): the exact gcd of each lift and an interval enclosure of
/// the archimedean term are summed along the orbit.
inline HeightEstimate canonical_height(const HeightConstant &hc, const ProjPoint &P, double eps)
{
    if (!(eps > 0) || !std::isfinite(eps))
        throw InvalidArgument("eps must be a positive finite number");
    const RationalMap &f = hc.map;
    int d = f.degree();
    long N = detail::truncation_depth(hc.C, d, eps / 4);
    double tail = detail::tail_bound(hc.C, d, N);
    std::vector<Integer> gcds = detail::orbit_gcds(f, P, N, hc.gcd_bound);
    constexpr mpfr_prec_t max_prec = mpfr_prec_t(1) << 18;
    double best = HUGE_VAL;
    for (mpfr_prec_t prec = 128; prec <= max_prec; prec *= 2) {
        auto sum = detail::certified_partial_sum(f, P, N, gcds, prec);
        if (!sum)
            continue;
        double w = sum->width();
        best = std::min(best, w);
        if (w <= eps / 4) {
            auto [v, e] = sum->to_double_with_error();
            double err = e + tail;
            err = std::nextafter(err, HUGE_VAL);
            return {v, err, HeightMethod::certified_iterate};
        }
    }
    throw ResourceLimit("canonical height: precision cap reached; smallest achievable eps about " +
                            std::to_string(best + tail),
                        static_cast<std::uint64_t>(max_prec));
}

inline HeightEstimate canonical_height(const RationalMap &f, const ProjPoint &P, double eps)
{
    return canonical_height(height_bound_constant(f), P, eps);
}

// ---------------------------------------------------------------------------
// Mahler measure

namespace detail {

inline Complex complex_const(double re, mpfr_prec_t prec)
{
    return {Real::from(re, prec), Real(prec)};
}

/// Initial approximations on circles whose radii come from the upper convex
/// hull of (i, log|c_i|); angles are fixed, so results are reproducible.
inline std::vector<Complex> aberth_start(const std::vector<Real> &c, mpfr_prec_t prec)
{
    int n = static_cast<int>(c.size()) - 1;
    struct Pt
    {
        int x;
        double y;
    };
    std::vector<Pt> pts;
    for (int i = 0; i <= n; ++i) {
        if (c[static_cast<std::size_t>(i)].is_zero())
            continue;
        Real a = abs(c[static_cast<std::size_t>(i)]);
        pts.push_back({i, log(a).to_double()});
    }
    std::vector<Pt> hull;
    for (const Pt &q : pts) {
        while (hull.size() >= 2) {
            const Pt &o = hull[hull.size() - 2];
            const Pt &m = hull.back();
            double cross = (m.x - o.x) * (q.y - o.y) - (m.y - o.y) * (q.x - o.x);
            if (cross >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }
    std::vector<Complex> z;
    for (std::size_t e = 1; e < hull.size(); ++e) {
        int len = hull[e].x - hull[e - 1].x;
        Real r = exp(Real::from((hull[e - 1].y - hull[e].y) / len, prec));
        for (int k = 0; k < len; ++k) {
            double theta = 2 * std::numbers::pi * k / len + 2 * std::numbers::pi * hull[e - 1].x / n + 0.7;
            z.push_back({r * Real::from(std::cos(theta), prec), r * Real::from(std::sin(theta), prec)});
        }
    }
    return z;
}

/// Relative residual |p(z)| / sum |c_i| |z|^i.
inline double relative_residual(const std::vector<Real> &c, const Complex &z)
{
    mpfr_prec_t prec = z.re.prec();
    Complex p(prec);
    Real scale(prec);
    Real az = z.modulus();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        p = p * z + Complex(*it, Real(prec));
        scale = scale * az + abs(*it);
    }
    if (scale.is_zero())
        return 0.0;
    return (p.modulus() / scale).to_double(MPFR_RNDU);
}

/// All complex roots of a squarefree polynomial with nonzero constant term,
/// by Aberth iteration.
inline std::vector<Complex> aberth_roots(const IntPolynomial &a, mpfr_prec_t prec)
{
    int n = a.degree();
    std::vector<Real> c;
    for (const auto &coef : a.coefficients())
        c.push_back(Real::from(coef, prec));
    std::vector<Real> dc;
    for (int i = 1; i <= n; ++i) {
        Real t = c[static_cast<std::size_t>(i)];
        mpfr_mul_ui(t.get(), t.get(), static_cast<unsigned long>(i), MPFR_RNDN);
        dc.push_back(t);
    }
    std::vector<Complex> z = aberth_start(c, prec);
    Complex one = complex_const(1.0, prec);
    double tol = std::ldexp(1.0, -static_cast<int>(prec / 2));
    int polish = 0;
    for (int iter = 0; iter < 2000 && polish < 3; ++iter) {
        double worst = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            Complex p(prec), dp(prec);
            for (int i = n; i >= 0; --i) {
                p = p * z[k] + Complex(c[static_cast<std::size_t>(i)], Real(prec));
                if (i >= 1)
                    dp = dp * z[k] + Complex(dc[static_cast<std::size_t>(i - 1)], Real(prec));
            }
            if (p.re.is_zero() && p.im.is_zero())
                continue;
            Complex sum(prec);
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k)
                    sum = sum + one / (z[k] - z[j]);
            Complex w(prec);
            if (dp.re.is_zero() && dp.im.is_zero()) {
                w = one / sum;
                w = Complex(-w.re, -w.im);
            } else {
                Complex ratio = p / dp;
                w = ratio / (one - ratio * sum);
            }
            z[k] = z[k] - w;
            Real zn = z[k].norm();
            double rel = zn.is_zero() ? w.norm().to_double() : (w.norm() / zn).to_double();
            worst = std::max(worst, std::sqrt(rel));
        }
        if (!(worst == worst))
            break;
        if (worst <= tol || polish > 0)
            ++polish;
    }
    double residual = 0.0;
    for (const Complex &r : z)
        residual = std::max(residual, relative_residual(c, r));
    if (!(residual <= 1e-12))
        throw ConvergenceError("complex root finder did not converge for " + to_string(a), residual);
    return z;
}

/// log M(s) for a squarefree, primitive polynomial of degree >= 1.
inline Real log_mahler_squarefree(IntPolynomial s)
{
    mpfr_prec_t prec = 128;
    Real acc = log(abs(Real::from(s.leading(), prec)));
    if (s[0] == 0)
        s = exact_quotient(s, IntPolynomial::x());
    if (s.degree() == 0)
        return acc;
    if (s.degree() == 1) {
        Integer top = abs(s[1]), bottom = abs(s[0]);
        Real ratio = Real::from(bottom, prec) / Real::from(top, prec);
        if (bottom > top)
            acc = acc + log(ratio);
        return acc;
    }
    for (;; prec *= 2) {
        try {
            std::vector<Complex> roots = aberth_roots(s, prec);
            Real sum = log(abs(Real::from(s.leading(), prec)));
            for (const Complex &r : roots) {
                Real nrm = r.norm();
                if (nrm > Real::from(1.0, prec)) {
                    Real l = log(nrm);
                    mpfr_div_2ui(l.get(), l.get(), 1, MPFR_RNDN);
                    sum = sum + l;
                }
            }
            return sum;
        } catch (const ConvergenceError &) {
            if (prec >= 2048)
                throw;
        }
    }
}

} // namespace detail

/// (log|lc(a)| + sum log+ |rho|) / D over the complex roots of a with
/// multiplicity; D defaults to deg a. A larger projective degree accounts for
/// roots at infinity, which have height 0.
inline HeightEstimate mahler_height(const IntPolynomial &a, std::optional<int> projective_degree = std::nullopt)
{
    if (a.degree() < 1)
        throw InvalidArgument("mahler_height needs degree >= 1");
    int D = projective_degree.value_or(a.degree());
    if (D < a.degree())
        throw InvalidArgument("projective degree below polynomial degree");
    detail::Real total = detail::log(detail::Real::from(content(a), 128));
    std::vector<IntPolynomial> parts = squarefree_decomposition(a);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].degree() < 1)
            continue;
        detail::Real l = detail::log_mahler_squarefree(parts[i]);
        mpfr_mul_ui(l.get(), l.get(), static_cast<unsigned long>(i + 1), MPFR_RNDN);
        total = total + l;
    }
    double sum = total.to_double();
    double value = sum / D;
    double error = 1e-12 * std::max(1.0, std::abs(sum)) / D;
    return {value, error, HeightMethod::mahler_numeric};
}

// ---------------------------------------------------------------------------
// Pushforward of conjugate sets

namespace detail {

/// Res_y(m(y), x h(y) - g(y)) for F = g/h, with the second argument taken at
/// formal degree deg F; by evaluation at deg m + 1 integer points and Newton
/// interpolation. Not made primitive.
inline IntPolynomial pushforward_raw(const RationalMap &F, const IntPolynomial &m)
{
    int n = m.degree();
    if (n < 1)
        throw InvalidArgument("pushforward of a constant polynomial");
    int D = F.degree();
    std::vector<Rational> c;
    for (int x0 = 0; x0 <= n; ++x0) {
        IntPolynomial b = F.denominator() * Integer(x0) - F.numerator();
        c.emplace_back(formal_resultant(m, b, D));
    }
    for (int k = 1; k <= n; ++k)
        for (int i = n; i >= k; --i)
            c[static_cast<std::size_t>(i)] = (c[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i - 1)]) /
                                             Rational(k);
    RatPolynomial P = RatPolynomial::constant(c[static_cast<std::size_t>(n)]);
    for (int i = n - 1; i >= 0; --i)
        P = P * RatPolynomial{Rational(-i), Rational(1)} + RatPolynomial::constant(c[static_cast<std::size_t>(i)]);
    std::vector<Integer> out;
    for (const auto &q : P.coefficients()) {
        if (!q.is_integer())
            throw Error("pushforward interpolation produced a non-integer coefficient");
        out.push_back(q.num());
    }
    return IntPolynomial(std::move(out));
}

} // namespace detail

/// Primitive polynomial whose roots, with multiplicity, are the images under
/// f^N of the roots of m that do not land at infinity.
inline IntPolynomial pushforward_polynomial(const RationalMap &f, const IntPolynomial &m, int N,
                                            const IterationLimits &limits = IterationLimits::from_environment())
{
    if (m.degree() < 1)
        throw InvalidArgument("pushforward of a constant polynomial");
    IntPolynomial r = detail::pushforward_raw(iterate(f, N, limits), m);
    if (r.degree() < 1)
        throw DegenerateResultant("every root of " + to_string(m) + " maps to infinity");
    return primitive_part(r);
}

/// hhat_f averaged over the roots of m: mahler_height of the N-th pushforward
/// divided by d^N. The truncation part of the error is rigorous, the root
/// finding part is not.
inline HeightEstimate algebraic_canonical_height(const HeightConstant &hc, const IntPolynomial &m, int N,
                                                 const IterationLimits &limits = IterationLimits::from_environment())
{
    const RationalMap &f = hc.map;
    IntPolynomial r = detail::pushforward_raw(iterate(f, N, limits), m);
    double scale = std::pow(static_cast<double>(f.degree()), N);
    double tail = detail::tail_bound(hc.C, f.degree(), N);
    if (r.degree() < 1)
        return {0.0, tail, HeightMethod::mahler_numeric};
    HeightEstimate mh = mahler_height(primitive_part(r), m.degree());
    return {mh.value / scale, tail + mh.error / scale, HeightMethod::mahler_numeric};
}

} // namespace padyn
