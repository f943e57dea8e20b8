#pragma once

// Newton polygons and exact root counting over Q_p.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "padyn/arith.hpp"
#include "padyn/error.hpp"
#include "padyn/poly.hpp"

namespace padyn {

struct NewtonSegment
{
    Rational slope;
    long length;

    friend bool operator==(const NewtonSegment &, const NewtonSegment &) = default;
};

/// Lower convex hull of {(i, v_p(a_i))}. A segment of slope -s and length l
/// accounts for exactly l roots of valuation s in an algebraic closure of Q_p.
struct NewtonPolygon
{
    std::vector<NewtonSegment> segments; // slopes strictly increasing
    long zero_root_multiplicity = 0;
};

struct RootCount
{
    Prime prime;
    long roots_in_Zp = 0;
    long roots_outside_Zp = 0;
    long total = 0;
};

inline NewtonPolygon newton_polygon(const IntPolynomial &a, const Prime &p)
{
    if (a.is_zero())
        throw InvalidArgument("Newton polygon of the zero polynomial");
    NewtonPolygon np;
    struct Pt
    {
        long x, y;
    };
    std::vector<Pt> pts;
    for (int i = 0; i <= a.degree(); ++i) {
        const Integer &c = a[static_cast<std::size_t>(i)];
        if (c == 0) {
            if (pts.empty())
                ++np.zero_root_multiplicity;
            continue;
        }
        pts.push_back({i, vp(c, p).value()});
    }
    // Monotone chain, lower hull; collinear points are dropped so each
    // segment has a distinct slope.
    std::vector<Pt> hull;
    for (const Pt &q : pts) {
        while (hull.size() >= 2) {
            const Pt &o = hull[hull.size() - 2];
            const Pt &m = hull.back();
            // cross((m - o), (q - o)) <= 0 means m is not strictly below oq.
            __int128 cross = static_cast<__int128>(m.x - o.x) * (q.y - o.y) -
                             static_cast<__int128>(m.y - o.y) * (q.x - o.x);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }
    for (std::size_t i = 1; i < hull.size(); ++i) {
        long dx = hull[i].x - hull[i - 1].x;
        long dy = hull[i].y - hull[i - 1].y;
        np.segments.push_back({Rational(Integer(dy), Integer(dx)), dx});
    }
    return np;
}

namespace detail {

inline constexpr long max_residue_prime = 1L << 20;

inline std::vector<long> reduce_mod(const IntPolynomial &a, long p)
{
    std::vector<long> out;
    out.reserve(a.coefficients().size());
    Integer pp(p);
    for (const auto &c : a.coefficients())
        out.push_back(mod(c, pp).get_si());
    return out;
}

inline long eval_mod(const std::vector<long> &coeffs, long r, long p)
{
    __int128 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = (acc * r + *it) % p;
    return static_cast<long>(acc);
}

/// Number of roots of a in Z_p, by residue recursion. a must be squarefree;
/// `depth_limit` is v_p(disc) + 1 of the top-level input.
inline long count_zp_roots(IntPolynomial a, const Prime &p, long depth, long depth_limit)
{
    if (depth > depth_limit)
        throw PreconditionViolation("p-adic root recursion exceeded v_p(disc) + 1; input is not squarefree");
    Integer c = content(a);
    Integer pc = c / remove_prime(c, p);
    if (pc != 1)
        a = divide_by_integer(a, pc);
    if (a.degree() <= 0)
        return 0;
    long pv = p.value();
    std::vector<long> am = reduce_mod(a, pv);
    std::vector<long> dm = reduce_mod(a.derivative(), pv);
    long total = 0;
    for (long r = 0; r < pv; ++r) {
        if (eval_mod(am, r, pv) != 0)
            continue;
        if (eval_mod(dm, r, pv) != 0) {
            ++total; // Hensel: exactly one root in r + pZ_p
            continue;
        }
        total += count_zp_roots(taylor_shift(a, Integer(r), p.integer()), p, depth + 1, depth_limit);
    }
    return total;
}

inline long zp_root_count(const IntPolynomial &a, const Prime &p)
{
    if (a.degree() <= 0)
        return 0;
    IntPolynomial prim = primitive_part(a);
    ExtendedInteger vd = vp(discriminant(prim), p);
    return count_zp_roots(prim, p, 0, vd.value() + 1);
}

inline void check_residue_prime(const Prime &p)
{
    if (p.value() > max_residue_prime)
        throw ResourceLimit("residue enumeration modulo " + std::to_string(p.value()) + " is too large",
                            static_cast<std::uint64_t>(p.value()));
}

} // namespace detail

/// Exact number of roots of a squarefree integer polynomial in Q_p.
inline RootCount count_qp_roots(const IntPolynomial &a, const Prime &p)
{
    if (a.is_zero())
        throw InvalidArgument("root count of the zero polynomial");
    if (!is_squarefree(a))
        throw PreconditionViolation("count_qp_roots requires a squarefree polynomial, got " + to_string(a));
    detail::check_residue_prime(p);
    RootCount rc{p};
    rc.roots_in_Zp = detail::zp_root_count(a, p);
    // Roots of valuation < 0 are inverses of nonzero roots of the reversal
    // with valuation > 0, i.e. Z_p-roots of rev(p*y).
    IntPolynomial rev = a.reversed();
    if (rev.degree() >= 1)
        rc.roots_outside_Zp = detail::zp_root_count(taylor_shift(rev, Integer(0), p.integer()), p);
    rc.total = rc.roots_in_Zp + rc.roots_outside_Zp;
    return rc;
}

/// True iff every root of a lies in Q_p. When `projective_degree` exceeds
/// deg(a), the missing roots sit at infinity, which is always in P^1(Q_p).
inline bool splits_completely(const IntPolynomial &a, const Prime &p,
                              std::optional<int> projective_degree = std::nullopt)
{
    if (a.is_zero())
        throw InvalidArgument("splits_completely of the zero polynomial");
    if (projective_degree && *projective_degree < a.degree())
        throw InvalidArgument("projective degree below polynomial degree");
    IntPolynomial s = squarefree_part(a);
    return count_qp_roots(s, p).total == s.degree();
}

/// alpha is totally p-adic iff its minimal polynomial splits over Q_p.
/// Irreducibility is the caller's business; only squarefreeness is used.
inline bool is_totally_padic(const IntPolynomial &minpoly, const Prime &p)
{
    return splits_completely(minpoly, p);
}

// ---------------------------------------------------------------------------
// Rational roots by Hensel lifting and rational reconstruction.

namespace detail {

/// u/v with u = r*v (mod m), |u| <= nbound, 0 < v <= dbound, if any.
inline std::optional<Rational> rational_reconstruct(const Integer &r, const Integer &m, const Integer &nbound,
                                                    const Integer &dbound)
{
    Integer r0 = m, r1 = mod(r, m), s0 = 0, s1 = 1;
    while (r1 > nbound) {
        Integer q = r0 / r1;
        Integer t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (s1 == 0)
        return std::nullopt;
    Integer u = r1, v = s1;
    if (v < 0) {
        u = -u;
        v = -v;
    }
    if (v > dbound || gcd(u, v) != 1)
        return std::nullopt;
    return Rational(u, v);
}

} // namespace detail

/// All roots of a in Q, sorted ascending.
inline std::vector<Rational> rational_roots(const IntPolynomial &a)
{
    if (a.is_zero())
        throw InvalidArgument("rational roots of the zero polynomial");
    std::vector<Rational> roots;
    if (a.degree() <= 0)
        return roots;
    IntPolynomial f = squarefree_part(a);
    if (f[0] == 0) {
        roots.emplace_back(0);
        f = exact_quotient(f, IntPolynomial::x());
    }
    if (f.degree() >= 1) {
        Integer lc = abs(f.leading());
        Integer c0 = abs(f[0]);
        Integer disc = discriminant(f);
        Integer q(3);
        while (lc % q == 0 || disc % q == 0)
            mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
        long qv = q.get_si();
        std::vector<long> fm = detail::reduce_mod(f, qv);
        IntPolynomial fd = f.derivative();
        Integer target = 2 * c0 * lc + 1;
        for (long r = 0; r < qv; ++r) {
            if (detail::eval_mod(fm, r, qv) != 0)
                continue;
            // Newton lifting with quadratic precision growth.
            Integer x(r), m = q;
            while (m <= target) {
                m = m * m;
                Integer fx = mod(f.evaluate(x), m);
                Integer dx = mod(fd.evaluate(x), m);
                Integer inv;
                mpz_invert(inv.get_mpz_t(), dx.get_mpz_t(), m.get_mpz_t());
                x = mod(x - fx * inv, m);
            }
            if (auto cand = detail::rational_reconstruct(x, m, c0, lc)) {
                if (evaluate(f, *cand).is_zero())
                    roots.push_back(*cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace padyn
