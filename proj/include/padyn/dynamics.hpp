#pragma once

// Periodic and preperiodic points, multipliers, preimages and backward orbits.

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "padyn/arith.hpp"
#include "padyn/error.hpp"
#include "padyn/heights.hpp"
#include "padyn/padic.hpp"
#include "padyn/poly.hpp"
#include "padyn/ratmap.hpp"

namespace padyn {

/// H_n = g_n - x h_n, made primitive. Its roots are the finite points whose
/// period divides n.
inline IntPolynomial period_polynomial(const RationalMap &f, int n,
                                       const IterationLimits &limits = IterationLimits::from_environment())
{
    if (n < 1)
        throw InvalidArgument("period must be >= 1");
    RationalMap fn = iterate(f, n, limits);
    IntPolynomial H = fn.numerator() - IntPolynomial::x() * fn.denominator();
    if (H.is_zero())
        throw DegenerateMap("f^" + std::to_string(n) + " is the identity");
    return primitive_part(H);
}

/// Squarefree polynomial vanishing exactly at the finite points of exact
/// period n.
inline IntPolynomial exact_period_points(const RationalMap &f, int n,
                                         const IterationLimits &limits = IterationLimits::from_environment())
{
    IntPolynomial phi = squarefree_part(period_polynomial(f, n, limits));
    for (int m = 1; m < n; ++m) {
        if (n % m != 0)
            continue;
        IntPolynomial common = gcd(phi, squarefree_part(period_polynomial(f, m, limits)));
        if (common.degree() >= 1)
            phi = primitive_part(exact_quotient(phi, common));
    }
    return phi;
}

enum class Classification { repelling, indifferent, attracting };

inline std::string to_string(Classification c)
{
    switch (c) {
    case Classification::repelling:
        return "repelling";
    case Classification::indifferent:
        return "indifferent";
    case Classification::attracting:
        return "attracting";
    }
    return "unknown";
}

struct MultiplierReport
{
    Rational point;
    int period;
    Rational multiplier;
    Prime prime;
    Classification classification;
};

/// (f^n)'(alpha) by the chain rule, classified by its p-adic size.
inline MultiplierReport multiplier(const RationalMap &f, const Rational &alpha, int n, const Prime &p)
{
    if (n < 1)
        throw InvalidArgument("period must be >= 1");
    std::vector<ProjPoint> orbit = forward_orbit(f, ProjPoint(alpha), n);
    for (const auto &q : orbit)
        if (q.is_infinity())
            throw OrbitThroughInfinity("orbit of " + alpha.to_string() + " passes through infinity");
    if (orbit.back() != ProjPoint(alpha))
        throw NotPeriodic(alpha.to_string() + " is not a root of H_" + std::to_string(n));
    Rational lambda(1);
    for (int i = 0; i < n; ++i)
        lambda *= derivative_at(f, orbit[static_cast<std::size_t>(i)].value());
    Rational size = padic_abs(lambda, p);
    Classification c = size > Rational(1)   ? Classification::repelling
                       : size == Rational(1) ? Classification::indifferent
                                             : Classification::attracting;
    return {alpha, n, lambda, p, c};
}

/// Primitive part of q g_k - p h_k for alpha0 = p/q: the finite points of
/// f^(-k)(alpha0), with multiplicity.
inline IntPolynomial preimage_polynomial(const RationalMap &f, const Rational &alpha0, int k,
                                         const IterationLimits &limits = IterationLimits::from_environment())
{
    if (k < 0)
        throw InvalidArgument("level must be >= 0");
    RationalMap fk = iterate(f, k, limits);
    IntPolynomial P = fk.numerator() * alpha0.den() - fk.denominator() * alpha0.num();
    if (P.is_zero())
        throw DegenerateMap("f^" + std::to_string(k) + " is constant");
    return primitive_part(P);
}

struct BackwardLevel
{
    int level;
    /// Squarefree; vanishes exactly on the finite points of f^(-k)(alpha0).
    IntPolynomial polynomial;
    /// splits[i] answers for primes[i].
    std::vector<bool> splits;
};

struct BackwardOrbit
{
    Rational base_point;
    std::vector<Prime> primes;
    std::vector<BackwardLevel> levels; // levels 1..depth
};

inline BackwardOrbit backward_orbit(const RationalMap &f, const Rational &alpha0, int depth,
                                    const std::vector<Prime> &primes,
                                    const IterationLimits &limits = IterationLimits::from_environment())
{
    if (depth < 1)
        throw InvalidArgument("depth must be >= 1");
    BackwardOrbit out{alpha0, primes, {}};
    std::uint64_t dk = 1;
    for (int k = 1; k <= depth; ++k) {
        dk *= static_cast<std::uint64_t>(f.degree());
        IntPolynomial level = squarefree_part(preimage_polynomial(f, alpha0, k, limits));
        BackwardLevel bl{k, level, {}};
        for (const Prime &p : primes)
            bl.splits.push_back(level.degree() < 1 || splits_completely(level, p, static_cast<int>(dk)));
        out.levels.push_back(std::move(bl));
    }
    return out;
}

/// Exact decision for rational points. An orbit point of Weil height above
/// C/(d-1) certifies hhat > 0; otherwise the orbit stays in a finite set and
/// must revisit a point.
inline bool is_preperiodic_rational(const HeightConstant &hc, const ProjPoint &P)
{
    const RationalMap &f = hc.map;
    double bound = std::nextafter(hc.C / (f.degree() - 1), HUGE_VAL);
    std::set<ProjPoint> seen;
    ProjPoint q = P;
    for (;;) {
        if (!seen.insert(q).second)
            return true;
        double h = detail::log_integer(weil_height_argument(q), MPFR_RNDD);
        if (h > bound)
            return false;
        q = apply(f, q);
    }
}

inline bool is_preperiodic_rational(const RationalMap &f, const ProjPoint &P)
{
    return is_preperiodic_rational(height_bound_constant(f), P);
}

} // namespace padyn
