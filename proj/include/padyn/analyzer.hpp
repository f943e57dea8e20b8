#pragma once

// Bogomolov-type certificates at a prime, the duplication Lattes map, the
// height-gap search over totally p-adic candidates, and backward-orbit height
// profiles.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "padyn/arith.hpp"
#include "padyn/dynamics.hpp"
#include "padyn/error.hpp"
#include "padyn/heights.hpp"
#include "padyn/padic.hpp"
#include "padyn/poly.hpp"
#include "padyn/ratmap.hpp"

namespace padyn {

enum class Verdict { BogomolovCertified_GoodReduction, BogomolovCertified_PeriodicWitness, Inconclusive };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::BogomolovCertified_GoodReduction:
        return "BogomolovCertified_GoodReduction";
    case Verdict::BogomolovCertified_PeriodicWitness:
        return "BogomolovCertified_PeriodicWitness";
    case Verdict::Inconclusive:
        return "Inconclusive";
    }
    return "unknown";
}

struct PeriodicWitness
{
    int period;
    IntPolynomial polynomial;
};

struct ConditionReport
{
    RationalMap map;
    Prime prime;
    int max_period;
    bool good_reduction;
    /// First Phi_n (n <= max_period) that does not split over Q_p.
    std::optional<PeriodicWitness> nonsplit_witness;
    std::vector<MultiplierReport> multiplier_census;
    Verdict verdict;
};

/// Sound, incomplete certificate. Good reduction certifies directly; failing
/// that, a periodic point outside Q_p does. Both routes are always evaluated
/// so the report carries the witness and census even when reduction is good.
inline ConditionReport check_theorem_conditions(const RationalMap &f, const Prime &p, int max_period,
                                                const IterationLimits &limits = IterationLimits::from_environment())
{
    if (max_period < 1)
        throw InvalidArgument("max_period must be >= 1");
    ConditionReport r{f, p, max_period, good_reduction(f, p).good, std::nullopt, {}, Verdict::Inconclusive};
    for (int n = 1; n <= max_period; ++n) {
        IntPolynomial phi;
        try {
            phi = exact_period_points(f, n, limits);
        } catch (const ResourceLimit &e) {
            throw ResourceLimit(std::string(e.what()) + " (last completed period " + std::to_string(n - 1) + ")",
                                e.attempted());
        }
        if (phi.degree() < 1)
            continue;
        if (!r.nonsplit_witness && !splits_completely(phi, p))
            r.nonsplit_witness = PeriodicWitness{n, phi};
        for (const Rational &alpha : rational_roots(phi)) {
            try {
                r.multiplier_census.push_back(multiplier(f, alpha, n, p));
            } catch (const OrbitThroughInfinity &) {
                // cycles through infinity have no finite multiplier formula
            }
        }
    }
    if (r.good_reduction)
        r.verdict = Verdict::BogomolovCertified_GoodReduction;
    else if (r.nonsplit_witness)
        r.verdict = Verdict::BogomolovCertified_PeriodicWitness;
    return r;
}

/// x-coordinate of doubling on y^2 = x^3 + a x + b.
inline RationalMap lattes_map(const Rational &a, const Rational &b)
{
    if ((Rational(4) * a * a * a + Rational(27) * b * b).is_zero())
        throw SingularCurve("4a^3 + 27b^2 = 0 for a = " + a.to_string() + ", b = " + b.to_string());
    RatPolynomial g{a * a, Rational(-8) * b, Rational(-2) * a, Rational(0), Rational(1)};
    RatPolynomial h{Rational(4) * b, Rational(4) * a, Rational(0), Rational(4)};
    return RationalMap::normalize(g, h);
}

// ---------------------------------------------------------------------------
// Gap search

struct GapCandidate
{
    IntPolynomial minpoly;
    bool splits = false;
    bool preperiodic = false;
    std::optional<HeightEstimate> height; // only for candidates that split
    std::string diagnostic;               // set when evaluation failed
};

struct GapReport
{
    RationalMap map;
    Prime prime;
    int degree_bound;
    long coefficient_bound;
    double eps;
    long candidates_examined = 0;
    std::vector<IntPolynomial> preperiodic_found;
    std::optional<std::pair<HeightEstimate, IntPolynomial>> min_positive_height;
    std::vector<GapCandidate> candidates; // enumeration order
};

namespace detail {

/// Roots of a binary form: the finite ones as a polynomial, plus a count at
/// infinity.
struct RootDivisor
{
    IntPolynomial finite;
    int at_infinity = 0;

    friend bool operator==(const RootDivisor &, const RootDivisor &) = default;
};

/// Image divisor under f, multiplicities kept.
inline RootDivisor push_divisor(const RationalMap &f, const RootDivisor &D)
{
    RootDivisor out{IntPolynomial{Integer(1)}, 0};
    if (D.finite.degree() >= 1) {
        IntPolynomial r = pushforward_raw(f, D.finite);
        out.at_infinity += D.finite.degree() - r.degree();
        if (r.degree() >= 1)
            out.finite = primitive_part(r);
    }
    if (D.at_infinity > 0) {
        ProjPoint img = apply(f, ProjPoint::infinity());
        if (img.is_infinity()) {
            out.at_infinity += D.at_infinity;
        } else {
            const Rational &v = img.value();
            IntPolynomial lin{Integer(-v.num()), v.den()};
            out.finite = out.finite * power(lin, static_cast<unsigned>(D.at_infinity));
        }
    }
    return out;
}

inline RootDivisor reduced(const RootDivisor &D)
{
    return {D.finite.degree() >= 1 ? squarefree_part(D.finite) : IntPolynomial{Integer(1)},
            D.at_infinity > 0 ? 1 : 0};
}

inline std::size_t max_coefficient_bits(const IntPolynomial &p)
{
    std::size_t bits = 0;
    for (const auto &c : p.coefficients())
        bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    return bits;
}

/// True when the root set of m has a finite forward orbit, found by the
/// sequence of reduced root divisors repeating.
inline bool root_set_orbit_is_finite(const RationalMap &f, const IntPolynomial &m, int max_steps = 64)
{
    std::vector<RootDivisor> seen{reduced({m, 0})};
    for (int k = 0; k < max_steps; ++k) {
        RootDivisor next = reduced(push_divisor(f, seen.back()));
        if (std::find(seen.begin(), seen.end(), next) != seen.end())
            return true;
        if (max_coefficient_bits(next.finite) > 4096)
            return false;
        seen.push_back(std::move(next));
    }
    return false;
}

inline GapCandidate evaluate_candidate(const HeightConstant &hc, const Prime &p, const IntPolynomial &m, double eps,
                                       long N)
{
    GapCandidate c;
    c.minpoly = m;
    try {
        c.splits = splits_completely(m, p);
        if (!c.splits)
            return c;
        const RationalMap &f = hc.map;
        RootDivisor D{m, 0};
        for (long k = 0; k < N; ++k)
            D = push_divisor(f, D);
        int proj = m.degree();
        double scale = std::pow(static_cast<double>(f.degree()), static_cast<double>(N));
        double tail = tail_bound(hc.C, f.degree(), N);
        HeightEstimate est{0.0, tail, HeightMethod::mahler_numeric};
        if (D.finite.degree() >= 1) {
            HeightEstimate mh = mahler_height(D.finite, proj);
            est = {mh.value / scale, tail + mh.error / scale, HeightMethod::mahler_numeric};
        }
        c.height = est;
        c.preperiodic = est.value <= eps && root_set_orbit_is_finite(f, m);
    } catch (const Error &e) {
        c.diagnostic = e.what();
    }
    return c;
}

/// Primitive squarefree candidates in search order: degree ascending, then
/// (a_d, ..., a_0) lexicographically with 1 <= a_d <= max(1, B) and
/// |a_i| <= B.
inline std::vector<IntPolynomial> gap_candidates(int degree_bound, long B)
{
    std::vector<IntPolynomial> out;
    long lead_max = std::max(1L, B);
    for (int deg = 1; deg <= degree_bound; ++deg) {
        // digits[0] = a_d, digits[deg] = a_0
        std::vector<long> digits(static_cast<std::size_t>(deg) + 1, -B);
        digits[0] = 1;
        for (;;) {
            std::vector<Integer> coeffs(static_cast<std::size_t>(deg) + 1);
            for (int i = 0; i <= deg; ++i)
                coeffs[static_cast<std::size_t>(deg - i)] = digits[static_cast<std::size_t>(i)];
            IntPolynomial m(std::move(coeffs));
            if (content(m) == 1 && is_squarefree(m))
                out.push_back(std::move(m));
            int pos = deg;
            while (pos >= 0) {
                long hi = pos == 0 ? lead_max : B;
                if (digits[static_cast<std::size_t>(pos)] < hi) {
                    ++digits[static_cast<std::size_t>(pos)];
                    break;
                }
                digits[static_cast<std::size_t>(pos)] = pos == 0 ? 1 : -B;
                --pos;
            }
            if (pos < 0)
                break;
        }
    }
    return out;
}

} // namespace detail

/// Enumerates primitive squarefree m with deg m <= degree_bound and
/// coefficients bounded by coeff_bound, keeps those splitting over Q_p, and
/// estimates hhat_f on their roots. Candidates are evaluated in parallel;
/// the report is in enumeration order and independent of scheduling.
inline GapReport narkiewicz_gap_search(const RationalMap &f, const Prime &p, int degree_bound, long coeff_bound,
                                       double eps, unsigned threads = 0)
{
    if (degree_bound < 1)
        throw InvalidArgument("degree bound must be >= 1");
    if (coeff_bound < 0)
        throw InvalidArgument("coefficient bound must be >= 0");
    if (!(eps > 0) || !std::isfinite(eps))
        throw InvalidArgument("eps must be a positive finite number");
    detail::check_residue_prime(p);
    HeightConstant hc = height_bound_constant(f);
    long N = detail::truncation_depth(hc.C, f.degree(), eps);
    std::vector<IntPolynomial> cands = detail::gap_candidates(degree_bound, coeff_bound);

    GapReport report{f, p, degree_bound, coeff_bound, eps, 0, {}, std::nullopt, {}};
    report.candidates.resize(cands.size());
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, cands.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cands.size(); i = next++)
            report.candidates[i] = detail::evaluate_candidate(hc, p, cands[i], eps, N);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();

    report.candidates_examined = static_cast<long>(cands.size());
    for (const GapCandidate &c : report.candidates) {
        if (!c.splits || !c.height)
            continue;
        if (c.preperiodic) {
            report.preperiodic_found.push_back(c.minpoly);
            continue;
        }
        const HeightEstimate &h = *c.height;
        if (h.value - h.error > 0 && (!report.min_positive_height || h.value < report.min_positive_height->first.value))
            report.min_positive_height = std::make_pair(h, c.minpoly);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Backward-orbit height profile

struct ProfileRow
{
    int level;
    IntPolynomial polynomial; // squarefree finite part of f^(-k)(alpha0)
    int projective_degree;    // adds one when infinity is a preimage
    HeightEstimate measured;  // average Weil height over the preimages
    double expected;          // hhat_f(alpha0) / d^k
};

struct HeightProfile
{
    Rational base_point;
    bool base_preperiodic;
    HeightEstimate base_height;
    double bound; // C/(d-1): each measured value is within this of expected
    std::vector<ProfileRow> rows;
};

inline HeightProfile backward_orbit_height_profile(const RationalMap &f, const Rational &alpha0, int depth,
                                                   const IterationLimits &limits = IterationLimits::from_environment())
{
    if (depth < 0)
        throw InvalidArgument("depth must be >= 0");
    HeightConstant hc = height_bound_constant(f);
    HeightProfile out{alpha0, is_preperiodic_rational(hc, ProjPoint(alpha0)), {}, hc.C / (f.degree() - 1), {}};
    out.base_height = out.base_preperiodic ? HeightEstimate{0.0, 0.0, HeightMethod::exact}
                                           : canonical_height(hc, ProjPoint(alpha0), 1e-10);
    ProjPoint inf_image = ProjPoint::infinity();
    double scale = 1.0;
    for (int k = 0; k <= depth; ++k) {
        IntPolynomial level = squarefree_part(preimage_polynomial(f, alpha0, k, limits));
        int D = std::max(level.degree(), 0) + (inf_image == ProjPoint(alpha0) ? 1 : 0);
        HeightEstimate measured{0.0, 0.0, HeightMethod::mahler_numeric};
        if (level.degree() >= 1)
            measured = mahler_height(level, D);
        out.rows.push_back({k, level, D, measured, out.base_height.value / scale});
        scale *= f.degree();
        inf_image = apply(f, inf_image);
    }
    return out;
}

} // namespace padyn
