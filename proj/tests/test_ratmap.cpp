#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padyn/ratmap.hpp"

using namespace padyn;

namespace {
IntPolynomial P(std::initializer_list<long> c)
{
    std::vector<Integer> v;
    for (long x : c)
        v.emplace_back(x);
    return IntPolynomial(std::move(v));
}
RationalMap M(std::initializer_list<long> g, std::initializer_list<long> h)
{
    return RationalMap::normalize(P(g), P(h));
}
Rational Q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }
} // namespace

TEST(RatMap, NormalizeExamples)
{
    RationalMap f = M({0, -1, 1}, {6});
    EXPECT_EQ(f.numerator(), P({0, -1, 1}));
    EXPECT_EQ(f.denominator(), P({6}));
    EXPECT_EQ(f.degree(), 2);
    RationalMap sq = M({0, 0, 1}, {1});
    EXPECT_EQ(sq.numerator(), P({0, 0, 1}));
    EXPECT_EQ(sq.denominator(), P({1}));
    RationalMap c = M({2, 0, 2}, {2});
    EXPECT_EQ(c.numerator(), P({1, 0, 1}));
    EXPECT_EQ(c.denominator(), P({1}));
}

TEST(RatMap, NormalizeClearsDenominatorsAndSign)
{
    RatPolynomial g{Rational(0), Q(-1, 6), Q(1, 6)};
    RatPolynomial h{Rational(1)};
    EXPECT_EQ(RationalMap::normalize(g, h), M({0, -1, 1}, {6}));
    // Negative leading denominator coefficient flips both.
    EXPECT_EQ(M({0, 0, 1}, {-1}), M({0, 0, -1}, {1}));
}

TEST(RatMap, NormalizeRejectsDegenerate)
{
    EXPECT_THROW(M({-1, 0, 1}, {-1, 1}), DegenerateMap); // shared root 1
    EXPECT_THROW(RationalMap::normalize(IntPolynomial(), IntPolynomial()), DegenerateMap);
    EXPECT_THROW(M({3}, {5}), DegenerateMap);
}

TEST(RatMap, IterateExamples)
{
    RationalMap sq = M({0, 0, 1}, {1});
    EXPECT_EQ(iterate(sq, 2), M({0, 0, 0, 0, 1}, {1}));
    RationalMap f = M({0, -1, 1}, {6});
    EXPECT_EQ(iterate(f, 2), M({0, 6, -5, -2, 1}, {216}));
    EXPECT_EQ(iterate(f, 1), f);
    EXPECT_EQ(iterate(f, 0), RationalMap::identity());
}

TEST(RatMap, IterateDegreeLimit)
{
    RationalMap f = M({0, 0, 1}, {1});
    IterationLimits lim{64};
    EXPECT_NO_THROW(iterate(f, 6, lim));
    try {
        iterate(f, 7, lim);
        FAIL() << "expected ResourceLimit";
    } catch (const ResourceLimit &e) {
        EXPECT_EQ(e.attempted(), 128u);
    }
}

TEST(RatMap, IterateComposition)
{
    std::vector<RationalMap> maps{M({0, -1, 1}, {6}), M({1, 0, 1}, {1}), M({2, 0, 1}, {0, 3}),
                                  M({1, -1, 0, 1}, {1, 0, 2})};
    for (const auto &f : maps) {
        for (int m = 0; m <= 2; ++m)
            for (int n = 0; m + n <= 4 && n <= 2; ++n) {
                if (f.degree() == 3 && m + n > 3)
                    continue;
                RationalMap lhs = iterate(f, m + n);
                EXPECT_EQ(lhs, compose(iterate(f, m), iterate(f, n)));
                std::uint64_t expect = 1;
                for (int i = 0; i < m + n; ++i)
                    expect *= static_cast<std::uint64_t>(f.degree());
                EXPECT_EQ(static_cast<std::uint64_t>(lhs.degree()), expect);
            }
    }
}

TEST(RatMap, ApplyExamples)
{
    EXPECT_EQ(apply(M({0, -1, 1}, {6}), ProjPoint(7)), ProjPoint(7));
    EXPECT_TRUE(apply(M({0, 0, 1}, {1}), ProjPoint::infinity()).is_infinity());
    EXPECT_EQ(apply(M({0, -8, 0, 0, 1}, {4, 0, 0, 4}), ProjPoint(2)), ProjPoint(0));
    // Infinity by leading-coefficient comparison.
    EXPECT_EQ(apply(M({1}, {0, 0, 1}), ProjPoint::infinity()), ProjPoint(0));
    EXPECT_EQ(apply(M({0, 0, 3}, {1, 0, 2}), ProjPoint::infinity()), ProjPoint(Q(3, 2)));
    EXPECT_TRUE(apply(M({1}, {0, 1}), ProjPoint(0)).is_infinity());
}

TEST(RatMap, ApplyIterateAgreesWithRepeatedApply)
{
    std::vector<RationalMap> maps{M({0, -1, 1}, {6}), M({1, 0, 1}, {1}), M({0, -8, 0, 0, 1}, {4, 0, 0, 4}),
                                  M({2, 0, 1}, {0, 3})};
    for (const auto &f : maps)
        for (int n = 0; n <= 3; ++n) {
            RationalMap fn = iterate(f, n);
            for (int t = 0; t < 10; ++t) {
                ProjPoint P(oracle::random_rational(20));
                EXPECT_EQ(apply(fn, P), oracle::naive_iterate(f, P, n));
            }
            EXPECT_EQ(apply(fn, ProjPoint::infinity()), oracle::naive_iterate(f, ProjPoint::infinity(), n));
        }
}

TEST(RatMap, GoodReductionExamples)
{
    RationalMap f = M({0, -1, 1}, {6});
    EXPECT_FALSE(good_reduction(f, Prime(2)).good);
    EXPECT_TRUE(good_reduction(f, Prime(5)).good);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        EXPECT_TRUE(good_reduction(M({1, 0, 1}, {1}), Prime(p)).good);
        EXPECT_TRUE(good_reduction(M({0, 0, 1}, {1}), Prime(p)).good);
    }
    ReductionReport r = good_reduction(f, Prime(3));
    EXPECT_EQ(r.resultant_valuation, ExtendedInteger(2));
    EXPECT_EQ(r.good, r.resultant_valuation == ExtendedInteger(0));
}

TEST(RatMap, HomogeneousResultantSeesInfinity)
{
    // 3x^2 + 1 has Res(g, 1) = 1 but reduces to a constant mod 3.
    RationalMap f = M({1, 0, 3}, {1});
    EXPECT_FALSE(good_reduction(f, Prime(3)).good);
    EXPECT_TRUE(good_reduction(f, Prime(2)).good);
    // Against the Sylvester determinant at formal degree d for both forms.
    std::vector<RationalMap> maps{M({0, -1, 1}, {6}), M({1, 0, 3}, {1}), M({2, 0, 1}, {0, 3}),
                                  M({0, -8, 0, 0, 1}, {4, 0, 0, 4}), M({1}, {0, 0, 5}), M({1, 2}, {3, 0, 7})};
    for (const auto &g : maps) {
        int d = g.degree();
        Integer syl = oracle::sylvester_resultant(g.numerator(), d, g.denominator(), d);
        EXPECT_EQ(g.resultant(), syl) << g.to_string();
    }
}

TEST(RatMap, GoodReductionPreservedByIteration)
{
    std::vector<RationalMap> maps{M({0, -1, 1}, {6}), M({1, 0, 1}, {1}), M({2, 0, 1}, {0, 3})};
    for (const auto &f : maps)
        for (long p : {2L, 3L, 5L, 7L})
            if (good_reduction(f, Prime(p)).good)
                for (int n = 1; n <= 3; ++n)
                    EXPECT_TRUE(good_reduction(iterate(f, n), Prime(p)).good);
}

TEST(RatMap, ChordalExamples)
{
    EXPECT_EQ(chordal_distance(ProjPoint(0), ProjPoint::infinity(), Prime(3)), Rational(1));
    EXPECT_EQ(chordal_distance(ProjPoint(0), ProjPoint(2), Prime(2)), Q(1, 2));
    EXPECT_EQ(chordal_distance(ProjPoint(Q(1, 2)), ProjPoint::infinity(), Prime(2)), Q(1, 2));
}

TEST(RatMap, ChordalMetricProperties)
{
    for (int t = 0; t < 300; ++t) {
        Prime p(std::vector<long>{2, 3, 5, 7}[static_cast<std::size_t>(oracle::uniform(0, 3))]);
        auto pick = [] {
            return oracle::uniform(0, 9) == 0 ? ProjPoint::infinity() : ProjPoint(oracle::random_rational(50));
        };
        ProjPoint x = pick(), y = pick(), z = pick();
        Rational dxy = chordal_distance(x, y, p);
        EXPECT_EQ(dxy, chordal_distance(y, x, p));
        EXPECT_LE(dxy, Rational(1));
        EXPECT_GE(dxy, Rational(0));
        EXPECT_EQ(dxy.is_zero(), x == y);
        Rational dxz = chordal_distance(x, z, p), dyz = chordal_distance(y, z, p);
        EXPECT_LE(dxz, std::max(dxy, dyz));
    }
}

TEST(RatMap, ProjPointParsing)
{
    EXPECT_TRUE(ProjPoint::parse("inf").is_infinity());
    EXPECT_EQ(ProjPoint::parse("6/4"), ProjPoint(Q(3, 2)));
    EXPECT_THROW(ProjPoint::parse("1/0"), InvalidArgument);
}

TEST(RatMap, EnvironmentLimit)
{
    setenv("PADYN_MAX_DEGREE", "16", 1);
    EXPECT_EQ(IterationLimits::from_environment().max_degree, 16u);
    setenv("PADYN_MAX_DEGREE", "junk", 1);
    EXPECT_THROW(IterationLimits::from_environment(), InvalidArgument);
    unsetenv("PADYN_MAX_DEGREE");
    EXPECT_EQ(IterationLimits::from_environment().max_degree, 4096u);
}
