#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "padyn/padic.hpp"

using namespace padyn;

namespace {
IntPolynomial P(std::initializer_list<long> c)
{
    std::vector<Integer> v;
    for (long x : c)
        v.emplace_back(x);
    return IntPolynomial(std::move(v));
}
Rational Q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }
} // namespace

TEST(Padic, NewtonPolygonExamples)
{
    NewtonPolygon a = newton_polygon(P({2, -3, 1}), Prime(2));
    ASSERT_EQ(a.segments.size(), 2u);
    EXPECT_EQ(a.segments[0], (NewtonSegment{Q(-1), 1}));
    EXPECT_EQ(a.segments[1], (NewtonSegment{Q(0), 1}));
    EXPECT_EQ(a.zero_root_multiplicity, 0);
    NewtonPolygon b = newton_polygon(P({-2, 0, 1}), Prime(2));
    ASSERT_EQ(b.segments.size(), 1u);
    EXPECT_EQ(b.segments[0], (NewtonSegment{Q(-1, 2), 2}));
    NewtonPolygon c = newton_polygon(P({1, 1}), Prime(3));
    ASSERT_EQ(c.segments.size(), 1u);
    EXPECT_EQ(c.segments[0], (NewtonSegment{Q(0), 1}));
    NewtonPolygon z = newton_polygon(P({0, 0, 4, 1}), Prime(2));
    EXPECT_EQ(z.zero_root_multiplicity, 2);
    EXPECT_THROW(newton_polygon(IntPolynomial(), Prime(2)), InvalidArgument);
}

TEST(Padic, NewtonPolygonLengthsSumToDegree)
{
    for (int t = 0; t < 200; ++t) {
        IntPolynomial a = oracle::random_poly(static_cast<int>(oracle::uniform(1, 8)), 200);
        for (long p : {2L, 3L, 5L, 7L}) {
            NewtonPolygon np = newton_polygon(a, Prime(p));
            long total = np.zero_root_multiplicity;
            for (std::size_t i = 0; i < np.segments.size(); ++i) {
                total += np.segments[i].length;
                if (i > 0)
                    EXPECT_LT(np.segments[i - 1].slope, np.segments[i].slope);
            }
            EXPECT_EQ(total, a.degree());
        }
    }
}

TEST(Padic, CountExamples)
{
    EXPECT_EQ(count_qp_roots(P({0, -1, 1}), Prime(2)).roots_in_Zp, 2);
    EXPECT_EQ(count_qp_roots(P({1, 0, 1}), Prime(5)).total, 2);
    EXPECT_EQ(count_qp_roots(P({1, 0, 1}), Prime(3)).total, 0);
    EXPECT_EQ(count_qp_roots(P({-2, 0, 1}), Prime(2)).total, 0);
    EXPECT_THROW(count_qp_roots(P({1, 2, 1}), Prime(3)), PreconditionViolation);
}

TEST(Padic, RootsOutsideZp)
{
    // Roots 1/2 and 3 over Q_2: one inside, one outside.
    RootCount rc = count_qp_roots(P({-1, 2}) * P({-3, 1}), Prime(2));
    EXPECT_EQ(rc.roots_in_Zp, 1);
    EXPECT_EQ(rc.roots_outside_Zp, 1);
    EXPECT_EQ(rc.total, 2);
}

TEST(Padic, ConstructedFactorOracle)
{
    for (int t = 0; t < 150; ++t) {
        long p = std::vector<long>{2, 3, 5, 7}[static_cast<std::size_t>(oracle::uniform(0, 3))];
        int j = static_cast<int>(oracle::uniform(0, 4));
        IntPolynomial f{Integer(1)};
        std::set<Rational> roots;
        while (static_cast<int>(roots.size()) < j) {
            long u = oracle::uniform(1, 20), v = oracle::uniform(-20, 20);
            Rational r{Integer(v), Integer(u)};
            if (roots.insert(r).second)
                f = f * IntPolynomial{Integer(-r.num()), r.den()};
        }
        // One quadratic whose discriminant is a unit non-square in Q_p.
        for (;;) {
            long b = oracle::uniform(-20, 20), c = oracle::uniform(-20, 20);
            Integer disc = b * b - 4 * c;
            bool nonsquare = p == 2 ? mod(disc, Integer(8)) == 5 : oracle::legendre(disc, p) == -1;
            if (nonsquare) {
                f = f * P({c, b, 1});
                break;
            }
        }
        RootCount rc = count_qp_roots(f, Prime(p));
        EXPECT_EQ(rc.total, j) << to_string(f) << " p=" << p;
        EXPECT_LE(rc.total, f.degree());
        EXPECT_EQ(count_qp_roots(f * Integer(p == 2 ? 3 : 2), Prime(p)).total, rc.total);
    }
}

TEST(Padic, SplitsCompletelyExamples)
{
    EXPECT_TRUE(splits_completely(P({-18, -1, 1}), Prime(2)));
    EXPECT_TRUE(splits_completely(P({12, -1, 1}), Prime(3)));
    EXPECT_FALSE(splits_completely(P({1, 0, 1}), Prime(3)));
    EXPECT_TRUE(splits_completely(P({-1, 0, 0, 0, 1}), Prime(5)));
    EXPECT_FALSE(splits_completely(P({-1, 0, 0, 0, 1}), Prime(7)));
    // Repeated roots are handled through the squarefree part.
    EXPECT_TRUE(splits_completely(P({1, -2, 1}), Prime(7)));
    EXPECT_TRUE(splits_completely(P({0, 1}), Prime(3), 4));
    EXPECT_THROW(splits_completely(P({0, 0, 1}), Prime(3), 1), InvalidArgument);
}

TEST(Padic, TotallyPadicExamples)
{
    EXPECT_TRUE(is_totally_padic(P({-18, -1, 1}), Prime(2)));
    for (long p : {2L, 3L, 5L, 97L})
        EXPECT_TRUE(is_totally_padic(P({-5, 1}), Prime(p)));
    EXPECT_FALSE(is_totally_padic(P({1, 0, 1}), Prime(3)));
}

TEST(Padic, QuadraticSplittingMatchesDiscriminant)
{
    // Over odd p with p not dividing the discriminant, a quadratic splits iff
    // the discriminant is a square mod p.
    for (int t = 0; t < 200; ++t) {
        long p = std::vector<long>{3, 5, 7, 11, 13}[static_cast<std::size_t>(oracle::uniform(0, 4))];
        long a = oracle::uniform(1, 10), b = oracle::uniform(-30, 30), c = oracle::uniform(-30, 30);
        Integer disc = b * b - 4 * a * c;
        if (disc == 0 || a % p == 0 || mod(disc, Integer(p)) == 0)
            continue;
        EXPECT_EQ(splits_completely(P({c, b, a}), Prime(p)), oracle::legendre(disc, p) == 1);
    }
}

TEST(Padic, RationalRoots)
{
    auto r = rational_roots(P({6, -5, -7, 6}));
    EXPECT_EQ(r, (std::vector<Rational>{Q(1)}));
    r = rational_roots(P({-1, 2}) * P({3, 1}) * P({0, 1}) * P({-2, 3}) * P({1, 0, 1}));
    EXPECT_EQ(r, (std::vector<Rational>{Q(-3), Q(0), Q(1, 2), Q(2, 3)}));
    // Brute force over divisors for random products.
    for (int t = 0; t < 50; ++t) {
        std::set<Rational> expect;
        IntPolynomial f = P({1, 1, 1});
        for (int k = 0; k < 3; ++k) {
            Rational q(Integer(oracle::uniform(-30, 30)), Integer(oracle::uniform(1, 12)));
            expect.insert(q);
            f = f * IntPolynomial{Integer(-q.num()), q.den()};
        }
        auto got = rational_roots(f);
        EXPECT_EQ(std::set<Rational>(got.begin(), got.end()), expect);
    }
}

TEST(Padic, LargePrimeRejected)
{
    EXPECT_THROW(count_qp_roots(P({1, 0, 1}), Prime(1048583)), ResourceLimit);
}
