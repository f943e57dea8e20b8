#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padyn/arith.hpp"

using namespace padyn;

TEST(Arith, ValuationExamples)
{
    EXPECT_EQ(vp(Rational(6), Prime(2)), ExtendedInteger(1));
    EXPECT_TRUE(vp(Rational(0), Prime(5)).is_infinite());
    EXPECT_EQ(vp(Rational(Integer(73), Integer(8)), Prime(2)), ExtendedInteger(-3));
}

TEST(Arith, PadicAbsExamples)
{
    EXPECT_EQ(padic_abs(Rational(6), Prime(2)), Rational(Integer(1), Integer(2)));
    EXPECT_EQ(padic_abs(Rational(Integer(13), Integer(6)), Prime(2)), Rational(2));
    EXPECT_EQ(padic_abs(Rational(0), Prime(7)), Rational(0));
}

TEST(Arith, NonPrimeRejected)
{
    EXPECT_THROW(Prime(1), InvalidArgument);
    EXPECT_THROW(Prime(4), InvalidArgument);
    EXPECT_THROW(Prime(-3), InvalidArgument);
    EXPECT_NO_THROW(Prime(97));
}

TEST(Arith, RationalNormalForm)
{
    Rational r(Integer(6), Integer(-4));
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(Rational(0).to_string(), "0/1");
    EXPECT_EQ(Rational(5).to_string(), "5/1");
    EXPECT_EQ(Rational::parse("-10/4"), Rational(Integer(-5), Integer(2)));
    EXPECT_THROW(Rational(Integer(1), Integer(0)), InvalidArgument);
    EXPECT_THROW(Rational::parse("1/0"), InvalidArgument);
    EXPECT_THROW(Rational::parse("abc"), InvalidArgument);
}

TEST(Arith, ExtendedIntegerOrder)
{
    ExtendedInteger inf = ExtendedInteger::infinity();
    EXPECT_GT(inf, ExtendedInteger(1000000));
    EXPECT_TRUE((inf + ExtendedInteger(3)).is_infinite());
    EXPECT_EQ(ExtendedInteger(2) + ExtendedInteger(3), ExtendedInteger(5));
}

TEST(Arith, ValuationProperties)
{
    std::vector<long> primes;
    for (long p = 2; p <= 100; ++p)
        if (is_probable_prime(Integer(p)))
            primes.push_back(p);
    for (int trial = 0; trial < 300; ++trial) {
        Rational x = oracle::random_rational(5000), y = oracle::random_rational(5000);
        if (x.is_zero() || y.is_zero())
            continue;
        Prime p(primes[static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(primes.size()) - 1))]);
        EXPECT_EQ(vp(x * y, p), vp(x, p) + vp(y, p));
        ExtendedInteger vx = vp(x, p), vy = vp(y, p), vs = vp(x + y, p);
        EXPECT_GE(vs, std::min(vx, vy));
        if (vx != vy)
            EXPECT_EQ(vs, std::min(vx, vy));
        EXPECT_EQ(padic_abs(x, p) * padic_abs(x.inverse(), p), Rational(1));
    }
}
