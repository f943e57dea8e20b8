#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padyn/poly.hpp"

using namespace padyn;

namespace {
IntPolynomial P(std::initializer_list<long> c)
{
    std::vector<Integer> v;
    for (long x : c)
        v.emplace_back(x);
    return IntPolynomial(std::move(v));
}
} // namespace

TEST(Poly, ResultantExamples)
{
    EXPECT_EQ(resultant(P({0, -1, 1}), P({6})), 36);
    EXPECT_EQ(resultant(P({1, 0, 1}), P({1})), 1);
    EXPECT_EQ(resultant(P({-2, 1}), P({-3, 1})), -1);
    EXPECT_THROW(resultant(IntPolynomial(), IntPolynomial()), InvalidArgument);
}

TEST(Poly, ResultantMatchesSylvesterDeterminant)
{
    for (int trial = 0; trial < 200; ++trial) {
        IntPolynomial a = oracle::random_poly(static_cast<int>(oracle::uniform(1, 6)), 9);
        IntPolynomial b = oracle::random_poly(static_cast<int>(oracle::uniform(1, 6)), 9);
        EXPECT_EQ(resultant(a, b), oracle::sylvester_resultant(a, b)) << to_string(a) << " | " << to_string(b);
    }
}

TEST(Poly, FormalResultantMatchesPaddedSylvester)
{
    for (int trial = 0; trial < 100; ++trial) {
        IntPolynomial a = oracle::random_poly(static_cast<int>(oracle::uniform(1, 4)), 9);
        IntPolynomial b = oracle::random_poly(static_cast<int>(oracle::uniform(0, 3)), 9);
        int n = b.degree() + static_cast<int>(oracle::uniform(0, 2));
        EXPECT_EQ(formal_resultant(a, b, n), oracle::sylvester_resultant(a, a.degree(), b, n));
    }
}

TEST(Poly, ResultantProperties)
{
    for (int trial = 0; trial < 100; ++trial) {
        IntPolynomial a = oracle::random_poly(static_cast<int>(oracle::uniform(1, 5)), 6);
        IntPolynomial b = oracle::random_poly(static_cast<int>(oracle::uniform(1, 5)), 6);
        IntPolynomial c = oracle::random_poly(static_cast<int>(oracle::uniform(1, 3)), 6);
        int sign = (a.degree() * b.degree()) % 2 ? -1 : 1;
        EXPECT_EQ(resultant(a, b), sign * resultant(b, a));
        EXPECT_EQ(resultant(a * c, b), resultant(a, b) * resultant(c, b));
        EXPECT_EQ(resultant(a, b) == 0, gcd(a, b).degree() >= 1);
        // Shared factor forces a zero resultant.
        EXPECT_EQ(resultant(a * c, b * c), 0);
    }
}

TEST(Poly, DiscriminantExamples)
{
    EXPECT_EQ(discriminant(P({-18, -1, 1})), 73);
    EXPECT_EQ(discriminant(P({1, 0, 1})), -4);
    EXPECT_EQ(discriminant(P({-5, 1})), 1);
    EXPECT_THROW(discriminant(P({3})), InvalidArgument);
}

TEST(Poly, DiscriminantOfQuadraticIsBSquaredMinus4AC)
{
    for (int trial = 0; trial < 100; ++trial) {
        long a = oracle::uniform(1, 30), b = oracle::uniform(-30, 30), c = oracle::uniform(-30, 30);
        EXPECT_EQ(discriminant(P({c, b, a})), b * b - 4 * a * c);
    }
}

TEST(Poly, SquarefreePartExamples)
{
    EXPECT_EQ(squarefree_part(P({0, 0, 1})), P({0, 1}));
    // (x-1)^2 (x+2) = x^3 - 3x + 2
    EXPECT_EQ(squarefree_part(P({2, -3, 0, 1})), P({-1, 1}) * P({2, 1}));
    EXPECT_EQ(squarefree_part(P({1, 0, 1})), P({1, 0, 1}));
    EXPECT_THROW(squarefree_part(IntPolynomial()), InvalidArgument);
}

TEST(Poly, SquarefreePartProperties)
{
    for (int trial = 0; trial < 60; ++trial) {
        IntPolynomial a = oracle::random_poly(static_cast<int>(oracle::uniform(1, 3)), 5);
        IntPolynomial b = oracle::random_poly(static_cast<int>(oracle::uniform(1, 2)), 5);
        IntPolynomial f = a * b * b * Integer(oracle::uniform(1, 4));
        IntPolynomial s = squarefree_part(f);
        EXPECT_GT(s.leading(), 0);
        EXPECT_EQ(content(s), 1);
        EXPECT_NO_THROW(exact_quotient(primitive_part(f), s));
        EXPECT_LE(gcd(s, s.derivative()).degree(), 0);
        // Same root set: s divides f and every factor of f divides s^k.
        EXPECT_NO_THROW(exact_quotient(power(s, static_cast<unsigned>(f.degree())), primitive_part(f)));
    }
}

TEST(Poly, SquarefreeDecompositionReassembles)
{
    for (int trial = 0; trial < 40; ++trial) {
        IntPolynomial a = oracle::random_poly(1, 5), b = oracle::random_poly(2, 5), c = oracle::random_poly(1, 5);
        IntPolynomial f = a * power(b, 2) * power(c, 3);
        auto parts = squarefree_decomposition(f);
        IntPolynomial prod{Integer(1)};
        for (std::size_t i = 0; i < parts.size(); ++i)
            prod = prod * power(parts[i], static_cast<unsigned>(i + 1));
        EXPECT_EQ(primitive_part(prod), primitive_part(f));
    }
}

TEST(Poly, ArithmeticAndRendering)
{
    IntPolynomial f = P({0, -1, 1});
    EXPECT_EQ(f.compose(P({0, 0, 1})), P({0, 0, -1, 0, 1}));
    EXPECT_EQ(to_string(P({1, -7, 1})), "x^2 - 7*x + 1");
    EXPECT_EQ(to_string(P({0, 0, -3})), "-3*x^2");
    EXPECT_EQ(IntPolynomial().degree(), -1);
    EXPECT_EQ(evaluate_homogeneous(P({1, 0, 1}), Integer(2), Integer(3), 2), 13);
    EXPECT_EQ(taylor_shift(P({0, 0, 1}), Integer(1), Integer(2)), P({1, 4, 4}));
}

TEST(Poly, GcdAndExactQuotient)
{
    IntPolynomial a = P({-1, 1}) * P({2, 1}), b = P({-1, 1}) * P({5, 0, 1});
    EXPECT_EQ(gcd(a, b), P({-1, 1}));
    EXPECT_EQ(exact_quotient(a, P({2, 1})), P({-1, 1}));
    EXPECT_THROW(exact_quotient(a, P({3, 1})), Error);
}
