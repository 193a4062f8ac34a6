#include <gtest/gtest.h>

#include "support.hpp"

using namespace qhres;
using namespace qhres::testing;
using algebra::parse_rational;
using parser::parse_polynomial;

namespace {

const VariableSet xyz{"x", "y", "z"};
const VariableSet z3{"z0", "z1", "z2"};
const VariableSet u12{"u1", "u2"};

Polynomial P(const std::string& text, const VariableSet& v) { return parse_polynomial(text, v); }

} // namespace

TEST(Rational, LowestTermsAndSign) {
    Rational q = Rational(6) / Rational(-4);
    EXPECT_EQ(algebra::num(q), -3);
    EXPECT_EQ(algebra::den(q), 2);
    EXPECT_EQ(algebra::to_string(q), "-3/2");
    EXPECT_EQ(algebra::to_string(Rational(8, 4)), "2");
}

TEST(Rational, ParseAcceptsFractionsOnly) {
    EXPECT_EQ(parse_rational("1/3"), Rational(1, 3));
    EXPECT_EQ(parse_rational(" -7 "), Rational(-7));
    EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
    EXPECT_THROW(parse_rational("0.5"), ArgumentError);
    EXPECT_THROW(parse_rational("1/0"), ArgumentError);
    EXPECT_THROW(parse_rational("1/-3"), ArgumentError);
    EXPECT_THROW(parse_rational(""), ArgumentError);
    EXPECT_THROW(parse_rational("x"), ArgumentError);
}

TEST(Rational, BigIntegersStayExact) {
    Rational big = parse_rational("123456789012345678901234567890/7");
    EXPECT_EQ(algebra::to_string(big * 7), "123456789012345678901234567890");
}

TEST(Polynomial, ZeroHasNoTerms) {
    Polynomial p = P("x - x", xyz);
    EXPECT_TRUE(p.is_zero());
    EXPECT_EQ(p.term_count(), 0u);
    EXPECT_EQ(algebra::to_string(p), "0");
}

TEST(Polynomial, CanonicalRendering) {
    EXPECT_EQ(algebra::to_string(P("y^4 + x^4 + 2*x^2*z^2", xyz)), "x^4+2*x^2*z^2+y^4");
    EXPECT_EQ(algebra::to_string(P("(1/3)*x - (1/3)*y", xyz)), "(1/3)*x-(1/3)*y");
    EXPECT_EQ(algebra::to_string(P("-1", xyz)), "-1");
}

TEST(PartialDerivative, Example3Equation) {
    Polynomial s = P("z0^3+z1^3+z2^4", z3);
    EXPECT_EQ(algebra::partial_derivative(s, 0), P("3*z0^2", z3));
}

TEST(PartialDerivative, ConstantVanishes) {
    EXPECT_TRUE(algebra::partial_derivative(Polynomial::constant(z3, Rational(5, 2)), 0).is_zero());
}

TEST(PartialDerivative, Example6EquationInZ) {
    // oracle: (x+z^2)^2 + y^2 - z^4 = x^2 + 2xz^2 + y^2, whose z-derivative is 4xz
    Polynomial s = P("(x+z^2)^2+y^2-z^4", xyz);
    EXPECT_EQ(algebra::partial_derivative(s, 2), P("4*x*z", xyz));
}

TEST(PartialDerivative, IndexOutOfRange) {
    EXPECT_THROW(algebra::partial_derivative(P("x", xyz), 3), ArgumentError);
}

TEST(SubstituteMonomialMap, Example6Cover) {
    Polynomial s = P("(x+z^2)^2+y^2-z^4", xyz);
    std::vector<algebra::Term> images{{1, Monomial{2, 0, 0}}, {1, Monomial{0, 2, 0}}, {1, Monomial{0, 0, 1}}};
    EXPECT_EQ(algebra::to_string(algebra::substitute_monomial_map(s, images)), "x^4+2*x^2*z^2+y^4");
}

TEST(SubstituteMonomialMap, IdentityImages) {
    Rng rng(11);
    std::vector<algebra::Term> id{{1, Monomial{1, 0, 0}}, {1, Monomial{0, 1, 0}}, {1, Monomial{0, 0, 1}}};
    for (int i = 0; i < 20; ++i) {
        Polynomial p = random_polynomial(rng, xyz, 4);
        EXPECT_EQ(algebra::substitute_monomial_map(p, id), p);
    }
}

TEST(SubstituteMonomialMap, FermatCoverIsIdentity) {
    // l = 3 and l*a_i = 1, so the cover fixes s; check by evaluating both at points
    Polynomial s = P("z0^3+z1^3+z2^3", z3);
    auto w = WeightSystem({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    Polynomial pulled = algebra::substitute_monomial_map(s, weights::cover_terms(w));
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            std::vector<Rational> pt{Rational(a), Rational(b, 2), Rational(1, 3)};
            EXPECT_EQ(pulled.evaluate(pt), s.evaluate(pt));
        }
}

TEST(SubstituteMonomialMap, CountMismatch) {
    std::vector<algebra::Term> two{{1, Monomial{1, 0, 0}}, {1, Monomial{0, 1, 0}}};
    EXPECT_THROW(algebra::substitute_monomial_map(P("x", xyz), two), ArgumentError);
}

TEST(Divides, ConstructedProduct) {
    Polynomial st = P("1+u1^3+u2^3", u12);
    auto q = algebra::divides(st, st * P("u1+u2", u12));
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, P("u1+u2", u12));
}

TEST(Divides, DegreeObstruction) {
    EXPECT_FALSE(algebra::divides(P("1+u1^3+u2^3", u12), P("1", u12)));
}

TEST(Divides, NonMultipleHasRemainder) {
    Polynomial st = P("1+u1^3+u2^3", u12);
    Polynomial other = P("u1*u2+1", u12);
    Polynomial p = (st - Polynomial::constant(u12, 2)) * other;
    EXPECT_FALSE(algebra::divides(st, p));
    // oracle: resubstitute q*d + r
    auto dr = algebra::divide_with_remainder(p, st);
    EXPECT_FALSE(dr.remainder.is_zero());
    EXPECT_EQ(dr.quotient * st + dr.remainder, p);
}

TEST(Divides, ZeroDivisor) {
    EXPECT_THROW(algebra::divides(Polynomial(u12), P("u1", u12)), ArgumentError);
}

TEST(Polynomial, MismatchedVariablesRejected) {
    EXPECT_THROW(P("x", xyz) + P("u1", u12), ArgumentError);
}

TEST(RationalFunction, ReducesCommonFactors) {
    Polynomial f = P("x+y", xyz);
    // monomial content first, then the division probe removes f
    RationalFunction r(f * P("x*z", xyz), f * P("3*x", xyz));
    EXPECT_EQ(r.numerator(), P("(1/3)*z", xyz));
    EXPECT_EQ(r.denominator(), P("1", xyz));
    RationalFunction q(f * P("z", xyz), f * P("y+z", xyz));
    EXPECT_EQ(q, RationalFunction(P("z", xyz), P("y+z", xyz)));
}

TEST(RationalFunction, EqualityByCrossMultiplication) {
    RationalFunction a(P("x^2-y^2", xyz), P("x*y+y^2+x+y", xyz));
    RationalFunction b(P("x-y", xyz), P("y+1", xyz));
    EXPECT_EQ(a, b);
}

TEST(RationalFunction, ZeroDenominatorRejected) {
    EXPECT_THROW(RationalFunction(P("x", xyz), Polynomial(xyz)), ArgumentError);
}

TEST(RationalFunction, QuotientRule) {
    RationalFunction f(P("1", xyz), P("3*x^2", xyz));
    EXPECT_EQ(algebra::partial_derivative(f, 0), RationalFunction(P("-2", xyz), P("3*x^3", xyz)));
}

TEST(RationalFunction, Rendering) {
    EXPECT_EQ(algebra::to_string(RationalFunction(P("1", xyz), P("3*x^2", xyz))), "1/(3*x^2)");
    EXPECT_EQ(algebra::to_string(RationalFunction(P("x+y", xyz), P("z", xyz))), "(x+y)/z");
}

// ring laws on random instances with degree <= 4 over <= 3 variables
TEST(AlgebraProperties, RingLaws) {
    Rng rng(20240101);
    for (int i = 0; i < 200; ++i) {
        auto v = vars(static_cast<std::size_t>(uniform(rng, 1, 3)));
        Polynomial a = random_polynomial(rng, v, 4), b = random_polynomial(rng, v, 4), c = random_polynomial(rng, v, 4);
        Polynomial zero(v), one = Polynomial::constant(v, 1);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a + zero, a);
        ASSERT_EQ(a * one, a);
        ASSERT_TRUE((a - a).is_zero());
    }
}

TEST(AlgebraProperties, DividesRecoversQuotient) {
    Rng rng(77);
    for (int i = 0; i < 150; ++i) {
        auto v = vars(static_cast<std::size_t>(uniform(rng, 1, 3)));
        Polynomial d = random_nonzero_polynomial(rng, v, 3), q = random_polynomial(rng, v, 3);
        auto got = algebra::divides(d, d * q);
        ASSERT_TRUE(got) << algebra::to_string(d) << " | " << algebra::to_string(d * q);
        ASSERT_EQ(*got, q);
    }
}

TEST(AlgebraProperties, DivisionIdentity) {
    Rng rng(78);
    for (int i = 0; i < 150; ++i) {
        auto v = vars(static_cast<std::size_t>(uniform(rng, 1, 3)));
        Polynomial d = random_nonzero_polynomial(rng, v, 3), p = random_polynomial(rng, v, 5);
        auto dr = algebra::divide_with_remainder(p, d);
        ASSERT_EQ(dr.quotient * d + dr.remainder, p);
        // no remainder term is divisible by the leading monomial of d
        for (const auto& [m, c] : dr.remainder.terms()) ASSERT_FALSE(d.leading_term().first.divides(m));
    }
}

TEST(AlgebraProperties, SubstitutionIsRingHomomorphism) {
    Rng rng(79);
    for (int i = 0; i < 150; ++i) {
        auto v = vars(3);
        std::vector<algebra::Term> images;
        for (int k = 0; k < 3; ++k) images.push_back({nonzero_rational(rng), random_monomial(rng, 3, 3)});
        Polynomial a = random_polynomial(rng, v, 3), b = random_polynomial(rng, v, 3);
        auto sub = [&](const Polynomial& p) { return algebra::substitute_monomial_map(p, images); };
        ASSERT_EQ(sub(a + b), sub(a) + sub(b));
        ASSERT_EQ(sub(a * b), sub(a) * sub(b));
        // general substitution agrees with the monomial map
        std::vector<Polynomial> poly_images;
        for (const auto& t : images) poly_images.push_back(Polynomial::monomial(v, t.monomial, t.coefficient));
        ASSERT_EQ(algebra::substitute(a, poly_images, v), sub(a));
    }
}

TEST(AlgebraProperties, LeibnizRule) {
    Rng rng(80);
    for (int i = 0; i < 150; ++i) {
        auto v = vars(static_cast<std::size_t>(uniform(rng, 1, 3)));
        Polynomial a = random_polynomial(rng, v, 4), b = random_polynomial(rng, v, 4);
        std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1));
        ASSERT_EQ(algebra::partial_derivative(a * b, k),
                  algebra::partial_derivative(a, k) * b + a * algebra::partial_derivative(b, k));
    }
}

TEST(AlgebraProperties, RationalFunctionFieldLaws) {
    Rng rng(81);
    for (int i = 0; i < 120; ++i) {
        auto v = vars(2);
        RationalFunction a(random_polynomial(rng, v, 3), random_nonzero_polynomial(rng, v, 2));
        RationalFunction b(random_polynomial(rng, v, 3), random_nonzero_polynomial(rng, v, 2));
        RationalFunction c(random_polynomial(rng, v, 2), random_nonzero_polynomial(rng, v, 2));
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_TRUE((a - a).is_zero());
        if (!b.is_zero()) {
            ASSERT_EQ((a / b) * b, a);
        }
        std::size_t k = static_cast<std::size_t>(uniform(rng, 0, 1));
        ASSERT_EQ(algebra::partial_derivative(a * b, k),
                  algebra::partial_derivative(a, k) * b + a * algebra::partial_derivative(b, k));
    }
}
