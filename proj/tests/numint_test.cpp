#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "support.hpp"

using namespace qhres;
using namespace qhres::testing;
using namespace qhres::numint;
using parser::parse_form;
using parser::parse_polynomial;

namespace {

const VariableSet u12{"u1", "u2"};
const VariableSet z3{"z0", "z1", "z2"};

Polynomial P(const std::string& text) { return parse_polynomial(text, u12); }
DifferentialForm F(const std::string& text) { return parse_form(text, u12); }

const weights::WeightSystem fermat(std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});

// B(1/3, 1/3) / 3, the integral of du2 / (3 u1^2) over u2 = -cbrt(1 + u1^3)
double fermat_oracle() {
    return std::tgamma(1.0 / 3) * std::tgamma(1.0 / 3) / std::tgamma(2.0 / 3) / 3.0;
}

ResidueIntegral fermat_integral(int steps) {
    return integrate_second_residue(parse_polynomial("1", z3), parse_polynomial("z0^3+z1^3+z2^3", z3), fermat,
                                    steps);
}

} // namespace

TEST(Trace, FermatBranchIsTheRealCubeRootGraph) {
    auto f = P("1+u1^3+u2^3");
    auto t = trace_real_curve(f, {0, -1}, 0.05, 2000);
    EXPECT_FALSE(t.closed);
    EXPECT_TRUE(t.escapes_start);
    EXPECT_TRUE(t.escapes_end);
    ASSERT_GT(t.samples.size(), 100u);
    PlanePolynomial pf(f);
    for (auto p : t.samples) {
        ASSERT_NEAR(p.u2, -std::cbrt(1 + p.u1 * p.u1 * p.u1), 1e-9);
        ASSERT_LT(std::abs(pf(p)), 1e-9);
    }
}

TEST(Trace, CircleClosesCounterclockwise) {
    auto t = trace_real_curve(P("u1^2+u2^2-1"), {1, 0}, 0.05, 1000);
    EXPECT_TRUE(t.closed);
    EXPECT_FALSE(t.escapes_start || t.escapes_end);
    ASSERT_GT(t.samples.size(), 2u);
    EXPECT_GT(t.samples[1].u2, 0);
    EXPECT_NEAR(t.samples.size() * 0.05, 2 * std::numbers::pi, 0.1);
}

TEST(Trace, VerticalLine) {
    auto t = trace_real_curve(P("u1"), {0.01, 0.3}, 0.1, 1000);
    EXPECT_TRUE(t.escapes_start && t.escapes_end);
    for (auto p : t.samples) ASSERT_EQ(p.u1, 0.0);
}

TEST(Trace, OneDirection) {
    TraceOptions opt;
    opt.direction = 1;
    auto t = trace_real_curve(P("-u2"), {0, 0}, 0.1, 10, opt);
    ASSERT_EQ(t.samples.size(), 11u);
    EXPECT_NEAR(t.samples.back().u1, 1.0, 1e-12);
    EXPECT_FALSE(t.escapes_end);
}

TEST(Trace, Errors) {
    EXPECT_THROW(trace_real_curve(P("u1^2+u2^2-1"), {5, 5}, 0.05, 100), NumericError);
    EXPECT_THROW(trace_real_curve(P("u1^2-u2^2"), {0, 0}, 0.05, 100), NumericError);
    EXPECT_THROW(trace_real_curve(P("u1"), {0, 0}, -1, 100), ArgumentError);
    EXPECT_THROW(trace_real_curve(parse_polynomial("z0", z3), {0, 0}, 0.1, 100), ArgumentError);
}

TEST(Trace, CsvExport) {
    auto t = trace_real_curve(P("u1^2+u2^2-1"), {1, 0}, 0.1, 1000);
    std::ostringstream os;
    write_trace_csv(t, os);
    std::istringstream is(os.str());
    std::string line;
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        auto comma = line.find(',');
        ASSERT_NE(comma, std::string::npos);
        double a = std::stod(line.substr(0, comma)), b = std::stod(line.substr(comma + 1));
        ASSERT_EQ(a, t.samples[rows].u1);
        ASSERT_EQ(b, t.samples[rows].u2);
        ++rows;
    }
    EXPECT_EQ(rows, t.samples.size());
}

TEST(Integrate, ExactFormOnClosedCurve) {
    auto t = trace_real_curve(P("u1^2+u2^2-1"), {1, 0}, 0.05, 1000);
    auto r = integrate_1form(F("u2*du1 + u1*du2"), t);
    EXPECT_LT(std::abs(r.value), 1e-8);
}

TEST(Integrate, EnclosedArea) {
    auto t = trace_real_curve(P("u1^2+u2^2-1"), {1, 0}, 0.05, 1000);
    auto r = integrate_1form(F("u1*du2"), t);
    EXPECT_NEAR(r.value, std::numbers::pi, 1e-10);
    EXPECT_LT(r.error, 1e-8);
}

TEST(Integrate, Segment) {
    TraceOptions opt;
    opt.direction = 1;
    auto t = trace_real_curve(P("-u2"), {0, 0}, 0.1, 10, opt);
    EXPECT_NEAR(integrate_1form(F("du1"), t).value, 1.0, 1e-12);
}

TEST(Integrate, ConvergentTail) {
    // du2 along u2 = 1/u1 from (1, 1) out to u1 = +infinity is 0 - 1
    TraceOptions opt;
    opt.direction = -1;
    auto t = trace_real_curve(P("u1*u2-1"), {1, 1}, 0.05, 2000, opt);
    ASSERT_TRUE(t.escapes_end);
    ASSERT_GT(t.samples.back().u1, 1);
    auto r = integrate_1form(F("du2"), t);
    EXPECT_NEAR(r.value, -1.0, 1e-9);
}

TEST(Integrate, DivergentTail) {
    auto t = trace_real_curve(P("-u2"), {0, 0}, 0.1, 1000);
    EXPECT_THROW(integrate_1form(F("du1"), t), NumericError);
}

TEST(Integrate, RejectsNonOneForms) {
    auto t = trace_real_curve(P("-u2"), {0, 0}, 0.1, 10);
    EXPECT_THROW(integrate_1form(F("du1 /\\ du2"), t), ArgumentError);
}

TEST(FindSeed, LandsOnCurve) {
    auto s = find_seed(P("1+u1^3+u2^3"));
    ASSERT_TRUE(s);
    EXPECT_LT(std::abs(PlanePolynomial(P("1+u1^3+u2^3"))(*s)), 1e-9);
    EXPECT_FALSE(find_seed(P("u1^2+u2^2+1")));
}

TEST(ResidueIntegral, FermatMatchesClosedForm) {
    auto r = fermat_integral(400);
    EXPECT_GT(r.integral.value, 0);
    EXPECT_NEAR(r.integral.value, fermat_oracle(), std::max(r.integral.error, 1e-12));
    EXPECT_LT(r.integral.error, 1e-9);
}

TEST(ResidueIntegral, StableUnderStepHalving) {
    auto a = fermat_integral(400), b = fermat_integral(800);
    EXPECT_LE(std::abs(a.integral.value - b.integral.value), a.integral.error + b.integral.error);
    EXPECT_LE(std::abs(a.integral.value - b.integral.value) / std::abs(b.integral.value), 1e-4);
}

TEST(ResidueIntegral, Preconditions) {
    EXPECT_THROW(integrate_second_residue(parse_polynomial("z0", z3), parse_polynomial("z0^3+z1^3+z2^3", z3),
                                          fermat, 400),
                 DomainError);
    EXPECT_THROW(step_for(0), ArgumentError);
}

// On ellipses b^2 u1^2 + a^2 u2^2 = a^2 b^2: u1 du2 encloses pi a b, and any
// exact form dp integrates to zero.
TEST(NumintProperties, EllipseAreaAndExactForms) {
    Rng rng(501);
    for (int i = 0; i < 100; ++i) {
        Rational a(uniform(rng, 2, 12), 4), b(uniform(rng, 2, 12), 4);
        Polynomial f = Polynomial::variable(u12, 0).pow(2) * (b * b) + Polynomial::variable(u12, 1).pow(2) * (a * a) -
                       Polynomial::constant(u12, a * a * b * b);
        double ad = algebra::to_double(a), bd = algebra::to_double(b);
        auto t = trace_real_curve(f, {ad, 0}, 0.02 * std::min(ad, bd), 4000);
        ASSERT_TRUE(t.closed);
        auto area = integrate_1form(F("u1*du2"), t);
        ASSERT_NEAR(area.value, std::numbers::pi * ad * bd, 1e-8);
        Polynomial p = random_polynomial(rng, u12, 3);
        auto exact = integrate_1form(forms::differential(p), t);
        ASSERT_LT(std::abs(exact.value), 1e-8);
    }
}
