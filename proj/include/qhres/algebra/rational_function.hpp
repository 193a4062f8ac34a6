#ifndef QHRES_ALGEBRA_RATIONAL_FUNCTION_HPP
#define QHRES_ALGEBRA_RATIONAL_FUNCTION_HPP

#include <span>
#include <string>
#include <utility>

#include "qhres/algebra/polynomial.hpp"

namespace qhres::algebra {

/// Quotient of two polynomials over the same variables.
///
/// Reduction is partial: the common monomial content is cancelled, a constant
/// denominator is folded into the numerator, and exact-division probes cancel
/// the denominator (or numerator) when one divides the other. Remaining
/// common factors are tolerated; equality is decided by cross-multiplication.
/// The denominator is scaled to have leading coefficient one.
class RationalFunction {
public:
    RationalFunction() = default;
    explicit RationalFunction(VariableSet vars)
        : num_(vars), den_(Polynomial::constant(vars, 1)) {}

    RationalFunction(Polynomial p)
        : num_(std::move(p)), den_(Polynomial::constant(num_.variables(), 1)) {}

    RationalFunction(Polynomial n, Polynomial d) : num_(std::move(n)), den_(std::move(d)) {
        num_.check_same(den_);
        if (den_.is_zero()) throw ArgumentError("rational function with zero denominator");
        normalize();
    }

    static RationalFunction constant(VariableSet vars, const Rational& c) {
        return RationalFunction(Polynomial::constant(std::move(vars), c));
    }

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    const VariableSet& variables() const { return num_.variables(); }
    std::size_t nvars() const { return num_.nvars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    /// The polynomial value; requires is_polynomial().
    Polynomial as_polynomial() const {
        if (!is_polynomial()) throw DomainError("rational function is not a polynomial");
        return num_ * (Rational(1) / den_.constant_value());
    }

    friend RationalFunction operator-(RationalFunction a) {
        a.num_ = -a.num_;
        return a;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_, Unchecked{});
        if (b.den_.is_constant()) return RationalFunction(a.num_ + b.num_ * a.den_, a.den_, Unchecked{});
        if (a.den_.is_constant()) return b + a;
        if (auto q = divides(b.den_, a.den_)) return RationalFunction(a.num_ + b.num_ * *q, a.den_, Unchecked{});
        if (auto q = divides(a.den_, b.den_)) return RationalFunction(a.num_ * *q + b.num_, b.den_, Unchecked{});
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, Unchecked{});
    }

    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return RationalFunction(a.variables());
        if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.as_polynomial() * b.as_polynomial());
        // cross-cancel before multiplying
        Polynomial an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
        cancel_pair(an, bd);
        cancel_pair(bn, ad);
        return RationalFunction(an * bn, ad * bd, Unchecked{});
    }

    friend RationalFunction operator*(const RationalFunction& a, const Rational& c) {
        return RationalFunction(a.num_ * c, a.den_, Unchecked{});
    }

    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DomainError("division by the zero rational function");
        return a * RationalFunction(b.den_, b.num_, Unchecked{});
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

    /// Equality of the represented functions (cross-multiplication).
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        if (!(a.variables() == b.variables())) return false;
        if (a.den_ == b.den_) return a.num_ == b.num_;
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

private:
    struct Unchecked {};
    RationalFunction(Polynomial n, Polynomial d, Unchecked) : num_(std::move(n)), den_(std::move(d)) {
        normalize();
    }

    static void cancel_pair(Polynomial& top, Polynomial& bottom) {
        if (bottom.is_constant() || top.is_zero()) return;
        if (auto q = divides(bottom, top)) {
            top = std::move(*q);
            bottom = Polynomial::constant(bottom.variables(), 1);
        }
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = Polynomial::constant(num_.variables(), 1);
            return;
        }
        Monomial common = gcd(monomial_content(num_), monomial_content(den_));
        if (!common.is_one()) {
            num_ = divide_by_monomial(num_, common);
            den_ = divide_by_monomial(den_, common);
        }
        if (!den_.is_constant()) {
            if (auto q = divides(den_, num_)) {
                num_ = std::move(*q);
                den_ = Polynomial::constant(num_.variables(), 1);
            } else if (!num_.is_constant()) {
                if (auto q2 = divides(num_, den_)) {
                    num_ = Polynomial::constant(num_.variables(), 1);
                    den_ = std::move(*q2);
                }
            }
        }
        Rational lc = den_.leading_term().second;
        if (lc != 1) {
            Rational inv = Rational(1) / lc;
            num_ *= inv;
            den_ *= inv;
        }
    }

    Polynomial num_;
    Polynomial den_;
};

inline RationalFunction partial_derivative(const RationalFunction& f, std::size_t var_index) {
    const auto& n = f.numerator();
    const auto& d = f.denominator();
    if (d.is_constant()) return RationalFunction(partial_derivative(n, var_index) * (Rational(1) / d.constant_value()));
    Polynomial top = partial_derivative(n, var_index) * d - n * partial_derivative(d, var_index);
    return RationalFunction(std::move(top), d * d);
}

inline RationalFunction substitute(const RationalFunction& f, std::span<const Polynomial> images,
                                   const VariableSet& target) {
    return RationalFunction(substitute(f.numerator(), images, target), substitute(f.denominator(), images, target));
}

/// "N" or "N/D" with parenthesized multi-term parts. Coefficient
/// denominators of N are moved into D, e.g. "1/(3*z0^2)" and "z1/(3*z0^2)".
inline std::string to_string(const RationalFunction& f) {
    if (f.denominator().is_constant()) return to_string(f.numerator());
    Integer q = 1;
    for (const auto& [m, c] : f.numerator().terms()) q = lcm(q, den(c));
    Polynomial n = f.numerator() * Rational(q), d = f.denominator() * Rational(q);
    auto simple = [](const Polynomial& p) {
        if (p.term_count() != 1) return false;
        const auto& [m, c] = p.leading_term();
        return m.is_one() || c == 1 || c == -1;
    };
    auto wrap = [&](const Polynomial& p) { return simple(p) ? to_string(p) : "(" + to_string(p) + ")"; };
    return wrap(n) + "/" + wrap(d);
}

} // namespace qhres::algebra

#endif // QHRES_ALGEBRA_RATIONAL_FUNCTION_HPP
