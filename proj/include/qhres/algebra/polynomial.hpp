#ifndef QHRES_ALGEBRA_POLYNOMIAL_HPP
#define QHRES_ALGEBRA_POLYNOMIAL_HPP

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhres/algebra/rational.hpp"
#include "qhres/error.hpp"

namespace qhres::algebra {

/// Ordered list of variable names shared between values built over the same
/// coordinates. Comparison is by content.
class VariableSet {
public:
    VariableSet() : names_(std::make_shared<const std::vector<std::string>>()) {}
    VariableSet(std::vector<std::string> names)
        : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {}
    VariableSet(std::initializer_list<std::string> names)
        : VariableSet(std::vector<std::string>(names)) {}

    std::size_t size() const { return names_->size(); }
    const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const { return *names_; }

    std::optional<std::size_t> index_of(const std::string& name) const {
        auto it = std::find(names_->begin(), names_->end(), name);
        if (it == names_->end()) return std::nullopt;
        return static_cast<std::size_t>(it - names_->begin());
    }

    friend bool operator==(const VariableSet& a, const VariableSet& b) {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

/// Exponent vector of a monomial. Ordered graded-lexicographically: total
/// degree first, then lexicographically with the first variable largest.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}
    Monomial(std::initializer_list<unsigned> exps) : exps_(exps) {}

    std::size_t size() const { return exps_.size(); }
    unsigned operator[](std::size_t i) const { return exps_[i]; }
    unsigned& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<unsigned>& exponents() const { return exps_; }

    unsigned degree() const {
        unsigned d = 0;
        for (unsigned e : exps_) d += e;
        return d;
    }

    bool is_one() const {
        return std::all_of(exps_.begin(), exps_.end(), [](unsigned e) { return e == 0; });
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }

    /// other / this; requires divides(other).
    Monomial quotient_of(const Monomial& other) const {
        Monomial q(other);
        for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] -= exps_[i];
        return q;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.degree() <=> b.degree(); c != 0) return c;
        for (std::size_t i = 0; i < a.exps_.size(); ++i)
            if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    /// Componentwise minimum.
    friend Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] = std::min(r.exps_[i], b.exps_[i]);
        return r;
    }

private:
    std::vector<unsigned> exps_;
};

/// A monomial with a rational coefficient; the image type of monomial maps.
struct Term {
    Rational coefficient;
    Monomial monomial;
};

/// Sparse multivariate polynomial over the rationals. Terms are kept in
/// graded-lexicographic order and no stored coefficient is zero.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    Polynomial() = default;
    explicit Polynomial(VariableSet vars) : vars_(std::move(vars)) {}

    static Polynomial constant(VariableSet vars, const Rational& c) {
        Polynomial p(std::move(vars));
        p.add_term(Monomial(p.nvars()), c);
        return p;
    }

    static Polynomial variable(VariableSet vars, std::size_t index) {
        if (index >= vars.size()) throw ArgumentError("variable index out of range");
        Polynomial p(std::move(vars));
        Monomial m(p.nvars());
        m[index] = 1;
        p.add_term(std::move(m), 1);
        return p;
    }

    static Polynomial monomial(VariableSet vars, Monomial m, const Rational& c = 1) {
        if (m.size() != vars.size()) throw ArgumentError("monomial length does not match variable count");
        Polynomial p(std::move(vars));
        p.add_term(std::move(m), c);
        return p;
    }

    const VariableSet& variables() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    /// Value of a constant polynomial (zero for the zero polynomial).
    Rational constant_value() const {
        auto it = terms_.find(Monomial(nvars()));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Greatest term under graded-lex order; requires a nonzero polynomial.
    const std::pair<const Monomial, Rational>& leading_term() const {
        if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
        return *terms_.rbegin();
    }

    unsigned total_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (m.size() != nvars()) throw ArgumentError("monomial length does not match variable count");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    Polynomial& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [m, v] : terms_) v *= c;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

    friend Polynomial operator-(Polynomial a) {
        for (auto& [m, v] : a.terms_) v = -v;
        return a;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same(b);
        Polynomial r(a.vars_);
        if (a.is_zero() || b.is_zero()) return r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    /// Multiplies by a single term.
    Polynomial times_term(const Monomial& m, const Rational& c) const {
        Polynomial r(vars_);
        if (c == 0) return r;
        for (const auto& [mm, cc] : terms_) r.terms_.emplace(mm * m, cc * c);
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial result = constant(vars_, 1);
        Polynomial base = *this;
        while (e) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return result;
    }

    Rational evaluate(std::span<const Rational> point) const {
        if (point.size() != nvars()) throw ArgumentError("evaluation point has wrong dimension");
        Rational sum = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
            sum += t;
        }
        return sum;
    }

    /// Same terms, reinterpreted over another variable list of equal length.
    Polynomial renamed(VariableSet vars) const {
        if (vars.size() != nvars()) throw ArgumentError("renaming must preserve the variable count");
        Polynomial r(std::move(vars));
        r.terms_ = terms_;
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    void check_same(const Polynomial& o) const {
        if (!(vars_ == o.vars_)) throw ArgumentError("polynomials live over different variable lists");
    }

private:
    VariableSet vars_;
    TermMap terms_;
};

/// Exact partial derivative with respect to variable `var_index`.
inline Polynomial partial_derivative(const Polynomial& p, std::size_t var_index) {
    if (var_index >= p.nvars()) throw ArgumentError("derivative variable index out of range");
    Polynomial r(p.variables());
    for (const auto& [m, c] : p.terms()) {
        if (m[var_index] == 0) continue;
        Monomial d(m);
        d[var_index] -= 1;
        r.add_term(d, c * m[var_index]);
    }
    return r;
}

/// Replaces every variable by a coefficient-times-monomial image over
/// `target`. Monomials map to monomials, so no expansion is needed.
inline Polynomial substitute_monomial_map(const Polynomial& p, std::span<const Term> images,
                                          const VariableSet& target) {
    if (images.size() != p.nvars()) throw ArgumentError("one image per variable is required");
    for (const auto& img : images)
        if (img.monomial.size() != target.size()) throw ArgumentError("image monomial has wrong length");
    Polynomial r(target);
    for (const auto& [m, c] : p.terms()) {
        Monomial out(target.size());
        Rational coef = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (unsigned k = 0; k < m[i]; ++k) coef *= images[i].coefficient;
            for (std::size_t j = 0; j < out.size(); ++j) out[j] += m[i] * images[i].monomial[j];
        }
        r.add_term(out, coef);
    }
    return r;
}

inline Polynomial substitute_monomial_map(const Polynomial& p, std::span<const Term> images) {
    return substitute_monomial_map(p, images, p.variables());
}

/// Replaces every variable by a polynomial image; all images live over
/// `target`.
inline Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images,
                             const VariableSet& target) {
    if (images.size() != p.nvars()) throw ArgumentError("one image per variable is required");
    for (const auto& img : images)
        if (!(img.variables() == target)) throw ArgumentError("substitution images over mismatched variables");
    // powers[i][k] = images[i]^k, filled lazily
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
        while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
        return cache[k];
    };
    Polynomial r(target);
    for (const auto& [m, c] : p.terms()) {
        Polynomial t = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) t *= power(i, m[i]);
        r += t;
    }
    return r;
}

/// Greatest monomial dividing every term of p (all zeros for p = 0).
inline Monomial monomial_content(const Polynomial& p) {
    if (p.is_zero()) return Monomial(p.nvars());
    Monomial g = p.terms().begin()->first;
    for (const auto& [m, c] : p.terms()) g = gcd(g, m);
    return g;
}

/// Divides p by the monomial m; requires m to divide every term.
inline Polynomial divide_by_monomial(const Polynomial& p, const Monomial& m) {
    Polynomial r(p.variables());
    for (const auto& [mm, c] : p.terms()) {
        if (!m.divides(mm)) throw DomainError("monomial does not divide polynomial");
        r.add_term(m.quotient_of(mm), c);
    }
    return r;
}

struct DivisionResult {
    Polynomial quotient;
    Polynomial remainder;
};

/// Multivariate division with remainder by a single divisor under graded-lex
/// order. For a principal ideal the remainder is a normal form: p lies in (d)
/// exactly when the remainder vanishes.
inline DivisionResult divide_with_remainder(const Polynomial& p, const Polynomial& d) {
    p.check_same(d);
    if (d.is_zero()) throw ArgumentError("division by the zero polynomial");
    const auto& [lm, lc] = d.leading_term();
    Polynomial work = p;
    Polynomial q(p.variables());
    Polynomial r(p.variables());
    while (!work.is_zero()) {
        auto [m, c] = work.leading_term();
        if (lm.divides(m)) {
            Monomial t = lm.quotient_of(m);
            Rational k = c / lc;
            q.add_term(t, k);
            work -= d.times_term(t, k);
        } else {
            r.add_term(m, c);
            work.add_term(m, -c);
        }
    }
    return {std::move(q), std::move(r)};
}

/// Quotient q with p = d * q, or nullopt when d does not divide p.
inline std::optional<Polynomial> divides(const Polynomial& d, const Polynomial& p) {
    if (d.is_zero()) throw ArgumentError("divisibility test against the zero polynomial");
    if (p.is_zero()) return Polynomial(p.variables());
    if (d.total_degree() > p.total_degree()) return std::nullopt;
    auto [q, r] = divide_with_remainder(p, d);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

namespace detail {

inline std::string render_monomial(const Monomial& m, const VariableSet& vars) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += vars[i];
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out;
}

} // namespace detail

/// Canonical text: terms in decreasing graded-lex order, e.g.
/// "x^4+2*x^2*z^2+y^4". Non-integer coefficients of non-constant terms are
/// parenthesized, "(1/3)*x".
inline std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (c < 0) out += '-';
        else if (!first) out += '+';
        first = false;
        std::string mono = detail::render_monomial(m, p.variables());
        if (mono.empty()) {
            out += algebra::to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else if (is_integer(mag)) {
            out += algebra::to_string(mag) + "*" + mono;
        } else {
            out += "(" + algebra::to_string(mag) + ")*" + mono;
        }
    }
    return out;
}

} // namespace qhres::algebra

#endif // QHRES_ALGEBRA_POLYNOMIAL_HPP
