#ifndef QHRES_WEIGHTS_HPP
#define QHRES_WEIGHTS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhres/forms.hpp"

namespace qhres::weights {

using algebra::Integer;
using algebra::Monomial;
using algebra::Polynomial;
using algebra::Rational;
using algebra::RationalFunction;
using algebra::VariableSet;
using forms::DifferentialForm;

/// Positive rational weights a_i = v(z_i) together with the derived data
/// of the branched cover z_i -> zhat_i^(l a_i).
class WeightSystem {
public:
    WeightSystem() = default;

    explicit WeightSystem(std::vector<Rational> a) : a_(std::move(a)) {
        if (a_.empty()) throw ArgumentError("weight system needs at least one weight");
        Integer l = 1;
        for (const auto& ai : a_) {
            if (ai <= 0) throw DomainError("weights must be positive, got " + algebra::to_string(ai));
            kappa_ += ai;
            l = algebra::lcm(l, algebra::den(ai));
        }
        l_ = l;
        jacobian_ = 1;
        for (const auto& ai : a_) {
            Rational la = ai * l_;
            cover_.push_back(static_cast<unsigned>(algebra::num(la)));
            jacobian_ *= la;
        }
    }

    /// All weights equal to one; the grading of the cover coordinates.
    static WeightSystem standard(std::size_t nvars) { return WeightSystem(std::vector<Rational>(nvars, Rational(1))); }

    std::size_t size() const { return a_.size(); }
    const std::vector<Rational>& weights() const { return a_; }
    const Rational& operator[](std::size_t i) const { return a_[i]; }

    /// kappa = a_0 + ... + a_n, the weight of dz_0 /\ ... /\ dz_n.
    const Rational& kappa() const { return kappa_; }
    /// Least common multiple of the weight denominators.
    const Integer& l() const { return l_; }
    /// l * a_i.
    const std::vector<unsigned>& cover_exponents() const { return cover_; }
    /// C = prod(l a_i), the Jacobian constant of the cover.
    const Rational& jacobian_constant() const { return jacobian_; }

    /// Weights divided by w0, so that a polynomial of weight w0 gets weight 1.
    WeightSystem rescaled(const Rational& w0) const {
        if (w0 <= 0) throw DomainError("rescaling weight must be positive");
        std::vector<Rational> b;
        for (const auto& ai : a_) b.push_back(ai / w0);
        return WeightSystem(std::move(b));
    }

private:
    std::vector<Rational> a_;
    Rational kappa_ = 0;
    Integer l_ = 1;
    std::vector<unsigned> cover_;
    Rational jacobian_ = 1;
};

inline void check_arity(std::size_t nvars, const WeightSystem& w) {
    if (nvars != w.size()) throw ArgumentError("weight count does not match variable count");
}

/// Weighted degree sum k_i a_i.
inline Rational monomial_weight(const Monomial& m, const WeightSystem& w) {
    Rational s = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) s += w[i] * m[i];
    return s;
}

/// v(p): the maximal weighted degree over the monomials of p.
inline Rational valuation_poly(const Polynomial& p, const WeightSystem& w) {
    check_arity(p.nvars(), w);
    if (p.is_zero()) throw DomainError("valuation of zero undefined");
    std::optional<Rational> best;
    for (const auto& [m, c] : p.terms()) {
        Rational v = monomial_weight(m, w);
        if (!best || v > *best) best = v;
    }
    return *best;
}

/// v(num) - v(den) for an explicit quotient.
inline Rational valuation_rational(const RationalFunction& f, const WeightSystem& w) {
    return valuation_poly(f.numerator(), w) - valuation_poly(f.denominator(), w);
}

/// Weight shared by every monomial, or nullopt when p is not quasihomogeneous.
inline std::optional<Rational> is_quasihomogeneous(const Polynomial& p, const WeightSystem& w) {
    check_arity(p.nvars(), w);
    if (p.is_zero()) throw DomainError("quasihomogeneity of the zero polynomial");
    std::optional<Rational> common;
    for (const auto& [m, c] : p.terms()) {
        Rational v = monomial_weight(m, w);
        if (common && *common != v) return std::nullopt;
        common = v;
    }
    return common;
}

struct FormValuation {
    Rational value;
    bool pure; // every term attains `value` and every coefficient is quasihomogeneous
};

/// v of a form with v(dz_i) = a_i. Weight-impure forms return the maximum and
/// pure = false.
inline FormValuation valuation_form(const DifferentialForm& f, const WeightSystem& w) {
    check_arity(f.nvars(), w);
    if (f.is_zero()) throw DomainError("valuation of the zero form undefined");
    std::optional<Rational> best;
    bool pure = true;
    for (const auto& [basis, c] : f.components()) {
        if (!is_quasihomogeneous(c.numerator(), w) || !is_quasihomogeneous(c.denominator(), w)) pure = false;
        Rational v = valuation_rational(c, w);
        for (unsigned i : basis) v += w[i];
        if (best && *best != v) pure = false;
        if (!best || v > *best) best = v;
    }
    return {*best, pure};
}

/// Partition of a polynomial into quasihomogeneous components keyed by weight.
class QuasiDecomposition {
public:
    std::map<Rational, Polynomial> components;

    /// Component of the given weight; the zero polynomial if absent.
    Polynomial component(const Rational& weight, const VariableSet& vars) const {
        auto it = components.find(weight);
        return it == components.end() ? Polynomial(vars) : it->second;
    }
};

inline QuasiDecomposition quasi_decompose(const Polynomial& p, const WeightSystem& w) {
    check_arity(p.nvars(), w);
    QuasiDecomposition d;
    for (const auto& [m, c] : p.terms()) {
        Rational v = monomial_weight(m, w);
        auto [it, inserted] = d.components.try_emplace(v, Polynomial(p.variables()));
        it->second.add_term(m, c);
    }
    return d;
}

/// Checks sum a_i z_i ds/dz_i = wgt * s for quasihomogeneous s of weight wgt.
inline bool euler_check(const Polynomial& s, const WeightSystem& w) {
    check_arity(s.nvars(), w);
    if (s.is_zero()) return true;
    auto wgt = is_quasihomogeneous(s, w);
    if (!wgt) throw DomainError("euler_check requires a quasihomogeneous polynomial");
    Polynomial lhs(s.variables());
    for (std::size_t i = 0; i < s.nvars(); ++i)
        lhs += Polynomial::variable(s.variables(), i) * algebra::partial_derivative(s, i) * w[i];
    return lhs == s * *wgt;
}

/// Images zhat_i^(l a_i) of the branched cover, as polynomials over `target`.
inline std::vector<Polynomial> cover_images(const WeightSystem& w, const VariableSet& target) {
    check_arity(target.size(), w);
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        Monomial m(w.size());
        m[i] = w.cover_exponents()[i];
        out.push_back(Polynomial::monomial(target, m));
    }
    return out;
}

/// Same cover as monomial images.
inline std::vector<algebra::Term> cover_terms(const WeightSystem& w) {
    std::vector<algebra::Term> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        Monomial m(w.size());
        m[i] = w.cover_exponents()[i];
        out.push_back({Rational(1), m});
    }
    return out;
}

inline std::vector<std::string> to_strings(const WeightSystem& w) {
    std::vector<std::string> out;
    for (const auto& a : w.weights()) out.push_back(algebra::to_string(a));
    return out;
}

} // namespace qhres::weights

#endif // QHRES_WEIGHTS_HPP
