#ifndef QHRES_TESTS_SUPPORT_HPP
#define QHRES_TESTS_SUPPORT_HPP

#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qhres/qhres.hpp"

namespace qhres::algebra {

inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const RationalFunction& f, std::ostream* os) { *os << to_string(f); }
inline void PrintTo(const Monomial& m, std::ostream* os) {
    for (unsigned e : m.exponents()) *os << e << ' ';
}

} // namespace qhres::algebra

namespace qhres::forms {

inline void PrintTo(const DifferentialForm& f, std::ostream* os) { *os << to_string(f); }

} // namespace qhres::forms

namespace qhres::testing {

using algebra::Monomial;
using algebra::Polynomial;
using algebra::Rational;
using algebra::RationalFunction;
using algebra::VariableSet;
using forms::DifferentialForm;
using weights::WeightSystem;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline VariableSet vars(std::size_t n, const std::string& prefix = "z") {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
    return VariableSet(std::move(names));
}

inline Rational small_rational(Rng& rng) {
    int p = uniform(rng, -6, 6);
    int q = uniform(rng, 1, 4);
    return Rational(p, q);
}

inline Rational nonzero_rational(Rng& rng) {
    Rational r = 0;
    while (r == 0) r = small_rational(rng);
    return r;
}

inline Monomial random_monomial(Rng& rng, std::size_t n, int max_degree) {
    Monomial m(n);
    int budget = uniform(rng, 0, max_degree);
    for (int k = 0; k < budget; ++k) m[uniform(rng, 0, static_cast<int>(n) - 1)] += 1;
    return m;
}

inline Polynomial random_polynomial(Rng& rng, const VariableSet& v, int max_degree, int max_terms = 4) {
    Polynomial p(v);
    int terms = uniform(rng, 0, max_terms);
    for (int t = 0; t < terms; ++t) p.add_term(random_monomial(rng, v.size(), max_degree), small_rational(rng));
    return p;
}

inline Polynomial random_nonzero_polynomial(Rng& rng, const VariableSet& v, int max_degree, int max_terms = 4) {
    for (;;) {
        Polynomial p = random_polynomial(rng, v, max_degree, max_terms);
        if (!p.is_zero()) return p;
    }
}

/// Random form of degree `form_degree` with polynomial coefficients.
inline DifferentialForm random_form(Rng& rng, const VariableSet& v, int max_degree, std::size_t form_degree) {
    DifferentialForm f(v);
    int terms = uniform(rng, 0, 3);
    for (int t = 0; t < terms; ++t) {
        forms::Basis b;
        for (std::size_t k = 0; k < form_degree; ++k) b.push_back(uniform(rng, 0, static_cast<int>(v.size()) - 1));
        f = f + DifferentialForm::term(v, RationalFunction(random_polynomial(rng, v, max_degree, 3)), b);
    }
    return f;
}

/// Random form whose coefficients share a random nonzero denominator.
inline DifferentialForm random_rational_form(Rng& rng, const VariableSet& v, int max_degree, std::size_t form_degree) {
    DifferentialForm f = random_form(rng, v, max_degree, form_degree);
    Polynomial den = random_nonzero_polynomial(rng, v, 2, 2);
    return RationalFunction(Polynomial::constant(v, 1), den) * f;
}

inline WeightSystem random_weights(Rng& rng, std::size_t n, int max_den = 6) {
    std::vector<Rational> a;
    for (std::size_t i = 0; i < n; ++i) {
        int q = uniform(rng, 1, max_den);
        a.emplace_back(uniform(rng, 1, q), q);
    }
    return WeightSystem(std::move(a));
}

/// Random polynomial all of whose monomials have weight exactly `weight`
/// (possibly zero when no monomial of that weight is reachable).
inline Polynomial random_quasihomogeneous(Rng& rng, const VariableSet& v, const WeightSystem& w, const Rational& weight,
                                          int max_degree, int max_terms = 4) {
    std::vector<Monomial> pool;
    std::vector<unsigned> e(v.size(), 0);
    // enumerate monomials of total degree <= max_degree
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == v.size()) {
            Monomial m(e);
            if (weights::monomial_weight(m, w) == weight) pool.push_back(m);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[i] = static_cast<unsigned>(k);
            rec(i + 1, left - k);
        }
        e[i] = 0;
    };
    rec(0, max_degree);
    Polynomial p(v);
    if (pool.empty()) return p;
    int terms = uniform(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t) p.add_term(pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)], nonzero_rational(rng));
    return p;
}

} // namespace qhres::testing

#endif // QHRES_TESTS_SUPPORT_HPP
