#ifndef QHRES_RESIDUE_HPP
#define QHRES_RESIDUE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhres/criteria.hpp"

namespace qhres::residue {

using algebra::Monomial;
using algebra::Polynomial;
using algebra::Rational;
using algebra::RationalFunction;
using algebra::VariableSet;
using forms::Basis;
using forms::DifferentialForm;
using weights::WeightSystem;

/// A form on a hypersurface, written in one chart of its ambient coordinates.
struct ChartForm {
    int chart_index = -1;  // variable whose partial of `relation` is inverted; -1 for the zero form
    Polynomial relation;   // equation of the hypersurface in these coordinates
    DifferentialForm form;
};

/// Index of the first variable with a nonvanishing partial derivative.
inline std::optional<std::size_t> first_valid_chart(const Polynomial& f) {
    for (std::size_t i = 0; i < f.nvars(); ++i)
        if (!algebra::partial_derivative(f, i).is_zero()) return i;
    return std::nullopt;
}

namespace detail {

inline Polynomial chart_partial(const Polynomial& f, std::size_t chart) {
    if (chart >= f.nvars()) throw ArgumentError("chart index out of range");
    Polynomial fc = algebra::partial_derivative(f, chart);
    if (fc.is_zero()) {
        auto usable = first_valid_chart(f);
        throw DomainError("degenerate chart " + std::to_string(chart) + ": partial derivative vanishes" +
                          (usable ? "; use chart " + std::to_string(*usable) : "; no usable chart"));
    }
    return fc;
}

/// (-1)^chart (c / f_chart) dz_0 /\ ... (omit chart) ... /\ dz_n.
inline DifferentialForm divide_top_coefficient(const RationalFunction& c, const Polynomial& fc, std::size_t chart) {
    const auto& vars = fc.variables();
    Basis rest;
    for (unsigned i = 0; i < vars.size(); ++i)
        if (i != chart) rest.push_back(i);
    RationalFunction coef = c * RationalFunction(Polynomial::constant(vars, 1), fc);
    if (chart % 2) coef = -coef;
    return DifferentialForm::term(vars, coef, rest);
}

} // namespace detail

/// Leray residue form r of (g/s) dz_0 /\ ... /\ dz_n in the chart s_chart != 0,
/// normalized so that ds /\ r = g dz_0 /\ ... /\ dz_n holds exactly.
inline ChartForm leray_residue(const Polynomial& g, const Polynomial& s, std::size_t chart) {
    s.check_same(g);
    if (s.is_zero()) throw DomainError("hypersurface equation is zero");
    Polynomial sc = detail::chart_partial(s, chart);
    if (algebra::divides(s, g)) throw DomainError("removable pole: s divides g");
    return {static_cast<int>(chart), s, detail::divide_top_coefficient(RationalFunction(g), sc, chart)};
}

/// r with df /\ r = eta for a top form eta, in the chart f_chart != 0.
inline ChartForm residue_division(const DifferentialForm& eta, const Polynomial& f, std::size_t chart) {
    if (!(eta.variables() == f.variables())) throw ArgumentError("form and equation over different variables");
    Basis all(f.nvars());
    for (unsigned i = 0; i < all.size(); ++i) all[i] = i;
    for (const auto& [b, c] : eta.components())
        if (b != all) throw ArgumentError("residue_division expects a top-degree form");
    Polynomial fc = detail::chart_partial(f, chart);
    if (eta.is_zero()) return {static_cast<int>(chart), f, DifferentialForm(f.variables())};
    return {static_cast<int>(chart), f, detail::divide_top_coefficient(eta.coefficient(all), fc, chart)};
}

/// (g/s) dz_0 /\ ... /\ dz_n.
inline DifferentialForm meromorphic_form(const Polynomial& g, const Polynomial& s) {
    return DifferentialForm::top(RationalFunction(g, s));
}

struct CoverPullback {
    DifferentialForm form;   // Phi^* omega over the cover coordinates
    Polynomial pulled_s;     // Phi^* s
    Polynomial pulled_g;     // Phi^* g
    Rational jacobian_constant;
};

/// Pullback of (g/s) dz_0 /\ ... /\ dz_n along z_i -> zhat_i^(l a_i). The cover
/// coordinates reuse the names of the original ones. The result equals
/// C (Phi^*g / Phi^*s) prod zhat_i^(l a_i - 1) dzhat_0 /\ ... /\ dzhat_n with
/// C = prod(l a_i).
inline CoverPullback cover_pullback_form(const Polynomial& g, const Polynomial& s, const WeightSystem& w) {
    criteria::require_normalized(s, w);
    s.check_same(g);
    const auto& vars = s.variables();
    auto images = weights::cover_images(w, vars);
    auto terms = weights::cover_terms(w);
    return {forms::pullback(meromorphic_form(g, s), images, vars), algebra::substitute_monomial_map(s, terms),
            algebra::substitute_monomial_map(g, terms), w.jacobian_constant()};
}

/// Variables u0, ..., un of the 0-th blow-up chart.
inline VariableSet blowup_variables(std::size_t nvars) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars; ++i) names.push_back("u" + std::to_string(i));
    return VariableSet(std::move(names));
}

/// Variables u1, ..., un of the exceptional divisor chart.
inline VariableSet divisor_variables(std::size_t nvars) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i < nvars; ++i) names.push_back("u" + std::to_string(i));
    return VariableSet(std::move(names));
}

struct BlowupResult {
    DifferentialForm pulled;       // the form in u0, ..., un
    forms::Du0Split split;         // pulled = u0^e du0 /\ r2 + theta
    Rational cover_valuation;      // standard-weight valuation of the input
    std::optional<int> exponent() const { return split.exponent; }
};

/// Substitutes zhat_0 = u0, zhat_i = u0 u_i and splits off du0. For a
/// homogeneous input of standard valuation V the exponent is V - 1, which for
/// the cover pullback of a component of weight alpha is l(alpha - 1 + kappa) - 1.
inline BlowupResult blowup_pullback(const DifferentialForm& omega_hat, const WeightSystem& w) {
    weights::check_arity(omega_hat.nvars(), w);
    const std::size_t n1 = omega_hat.nvars();
    auto std_weights = WeightSystem::standard(n1);
    Rational v = 0;
    if (!omega_hat.is_zero()) {
        auto val = weights::valuation_form(omega_hat, std_weights);
        if (!val.pure)
            throw DomainError("weight-impure numerator: decompose g into quasihomogeneous components "
                              "and process each component separately");
        v = val.value;
    }
    VariableSet u = blowup_variables(n1);
    std::vector<Polynomial> images;
    Polynomial u0 = Polynomial::variable(u, 0);
    images.push_back(u0);
    for (std::size_t i = 1; i < n1; ++i) images.push_back(u0 * Polynomial::variable(u, i));
    DifferentialForm pulled = forms::pullback(omega_hat, images, u);
    auto split = forms::split_du0(pulled);
    if (split.exponent && Rational(*split.exponent) != v - 1)
        throw std::logic_error("blow-up exponent disagrees with the cover valuation");
    return {std::move(pulled), std::move(split), v};
}

/// p(1, u1, ..., un) after the cover: z_0 -> 1, z_i -> u_i^(l a_i).
inline Polynomial dehomogenized_cover(const Polynomial& p, const WeightSystem& w, const VariableSet& divisor_vars) {
    std::vector<algebra::Term> images;
    images.push_back({Rational(1), Monomial(divisor_vars.size())});
    for (std::size_t i = 1; i < w.size(); ++i) {
        Monomial m(divisor_vars.size());
        m[i - 1] = w.cover_exponents()[i];
        images.push_back({Rational(1), m});
    }
    return algebra::substitute_monomial_map(p, images, divisor_vars);
}

struct SecondResidue {
    ChartForm residue;          // r2' over u1, ..., un with relation s~
    Polynomial component;       // g_alpha, the weight-(1 - kappa) part of g
    Polynomial s_tilde;         // (Phi^* s)(1, u1, ..., un)
    Polynomial g_tilde;         // (Phi^* g_alpha)(1, u1, ..., un)
    DifferentialForm target;    // C g~ prod u_i^(l a_i - 1) du1 /\ ... /\ dun
    Rational jacobian_constant;
    bool certified = false;     // g~ != 0 and s~ does not divide g~
    std::string prefactor = "1/(2*pi*i)";

    bool is_zero() const { return residue.form.is_zero(); }
};

/// The second residue r2' of (g/s) dz_0 /\ ... /\ dz_n: the solution of
/// ds~ /\ r2' = C g~ prod_{i>=1} u_i^(l a_i - 1) du1 /\ ... /\ dun in the first
/// usable chart of s~. Zero when g has no component of weight 1 - kappa.
inline SecondResidue second_residue(const Polynomial& g, const Polynomial& s, const WeightSystem& w) {
    criteria::require_normalized(s, w);
    s.check_same(g);
    if (s.nvars() < 2) throw ArgumentError("second residue needs at least two variables");
    if (criteria::condition2(w).holds) throw DomainError("Condition 2 holds: there is no obstruction to compute");

    auto obstruction = criteria::theorem7_obstruction(s, g, w);
    VariableSet u = divisor_variables(s.nvars());
    SecondResidue out;
    out.component = obstruction.component;
    out.s_tilde = dehomogenized_cover(s, w, u);
    out.g_tilde = dehomogenized_cover(obstruction.component, w, u);
    out.jacobian_constant = w.jacobian_constant();

    Monomial jac(u.size());
    for (std::size_t i = 1; i < w.size(); ++i) jac[i - 1] = w.cover_exponents()[i] - 1;
    Polynomial coefficient = out.g_tilde.times_term(jac, w.jacobian_constant());
    out.target = DifferentialForm::top(RationalFunction(coefficient));

    auto chart = first_valid_chart(out.s_tilde);
    if (!chart) throw DomainError("dehomogenized equation has no usable chart");
    out.residue = residue_division(out.target, out.s_tilde, *chart);
    if (!obstruction.nonzero) {
        out.residue.chart_index = -1;
        return out;
    }
    out.certified = !out.g_tilde.is_zero() && !algebra::divides(out.s_tilde, out.g_tilde);
    return out;
}

} // namespace qhres::residue

#endif // QHRES_RESIDUE_HPP
