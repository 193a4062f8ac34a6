#ifndef QHRES_ANALYSIS_HPP
#define QHRES_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qhres/verdict.hpp"

namespace qhres::residue {

/// u0-exponent of the blow-up pullback for one quasihomogeneous component of g.
struct BlowupExponent {
    Rational alpha;
    Polynomial component;
    int exponent;
};

/// Every intermediate object of the lifting analysis at one singular point.
struct ResidueReport {
    WeightSystem weights;
    Polynomial s;
    Polynomial g;
    Rational kappa;
    algebra::Integer l;
    Rational jacobian_constant;
    criteria::Condition2Result condition2;
    std::vector<criteria::SpectrumEntry> spectrum;
    ChartForm leray;
    std::vector<BlowupExponent> blowup_exponents;
    std::optional<SecondResidue> second;
    criteria::Verdict verdict;
    std::vector<std::string> warnings;
};

struct AnalyzeOptions {
    bool rescale_weights = false;
};

/// Normalizes the weights so that v(s) = 1: returns them unchanged when s
/// already has weight one, rescales by 1/v(s) when allowed, and throws
/// otherwise.
inline WeightSystem normalized_weights(const Polynomial& s, const WeightSystem& w, bool rescale,
                                       std::vector<std::string>& warnings) {
    weights::check_arity(s.nvars(), w);
    if (s.is_zero()) throw DomainError("hypersurface equation is zero");
    auto wgt = weights::is_quasihomogeneous(s, w);
    if (!wgt) throw DomainError("equation is not quasihomogeneous for the given weights");
    if (*wgt == 1) return w;
    if (!rescale) criteria::require_normalized(s, w);
    warnings.push_back("weights rescaled by 1/" + algebra::to_string(*wgt) + " so that v(s) = 1");
    return w.rescaled(*wgt);
}

/// Runs the full pipeline: weights, Condition 2, spectrum, Leray residue,
/// cover and blow-up pullbacks per component of g, second residue, verdict.
inline ResidueReport analyze(const Polynomial& s, const Polynomial& g, const WeightSystem& input_weights,
                             const AnalyzeOptions& opts = {}) {
    s.check_same(g);
    ResidueReport r;
    r.weights = normalized_weights(s, input_weights, opts.rescale_weights, r.warnings);
    const auto& w = r.weights;
    r.s = s;
    r.g = g;
    r.kappa = w.kappa();
    r.l = w.l();
    r.jacobian_constant = w.jacobian_constant();

    auto point = criteria::point_verdict({s, g, w});
    r.condition2 = point.condition2;
    r.verdict = point.verdict;
    r.second = point.second_residue;
    r.spectrum = criteria::spectrum_nonpositive(w);

    auto chart = first_valid_chart(s);
    if (!chart) throw DomainError("equation has no usable chart");
    r.leray = leray_residue(g, s, *chart);

    auto parts = weights::quasi_decompose(g, w);
    if (parts.components.size() > 1)
        r.warnings.push_back("g is not quasihomogeneous; its " + std::to_string(parts.components.size()) +
                             " components are processed separately");
    for (const auto& [alpha, comp] : parts.components) {
        auto cover = cover_pullback_form(comp, s, w);
        auto blow = blowup_pullback(cover.form, w);
        if (!blow.exponent()) throw std::logic_error("top form pulled back without a du0-part");
        Rational expected = Rational(w.l()) * (alpha - 1 + w.kappa()) - 1;
        if (Rational(*blow.exponent()) != expected)
            throw std::logic_error("blow-up exponent differs from l(alpha - 1 + kappa) - 1");
        r.blowup_exponents.push_back({alpha, comp, *blow.exponent()});
    }
    if (r.verdict == criteria::Verdict::Inconclusive)
        r.warnings.push_back("Condition 2 fails but g has no component of weight 1 - kappa; "
                             "neither lifting criterion applies");
    return r;
}

} // namespace qhres::residue

#endif // QHRES_ANALYSIS_HPP
