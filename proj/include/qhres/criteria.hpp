#ifndef QHRES_CRITERIA_HPP
#define QHRES_CRITERIA_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qhres/weights.hpp"

namespace qhres::criteria {

using algebra::Monomial;
using algebra::Polynomial;
using algebra::Rational;
using weights::WeightSystem;

/// Exponent vector k together with kappa + sum k_i a_i.
struct ConditionWitness {
    std::vector<unsigned> k;
    Rational value;
};

struct Condition2Result {
    bool holds;
    std::optional<ConditionWitness> witness; // present exactly when the condition fails
};

/// kappa + sum k_i a_i.
inline Rational witness_value(const std::vector<unsigned>& k, const WeightSystem& w) {
    Rational v = w.kappa();
    for (std::size_t i = 0; i < k.size(); ++i) v += w[i] * k[i];
    return v;
}

namespace detail {

/// Integer form of the problem: coins l*a_i and target l*(1 - kappa).
struct ScaledProblem {
    std::vector<std::int64_t> coins;
    std::int64_t target; // negative when kappa > 1
};

inline ScaledProblem scale(const WeightSystem& w) {
    ScaledProblem p;
    for (unsigned c : w.cover_exponents()) p.coins.push_back(c);
    Rational t = (Rational(1) - w.kappa()) * w.l();
    p.target = static_cast<std::int64_t>(algebra::num(t));
    return p;
}

} // namespace detail

/// Condition 2: no k in N^{n+1} has kappa + sum k_i a_i = 1.
///
/// kappa > 1 holds trivially and kappa = 1 fails with k = 0. Otherwise the
/// question is whether l(1 - kappa) is a nonnegative integer combination of
/// the l a_i, decided by dynamic programming over targets 0..l(1 - kappa).
inline Condition2Result condition2(const WeightSystem& w) {
    if (w.kappa() > 1) return {true, std::nullopt};
    std::vector<unsigned> zero(w.size(), 0);
    if (w.kappa() == 1) return {false, ConditionWitness{zero, w.kappa()}};

    auto prob = detail::scale(w);
    const auto T = static_cast<std::size_t>(prob.target);
    // last_coin[t] = index of the final coin in some representation of t, -1 if none
    std::vector<int> last_coin(T + 1, -1);
    std::vector<char> reachable(T + 1, 0);
    reachable[0] = 1;
    for (std::size_t t = 1; t <= T; ++t)
        for (std::size_t i = 0; i < prob.coins.size(); ++i) {
            auto c = static_cast<std::size_t>(prob.coins[i]);
            if (c <= t && reachable[t - c]) {
                reachable[t] = 1;
                last_coin[t] = static_cast<int>(i);
                break;
            }
        }
    if (!reachable[T]) return {true, std::nullopt};
    std::vector<unsigned> k = zero;
    for (std::size_t t = T; t > 0;) {
        auto i = static_cast<std::size_t>(last_coin[t]);
        ++k[i];
        t -= static_cast<std::size_t>(prob.coins[i]);
    }
    return {false, ConditionWitness{k, witness_value(k, w)}};
}

/// One point kappa + sum k_i a_i - 1 <= 0 of the spectrum, with its witness.
struct SpectrumEntry {
    Rational value;
    std::vector<unsigned> k;
};

/// All entries kappa + sum k_i a_i - 1 <= 0, one per exponent vector, sorted
/// by value and then lexicographically by k. Empty when kappa > 1.
inline std::vector<SpectrumEntry> spectrum_nonpositive(const WeightSystem& w) {
    std::vector<SpectrumEntry> out;
    auto prob = detail::scale(w);
    if (prob.target < 0) return out;
    std::vector<unsigned> k(w.size(), 0);
    std::vector<std::pair<std::int64_t, std::vector<unsigned>>> raw;
    auto rec = [&](auto&& self, std::size_t i, std::int64_t used) -> void {
        if (i == k.size()) {
            raw.emplace_back(used, k);
            return;
        }
        for (unsigned j = 0; used + prob.coins[i] * j <= prob.target; ++j) {
            k[i] = j;
            self(self, i + 1, used + prob.coins[i] * j);
        }
        k[i] = 0;
    };
    rec(rec, 0, 0);
    std::sort(raw.begin(), raw.end());
    Rational l(w.l());
    out.reserve(raw.size());
    for (auto& [used, kv] : raw) out.push_back({Rational(used - prob.target) / l, std::move(kv)});
    return out;
}

/// Distinct spectrum values (rendering option for spectrum_nonpositive).
inline std::vector<Rational> distinct_values(const std::vector<SpectrumEntry>& entries) {
    std::vector<Rational> v;
    for (const auto& e : entries)
        if (v.empty() || v.back() != e.value) v.push_back(e.value);
    return v;
}

/// Requires s quasihomogeneous of weight exactly one.
inline void require_normalized(const Polynomial& s, const WeightSystem& w) {
    weights::check_arity(s.nvars(), w);
    if (s.is_zero()) throw DomainError("hypersurface equation is zero");
    auto wgt = weights::is_quasihomogeneous(s, w);
    if (!wgt) throw DomainError("equation is not quasihomogeneous for the given weights");
    if (*wgt != 1)
        throw DomainError("unnormalized equation: v(s) = " + algebra::to_string(*wgt) +
                          ", expected 1 (rescale weights by 1/" + algebra::to_string(*wgt) + ")");
}

struct Obstruction {
    bool nonzero;
    Polynomial component; // weight-(1 - kappa) part of g
};

/// Extracts the quasihomogeneous component of g of weight 1 - kappa.
inline Obstruction theorem7_obstruction(const Polynomial& s, const Polynomial& g, const WeightSystem& w) {
    require_normalized(s, w);
    s.check_same(g);
    Polynomial comp = weights::quasi_decompose(g, w).component(Rational(1) - w.kappa(), g.variables());
    bool nonzero = !comp.is_zero();
    return {nonzero, std::move(comp)};
}

enum class Isolatedness { Isolated, Unknown };

inline std::string to_string(Isolatedness i) { return i == Isolatedness::Isolated ? "ISOLATED" : "UNKNOWN"; }

struct ProbeReport {
    Isolatedness result;
    Polynomial cover_pullback;              // Phi^* s
    std::optional<std::vector<unsigned>> order; // variable priority certifying isolatedness
};

namespace detail {

/// Leading monomial under graded-lex with variable priority `order`.
inline Monomial leading_monomial(const Polynomial& p, const std::vector<unsigned>& order) {
    const Monomial* best = nullptr;
    auto greater = [&](const Monomial& a, const Monomial& b) {
        if (a.degree() != b.degree()) return a.degree() > b.degree();
        for (unsigned v : order)
            if (a[v] != b[v]) return a[v] > b[v];
        return false;
    };
    for (const auto& [m, c] : p.terms())
        if (!best || greater(m, *best)) best = &m;
    return *best;
}

inline bool is_pure_power_of(const Monomial& m, std::size_t var) {
    for (std::size_t j = 0; j < m.size(); ++j)
        if (j != var && m[j] != 0) return false;
    return true;
}

} // namespace detail

/// One-sided isolatedness test for the singularity of Phi^* s at the origin.
///
/// Reports ISOLATED when, for some graded-lex order, the leading monomial of
/// each partial derivative d(Phi^* s)/dz_i is a pure power of z_i. Pairwise
/// coprime leading monomials make the partials a Groebner basis whose initial
/// ideal contains a power of every variable, so their common zero set is
/// finite, and for a homogeneous Phi^* s that set is the origin.
inline ProbeReport pullback_singularity_probe(const Polynomial& s, const WeightSystem& w) {
    weights::check_arity(s.nvars(), w);
    if (!weights::is_quasihomogeneous(s, w)) throw DomainError("probe requires a quasihomogeneous polynomial");
    auto terms = weights::cover_terms(w);
    Polynomial pulled = algebra::substitute_monomial_map(s, terms);
    ProbeReport report{Isolatedness::Unknown, pulled, std::nullopt};

    std::vector<Polynomial> partials;
    for (std::size_t i = 0; i < pulled.nvars(); ++i) {
        partials.push_back(algebra::partial_derivative(pulled, i));
        if (partials.back().is_zero()) return report;
    }
    std::vector<unsigned> order(pulled.nvars());
    std::iota(order.begin(), order.end(), 0u);
    const bool exhaustive = order.size() <= 8;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < partials.size() && ok; ++i)
            ok = detail::is_pure_power_of(detail::leading_monomial(partials[i], order), i);
        if (ok) {
            report.result = Isolatedness::Isolated;
            report.order = order;
            return report;
        }
    } while (exhaustive && std::next_permutation(order.begin(), order.end()));
    return report;
}

} // namespace qhres::criteria

#endif // QHRES_CRITERIA_HPP
