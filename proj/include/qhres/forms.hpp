#ifndef QHRES_FORMS_HPP
#define QHRES_FORMS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhres/algebra/rational_function.hpp"

namespace qhres::forms {

using algebra::Monomial;
using algebra::Polynomial;
using algebra::Rational;
using algebra::RationalFunction;
using algebra::VariableSet;

/// Strictly increasing variable indices naming dz_{i1} /\ ... /\ dz_{ip}.
using Basis = std::vector<unsigned>;

/// Element of the exterior algebra over rational functions in a fixed,
/// ordered list of variables. Degrees may be mixed; zero coefficients are
/// never stored.
class DifferentialForm {
public:
    using ComponentMap = std::map<Basis, RationalFunction>;

    DifferentialForm() = default;
    explicit DifferentialForm(VariableSet vars) : vars_(std::move(vars)) {}

    /// coefficient * dz_{basis...}; the basis may be unsorted and is
    /// normalized with the permutation sign (repeated indices give zero).
    static DifferentialForm term(VariableSet vars, const RationalFunction& coefficient, Basis basis) {
        DifferentialForm f(std::move(vars));
        for (unsigned i : basis)
            if (i >= f.nvars()) throw ArgumentError("basis index out of range");
        int sign = sort_with_sign(basis);
        if (sign == 0) return f;
        f.add(basis, sign > 0 ? coefficient : -coefficient);
        return f;
    }

    static DifferentialForm function(const RationalFunction& f) { return term(f.variables(), f, {}); }

    static DifferentialForm differential(VariableSet vars, unsigned index) {
        auto one = RationalFunction::constant(vars, 1);
        return term(std::move(vars), one, {index});
    }

    /// coefficient * dz_0 /\ ... /\ dz_{n}.
    static DifferentialForm top(const RationalFunction& coefficient) {
        Basis all(coefficient.nvars());
        for (unsigned i = 0; i < all.size(); ++i) all[i] = i;
        return term(coefficient.variables(), coefficient, std::move(all));
    }

    const VariableSet& variables() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const ComponentMap& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    RationalFunction coefficient(const Basis& basis) const {
        auto it = comps_.find(basis);
        return it == comps_.end() ? RationalFunction(vars_) : it->second;
    }

    /// Degrees present (empty for the zero form).
    std::set<std::size_t> degrees() const {
        std::set<std::size_t> out;
        for (const auto& [b, c] : comps_) out.insert(b.size());
        return out;
    }

    /// The unique degree of a nonzero homogeneous form.
    std::optional<std::size_t> pure_degree() const {
        auto d = degrees();
        if (d.size() != 1) return std::nullopt;
        return *d.begin();
    }

    DifferentialForm homogeneous_part(std::size_t p) const {
        DifferentialForm r(vars_);
        for (const auto& [b, c] : comps_)
            if (b.size() == p) r.comps_.emplace(b, c);
        return r;
    }

    void add(const Basis& basis, const RationalFunction& c) {
        if (c.is_zero()) return;
        if (!(c.variables() == vars_)) throw ArgumentError("coefficient over a different variable list");
        auto [it, inserted] = comps_.try_emplace(basis, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    DifferentialForm& operator+=(const DifferentialForm& o) {
        check_same(o);
        for (const auto& [b, c] : o.comps_) add(b, c);
        return *this;
    }

    DifferentialForm& operator-=(const DifferentialForm& o) {
        check_same(o);
        for (const auto& [b, c] : o.comps_) add(b, -c);
        return *this;
    }

    friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
    friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }

    friend DifferentialForm operator-(DifferentialForm a) {
        for (auto& [b, c] : a.comps_) c = -c;
        return a;
    }

    /// Multiplication by a 0-form.
    friend DifferentialForm operator*(const RationalFunction& f, const DifferentialForm& a) {
        if (!(f.variables() == a.vars_)) throw ArgumentError("scalar over a different variable list");
        DifferentialForm r(a.vars_);
        for (const auto& [b, c] : a.comps_) r.add(b, f * c);
        return r;
    }

    friend DifferentialForm operator*(const Rational& k, const DifferentialForm& a) {
        DifferentialForm r(a.vars_);
        if (k == 0) return r;
        for (const auto& [b, c] : a.comps_) r.comps_.emplace(b, c * k);
        return r;
    }

    /// Equality of every coefficient as rational functions.
    friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
        if (!(a.vars_ == b.vars_) || a.comps_.size() != b.comps_.size()) return false;
        for (const auto& [basis, c] : a.comps_) {
            auto it = b.comps_.find(basis);
            if (it == b.comps_.end() || !(it->second == c)) return false;
        }
        return true;
    }

    void check_same(const DifferentialForm& o) const {
        if (!(vars_ == o.vars_)) throw ArgumentError("forms live over different variable lists");
    }

    /// Sorts in place; returns the permutation sign, or 0 on a repeated index.
    static int sort_with_sign(Basis& b) {
        int sign = 1;
        for (std::size_t i = 1; i < b.size(); ++i)
            for (std::size_t j = i; j > 0 && b[j - 1] >= b[j]; --j) {
                if (b[j - 1] == b[j]) return 0;
                std::swap(b[j - 1], b[j]);
                sign = -sign;
            }
        return sign;
    }

private:
    VariableSet vars_;
    ComponentMap comps_;
};

/// Exterior product with permutation signs; repeated indices annihilate.
inline DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    a.check_same(b);
    DifferentialForm r(a.variables());
    for (const auto& [ba, ca] : a.components())
        for (const auto& [bb, cb] : b.components()) {
            Basis merged;
            merged.reserve(ba.size() + bb.size());
            int sign = 1;
            bool repeated = false;
            // sign = (-1)^{#pairs i in ba, j in bb with i > j}
            for (unsigned j : bb) {
                std::size_t greater = 0;
                for (unsigned i : ba) {
                    if (i == j) repeated = true;
                    if (i > j) ++greater;
                }
                if (greater % 2) sign = -sign;
            }
            if (repeated) continue;
            std::merge(ba.begin(), ba.end(), bb.begin(), bb.end(), std::back_inserter(merged));
            RationalFunction c = ca * cb;
            r.add(merged, sign > 0 ? c : -c);
        }
    return r;
}

/// d(f dz_I) = sum_k (df/dz_k) dz_k /\ dz_I, coefficients differentiated by
/// the quotient rule.
inline DifferentialForm exterior_derivative(const DifferentialForm& a) {
    DifferentialForm r(a.variables());
    for (const auto& [basis, c] : a.components()) {
        for (unsigned k = 0; k < a.nvars(); ++k) {
            if (std::find(basis.begin(), basis.end(), k) != basis.end()) continue;
            RationalFunction dk = algebra::partial_derivative(c, k);
            if (dk.is_zero()) continue;
            std::size_t before = std::count_if(basis.begin(), basis.end(), [k](unsigned i) { return i < k; });
            Basis merged(basis);
            merged.insert(merged.begin() + static_cast<std::ptrdiff_t>(before), k);
            r.add(merged, before % 2 ? -dk : dk);
        }
    }
    return r;
}

/// d of a polynomial, as a 1-form.
inline DifferentialForm differential(const Polynomial& p) {
    return exterior_derivative(DifferentialForm::function(RationalFunction(p)));
}

/// Pullback along z_i -> images[i] (all images over `target`): coefficients are
/// substituted and each dz_i becomes d(images[i]).
inline DifferentialForm pullback(const DifferentialForm& a, std::span<const Polynomial> images,
                                 const VariableSet& target) {
    if (images.size() != a.nvars()) throw ArgumentError("pullback needs one image per ambient variable");
    for (const auto& img : images)
        if (!(img.variables() == target)) throw ArgumentError("pullback images over mismatched variables");
    std::vector<DifferentialForm> dimg;
    dimg.reserve(images.size());
    for (const auto& img : images) dimg.push_back(differential(img));
    DifferentialForm r(target);
    for (const auto& [basis, c] : a.components()) {
        DifferentialForm piece = DifferentialForm::function(algebra::substitute(c, images, target));
        for (unsigned i : basis) {
            piece = wedge(piece, dimg[i]);
            if (piece.is_zero()) break;
        }
        r += piece;
    }
    return r;
}

/// Result of writing a = u0^e du0 /\ r2 + theta, with u0 the first variable.
struct Du0Split {
    std::optional<int> exponent; // absent when the du0-part is zero
    DifferentialForm r2;         // free of u0 and du0
    DifferentialForm theta;      // free of du0
};

namespace detail {

/// Common exponent of variable 0 over all terms, or nullopt when mixed.
inline std::optional<unsigned> uniform_exponent(const Polynomial& p, std::set<unsigned>& seen) {
    std::optional<unsigned> e;
    for (const auto& [m, c] : p.terms()) {
        seen.insert(m[0]);
        if (e && *e != m[0]) return std::nullopt;
        e = m[0];
    }
    return e;
}

inline Polynomial strip_var0(const Polynomial& p, unsigned e) {
    Monomial m(p.nvars());
    m[0] = e;
    return algebra::divide_by_monomial(p, m);
}

} // namespace detail

inline DifferentialForm u0_power(const VariableSet& vars, int e) {
    Monomial m(vars.size());
    m[0] = static_cast<unsigned>(e < 0 ? -e : e);
    Polynomial mono = Polynomial::monomial(vars, m);
    auto one = Polynomial::constant(vars, 1);
    return DifferentialForm::function(e >= 0 ? RationalFunction(mono) : RationalFunction(one, mono));
}

/// Splits off the du0-part of a form written in chart variables u0, ..., un.
/// Throws DomainError ("not weight-pure") when the du0-part is not a single
/// pure power of u0 times a u0-free form.
inline Du0Split split_du0(const DifferentialForm& a) {
    if (a.nvars() == 0) throw ArgumentError("split_du0 needs at least one variable");
    Du0Split out{std::nullopt, DifferentialForm(a.variables()), DifferentialForm(a.variables())};
    std::set<int> exponents;
    for (const auto& [basis, c] : a.components()) {
        if (basis.empty() || basis.front() != 0) {
            out.theta.add(basis, c);
            continue;
        }
        std::set<unsigned> seen_num, seen_den;
        auto en = detail::uniform_exponent(c.numerator(), seen_num);
        auto ed = detail::uniform_exponent(c.denominator(), seen_den);
        if (!en || !ed) {
            std::string list;
            for (unsigned e : seen_num) list += (list.empty() ? "" : ",") + std::to_string(e);
            for (unsigned e : seen_den) list += (list.empty() ? "-" : ",-") + std::to_string(e);
            throw DomainError("not weight-pure: du0-part mixes u0 exponents {" + list + "}");
        }
        int e = static_cast<int>(*en) - static_cast<int>(*ed);
        exponents.insert(e);
        Basis rest(basis.begin() + 1, basis.end());
        out.r2.add(rest, RationalFunction(detail::strip_var0(c.numerator(), *en),
                                          detail::strip_var0(c.denominator(), *ed)));
    }
    if (exponents.size() > 1) {
        std::string list;
        for (int e : exponents) list += (list.empty() ? "" : ",") + std::to_string(e);
        throw DomainError("not weight-pure: du0-part mixes u0 exponents {" + list + "}");
    }
    if (!exponents.empty()) out.exponent = *exponents.begin();
    return out;
}

/// u0^e du0 /\ r2 + theta, for checking a split.
inline DifferentialForm reassemble(const Du0Split& s) {
    if (!s.exponent) return s.theta;
    const auto& vars = s.theta.variables();
    return wedge(u0_power(vars, *s.exponent), wedge(DifferentialForm::differential(vars, 0), s.r2)) + s.theta;
}

namespace detail {

inline void require_regular_on(const DifferentialForm& a, const Polynomial& f) {
    for (const auto& [b, c] : a.components())
        if (!c.denominator().is_constant() && algebra::divides(f, c.denominator()))
            throw DomainError("representative has pole on the hypersurface");
}

} // namespace detail

/// True when a and b agree as residue representatives on {f = 0}: every
/// coefficient of df /\ (a - b) has numerator divisible by f.
inline bool equal_mod_hypersurface(const DifferentialForm& a, const DifferentialForm& b, const Polynomial& f) {
    a.check_same(b);
    if (f.is_zero()) throw ArgumentError("hypersurface equation is zero");
    if (!(f.variables() == a.variables())) throw ArgumentError("hypersurface over different variables");
    auto da = a.pure_degree(), db = b.pure_degree();
    if (da && db && *da != *db) throw ArgumentError("representatives of different degrees");
    detail::require_regular_on(a, f);
    detail::require_regular_on(b, f);
    DifferentialForm diff = wedge(differential(f), a - b);
    for (const auto& [basis, c] : diff.components())
        if (!algebra::divides(f, c.numerator())) return false;
    return true;
}

/// The nonzero scalar k with a equal to k*b modulo {f = 0}, if one exists.
inline std::optional<Rational> proportional_mod_hypersurface(const DifferentialForm& a, const DifferentialForm& b,
                                                             const Polynomial& f) {
    a.check_same(b);
    if (f.is_zero()) throw ArgumentError("hypersurface equation is zero");
    detail::require_regular_on(a, f);
    detail::require_regular_on(b, f);
    DifferentialForm dfa = wedge(differential(f), a);
    DifferentialForm dfb = wedge(differential(f), b);
    std::set<Basis> keys;
    for (const auto& [k, c] : dfa.components()) keys.insert(k);
    for (const auto& [k, c] : dfb.components()) keys.insert(k);
    // remainders modulo (f) are normal forms, so k is read off leading
    // coefficients and then confirmed on every component
    std::vector<std::pair<Polynomial, Polynomial>> reduced;
    std::optional<Rational> k;
    for (const auto& key : keys) {
        RationalFunction ca = dfa.coefficient(key), cb = dfb.coefficient(key);
        Polynomial ra = algebra::divide_with_remainder(ca.numerator() * cb.denominator(), f).remainder;
        Polynomial rb = algebra::divide_with_remainder(cb.numerator() * ca.denominator(), f).remainder;
        if (!k && !rb.is_zero()) {
            if (ra.is_zero()) return std::nullopt;
            auto [ma, la] = ra.leading_term();
            auto [mb, lb] = rb.leading_term();
            if (!(ma == mb)) return std::nullopt;
            k = la / lb;
        }
        reduced.emplace_back(std::move(ra), std::move(rb));
    }
    if (!k) return std::nullopt;
    for (const auto& [ra, rb] : reduced)
        if (!(ra == rb * *k)) return std::nullopt;
    return k;
}

/// Canonical text: terms in lexicographic basis order, each rendered as
/// "(coefficient) dz1 /\ dz2"; a 0-form term is just "(coefficient)".
inline std::string to_string(const DifferentialForm& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& [basis, c] : a.components()) {
        if (!out.empty()) out += " + ";
        out += "(" + algebra::to_string(c) + ")";
        for (std::size_t i = 0; i < basis.size(); ++i) {
            out += i == 0 ? " " : " /\\ ";
            out += "d" + a.variables()[basis[i]];
        }
    }
    return out;
}

} // namespace qhres::forms

#endif // QHRES_FORMS_HPP
