#ifndef QHRES_PARSER_HPP
#define QHRES_PARSER_HPP

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qhres/forms.hpp"

// Grammar, loosest binding first:
//
//   sum      := wedge (('+' | '-') wedge)*
//   wedge    := term ('/\' term)*
//   term     := factor ('*' factor)*          a parenthesized factor may also be
//                                             directly followed by a differential
//   factor   := atom ['^' uint]
//   atom     := rational | ident | 'd' ident | '(' sum ')' | '-' atom
//   rational := uint ['/' uint]
//
// A bare "p/q" literal may not appear inside a product or under a power;
// write "(1/3)*x". Implicit multiplication such as "2x" is rejected.

namespace qhres::parser {

using algebra::Polynomial;
using algebra::Rational;
using algebra::RationalFunction;
using algebra::VariableSet;
using forms::DifferentialForm;

class ParseError : public ArgumentError {
public:
    ParseError(std::string msg, std::size_t line, std::size_t column, std::vector<std::string> expected = {})
        : ArgumentError(format(msg, line, column, expected)), line_(line), column_(column),
          expected_(std::move(expected)) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t col,
                              const std::vector<std::string>& expected) {
        std::string out = std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
        if (!expected.empty()) {
            out += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) out += (i ? ", " : "") + expected[i];
            out += ")";
        }
        return out;
    }

    std::size_t line_, column_;
    std::vector<std::string> expected_;
};

enum class NodeKind { Rational, Variable, Sum, Product, Power, Negation, Differential, Wedge };

/// Expression tree. Sum children carry a sign each (+1 / -1).
struct Node {
    NodeKind kind;
    std::size_t line = 1, column = 1;
    Rational value;                 // Rational literal
    std::size_t variable = 0;       // Variable / Differential
    unsigned exponent = 0;          // Power
    std::vector<int> signs;         // Sum
    std::vector<std::unique_ptr<Node>> children;
    bool bare_fraction = false;     // unparenthesized p/q literal
};

using NodePtr = std::unique_ptr<Node>;

namespace detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, Slash, Wedge, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, column;
};

inline std::string describe(Tok t) {
    switch (t) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Slash: return "'/'";
    case Tok::Wedge: return "'/\\'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
    }
    return "?";
}

inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        Token t{Tok::End, {}, line, col};
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            t.kind = Tok::Number;
            t.text = std::string(text.substr(i, j - i));
            advance(j - i);
        } else if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            t.kind = Tok::Ident;
            t.text = std::string(text.substr(i, j - i));
            advance(j - i);
        } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '\\') {
            t.kind = Tok::Wedge;
            t.text = "/\\";
            advance(2);
        } else {
            switch (c) {
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '^': t.kind = Tok::Caret; break;
            case '/': t.kind = Tok::Slash; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            default: {
                std::string shown = std::isprint(c) ? std::string(1, static_cast<char>(c))
                                                    : "\\x" + std::to_string(static_cast<unsigned>(c));
                throw ParseError("unexpected character '" + shown + "'", line, col);
            }
            }
            t.text = std::string(1, static_cast<char>(c));
            advance(1);
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::End, {}, line, col});
    return out;
}

constexpr unsigned max_exponent = 1000;
constexpr std::size_t max_depth = 200;

class Parser {
public:
    Parser(std::string_view text, const VariableSet& vars) : toks_(tokenize(text)), vars_(vars) {}

    NodePtr parse() {
        auto n = sum();
        if (peek().kind != Tok::End) fail("unexpected " + describe(peek().kind), {"'+'", "'-'", "'*'", "'/\\'", "end of input"});
        return n;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
        throw ParseError(msg, peek().line, peek().column, std::move(expected));
    }

    NodePtr make(NodeKind k, const Token& at) const {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->line = at.line;
        n->column = at.column;
        return n;
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : p_(p) {
            if (++p_.depth_ > max_depth) p_.fail("expression nested too deeply", {});
        }
        ~DepthGuard() { --p_.depth_; }
        Parser& p_;
    };

    NodePtr sum() {
        DepthGuard guard(*this);
        const Token& start = peek();
        auto first = wedge();
        if (peek().kind != Tok::Plus && peek().kind != Tok::Minus) return first;
        auto n = make(NodeKind::Sum, start);
        n->signs.push_back(1);
        n->children.push_back(std::move(first));
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            n->signs.push_back(take().kind == Tok::Plus ? 1 : -1);
            n->children.push_back(wedge());
        }
        return n;
    }

    NodePtr wedge() {
        const Token& start = peek();
        auto first = term();
        if (peek().kind != Tok::Wedge) return first;
        auto n = make(NodeKind::Wedge, start);
        n->children.push_back(std::move(first));
        while (peek().kind == Tok::Wedge) {
            take();
            n->children.push_back(term());
        }
        return n;
    }

    bool differential_follows() const {
        const Token& t = peek();
        if (t.kind != Tok::Ident) return false;
        return !vars_.index_of(t.text) && (t.text == "d" || (t.text[0] == 'd' && vars_.index_of(t.text.substr(1))));
    }

    NodePtr term() {
        const Token& start = peek();
        std::vector<NodePtr> factors;
        factors.push_back(factor());
        for (;;) {
            if (peek().kind == Tok::Star) {
                take();
                factors.push_back(factor());
            } else if (last_was_group_ && differential_follows()) {
                factors.push_back(factor());
            } else {
                break;
            }
        }
        if (factors.size() == 1) return std::move(factors.front());
        for (const auto& f : factors)
            if (f->bare_fraction)
                throw ParseError("rational literal in a product must be parenthesized, e.g. (1/3)*x", f->line,
                                 f->column, {"'('"});
        auto n = make(NodeKind::Product, start);
        n->children = std::move(factors);
        return n;
    }

    NodePtr factor() {
        auto base = atom();
        if (peek().kind != Tok::Caret) return base;
        if (base->bare_fraction)
            throw ParseError("rational literal under a power must be parenthesized", base->line, base->column, {"'('"});
        const Token& caret = take();
        if (peek().kind != Tok::Number) fail("exponent must be a nonnegative integer", {"number"});
        const Token& e = take();
        if (e.text.size() > 4 || std::stoul(e.text) > max_exponent)
            throw ParseError("exponent exceeds " + std::to_string(max_exponent), e.line, e.column);
        auto n = make(NodeKind::Power, caret);
        n->exponent = static_cast<unsigned>(std::stoul(e.text));
        n->children.push_back(std::move(base));
        last_was_group_ = false;
        return n;
    }

    NodePtr atom() {
        DepthGuard guard(*this);
        last_was_group_ = false;
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Number: {
            take();
            auto n = make(NodeKind::Rational, t);
            algebra::Integer p(t.text);
            if (peek().kind == Tok::Slash) {
                take();
                if (peek().kind != Tok::Number) fail("denominator of a rational literal", {"number"});
                const Token& q = take();
                algebra::Integer qi(q.text);
                if (qi == 0) throw ParseError("zero denominator", q.line, q.column);
                n->value = Rational(p, qi);
                n->bare_fraction = true;
            } else {
                n->value = Rational(p);
            }
            if (peek().kind == Tok::Ident || peek().kind == Tok::LParen || peek().kind == Tok::Number)
                fail("implicit multiplication is not supported", {"'*'"});
            return n;
        }
        case Tok::Ident: {
            take();
            if (auto idx = vars_.index_of(t.text)) {
                auto n = make(NodeKind::Variable, t);
                n->variable = *idx;
                reject_juxtaposition();
                return n;
            }
            if (t.text == "d" && peek().kind == Tok::Ident) {
                const Token& v = take();
                auto idx = vars_.index_of(v.text);
                if (!idx) throw ParseError("unknown variable '" + v.text + "'", v.line, v.column, known());
                auto n = make(NodeKind::Differential, t);
                n->variable = *idx;
                reject_juxtaposition();
                return n;
            }
            if (t.text.size() > 1 && t.text[0] == 'd') {
                if (auto idx = vars_.index_of(t.text.substr(1))) {
                    auto n = make(NodeKind::Differential, t);
                    n->variable = *idx;
                    reject_juxtaposition();
                    return n;
                }
            }
            throw ParseError("unknown variable '" + t.text + "'", t.line, t.column, known());
        }
        case Tok::LParen: {
            take();
            auto inner = sum();
            if (peek().kind != Tok::RParen) fail("unbalanced parenthesis", {"')'"});
            take();
            inner->bare_fraction = false;
            last_was_group_ = true;
            return inner;
        }
        case Tok::Minus: {
            take();
            // -x^2 is -(x^2), so the operand is a factor rather than an atom
            auto n = make(NodeKind::Negation, t);
            auto inner = factor();
            n->bare_fraction = inner->bare_fraction;
            n->children.push_back(std::move(inner));
            last_was_group_ = false;
            return n;
        }
        default:
            fail("unexpected " + describe(t.kind), {"number", "identifier", "'('", "'-'"});
        }
    }

    void reject_juxtaposition() const {
        if (peek().kind == Tok::Ident || peek().kind == Tok::Number || peek().kind == Tok::LParen)
            fail("implicit multiplication is not supported", {"'*'"});
    }

    std::vector<std::string> known() const {
        std::vector<std::string> out;
        for (const auto& v : vars_.names()) out.push_back(v);
        return out;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;
    bool last_was_group_ = false;
    const VariableSet& vars_;
};

constexpr std::size_t max_terms = 200000;

inline void guard_size(const DifferentialForm& f, const Node& at) {
    std::size_t total = 0;
    for (const auto& [b, c] : f.components()) total += c.numerator().term_count();
    if (total > max_terms) throw ParseError("expression expands to too many terms", at.line, at.column);
}

inline DifferentialForm evaluate(const Node& n, const VariableSet& vars) {
    switch (n.kind) {
    case NodeKind::Rational: return DifferentialForm::function(RationalFunction::constant(vars, n.value));
    case NodeKind::Variable: return DifferentialForm::function(RationalFunction(Polynomial::variable(vars, n.variable)));
    case NodeKind::Differential: return DifferentialForm::differential(vars, static_cast<unsigned>(n.variable));
    case NodeKind::Negation: return -evaluate(*n.children.front(), vars);
    case NodeKind::Sum: {
        DifferentialForm acc(vars);
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            auto c = evaluate(*n.children[i], vars);
            if (n.signs[i] > 0) acc += c;
            else acc -= c;
        }
        guard_size(acc, n);
        return acc;
    }
    case NodeKind::Product:
    case NodeKind::Wedge: {
        DifferentialForm acc = evaluate(*n.children.front(), vars);
        for (std::size_t i = 1; i < n.children.size(); ++i) {
            acc = forms::wedge(acc, evaluate(*n.children[i], vars));
            guard_size(acc, n);
        }
        return acc;
    }
    case NodeKind::Power: {
        DifferentialForm base = evaluate(*n.children.front(), vars);
        if (n.exponent == 0) return DifferentialForm::function(RationalFunction::constant(vars, 1));
        auto deg = base.degrees();
        if (!deg.empty() && (deg.size() > 1 || *deg.begin() != 0))
            throw ParseError("power of a form of positive degree", n.line, n.column);
        Polynomial p = base.is_zero() ? Polynomial(vars) : base.coefficient({}).as_polynomial();
        // estimate before expanding: a t-term base has at most C(t+e-1, e) terms in its power
        if (p.term_count() > 1) {
            double est = 1;
            for (unsigned k = 1; k <= n.exponent && est <= double(max_terms); ++k)
                est = est * double(p.term_count() - 1 + k) / double(k);
            if (est > double(max_terms)) throw ParseError("expression expands to too many terms", n.line, n.column);
        }
        return DifferentialForm::function(RationalFunction(p.pow(n.exponent)));
    }
    }
    return DifferentialForm(vars);
}

inline const Node* find_differential(const Node& n) {
    if (n.kind == NodeKind::Differential) return &n;
    for (const auto& c : n.children)
        if (auto d = find_differential(*c)) return d;
    return nullptr;
}

} // namespace detail

/// Builds the expression tree without evaluating it.
inline NodePtr parse_expression(std::string_view text, const VariableSet& variables) {
    return detail::Parser(text, variables).parse();
}

/// Parses a polynomial in the given variables; differentials are rejected.
inline Polynomial parse_polynomial(std::string_view text, const VariableSet& variables) {
    auto ast = parse_expression(text, variables);
    if (auto d = detail::find_differential(*ast))
        throw ParseError("differential not allowed in a polynomial", d->line, d->column);
    auto f = detail::evaluate(*ast, variables);
    if (f.is_zero()) return Polynomial(variables);
    return f.coefficient({}).as_polynomial();
}

/// Parses a differential form; '*' between forms and '/\' both mean the
/// exterior product. The result is in normal form (sorted basis, signs
/// resolved).
inline DifferentialForm parse_form(std::string_view text, const VariableSet& variables) {
    auto ast = parse_expression(text, variables);
    return detail::evaluate(*ast, variables);
}

} // namespace qhres::parser

#endif // QHRES_PARSER_HPP
