#pragma once

#include "numqe/ast.hpp"
#include "numqe/signature.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace numqe {

struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(std::size_t pos, const std::string& what)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

namespace detail {

enum class Tok {
    end, ident, number, kw_forall, kw_exists, kw_inv, kw_p, kw_r, kw_w,
    lparen, rparen, lbracket, rbracket, eq, neq, eq_mod,  // = != =[
    tilde, amp, bar, arrow, iff, star, caret, plus, minus, dot,
};

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;  // ident
    Rat number;        // number (may carry a sign and a denominator)
};

inline bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
inline bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

inline std::vector<Token> lex(const std::string& text) {
    std::vector<Token> toks;
    std::size_t i = 0;
    auto number_at = [&](std::size_t start, bool negative) {
        std::size_t j = start;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        Int num(text.substr(start, j - start));
        Rat value(num);
        // p/q forms one numeral token when written without spaces
        if (j + 1 < text.size() && text[j] == '/' &&
            std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
            std::size_t k = j + 1;
            while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
            Int den(text.substr(j + 1, k - j - 1));
            if (den == 0) throw parse_error(j + 1, "zero denominator in rational literal");
            value = Rat(num, den);
            j = k;
        }
        if (negative) value = -value;
        i = j;
        return value;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        std::size_t pos = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            toks.push_back({Tok::number, pos, "", number_at(i, false)});
            continue;
        }
        if (c == '-' && i + 1 < text.size() &&
            std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
            toks.push_back({Tok::number, pos, "", number_at(i + 1, true)});
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string word = text.substr(i, j - i);
            i = j;
            Tok k = Tok::ident;
            if (word == "forall") k = Tok::kw_forall;
            else if (word == "exists") k = Tok::kw_exists;
            else if (word == "inv") k = Tok::kw_inv;
            else if (word == "w") k = Tok::kw_w;
            toks.push_back({k, pos, word, 0});
            continue;
        }
        // P, R, w are reserved even though uppercase letters are not
        // identifier characters
        if (c == 'P') { toks.push_back({Tok::kw_p, pos, "", 0}); ++i; continue; }
        if (c == 'R') { toks.push_back({Tok::kw_r, pos, "", 0}); ++i; continue; }
        auto two = [&](const char* s) {
            return i + 1 < text.size() && text[i] == s[0] && text[i + 1] == s[1];
        };
        if (two("!=")) { toks.push_back({Tok::neq, pos, "", 0}); i += 2; continue; }
        if (two("->")) { toks.push_back({Tok::arrow, pos, "", 0}); i += 2; continue; }
        if (i + 2 < text.size() && text[i] == '<' && text[i + 1] == '-' && text[i + 2] == '>') {
            toks.push_back({Tok::iff, pos, "", 0});
            i += 3;
            continue;
        }
        if (two("=[")) { toks.push_back({Tok::eq_mod, pos, "", 0}); i += 2; continue; }
        switch (c) {
            case '=': toks.push_back({Tok::eq, pos, "", 0}); break;
            case '(': toks.push_back({Tok::lparen, pos, "", 0}); break;
            case ')': toks.push_back({Tok::rparen, pos, "", 0}); break;
            case '[': toks.push_back({Tok::lbracket, pos, "", 0}); break;
            case ']': toks.push_back({Tok::rbracket, pos, "", 0}); break;
            case '~': toks.push_back({Tok::tilde, pos, "", 0}); break;
            case '&': toks.push_back({Tok::amp, pos, "", 0}); break;
            case '|': toks.push_back({Tok::bar, pos, "", 0}); break;
            case '*': toks.push_back({Tok::star, pos, "", 0}); break;
            case '^': toks.push_back({Tok::caret, pos, "", 0}); break;
            case '+': toks.push_back({Tok::plus, pos, "", 0}); break;
            case '-': toks.push_back({Tok::minus, pos, "", 0}); break;
            case '.': toks.push_back({Tok::dot, pos, "", 0}); break;
            default: throw parse_error(pos, std::string("unexpected character '") + c + "'");
        }
        ++i;
    }
    toks.push_back({Tok::end, text.size(), "", 0});
    return toks;
}

// Recursive descent over the token stream. Backtracking is used at one
// choice point only: '(' may open either a term or a formula.
class Parser {
  public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    FormulaPtr parse_formula_all() {
        FormulaPtr f = formula();
        expect(Tok::end, "trailing input after formula");
        return f;
    }

  private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;

    const Token& cur() const { return toks_[at_]; }
    bool accept(Tok k) {
        if (cur().kind != k) return false;
        ++at_;
        return true;
    }
    void expect(Tok k, const std::string& what) {
        if (!accept(k)) throw parse_error(cur().pos, what);
    }

    Int integer_token(const std::string& what) {
        if (cur().kind != Tok::number || !is_integer(cur().number))
            throw parse_error(cur().pos, what);
        Int v = numer(cur().number);
        ++at_;
        return v;
    }

    // formula := iff
    FormulaPtr formula() { return iff(); }

    FormulaPtr iff() {
        FormulaPtr a = implication();
        if (accept(Tok::iff)) return f_iff(a, iff());
        return a;
    }

    FormulaPtr implication() {
        FormulaPtr a = disjunction();
        if (accept(Tok::arrow)) return f_implies(a, implication());
        return a;
    }

    FormulaPtr disjunction() {
        FormulaPtr a = conjunction();
        while (accept(Tok::bar)) a = f_or(a, conjunction());
        return a;
    }

    FormulaPtr conjunction() {
        FormulaPtr a = unary_formula();
        while (accept(Tok::amp)) a = f_and(a, unary_formula());
        return a;
    }

    FormulaPtr unary_formula() {
        if (accept(Tok::tilde)) return f_not(unary_formula());
        if (cur().kind == Tok::kw_forall || cur().kind == Tok::kw_exists) {
            bool universal = cur().kind == Tok::kw_forall;
            ++at_;
            if (cur().kind != Tok::ident)
                throw parse_error(cur().pos, "expected variable after quantifier");
            std::string v = cur().text;
            ++at_;
            expect(Tok::dot, "expected '.' after quantified variable");
            FormulaPtr body = formula();  // scope extends maximally right
            return universal ? f_forall(v, body) : f_exists(v, body);
        }
        return atom_or_paren();
    }

    FormulaPtr atom_or_paren() {
        if (cur().kind == Tok::kw_p) {
            ++at_;
            expect(Tok::lparen, "expected '(' after P");
            TermPtr t = term();
            expect(Tok::rparen, "expected ')'");
            return f_positive(t);
        }
        if (cur().kind == Tok::kw_r) {
            ++at_;
            expect(Tok::lbracket, "expected '[' after R");
            Int n = integer_token("expected integer power index");
            if (n < 2) throw parse_error(cur().pos, "power predicate index must be >= 2");
            expect(Tok::rbracket, "expected ']'");
            expect(Tok::lparen, "expected '('");
            TermPtr t = term();
            expect(Tok::rparen, "expected ')'");
            return f_nth_power(n, t);
        }
        if (cur().kind == Tok::lparen) {
            // try a relational atom whose left term is parenthesized first;
            // fall back to a parenthesized formula
            std::size_t save = at_;
            try {
                return relational_atom();
            } catch (const parse_error&) {
                at_ = save;
            }
            expect(Tok::lparen, "expected '('");
            FormulaPtr f = formula();
            expect(Tok::rparen, "expected ')'");
            return f;
        }
        return relational_atom();
    }

    FormulaPtr relational_atom() {
        TermPtr a = term();
        if (accept(Tok::eq)) return f_eq(a, term());
        if (accept(Tok::neq)) return f_neq(a, term());
        if (accept(Tok::eq_mod)) {
            Int n = integer_token("expected integer modulus");
            if (n < 2) throw parse_error(cur().pos, "congruence modulus must be >= 2");
            expect(Tok::rbracket, "expected ']'");
            return f_congruent(n, a, term());
        }
        throw parse_error(cur().pos, "expected '=', '!=' or '=[' after term");
    }

    // term := sum; sum := unary ('+' unary)*
    TermPtr term() { return sum(); }

    TermPtr sum() {
        TermPtr a = unary_term();
        while (accept(Tok::plus)) a = t_add(a, unary_term());
        return a;
    }

    TermPtr unary_term() {
        if (accept(Tok::minus)) return t_neg(unary_term());
        if (cur().kind == Tok::number && toks_[at_ + 1].kind == Tok::dot) {
            // scalar coefficient n . t
            std::size_t pos = cur().pos;
            if (!is_integer(cur().number) || cur().number < 1)
                throw parse_error(pos, "scalar coefficient must be a positive integer");
            Int n = numer(cur().number);
            at_ += 2;
            return t_scale(n, unary_term());
        }
        return product();
    }

    TermPtr product() {
        TermPtr a = postfix();
        while (accept(Tok::star)) a = t_mul(a, postfix());
        return a;
    }

    TermPtr postfix() {
        TermPtr a = primary();
        while (accept(Tok::caret)) {
            std::size_t pos = cur().pos;
            Int k = integer_token("expected integer exponent");
            if (k == 0) throw parse_error(pos, "power exponent must be nonzero");
            a = t_pow(a, k);
        }
        return a;
    }

    TermPtr primary() {
        if (cur().kind == Tok::ident) {
            std::string v = cur().text;
            ++at_;
            return t_var(v);
        }
        if (cur().kind == Tok::number) {
            Rat q = cur().number;
            ++at_;
            return t_num(q);
        }
        if (cur().kind == Tok::kw_w) {
            ++at_;
            expect(Tok::lbracket, "expected '[' after w");
            Int n = integer_token("expected integer root index");
            if (n < 2) throw parse_error(cur().pos, "root of unity index must be >= 2");
            expect(Tok::rbracket, "expected ']'");
            return t_omega(n);
        }
        if (accept(Tok::kw_inv)) {
            expect(Tok::lparen, "expected '(' after inv");
            TermPtr t = term();
            expect(Tok::rparen, "expected ')'");
            return t_inv(t);
        }
        if (accept(Tok::lparen)) {
            TermPtr t = term();
            expect(Tok::rparen, "expected ')'");
            return t;
        }
        throw parse_error(cur().pos, "expected a term");
    }
};

}  // namespace detail

// Signature check: every node kind and every numeral must be admitted by
// the theory. Violations are signature errors, distinct from syntax errors.
inline void check_signature(const TermPtr& t, const Signature& s) {
    if (!t) return;
    switch (t->kind) {
        case TermKind::variable: break;
        case TermKind::numeral:
            if (!s.admits_numeral(t->value))
                throw signature_error(0, "numeral " + numqe::to_string(t->value) +
                                             " not admitted in " + theory_name(s.theory));
            break;
        case TermKind::omega:
            if (!s.admits_omega())
                throw signature_error(0, "roots of unity not in " + theory_name(s.theory));
            break;
        case TermKind::product:
        case TermKind::inverse:
        case TermKind::power:
            if (!s.multiplicative())
                throw signature_error(0, "multiplicative symbol not in " + theory_name(s.theory));
            break;
        case TermKind::sum:
        case TermKind::negation:
        case TermKind::scalar:
            if (!s.additive())
                throw signature_error(0, "additive symbol not in " + theory_name(s.theory));
            break;
    }
    check_signature(t->child, s);
    check_signature(t->child2, s);
}

inline void check_signature(const FormulaPtr& f, const Signature& s) {
    if (!f) return;
    if (f->kind == FormulaKind::atom) {
        switch (f->pred) {
            case Pred::eq:
            case Pred::neq: break;
            case Pred::positive:
                if (!s.admits_positivity())
                    throw signature_error(0, "positivity predicate not in " + theory_name(s.theory));
                break;
            case Pred::nth_power:
                if (!s.admits_root_predicate())
                    throw signature_error(0, "power predicate not in " + theory_name(s.theory));
                break;
            case Pred::congruent:
                if (!s.admits_congruence())
                    throw signature_error(0, "congruence not in " + theory_name(s.theory));
                break;
        }
        check_signature(f->lhs_term, s);
        check_signature(f->rhs_term, s);
        return;
    }
    check_signature(f->sub, s);
    check_signature(f->sub2, s);
}

inline FormulaPtr parse(const std::string& text, const Signature& s) {
    detail::Parser p(text);
    FormulaPtr f = p.parse_formula_all();
    check_signature(f, s);
    return f;
}

inline TermPtr parse_term(const std::string& text, const Signature& s) {
    // reuse the formula machinery: parse "t = t" is wasteful, lex directly
    detail::Parser p(text + " = 0");
    FormulaPtr f = p.parse_formula_all();
    check_signature(f->lhs_term, s);
    return f->lhs_term;
}

}  // namespace numqe
