#pragma once

#include "numqe/ints.hpp"
#include "numqe/signature.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace numqe {

// Immutable term/formula trees, shared freely. Terms and formulas are
// parsed and printed against the one ASCII grammar the CLI owns; which
// node kinds are admissible depends on the ambient Signature.

enum class TermKind {
    variable,
    numeral,   // rational constant; covers the signature constants 0, 1, -1
    omega,     // primitive root of unity w[n], n >= 2 (c-mul only)
    product,   // t * u
    inverse,   // inv(t)
    power,     // t ^ k, k != 0
    sum,       // t + u
    negation,  // - t
    scalar,    // n . t, n >= 1
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    TermKind kind;
    std::string var;      // variable
    Rat value;            // numeral
    Int index = 0;        // omega: n; power: exponent k; scalar: coefficient n
    TermPtr child, child2;
};

inline TermPtr t_var(std::string name) {
    return std::make_shared<Term>(Term{TermKind::variable, std::move(name), 0, 0, nullptr, nullptr});
}
inline TermPtr t_num(Rat q) {
    return std::make_shared<Term>(Term{TermKind::numeral, "", std::move(q), 0, nullptr, nullptr});
}
inline TermPtr t_zero() { return t_num(0); }
inline TermPtr t_one() { return t_num(1); }
inline TermPtr t_omega(Int n) {
    assert(n >= 2);
    return std::make_shared<Term>(Term{TermKind::omega, "", 0, std::move(n), nullptr, nullptr});
}
inline TermPtr t_mul(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(Term{TermKind::product, "", 0, 0, std::move(a), std::move(b)});
}
inline TermPtr t_inv(TermPtr a) {
    return std::make_shared<Term>(Term{TermKind::inverse, "", 0, 0, std::move(a), nullptr});
}
inline TermPtr t_pow(TermPtr a, Int k) {
    assert(k != 0);
    if (k == 1) return a;
    return std::make_shared<Term>(Term{TermKind::power, "", 0, std::move(k), std::move(a), nullptr});
}
inline TermPtr t_add(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(Term{TermKind::sum, "", 0, 0, std::move(a), std::move(b)});
}
inline TermPtr t_neg(TermPtr a) {
    return std::make_shared<Term>(Term{TermKind::negation, "", 0, 0, std::move(a), nullptr});
}
inline TermPtr t_scale(Int n, TermPtr a) {
    assert(n >= 1);
    if (n == 1) return a;
    return std::make_shared<Term>(Term{TermKind::scalar, "", 0, std::move(n), std::move(a), nullptr});
}

enum class FormulaKind {
    atom,
    negation,     // ~ f
    conjunction,  // f & g
    disjunction,  // f | g
    implication,  // f -> g
    equivalence,  // f <-> g
    exists,       // exists x. f
    forall,       // forall x. f
};

enum class Pred {
    eq,         // t = u
    neq,        // t != u
    positive,   // P(t)
    nth_power,  // R[n](t)
    congruent,  // t =[n] u
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FormulaKind kind;
    // atom
    Pred pred = Pred::eq;
    Int pred_index = 0;  // R[n] / =[n]
    TermPtr lhs_term, rhs_term;
    // connectives / quantifiers
    FormulaPtr sub, sub2;
    std::string var;
};

inline FormulaPtr f_eq(TermPtr a, TermPtr b) {
    return std::make_shared<Formula>(
        Formula{FormulaKind::atom, Pred::eq, 0, std::move(a), std::move(b), nullptr, nullptr, ""});
}
inline FormulaPtr f_neq(TermPtr a, TermPtr b) {
    return std::make_shared<Formula>(
        Formula{FormulaKind::atom, Pred::neq, 0, std::move(a), std::move(b), nullptr, nullptr, ""});
}
inline FormulaPtr f_positive(TermPtr a) {
    return std::make_shared<Formula>(
        Formula{FormulaKind::atom, Pred::positive, 0, std::move(a), nullptr, nullptr, nullptr, ""});
}
inline FormulaPtr f_nth_power(Int n, TermPtr a) {
    assert(n >= 2);
    return std::make_shared<Formula>(Formula{FormulaKind::atom, Pred::nth_power, std::move(n),
                                             std::move(a), nullptr, nullptr, nullptr, ""});
}
inline FormulaPtr f_congruent(Int n, TermPtr a, TermPtr b) {
    assert(n >= 2);
    return std::make_shared<Formula>(Formula{FormulaKind::atom, Pred::congruent, std::move(n),
                                             std::move(a), std::move(b), nullptr, nullptr, ""});
}
inline FormulaPtr f_not(FormulaPtr f) {
    return std::make_shared<Formula>(
        Formula{FormulaKind::negation, Pred::eq, 0, nullptr, nullptr, std::move(f), nullptr, ""});
}
inline FormulaPtr f_binary(FormulaKind k, FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(
        Formula{k, Pred::eq, 0, nullptr, nullptr, std::move(a), std::move(b), ""});
}
inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
    return f_binary(FormulaKind::conjunction, std::move(a), std::move(b));
}
inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
    return f_binary(FormulaKind::disjunction, std::move(a), std::move(b));
}
inline FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
    return f_binary(FormulaKind::implication, std::move(a), std::move(b));
}
inline FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
    return f_binary(FormulaKind::equivalence, std::move(a), std::move(b));
}
inline FormulaPtr f_quant(FormulaKind k, std::string v, FormulaPtr body) {
    assert(k == FormulaKind::exists || k == FormulaKind::forall);
    return std::make_shared<Formula>(
        Formula{k, Pred::eq, 0, nullptr, nullptr, std::move(body), nullptr, std::move(v)});
}
inline FormulaPtr f_exists(std::string v, FormulaPtr body) {
    return f_quant(FormulaKind::exists, std::move(v), std::move(body));
}
inline FormulaPtr f_forall(std::string v, FormulaPtr body) {
    return f_quant(FormulaKind::forall, std::move(v), std::move(body));
}

// Canonical truth constants: the literal 0 = 0 and its negation.
inline FormulaPtr f_true() { return f_eq(t_zero(), t_zero()); }
inline FormulaPtr f_false() { return f_neq(t_zero(), t_zero()); }

inline FormulaPtr f_and_all(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) return f_true();
    FormulaPtr r = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) r = f_and(r, fs[i]);
    return r;
}
inline FormulaPtr f_or_all(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) return f_false();
    FormulaPtr r = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) r = f_or(r, fs[i]);
    return r;
}

// ---------------------------------------------------------------------------
// structural equality

inline bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TermKind::variable: return a->var == b->var;
        case TermKind::numeral: return a->value == b->value;
        case TermKind::omega: return a->index == b->index;
        case TermKind::product:
        case TermKind::sum:
            return term_equal(a->child, b->child) && term_equal(a->child2, b->child2);
        case TermKind::inverse:
        case TermKind::negation: return term_equal(a->child, b->child);
        case TermKind::power:
        case TermKind::scalar:
            return a->index == b->index && term_equal(a->child, b->child);
    }
    return false;
}

inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case FormulaKind::atom:
            return a->pred == b->pred && a->pred_index == b->pred_index &&
                   term_equal(a->lhs_term, b->lhs_term) && term_equal(a->rhs_term, b->rhs_term);
        case FormulaKind::negation: return formula_equal(a->sub, b->sub);
        case FormulaKind::conjunction:
        case FormulaKind::disjunction:
        case FormulaKind::implication:
        case FormulaKind::equivalence:
            return formula_equal(a->sub, b->sub) && formula_equal(a->sub2, b->sub2);
        case FormulaKind::exists:
        case FormulaKind::forall:
            return a->var == b->var && formula_equal(a->sub, b->sub);
    }
    return false;
}

// ---------------------------------------------------------------------------
// printing (the inverse of the parser, deterministic spacing)

namespace detail {

// term precedence levels: sum=1, scalar/negation=2, product=3, power=4, atom=5
inline int term_level(const Term& t) {
    switch (t.kind) {
        case TermKind::sum: return 1;
        case TermKind::negation:
        case TermKind::scalar: return 2;
        case TermKind::product: return 3;
        case TermKind::power: return 4;
        default: return 5;
    }
}

inline void print_term(std::string& out, const TermPtr& t, int min_level);

inline void print_term_paren(std::string& out, const TermPtr& t, int min_level) {
    if (term_level(*t) < min_level) {
        out += '(';
        print_term(out, t, 1);
        out += ')';
    } else {
        print_term(out, t, 1);
    }
}

inline void print_term(std::string& out, const TermPtr& t, int /*min_level*/) {
    switch (t->kind) {
        case TermKind::variable: out += t->var; return;
        case TermKind::numeral: out += numqe::to_string(t->value); return;
        case TermKind::omega:
            out += "w[";
            out += t->index.str();
            out += ']';
            return;
        case TermKind::product:
            print_term_paren(out, t->child, 3);
            out += " * ";
            print_term_paren(out, t->child2, 4);  // right operand must not be a product
            return;
        case TermKind::inverse:
            out += "inv(";
            print_term(out, t->child, 1);
            out += ')';
            return;
        case TermKind::power:
            print_term_paren(out, t->child, 5);
            out += " ^ ";
            out += t->index.str();
            return;
        case TermKind::sum:
            print_term_paren(out, t->child, 1);
            out += " + ";
            print_term_paren(out, t->child2, 2);  // keep right-nested sums parenthesized
            return;
        case TermKind::negation:
            out += '-';
            // parenthesize numerals (the "-" would merge into the literal
            // token) and anything that does not reprint atomically
            if (term_level(*t->child) >= 5 && t->child->kind != TermKind::numeral) {
                print_term(out, t->child, 1);
            } else {
                out += '(';
                print_term(out, t->child, 1);
                out += ')';
            }
            return;
        case TermKind::scalar:
            out += t->index.str();
            out += " . ";
            print_term_paren(out, t->child, 2);
            return;
    }
}

// formula precedence: iff=1, implies=2, or=3, and=4, not=5, atom/quant inside parens=6
inline int formula_level(const Formula& f) {
    switch (f.kind) {
        case FormulaKind::equivalence: return 1;
        case FormulaKind::implication: return 2;
        case FormulaKind::disjunction: return 3;
        case FormulaKind::conjunction: return 4;
        case FormulaKind::negation: return 5;
        case FormulaKind::atom: return 6;
        default: return 0;  // quantifiers: maximal right scope, parenthesize as operand
    }
}

inline void print_formula(std::string& out, const FormulaPtr& f);

inline void print_formula_at(std::string& out, const FormulaPtr& f, int min_level) {
    if (formula_level(*f) < min_level) {
        out += '(';
        print_formula(out, f);
        out += ')';
    } else {
        print_formula(out, f);
    }
}

inline void print_formula(std::string& out, const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::atom:
            switch (f->pred) {
                case Pred::eq:
                    print_term(out, f->lhs_term, 1);
                    out += " = ";
                    print_term(out, f->rhs_term, 1);
                    return;
                case Pred::neq:
                    print_term(out, f->lhs_term, 1);
                    out += " != ";
                    print_term(out, f->rhs_term, 1);
                    return;
                case Pred::positive:
                    out += "P(";
                    print_term(out, f->lhs_term, 1);
                    out += ')';
                    return;
                case Pred::nth_power:
                    out += "R[";
                    out += f->pred_index.str();
                    out += "](";
                    print_term(out, f->lhs_term, 1);
                    out += ')';
                    return;
                case Pred::congruent:
                    print_term(out, f->lhs_term, 1);
                    out += " =[";
                    out += f->pred_index.str();
                    out += "] ";
                    print_term(out, f->rhs_term, 1);
                    return;
            }
            return;
        case FormulaKind::negation:
            out += '~';
            print_formula_at(out, f->sub, 5);
            return;
        case FormulaKind::conjunction:
            print_formula_at(out, f->sub, 4);
            out += " & ";
            print_formula_at(out, f->sub2, 5);
            return;
        case FormulaKind::disjunction:
            print_formula_at(out, f->sub, 3);
            out += " | ";
            print_formula_at(out, f->sub2, 4);
            return;
        case FormulaKind::implication:
            print_formula_at(out, f->sub, 3);  // right-associative
            out += " -> ";
            print_formula_at(out, f->sub2, 2);
            return;
        case FormulaKind::equivalence:
            print_formula_at(out, f->sub, 2);  // right-associative
            out += " <-> ";
            print_formula_at(out, f->sub2, 1);
            return;
        case FormulaKind::exists:
        case FormulaKind::forall:
            out += f->kind == FormulaKind::exists ? "exists " : "forall ";
            out += f->var;
            out += ". ";
            print_formula(out, f->sub);
            return;
    }
}

}  // namespace detail

inline std::string print(const TermPtr& t) {
    std::string out;
    detail::print_term(out, t, 1);
    return out;
}

inline std::string print(const FormulaPtr& f) {
    std::string out;
    detail::print_formula(out, f);
    return out;
}

// ---------------------------------------------------------------------------
// variable occurrence

inline void collect_term_vars(const TermPtr& t, std::set<std::string>& vars) {
    if (!t) return;
    if (t->kind == TermKind::variable) vars.insert(t->var);
    collect_term_vars(t->child, vars);
    collect_term_vars(t->child2, vars);
}

inline bool term_mentions(const TermPtr& t, const std::string& v) {
    if (!t) return false;
    if (t->kind == TermKind::variable) return t->var == v;
    return term_mentions(t->child, v) || term_mentions(t->child2, v);
}

inline bool mentions(const FormulaPtr& f, const std::string& v) {
    if (!f) return false;
    if (f->kind == FormulaKind::atom)
        return term_mentions(f->lhs_term, v) || term_mentions(f->rhs_term, v);
    if ((f->kind == FormulaKind::exists || f->kind == FormulaKind::forall) && f->var == v)
        return false;  // shadowed
    return mentions(f->sub, v) || mentions(f->sub2, v);
}

inline void collect_free_vars(const FormulaPtr& f, std::set<std::string>& bound,
                              std::set<std::string>& free) {
    if (!f) return;
    if (f->kind == FormulaKind::atom) {
        std::set<std::string> vs;
        collect_term_vars(f->lhs_term, vs);
        collect_term_vars(f->rhs_term, vs);
        for (const auto& v : vs)
            if (bound.count(v) == 0) free.insert(v);
        return;
    }
    if (f->kind == FormulaKind::exists || f->kind == FormulaKind::forall) {
        bool was_bound = bound.count(f->var) != 0;
        bound.insert(f->var);
        collect_free_vars(f->sub, bound, free);
        if (!was_bound) bound.erase(f->var);
        return;
    }
    collect_free_vars(f->sub, bound, free);
    collect_free_vars(f->sub2, bound, free);
}

inline std::set<std::string> free_vars(const FormulaPtr& f) {
    std::set<std::string> bound, free;
    collect_free_vars(f, bound, free);
    return free;
}

inline void collect_all_vars(const FormulaPtr& f, std::set<std::string>& vars) {
    if (!f) return;
    if (f->kind == FormulaKind::atom) {
        collect_term_vars(f->lhs_term, vars);
        collect_term_vars(f->rhs_term, vars);
        return;
    }
    if (f->kind == FormulaKind::exists || f->kind == FormulaKind::forall) vars.insert(f->var);
    collect_all_vars(f->sub, vars);
    collect_all_vars(f->sub2, vars);
}

inline bool has_quantifier(const FormulaPtr& f) {
    if (!f) return false;
    if (f->kind == FormulaKind::exists || f->kind == FormulaKind::forall) return true;
    if (f->kind == FormulaKind::atom) return false;
    return has_quantifier(f->sub) || has_quantifier(f->sub2);
}

}  // namespace numqe
