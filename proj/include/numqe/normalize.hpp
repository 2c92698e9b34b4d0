#pragma once

#include "numqe/ast.hpp"
#include "numqe/model.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace numqe {

// ---------------------------------------------------------------------------
// substitution

inline TermPtr substitute_term(const TermPtr& t, const std::string& var, const TermPtr& repl) {
    if (!t) return t;
    switch (t->kind) {
        case TermKind::variable: return t->var == var ? repl : t;
        case TermKind::numeral:
        case TermKind::omega: return t;
        default: {
            TermPtr a = substitute_term(t->child, var, repl);
            TermPtr b = substitute_term(t->child2, var, repl);
            if (a == t->child && b == t->child2) return t;
            Term copy = *t;
            copy.child = a;
            copy.child2 = b;
            return std::make_shared<Term>(std::move(copy));
        }
    }
}

inline FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& repl) {
    if (!f) return f;
    if (f->kind == FormulaKind::atom) {
        Formula copy = *f;
        copy.lhs_term = substitute_term(f->lhs_term, var, repl);
        copy.rhs_term = substitute_term(f->rhs_term, var, repl);
        return std::make_shared<Formula>(std::move(copy));
    }
    if (f->kind == FormulaKind::exists || f->kind == FormulaKind::forall) {
        if (f->var == var) return f;  // shadowed
        if (term_mentions(repl, f->var))
            throw std::logic_error("substitute: replacement would be captured");
    }
    Formula copy = *f;
    copy.sub = substitute(f->sub, var, repl);
    copy.sub2 = substitute(f->sub2, var, repl);
    return std::make_shared<Formula>(std::move(copy));
}

// ---------------------------------------------------------------------------
// bound-variable hygiene

namespace detail {

inline void count_binders(const FormulaPtr& f, std::map<std::string, int>& counts) {
    if (!f || f->kind == FormulaKind::atom) return;
    if (f->kind == FormulaKind::exists || f->kind == FormulaKind::forall) counts[f->var]++;
    count_binders(f->sub, counts);
    count_binders(f->sub2, counts);
}

inline TermPtr rename_term(const TermPtr& t, const std::map<std::string, std::string>& env) {
    if (!t) return t;
    if (t->kind == TermKind::variable) {
        auto it = env.find(t->var);
        return it == env.end() ? t : t_var(it->second);
    }
    if (t->kind == TermKind::numeral || t->kind == TermKind::omega) return t;
    Term copy = *t;
    copy.child = rename_term(t->child, env);
    copy.child2 = rename_term(t->child2, env);
    return std::make_shared<Term>(std::move(copy));
}

struct Renamer {
    std::map<std::string, int> binder_counts;
    std::set<std::string> free;
    std::set<std::string> taken;  // every name in the formula plus fresh picks

    std::string fresh(const std::string& base) {
        for (int k = 1;; ++k) {
            std::string cand = base + "_" + std::to_string(k);
            if (taken.insert(cand).second) return cand;
        }
    }

    FormulaPtr run(const FormulaPtr& f, std::map<std::string, std::string>& env) {
        if (!f) return f;
        if (f->kind == FormulaKind::atom) {
            Formula copy = *f;
            copy.lhs_term = rename_term(f->lhs_term, env);
            copy.rhs_term = rename_term(f->rhs_term, env);
            return std::make_shared<Formula>(std::move(copy));
        }
        if (f->kind == FormulaKind::exists || f->kind == FormulaKind::forall) {
            std::string name = f->var;
            // rename only when the name is ambiguous: bound more than once
            // or also free elsewhere
            bool needs = binder_counts[name] > 1 || free.count(name) != 0;
            std::string chosen = needs ? fresh(name) : name;
            auto it = env.find(name);
            bool had = it != env.end();
            std::string old;
            if (had) old = it->second;
            env[name] = chosen;
            FormulaPtr body = run(f->sub, env);
            if (had)
                env[name] = old;
            else
                env.erase(name);
            return f_quant(f->kind, chosen, body);
        }
        Formula copy = *f;
        copy.sub = run(f->sub, env);
        copy.sub2 = run(f->sub2, env);
        return std::make_shared<Formula>(std::move(copy));
    }
};

}  // namespace detail

// Renames bound variables with a fresh-name counter (x -> x_1, x_2, ...)
// so that no name is bound twice or both bound and free. Deterministic.
inline FormulaPtr rename_apart(const FormulaPtr& f) {
    detail::Renamer r;
    detail::count_binders(f, r.binder_counts);
    r.free = free_vars(f);
    collect_all_vars(f, r.taken);
    std::map<std::string, std::string> env;
    return r.run(f, env);
}

// ---------------------------------------------------------------------------
// prenex normal form

struct QuantifierPrefix {
    std::vector<std::pair<FormulaKind, std::string>> items;  // outermost first
};

namespace detail {

inline FormulaPtr expand_quantified_iff(const FormulaPtr& f) {
    if (!f || f->kind == FormulaKind::atom) return f;
    Formula copy = *f;
    copy.sub = expand_quantified_iff(f->sub);
    copy.sub2 = expand_quantified_iff(f->sub2);
    if (f->kind == FormulaKind::equivalence &&
        (has_quantifier(copy.sub) || has_quantifier(copy.sub2))) {
        return f_and(f_implies(copy.sub, copy.sub2), f_implies(copy.sub2, copy.sub));
    }
    return std::make_shared<Formula>(std::move(copy));
}

inline FormulaKind flip_quant(FormulaKind k) {
    return k == FormulaKind::exists ? FormulaKind::forall : FormulaKind::exists;
}

// Pulls quantifiers outward; the input must be renamed apart and free of
// quantified equivalences.
inline FormulaPtr pull(const FormulaPtr& f, QuantifierPrefix& prefix) {
    switch (f->kind) {
        case FormulaKind::atom: return f;
        case FormulaKind::negation: {
            std::size_t start = prefix.items.size();
            FormulaPtr m = pull(f->sub, prefix);
            for (std::size_t i = start; i < prefix.items.size(); ++i)
                prefix.items[i].first = flip_quant(prefix.items[i].first);
            return f_not(m);
        }
        case FormulaKind::conjunction:
        case FormulaKind::disjunction: {
            FormulaPtr a = pull(f->sub, prefix);
            FormulaPtr b = pull(f->sub2, prefix);
            return f_binary(f->kind, a, b);
        }
        case FormulaKind::implication: {
            std::size_t start = prefix.items.size();
            FormulaPtr a = pull(f->sub, prefix);
            for (std::size_t i = start; i < prefix.items.size(); ++i)
                prefix.items[i].first = flip_quant(prefix.items[i].first);
            FormulaPtr b = pull(f->sub2, prefix);
            return f_implies(a, b);
        }
        case FormulaKind::equivalence:
            assert(!has_quantifier(f));
            return f;
        case FormulaKind::exists:
        case FormulaKind::forall: {
            prefix.items.push_back({f->kind, f->var});
            return pull(f->sub, prefix);
        }
    }
    throw std::logic_error("pull: bad node");
}

}  // namespace detail

struct Prenex {
    QuantifierPrefix prefix;
    FormulaPtr matrix;  // quantifier-free
};

inline Prenex to_prenex_parts(const FormulaPtr& f) {
    if (!has_quantifier(f)) return {QuantifierPrefix{}, f};
    FormulaPtr g = rename_apart(detail::expand_quantified_iff(f));
    QuantifierPrefix prefix;
    FormulaPtr matrix = detail::pull(g, prefix);
    assert(!has_quantifier(matrix));
    return {std::move(prefix), matrix};
}

inline FormulaPtr assemble_prenex(const Prenex& p) {
    FormulaPtr f = p.matrix;
    for (auto it = p.prefix.items.rbegin(); it != p.prefix.items.rend(); ++it)
        f = f_quant(it->first, it->second, f);
    return f;
}

// Q1 x1 ... Qn xn theta with theta quantifier-free; the input is returned
// untouched when it is already quantifier-free.
inline FormulaPtr to_prenex(const FormulaPtr& f) {
    if (!has_quantifier(f)) return f;
    return assemble_prenex(to_prenex_parts(f));
}

// ---------------------------------------------------------------------------
// negation normal form and DNF (quantifier-free only)

inline FormulaPtr negate_atom(const FormulaPtr& atom) {
    assert(atom->kind == FormulaKind::atom);
    if (atom->pred == Pred::eq) {
        Formula copy = *atom;
        copy.pred = Pred::neq;
        return std::make_shared<Formula>(std::move(copy));
    }
    if (atom->pred == Pred::neq) {
        Formula copy = *atom;
        copy.pred = Pred::eq;
        return std::make_shared<Formula>(std::move(copy));
    }
    return f_not(atom);
}

inline bool is_literal(const FormulaPtr& f) {
    if (f->kind == FormulaKind::atom) return true;
    return f->kind == FormulaKind::negation && f->sub->kind == FormulaKind::atom;
}

inline FormulaPtr to_nnf(const FormulaPtr& f, bool positive = true) {
    switch (f->kind) {
        case FormulaKind::atom: return positive ? f : negate_atom(f);
        case FormulaKind::negation: return to_nnf(f->sub, !positive);
        case FormulaKind::conjunction:
        case FormulaKind::disjunction: {
            bool conj = (f->kind == FormulaKind::conjunction) == positive;
            return f_binary(conj ? FormulaKind::conjunction : FormulaKind::disjunction,
                            to_nnf(f->sub, positive), to_nnf(f->sub2, positive));
        }
        case FormulaKind::implication:
            if (positive) return f_or(to_nnf(f->sub, false), to_nnf(f->sub2, true));
            return f_and(to_nnf(f->sub, true), to_nnf(f->sub2, false));
        case FormulaKind::equivalence:
            if (positive)
                return f_or(f_and(to_nnf(f->sub, true), to_nnf(f->sub2, true)),
                            f_and(to_nnf(f->sub, false), to_nnf(f->sub2, false)));
            return f_or(f_and(to_nnf(f->sub, true), to_nnf(f->sub2, false)),
                        f_and(to_nnf(f->sub, false), to_nnf(f->sub2, true)));
        case FormulaKind::exists:
        case FormulaKind::forall:
            throw std::invalid_argument("to_nnf: formula is not quantifier-free");
    }
    throw std::logic_error("to_nnf: bad node");
}

using Clause = std::vector<FormulaPtr>;  // conjunction of literals

namespace detail {

inline void dnf_rec(const FormulaPtr& nnf, std::vector<Clause>& out, std::size_t cap) {
    if (is_literal(nnf)) {
        out.push_back({nnf});
        return;
    }
    if (nnf->kind == FormulaKind::disjunction) {
        dnf_rec(nnf->sub, out, cap);
        dnf_rec(nnf->sub2, out, cap);
        return;
    }
    assert(nnf->kind == FormulaKind::conjunction);
    std::vector<Clause> left, right;
    dnf_rec(nnf->sub, left, cap);
    dnf_rec(nnf->sub2, right, cap);
    std::size_t literals = 0;
    for (const Clause& a : left)
        for (const Clause& b : right) {
            literals += a.size() + b.size();
            if (literals > cap)
                throw resource_error("to_dnf: literal cap exceeded (" + std::to_string(cap) + ")");
            Clause c = a;
            c.insert(c.end(), b.begin(), b.end());
            out.push_back(std::move(c));
        }
}

}  // namespace detail

// Disjunction of conjunctions of literals. Worst-case exponential; the cap
// turns blowup into an explicit resource error, never a wrong answer.
inline std::vector<Clause> to_dnf_clauses(const FormulaPtr& qf, std::size_t cap = 1000000) {
    std::vector<Clause> out;
    detail::dnf_rec(to_nnf(qf), out, cap);
    return out;
}

inline FormulaPtr clauses_to_formula(const std::vector<Clause>& clauses) {
    std::vector<FormulaPtr> disjuncts;
    disjuncts.reserve(clauses.size());
    for (const Clause& c : clauses) disjuncts.push_back(f_and_all(c));
    return f_or_all(disjuncts);
}

inline FormulaPtr to_dnf(const FormulaPtr& qf, std::size_t cap = 1000000) {
    return clauses_to_formula(to_dnf_clauses(qf, cap));
}

// ---------------------------------------------------------------------------
// term-level constant folding

inline TermPtr fold_term(const TermPtr& t) {
    if (!t) return t;
    switch (t->kind) {
        case TermKind::variable:
        case TermKind::numeral:
        case TermKind::omega: return t;
        case TermKind::product: {
            TermPtr a = fold_term(t->child);
            TermPtr b = fold_term(t->child2);
            bool an = a->kind == TermKind::numeral, bn = b->kind == TermKind::numeral;
            if (an && bn) return t_num(a->value * b->value);
            if ((an && a->value == 0) || (bn && b->value == 0)) return t_zero();
            if (an && a->value == 1) return b;
            if (bn && b->value == 1) return a;
            return t_mul(a, b);
        }
        case TermKind::inverse: {
            TermPtr a = fold_term(t->child);
            if (a->kind == TermKind::numeral)
                return t_num(a->value == 0 ? Rat(0) : Rat(1) / a->value);  // 0^-1 = 0
            if (a->kind == TermKind::inverse) return a->child;
            return t_inv(a);
        }
        case TermKind::power: {
            TermPtr a = fold_term(t->child);
            if (a->kind == TermKind::numeral) return t_num(rat_pow(a->value, t->index));
            if (a->kind == TermKind::power) return t_pow(a->child, a->index * t->index);
            return t_pow(a, t->index);
        }
        case TermKind::sum: {
            TermPtr a = fold_term(t->child);
            TermPtr b = fold_term(t->child2);
            bool an = a->kind == TermKind::numeral, bn = b->kind == TermKind::numeral;
            if (an && bn) return t_num(a->value + b->value);
            if (an && a->value == 0) return b;
            if (bn && b->value == 0) return a;
            return t_add(a, b);
        }
        case TermKind::negation: {
            TermPtr a = fold_term(t->child);
            if (a->kind == TermKind::numeral) return t_num(-a->value);
            if (a->kind == TermKind::negation) return a->child;
            return t_neg(a);
        }
        case TermKind::scalar: {
            TermPtr a = fold_term(t->child);
            if (a->kind == TermKind::numeral) return t_num(Rat(t->index) * a->value);
            if (a->kind == TermKind::scalar) return t_scale(t->index * a->index, a->child);
            return t_scale(t->index, a);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// formula-level constant folding: ground atoms are evaluated in the exact
// model, boolean units are simplified, duplicate literals removed

inline bool is_true_formula(const FormulaPtr& f) {
    return f->kind == FormulaKind::atom && f->pred == Pred::eq &&
           f->lhs_term->kind == TermKind::numeral && f->lhs_term->value == 0 &&
           f->rhs_term->kind == TermKind::numeral && f->rhs_term->value == 0;
}

inline bool is_false_formula(const FormulaPtr& f) {
    return f->kind == FormulaKind::atom && f->pred == Pred::neq &&
           f->lhs_term->kind == TermKind::numeral && f->lhs_term->value == 0 &&
           f->rhs_term->kind == TermKind::numeral && f->rhs_term->value == 0;
}

namespace detail {

inline bool term_ground(const TermPtr& t) {
    if (!t) return true;
    if (t->kind == TermKind::variable) return false;
    return term_ground(t->child) && term_ground(t->child2);
}

inline void flatten(FormulaKind k, const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (f->kind == k) {
        flatten(k, f->sub, out);
        flatten(k, f->sub2, out);
    } else {
        out.push_back(f);
    }
}

// Printed form of the literal's complement, when f is a literal. Lets the
// chain folding spot p and ~p side by side.
inline std::optional<std::string> complement_key(const FormulaPtr& f) {
    if (f->kind == FormulaKind::atom) {
        if (f->pred == Pred::eq) return print(f_neq(f->lhs_term, f->rhs_term));
        if (f->pred == Pred::neq) return print(f_eq(f->lhs_term, f->rhs_term));
        return print(f_not(f));
    }
    if (f->kind == FormulaKind::negation && f->sub->kind == FormulaKind::atom)
        return print(f->sub);
    return std::nullopt;
}

}  // namespace detail

inline FormulaPtr fold(Theory theory, const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::atom: {
            Formula copy = *f;
            copy.lhs_term = fold_term(f->lhs_term);
            copy.rhs_term = fold_term(f->rhs_term);
            FormulaPtr g = std::make_shared<Formula>(std::move(copy));
            // reflexive cases decide without evaluation (and keep the
            // canonical truth literals out of the evaluator)
            if (g->pred == Pred::eq || g->pred == Pred::congruent) {
                if (term_equal(g->lhs_term, g->rhs_term)) return f_true();
            } else if (g->pred == Pred::neq) {
                if (term_equal(g->lhs_term, g->rhs_term)) return f_false();
            }
            if (detail::term_ground(g->lhs_term) && detail::term_ground(g->rhs_term))
                return eval_qf(theory, g, {}) ? f_true() : f_false();
            return g;
        }
        case FormulaKind::negation: {
            FormulaPtr g = fold(theory, f->sub);
            if (is_true_formula(g)) return f_false();
            if (is_false_formula(g)) return f_true();
            if (g->kind == FormulaKind::negation) return g->sub;
            if (g->kind == FormulaKind::atom && g->pred == Pred::eq) return f_neq(g->lhs_term, g->rhs_term);
            if (g->kind == FormulaKind::atom && g->pred == Pred::neq) return f_eq(g->lhs_term, g->rhs_term);
            return f_not(g);
        }
        case FormulaKind::conjunction:
        case FormulaKind::disjunction: {
            bool conj = f->kind == FormulaKind::conjunction;
            std::vector<FormulaPtr> parts;
            detail::flatten(f->kind, f, parts);
            std::vector<FormulaPtr> kept;
            std::set<std::string> seen;
            // a literal next to its complement settles the whole chain
            auto insert = [&](const FormulaPtr& h) {
                if (auto comp = detail::complement_key(h); comp && seen.count(*comp) != 0)
                    return false;
                if (seen.insert(print(h)).second) kept.push_back(h);
                return true;
            };
            for (const FormulaPtr& part : parts) {
                FormulaPtr g = fold(theory, part);
                if (conj ? is_true_formula(g) : is_false_formula(g)) continue;
                if (conj ? is_false_formula(g) : is_true_formula(g))
                    return conj ? f_false() : f_true();
                if (g->kind == f->kind) {
                    // folding re-nested; flatten again
                    std::vector<FormulaPtr> inner;
                    detail::flatten(f->kind, g, inner);
                    for (const FormulaPtr& h : inner)
                        if (!insert(h)) return conj ? f_false() : f_true();
                    continue;
                }
                if (!insert(g)) return conj ? f_false() : f_true();
            }
            if (kept.empty()) return conj ? f_true() : f_false();
            return conj ? f_and_all(kept) : f_or_all(kept);
        }
        case FormulaKind::implication: {
            FormulaPtr a = fold(theory, f->sub);
            FormulaPtr b = fold(theory, f->sub2);
            if (is_false_formula(a) || is_true_formula(b)) return f_true();
            if (is_true_formula(a)) return b;
            if (is_false_formula(b)) return fold(theory, f_not(a));
            return f_implies(a, b);
        }
        case FormulaKind::equivalence: {
            FormulaPtr a = fold(theory, f->sub);
            FormulaPtr b = fold(theory, f->sub2);
            if (is_true_formula(a)) return b;
            if (is_true_formula(b)) return a;
            if (is_false_formula(a)) return fold(theory, f_not(b));
            if (is_false_formula(b)) return fold(theory, f_not(a));
            return f_iff(a, b);
        }
        case FormulaKind::exists:
        case FormulaKind::forall: {
            FormulaPtr body = fold(theory, f->sub);
            if (is_true_formula(body) || is_false_formula(body)) return body;
            if (!mentions(body, f->var)) return body;  // domains are nonempty
            return f_quant(f->kind, f->var, body);
        }
    }
    throw std::logic_error("fold: bad node");
}

}  // namespace numqe
