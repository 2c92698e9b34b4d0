#pragma once

#include "numqe/ast.hpp"
#include "numqe/normalize.hpp"
#include "numqe/signature.hpp"

#include <optional>

namespace numqe {

// A literal with one distinguished variable isolated: x^n <> t in the
// multiplicative theories, k.x <> t in the additive ones, R[m](u * x^n)
// and P(u * x^n) with polarity for the predicate literals. The
// distinguished variable never occurs in t or u.

enum class CanonKind { eq, neq, root, not_root, pos, not_pos, cong, not_cong };

struct CanonicalLiteral {
    std::string var;
    CanonKind kind;
    Int exponent = 1;  // exponent on x (multiplicative) or coefficient (additive); >= 1
    Int modulus = 0;   // root / cong index, >= 2
    TermPtr coeff;     // root/pos literals: the x-free factor u
    TermPtr rhs;       // eq/neq/cong literals: the x-free side
};

inline FormulaPtr render(const CanonicalLiteral& lit) {
    TermPtr x = t_var(lit.var);
    switch (lit.kind) {
        case CanonKind::eq: return f_eq(t_pow(x, lit.exponent), lit.rhs);
        case CanonKind::neq: return f_neq(t_pow(x, lit.exponent), lit.rhs);
        case CanonKind::root:
            return f_nth_power(lit.modulus, fold_term(t_mul(lit.coeff, t_pow(x, lit.exponent))));
        case CanonKind::not_root:
            return f_not(
                f_nth_power(lit.modulus, fold_term(t_mul(lit.coeff, t_pow(x, lit.exponent)))));
        case CanonKind::pos:
            return f_positive(fold_term(t_mul(lit.coeff, t_pow(x, lit.exponent))));
        case CanonKind::not_pos:
            return f_not(f_positive(fold_term(t_mul(lit.coeff, t_pow(x, lit.exponent)))));
        case CanonKind::cong:
            return f_congruent(lit.modulus, t_scale(lit.exponent, x), lit.rhs);
        case CanonKind::not_cong:
            return f_not(f_congruent(lit.modulus, t_scale(lit.exponent, x), lit.rhs));
    }
    throw std::logic_error("render: bad literal");
}

// ---------------------------------------------------------------------------
// multiplicative / additive decomposition along one variable

struct MulParts {
    Int exponent;  // net exponent of x
    TermPtr rest;  // x-free factor
    bool occurs;   // whether x appears syntactically (net exponent may be 0)
};

inline std::optional<MulParts> collect_mul(const TermPtr& t, const std::string& x) {
    switch (t->kind) {
        case TermKind::variable:
            if (t->var == x) return MulParts{1, t_one(), true};
            return MulParts{0, t, false};
        case TermKind::numeral:
        case TermKind::omega: return MulParts{0, t, false};
        case TermKind::product: {
            auto a = collect_mul(t->child, x);
            auto b = collect_mul(t->child2, x);
            if (!a || !b) return std::nullopt;
            return MulParts{a->exponent + b->exponent, fold_term(t_mul(a->rest, b->rest)),
                            a->occurs || b->occurs};
        }
        case TermKind::inverse: {
            auto a = collect_mul(t->child, x);
            if (!a) return std::nullopt;
            return MulParts{-a->exponent, fold_term(t_inv(a->rest)), a->occurs};
        }
        case TermKind::power: {
            auto a = collect_mul(t->child, x);
            if (!a) return std::nullopt;
            TermPtr rest =
                a->rest->kind == TermKind::numeral && a->rest->value == 1
                    ? t_one()
                    : fold_term(t_pow(a->rest, t->index));
            return MulParts{a->exponent * t->index, rest, a->occurs};
        }
        default: return std::nullopt;  // additive node in a multiplicative context
    }
}

struct AddParts {
    Int coeff;     // net coefficient of x
    TermPtr rest;  // x-free summand
    bool occurs;
};

inline std::optional<AddParts> collect_add(const TermPtr& t, const std::string& x) {
    switch (t->kind) {
        case TermKind::variable:
            if (t->var == x) return AddParts{1, t_zero(), true};
            return AddParts{0, t, false};
        case TermKind::numeral: return AddParts{0, t, false};
        case TermKind::sum: {
            auto a = collect_add(t->child, x);
            auto b = collect_add(t->child2, x);
            if (!a || !b) return std::nullopt;
            return AddParts{a->coeff + b->coeff, fold_term(t_add(a->rest, b->rest)),
                            a->occurs || b->occurs};
        }
        case TermKind::negation: {
            auto a = collect_add(t->child, x);
            if (!a) return std::nullopt;
            return AddParts{-a->coeff, fold_term(t_neg(a->rest)), a->occurs};
        }
        case TermKind::scalar: {
            auto a = collect_add(t->child, x);
            if (!a) return std::nullopt;
            return AddParts{t->index * a->coeff, fold_term(t_scale(t->index, a->rest)), a->occurs};
        }
        default: return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// isolate_variable

inline FormulaPtr fold_literal_terms(const FormulaPtr& lit);

namespace detail {

inline FormulaPtr x_is_zero(const std::string& x) { return f_eq(t_var(x), t_zero()); }
inline FormulaPtr x_nonzero(const std::string& x) { return f_neq(t_var(x), t_zero()); }

// x^d <> u*t^-1 with the divided-out guards, the displayed case split for
// x^d * t <> u on the x != 0 branch (d >= 0, t and u x-free).
inline FormulaPtr mul_eq_core(const std::string& x, bool equal, const Int& d, const TermPtr& t,
                              const TermPtr& u) {
    if (d == 0) return equal ? f_eq(t, u) : f_neq(t, u);
    TermPtr ratio = fold_term(t_mul(u, t_inv(t)));
    FormulaPtr main = equal ? f_eq(t_pow(t_var(x), d), ratio) : f_neq(t_pow(t_var(x), d), ratio);
    FormulaPtr degenerate =
        equal ? f_and(f_eq(t, t_zero()), f_eq(u, t_zero()))
              : f_and(f_eq(t, t_zero()), f_neq(u, t_zero()));
    return f_or(degenerate, f_and(f_neq(t, t_zero()), main));
}

// Equality and inequality literals in the multiplicative theories with 0
// (c-mul, r-mul, rnonneg-mul). Follows the four displayed case splits; the
// x=0 branch is made explicit where a net-negative or net-zero exponent
// falls outside the displayed shapes.
inline FormulaPtr isolate_mul_zero(const std::string& x, bool equal, MulParts lhs, MulParts rhs) {
    // orient: distinguished variable on the left, larger exponent first
    if (!lhs.occurs || (rhs.occurs && rhs.exponent > lhs.exponent)) {
        std::swap(lhs, rhs);
    }
    if (!rhs.occurs) {
        const TermPtr t = lhs.rest;
        const TermPtr u = rhs.rest;
        if (lhs.exponent > 0) return mul_eq_core(x, equal, lhs.exponent, t, u);
        // at x=0 the left side is 0 regardless of the net exponent
        FormulaPtr zero_branch =
            f_and(x_is_zero(x), equal ? f_eq(t_zero(), u) : f_neq(t_zero(), u));
        FormulaPtr nonzero_core =
            lhs.exponent == 0
                ? (equal ? f_eq(t, u) : f_neq(t, u))
                // x^a*t = u,  a<0:  multiply by x^-a:  x^-a*u = t
                : mul_eq_core(x, equal, -lhs.exponent, u, t);
        return f_or(zero_branch, f_and(x_nonzero(x), nonzero_core));
    }
    // both sides mention x: at x=0 both are 0
    Int d = lhs.exponent - rhs.exponent;
    FormulaPtr core = d >= 0 ? mul_eq_core(x, equal, d, lhs.rest, rhs.rest)
                             : mul_eq_core(x, equal, -d, rhs.rest, lhs.rest);
    FormulaPtr nonzero_branch = f_and(x_nonzero(x), core);
    if (equal) return f_or(x_is_zero(x), nonzero_branch);
    return nonzero_branch;
}

// Group-style isolation (rpos-mul, qpos-mul): plain cancellation.
inline FormulaPtr isolate_mul_group(const std::string& x, bool equal, const MulParts& lhs,
                                    const MulParts& rhs) {
    Int d = lhs.exponent - rhs.exponent;
    if (d == 0) {
        FormulaPtr lit = equal ? f_eq(lhs.rest, rhs.rest) : f_neq(lhs.rest, rhs.rest);
        return fold_literal_terms(lit);
    }
    TermPtr ratio = d > 0 ? fold_term(t_mul(rhs.rest, t_inv(lhs.rest)))
                          : fold_term(t_mul(lhs.rest, t_inv(rhs.rest)));
    TermPtr xpow = t_pow(t_var(x), d > 0 ? d : Int(-d));
    return equal ? f_eq(xpow, ratio) : f_neq(xpow, ratio);
}

}  // namespace detail

inline FormulaPtr fold_literal_terms(const FormulaPtr& lit);

// Rewrites one literal mentioning x into an equivalent combination of
// canonical literals in x and x-free literals. `lit` must be an atom or a
// negated atom.
inline FormulaPtr isolate_variable(const FormulaPtr& lit, const std::string& x,
                                   const Signature& s) {
    bool negated = lit->kind == FormulaKind::negation;
    FormulaPtr atom = negated ? lit->sub : lit;
    if (atom->kind != FormulaKind::atom)
        throw std::invalid_argument("isolate_variable: not a literal");
    if (!mentions(lit, x))
        throw std::invalid_argument("isolate_variable: literal does not mention the variable");

    switch (atom->pred) {
        case Pred::eq:
        case Pred::neq: {
            bool equal = (atom->pred == Pred::eq) != negated;
            if (s.multiplicative()) {
                auto lhs = collect_mul(atom->lhs_term, x);
                auto rhs = collect_mul(atom->rhs_term, x);
                if (!lhs || !rhs)
                    throw signature_error(0, "additive symbol in a multiplicative theory");
                if (s.has_zero())
                    return detail::isolate_mul_zero(x, equal, *lhs, *rhs);
                return detail::isolate_mul_group(x, equal, *lhs, *rhs);
            }
            auto lhs = collect_add(atom->lhs_term, x);
            auto rhs = collect_add(atom->rhs_term, x);
            if (!lhs || !rhs)
                throw signature_error(0, "multiplicative symbol in an additive theory");
            Int k = lhs->coeff - rhs->coeff;
            if (k == 0) {
                FormulaPtr out = equal ? f_eq(lhs->rest, rhs->rest) : f_neq(lhs->rest, rhs->rest);
                return fold_literal_terms(out);
            }
            TermPtr rhs_term = k > 0 ? fold_term(t_add(rhs->rest, t_neg(lhs->rest)))
                                     : fold_term(t_add(lhs->rest, t_neg(rhs->rest)));
            TermPtr lhs_term = t_scale(k > 0 ? k : Int(-k), t_var(x));
            return equal ? f_eq(lhs_term, rhs_term) : f_neq(lhs_term, rhs_term);
        }
        case Pred::positive: {
            auto parts = collect_mul(atom->lhs_term, x);
            if (!parts) throw signature_error(0, "additive symbol in a multiplicative theory");
            Int g = parts->exponent;
            TermPtr u = parts->rest;
            if (g == 0) {
                // the variable cancels; at x=0 the whole term is 0
                FormulaPtr inner = negated ? f_not(f_positive(u)) : f_positive(u);
                if (!negated) return f_and(detail::x_nonzero(x), inner);
                return f_or(detail::x_is_zero(x), inner);
            }
            if (g < 0) {  // P(w) <-> P(inv(w))
                g = -g;
                u = fold_term(t_inv(u));
            }
            FormulaPtr out = f_positive(fold_term(t_mul(u, t_pow(t_var(x), g))));
            return negated ? f_not(out) : out;
        }
        case Pred::nth_power: {
            auto parts = collect_mul(atom->lhs_term, x);
            if (!parts) throw signature_error(0, "additive symbol in a multiplicative theory");
            Int g = parts->exponent;
            TermPtr u = parts->rest;
            if (g == 0) {
                FormulaPtr out = f_nth_power(atom->pred_index, u);
                return fold_literal_terms(negated ? f_not(out) : out);
            }
            if (g < 0) {  // R[n](w) <-> R[n](inv(w))
                g = -g;
                u = fold_term(t_inv(u));
            }
            FormulaPtr out = f_nth_power(atom->pred_index, fold_term(t_mul(u, t_pow(t_var(x), g))));
            return negated ? f_not(out) : out;
        }
        case Pred::congruent: {
            auto lhs = collect_add(atom->lhs_term, x);
            auto rhs = collect_add(atom->rhs_term, x);
            if (!lhs || !rhs)
                throw signature_error(0, "multiplicative symbol in an additive theory");
            Int k = lhs->coeff - rhs->coeff;
            FormulaPtr out;
            if (k == 0) {
                out = fold_literal_terms(f_congruent(atom->pred_index, lhs->rest, rhs->rest));
            } else {
                TermPtr rhs_term = k > 0 ? fold_term(t_add(rhs->rest, t_neg(lhs->rest)))
                                         : fold_term(t_add(lhs->rest, t_neg(rhs->rest)));
                out = f_congruent(atom->pred_index, t_scale(k > 0 ? k : Int(-k), t_var(x)),
                                  rhs_term);
            }
            return negated ? f_not(out) : out;
        }
    }
    throw std::logic_error("isolate_variable: bad predicate");
}

inline FormulaPtr fold_literal_terms(const FormulaPtr& lit) {
    if (lit->kind == FormulaKind::negation) return f_not(fold_literal_terms(lit->sub));
    Formula copy = *lit;
    if (copy.lhs_term) copy.lhs_term = fold_term(copy.lhs_term);
    if (copy.rhs_term) copy.rhs_term = fold_term(copy.rhs_term);
    return std::make_shared<Formula>(std::move(copy));
}

// ---------------------------------------------------------------------------
// canonical-literal recognition, the engines' input validation

inline std::optional<CanonicalLiteral> match_canonical(const FormulaPtr& lit,
                                                       const std::string& x) {
    bool negated = lit->kind == FormulaKind::negation;
    const FormulaPtr& atom = negated ? lit->sub : lit;
    if (atom->kind != FormulaKind::atom) return std::nullopt;
    switch (atom->pred) {
        case Pred::eq:
        case Pred::neq: {
            bool equal = (atom->pred == Pred::eq) != negated;
            if (term_mentions(atom->rhs_term, x)) return std::nullopt;
            auto lhs = collect_mul(atom->lhs_term, x);
            if (lhs && lhs->exponent >= 1 && lhs->rest->kind == TermKind::numeral &&
                lhs->rest->value == 1) {
                return CanonicalLiteral{x, equal ? CanonKind::eq : CanonKind::neq, lhs->exponent,
                                        0, nullptr, atom->rhs_term};
            }
            auto alhs = collect_add(atom->lhs_term, x);
            if (alhs && alhs->coeff >= 1 && alhs->rest->kind == TermKind::numeral &&
                alhs->rest->value == 0) {
                return CanonicalLiteral{x, equal ? CanonKind::eq : CanonKind::neq, alhs->coeff, 0,
                                        nullptr, atom->rhs_term};
            }
            return std::nullopt;
        }
        case Pred::positive: {
            auto parts = collect_mul(atom->lhs_term, x);
            if (!parts || parts->exponent < 1) return std::nullopt;
            return CanonicalLiteral{x, negated ? CanonKind::not_pos : CanonKind::pos,
                                    parts->exponent, 0, parts->rest, nullptr};
        }
        case Pred::nth_power: {
            auto parts = collect_mul(atom->lhs_term, x);
            if (!parts || parts->exponent < 1) return std::nullopt;
            return CanonicalLiteral{x, negated ? CanonKind::not_root : CanonKind::root,
                                    parts->exponent, atom->pred_index, parts->rest, nullptr};
        }
        case Pred::congruent: {
            if (term_mentions(atom->rhs_term, x)) return std::nullopt;
            auto lhs = collect_add(atom->lhs_term, x);
            if (!lhs || lhs->coeff < 1 || lhs->rest->kind != TermKind::numeral ||
                lhs->rest->value != 0)
                return std::nullopt;
            return CanonicalLiteral{x, negated ? CanonKind::not_cong : CanonKind::cong,
                                    lhs->coeff, atom->pred_index, nullptr, atom->rhs_term};
        }
    }
    return std::nullopt;
}

}  // namespace numqe
