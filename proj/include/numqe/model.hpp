#pragma once

#include "numqe/ast.hpp"
#include "numqe/exponent_vector.hpp"
#include "numqe/numtheory.hpp"
#include "numqe/signature.hpp"

#include <map>
#include <variant>

namespace numqe {

// Exact ground models, one per theory. These are not the full carriers
// (which are uncountable for R and C) but elementarily equivalent
// structures for the relevant signatures: each satisfies every axiom of
// the corresponding complete axiomatization, so sentence truth transfers.
// No floating point appears anywhere; roots of unity are symbolic.

// Positive rationals as prime-exponent vectors; the intended model of the
// positive-rational multiplicative theory.
struct QPlusElem {
    IntExponents ev;
    bool operator==(const QPlusElem&) const = default;
};

// Zero, or a sign and a divisible exponent vector. P(e) holds iff e is
// nonzero with positive sign.
struct RealElem {
    bool zero = true;
    int sign = 1;  // +1 or -1, meaningful when !zero
    RatExponents ev;
    bool operator==(const RealElem&) const = default;
};

// Zero, or a torsion angle fraction in [0,1) and a divisible exponent
// vector. w[n] is (1/n, empty); multiplication adds torsion mod 1.
struct ComplexElem {
    bool zero = true;
    Rat torsion = 0;
    RatExponents ev;
    bool operator==(const ComplexElem&) const = default;
};

inline QPlusElem qplus_one() { return {}; }
inline RealElem real_zero() { return {}; }
inline RealElem real_make(int sign, RatExponents ev) { return {false, sign, std::move(ev)}; }
inline ComplexElem complex_zero() { return {}; }

namespace detail {
// torsion reduced into [0,1)
inline Rat mod_one(const Rat& q) {
    Int n = numer(q), d = denom(q);
    return Rat(mod_floor(n, d), d);
}
}  // namespace detail

inline ComplexElem complex_of(Rat torsion, RatExponents ev) {
    return {false, detail::mod_one(torsion), std::move(ev)};
}

inline ComplexElem complex_omega(const Int& n) {
    assert(n >= 2);
    return complex_of(Rat(1, n), {});
}

// ---------------------------------------------------------------------------
// per-model operations

inline QPlusElem mul(const QPlusElem& a, const QPlusElem& b) { return {mul(a.ev, b.ev)}; }
inline QPlusElem inverse(const QPlusElem& a) { return {inverse(a.ev)}; }
inline QPlusElem pow(const QPlusElem& a, const Int& k) {
    return k == 0 ? QPlusElem{} : QPlusElem{pow(a.ev, k)};
}
inline bool is_nth_power(const QPlusElem& a, const Int& n) { return all_divisible(a.ev, n); }
inline Rat to_rational(const QPlusElem& a) { return recompose(+1, a.ev); }

inline RealElem mul(const RealElem& a, const RealElem& b) {
    if (a.zero || b.zero) return real_zero();
    return real_make(a.sign * b.sign, mul(a.ev, b.ev));
}
inline RealElem inverse(const RealElem& a) {
    if (a.zero) return real_zero();  // 0^-1 = 0
    return real_make(a.sign, inverse(a.ev));
}
inline RealElem pow(const RealElem& a, const Int& k) {
    assert(k != 0);
    if (a.zero) return real_zero();
    int sign = (k % 2 == 0) ? 1 : a.sign;
    return real_make(sign, scale(a.ev, Rat(k)));
}
inline bool positive(const RealElem& a) { return !a.zero && a.sign > 0; }

inline ComplexElem mul(const ComplexElem& a, const ComplexElem& b) {
    if (a.zero || b.zero) return complex_zero();
    return complex_of(a.torsion + b.torsion, mul(a.ev, b.ev));
}
inline ComplexElem inverse(const ComplexElem& a) {
    if (a.zero) return complex_zero();
    return complex_of(-a.torsion, inverse(a.ev));
}
inline ComplexElem pow(const ComplexElem& a, const Int& k) {
    assert(k != 0);
    if (a.zero) return complex_zero();
    return complex_of(a.torsion * Rat(k), scale(a.ev, Rat(k)));
}

// ---------------------------------------------------------------------------
// numeral embeddings

inline QPlusElem qplus_of(const Rat& q) {
    if (q <= 0) throw std::domain_error("qplus_of: element must be positive");
    return {factor_rational(q).exponents};
}

inline RealElem real_of(const Rat& q) {
    if (q == 0) return real_zero();
    Factorization f = factor_rational(q);
    return real_make(f.sign, to_rat_exponents(f.exponents));
}

inline ComplexElem complex_of(const Rat& q) {
    if (q == 0) return complex_zero();
    Factorization f = factor_rational(q);
    return complex_of(f.sign < 0 ? Rat(1, 2) : Rat(0), to_rat_exponents(f.exponents));
}

// ---------------------------------------------------------------------------
// the runtime value of a term in whichever model the theory picks

using Value = std::variant<Int, Rat, QPlusElem, RealElem, ComplexElem>;

using Assignment = std::map<std::string, Value>;

inline std::string render(const RatExponents& ev) {
    std::string s;
    for (const auto& [p, e] : ev.entries()) {
        if (!s.empty()) s += " * ";
        s += p.str();
        if (e != 1) s += "^(" + numqe::to_string(e) + ")";
    }
    return s.empty() ? "1" : s;
}

inline std::string render(const Value& v) {
    struct R {
        std::string operator()(const Int& a) const { return a.str(); }
        std::string operator()(const Rat& a) const { return numqe::to_string(a); }
        std::string operator()(const QPlusElem& a) const { return numqe::to_string(to_rational(a)); }
        std::string operator()(const RealElem& a) const {
            if (a.zero) return "0";
            return (a.sign < 0 ? std::string("-") : std::string()) + render(a.ev);
        }
        std::string operator()(const ComplexElem& a) const {
            if (a.zero) return "0";
            std::string s = render(a.ev);
            if (a.torsion != 0) s = "e(" + numqe::to_string(a.torsion) + ") * " + s;
            return s;
        }
    };
    return std::visit(R{}, v);
}

inline Value embed_numeral(Theory t, const Rat& q) {
    switch (t) {
        case Theory::z_add:
            if (!is_integer(q)) throw std::domain_error("embed_numeral: non-integer in z-add");
            return numer(q);
        case Theory::div_add: return q;
        case Theory::qpos_mul: return qplus_of(q);
        case Theory::rpos_mul:
            if (q <= 0) throw std::domain_error("embed_numeral: non-positive in rpos-mul");
            return real_of(q);
        case Theory::rnonneg_mul:
            if (q < 0) throw std::domain_error("embed_numeral: negative in rnonneg-mul");
            return real_of(q);
        case Theory::r_mul: return real_of(q);
        case Theory::c_mul: return complex_of(q);
    }
    throw std::logic_error("embed_numeral: bad theory");
}

// rpos_mul and rnonneg_mul share RealElem carriers; their invariants (no
// zero / no negative sign) are maintained by construction.
inline Value eval_term(Theory t, const TermPtr& term, const Assignment& env) {
    switch (term->kind) {
        case TermKind::variable: {
            auto it = env.find(term->var);
            if (it == env.end())
                throw std::invalid_argument("eval_term: unassigned variable " + term->var);
            return it->second;
        }
        case TermKind::numeral: return embed_numeral(t, term->value);
        case TermKind::omega:
            if (t != Theory::c_mul) throw std::domain_error("eval_term: omega outside c-mul");
            return complex_omega(term->index);
        case TermKind::product: {
            if (!sig(t).multiplicative())
                throw std::domain_error("eval_term: * outside multiplicative theory");
            Value a = eval_term(t, term->child, env);
            Value b = eval_term(t, term->child2, env);
            if (t == Theory::qpos_mul) return mul(std::get<QPlusElem>(a), std::get<QPlusElem>(b));
            if (t == Theory::c_mul) return mul(std::get<ComplexElem>(a), std::get<ComplexElem>(b));
            return mul(std::get<RealElem>(a), std::get<RealElem>(b));
        }
        case TermKind::inverse: {
            if (!sig(t).multiplicative())
                throw std::domain_error("eval_term: inv outside multiplicative theory");
            Value a = eval_term(t, term->child, env);
            if (t == Theory::qpos_mul) return inverse(std::get<QPlusElem>(a));
            if (t == Theory::c_mul) return inverse(std::get<ComplexElem>(a));
            return inverse(std::get<RealElem>(a));
        }
        case TermKind::power: {
            if (!sig(t).multiplicative())
                throw std::domain_error("eval_term: ^ outside multiplicative theory");
            Value a = eval_term(t, term->child, env);
            if (t == Theory::qpos_mul) return pow(std::get<QPlusElem>(a), term->index);
            if (t == Theory::c_mul) return pow(std::get<ComplexElem>(a), term->index);
            return pow(std::get<RealElem>(a), term->index);
        }
        case TermKind::sum: {
            if (!sig(t).additive()) throw std::domain_error("eval_term: + outside additive theory");
            Value a = eval_term(t, term->child, env);
            Value b = eval_term(t, term->child2, env);
            if (t == Theory::z_add) return Int(std::get<Int>(a) + std::get<Int>(b));
            return Rat(std::get<Rat>(a) + std::get<Rat>(b));
        }
        case TermKind::negation: {
            if (!sig(t).additive()) throw std::domain_error("eval_term: - outside additive theory");
            Value a = eval_term(t, term->child, env);
            if (t == Theory::z_add) return Int(-std::get<Int>(a));
            return Rat(-std::get<Rat>(a));
        }
        case TermKind::scalar: {
            if (!sig(t).additive()) throw std::domain_error("eval_term: scalar outside additive theory");
            Value a = eval_term(t, term->child, env);
            if (t == Theory::z_add) return Int(term->index * std::get<Int>(a));
            return Rat(Rat(term->index) * std::get<Rat>(a));
        }
    }
    throw std::logic_error("eval_term: bad node");
}

// Exact truth value of a quantifier-free formula under an assignment.
inline bool eval_qf(Theory t, const FormulaPtr& f, const Assignment& env) {
    switch (f->kind) {
        case FormulaKind::atom: {
            switch (f->pred) {
                case Pred::eq:
                    return eval_term(t, f->lhs_term, env) == eval_term(t, f->rhs_term, env);
                case Pred::neq:
                    return !(eval_term(t, f->lhs_term, env) == eval_term(t, f->rhs_term, env));
                case Pred::positive:
                    return positive(std::get<RealElem>(eval_term(t, f->lhs_term, env)));
                case Pred::nth_power:
                    return is_nth_power(std::get<QPlusElem>(eval_term(t, f->lhs_term, env)),
                                        f->pred_index);
                case Pred::congruent: {
                    Int a = std::get<Int>(eval_term(t, f->lhs_term, env));
                    Int b = std::get<Int>(eval_term(t, f->rhs_term, env));
                    return mod_floor(a - b, f->pred_index) == 0;
                }
            }
            throw std::logic_error("eval_qf: bad predicate");
        }
        case FormulaKind::negation: return !eval_qf(t, f->sub, env);
        case FormulaKind::conjunction: return eval_qf(t, f->sub, env) && eval_qf(t, f->sub2, env);
        case FormulaKind::disjunction: return eval_qf(t, f->sub, env) || eval_qf(t, f->sub2, env);
        case FormulaKind::implication: return !eval_qf(t, f->sub, env) || eval_qf(t, f->sub2, env);
        case FormulaKind::equivalence: return eval_qf(t, f->sub, env) == eval_qf(t, f->sub2, env);
        case FormulaKind::exists:
        case FormulaKind::forall:
            throw std::invalid_argument("eval_qf: formula is not quantifier-free");
    }
    throw std::logic_error("eval_qf: bad node");
}

// Deterministic n-th roots: exponent vectors divide exactly; the complex
// root divides the torsion fraction (principal in the torsion coordinate);
// real odd roots preserve sign, even roots require a nonnegative input.
inline QPlusElem nth_root(const QPlusElem& a, const Int& n) {
    if (!is_nth_power(a, n)) throw std::domain_error("nth_root: not an n-th power in Q+");
    return {divide_exact(a.ev, n)};
}

inline RealElem nth_root(const RealElem& a, const Int& n) {
    assert(n >= 1);
    if (a.zero) return real_zero();
    if (n % 2 == 0 && a.sign < 0)
        throw std::domain_error("nth_root: even root of a negative real");
    return real_make(a.sign, scale(a.ev, Rat(1, n)));
}

inline ComplexElem nth_root(const ComplexElem& a, const Int& n) {
    assert(n >= 1);
    if (a.zero) return complex_zero();
    return complex_of(a.torsion / Rat(n), scale(a.ev, Rat(1, n)));
}

inline Value nth_root(Theory t, const Value& v, const Int& n) {
    switch (t) {
        case Theory::qpos_mul: return nth_root(std::get<QPlusElem>(v), n);
        case Theory::c_mul: return nth_root(std::get<ComplexElem>(v), n);
        case Theory::r_mul:
        case Theory::rpos_mul:
        case Theory::rnonneg_mul: return nth_root(std::get<RealElem>(v), n);
        default: throw std::domain_error("nth_root: additive theory");
    }
}

}  // namespace numqe
