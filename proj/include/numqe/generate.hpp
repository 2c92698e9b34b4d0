#pragma once

#include "numqe/ast.hpp"
#include "numqe/signature.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace numqe {

// Deterministic generator (splitmix64) so that seeded runs are
// reproducible byte for byte across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool coin() { return (next() & 1) != 0; }

  private:
    std::uint64_t state_;
};

// Ground parameters with support in {2,3,5,7}; c-mul parameters may carry
// a root-of-unity factor, signed theories a sign, theories with zero an
// occasional zero.
inline TermPtr gen_ground_param(Theory t, Rng& rng) {
    static const int primes[4] = {2, 3, 5, 7};
    auto smooth = [&](bool allow_negative_exponents) {
        Rat q = 1;
        int factors = static_cast<int>(rng.below(3));
        for (int i = 0; i < factors; ++i) {
            int p = primes[rng.below(4)];
            long e = rng.range(allow_negative_exponents ? -3 : 1, 3);
            if (e == 0) e = 1;
            q *= rat_pow(Rat(p), Int(e));
        }
        return q;
    };
    switch (t) {
        case Theory::z_add: {
            Rat q = smooth(false);
            if (rng.coin()) q = -q;
            if (rng.below(8) == 0) q = 0;
            return t_num(q);
        }
        case Theory::div_add: {
            Rat q = smooth(true);
            if (rng.coin()) q = -q;
            if (rng.below(8) == 0) q = 0;
            return t_num(q);
        }
        case Theory::qpos_mul:
        case Theory::rpos_mul: return t_num(smooth(true));
        case Theory::rnonneg_mul: {
            if (rng.below(6) == 0) return t_num(0);
            return t_num(smooth(true));
        }
        case Theory::r_mul: {
            if (rng.below(8) == 0) return t_num(0);
            Rat q = smooth(true);
            return t_num(rng.coin() ? -q : q);
        }
        case Theory::c_mul: {
            if (rng.below(8) == 0) return t_num(0);
            Rat q = smooth(true);
            TermPtr base = t_num(rng.coin() ? -q : q);
            if (rng.below(3) == 0) {
                Int n(rng.range(2, 6));
                Int k(rng.range(1, 5));
                TermPtr omega = k == 1 ? t_omega(n) : t_pow(t_omega(n), k);
                return t_mul(base, omega);
            }
            return base;
        }
    }
    return t_num(1);
}

// One literal over the distinguished variable, inside the brute-force
// oracle's fragment for the theory.
inline FormulaPtr gen_oracle_literal(Theory t, const std::string& var, Rng& rng) {
    Signature s = sig(t);
    TermPtr x = t_var(var);
    if (s.multiplicative()) {
        Int a(rng.range(1, 6));
        TermPtr xa = rng.below(3) == 0 && a > 1 ? t_pow(x, a) : (a == 1 ? x : t_pow(x, a));
        if (rng.below(5) == 0) xa = t_inv(xa);
        TermPtr lhs = rng.coin() ? xa : t_mul(gen_ground_param(t, rng), xa);
        if (t == Theory::qpos_mul && rng.below(3) != 0) {
            FormulaPtr atom = f_nth_power(Int(rng.range(2, 6)), lhs);
            return rng.coin() ? atom : f_not(atom);
        }
        if (t == Theory::r_mul && rng.below(4) == 0) {
            FormulaPtr atom = f_positive(lhs);
            return rng.coin() ? atom : f_not(atom);
        }
        TermPtr rhs = gen_ground_param(t, rng);
        if (rng.below(6) == 0) rhs = t_mul(rhs, rng.coin() ? x : t_pow(x, Int(rng.range(2, 6))));
        FormulaPtr atom = rng.coin() ? f_eq(lhs, rhs) : f_neq(lhs, rhs);
        return rng.below(6) == 0 ? f_not(atom) : atom;
    }
    // additive theories: k.x + c <> d, congruences in z-add
    Int k(rng.range(1, 6));
    TermPtr lhs = t_scale(k, x);
    if (rng.coin()) lhs = t_add(lhs, gen_ground_param(t, rng));
    TermPtr rhs = gen_ground_param(t, rng);
    if (rng.below(5) == 0) rhs = t_add(rhs, t_scale(Int(rng.range(1, 6)), x));
    if (t == Theory::z_add && rng.below(3) != 0) {
        FormulaPtr atom = f_congruent(Int(rng.range(2, 6)), lhs, rhs);
        return rng.below(4) == 0 ? f_not(atom) : atom;
    }
    FormulaPtr atom = rng.coin() ? f_eq(lhs, rhs) : f_neq(lhs, rhs);
    return rng.below(6) == 0 ? f_not(atom) : atom;
}

struct OracleInstance {
    std::string var;
    std::vector<FormulaPtr> literals;
};

inline OracleInstance gen_oracle_instance(Theory t, Rng& rng) {
    OracleInstance inst{"x", {}};
    int n = static_cast<int>(rng.below(6)) + 1;
    for (int i = 0; i < n; ++i) inst.literals.push_back(gen_oracle_literal(t, inst.var, rng));
    return inst;
}

// ---------------------------------------------------------------------------
// free-form formulas for round-trip and elimination robustness tests

inline TermPtr gen_term(Theory t, const std::vector<std::string>& vars, Rng& rng, int depth) {
    Signature s = sig(t);
    if (depth <= 0 || rng.below(3) == 0) {
        if (!vars.empty() && rng.coin()) return t_var(vars[rng.below(vars.size())]);
        return gen_ground_param(t, rng);
    }
    if (s.multiplicative()) {
        switch (rng.below(4)) {
            case 0:
                return t_mul(gen_term(t, vars, rng, depth - 1), gen_term(t, vars, rng, depth - 1));
            case 1: return t_inv(gen_term(t, vars, rng, depth - 1));
            case 2: {
                Int k(rng.range(-4, 4));
                if (k == 0) k = 2;
                return t_pow(gen_term(t, vars, rng, depth - 1), k);
            }
            default:
                if (s.admits_omega() && rng.below(3) == 0) return t_omega(Int(rng.range(2, 6)));
                return t_mul(gen_term(t, vars, rng, depth - 1), gen_term(t, vars, rng, depth - 1));
        }
    }
    switch (rng.below(3)) {
        case 0:
            return t_add(gen_term(t, vars, rng, depth - 1), gen_term(t, vars, rng, depth - 1));
        case 1: return t_neg(gen_term(t, vars, rng, depth - 1));
        default: return t_scale(Int(rng.range(1, 5)), gen_term(t, vars, rng, depth - 1));
    }
}

inline FormulaPtr gen_atom(Theory t, const std::vector<std::string>& vars, Rng& rng, int depth) {
    Signature s = sig(t);
    TermPtr a = gen_term(t, vars, rng, depth);
    if (s.admits_positivity() && rng.below(4) == 0) return f_positive(a);
    if (s.admits_root_predicate() && rng.below(3) == 0)
        return f_nth_power(Int(rng.range(2, 6)), a);
    TermPtr b = gen_term(t, vars, rng, depth);
    if (s.admits_congruence() && rng.below(3) == 0)
        return f_congruent(Int(rng.range(2, 6)), a, b);
    return rng.coin() ? f_eq(a, b) : f_neq(a, b);
}

// Random formula with at most `quantifiers` quantifier nodes.
inline FormulaPtr gen_formula(Theory t, std::vector<std::string> vars, Rng& rng, int depth,
                              int quantifiers) {
    if (depth <= 0) return gen_atom(t, vars, rng, 1);
    switch (rng.below(quantifiers > 0 ? 7 : 5)) {
        case 0: return gen_atom(t, vars, rng, 2);
        case 1: return f_not(gen_formula(t, vars, rng, depth - 1, quantifiers));
        case 2:
            return f_and(gen_formula(t, vars, rng, depth - 1, quantifiers),
                         gen_formula(t, vars, rng, depth - 1, 0));
        case 3:
            return f_or(gen_formula(t, vars, rng, depth - 1, quantifiers),
                        gen_formula(t, vars, rng, depth - 1, 0));
        case 4:
            return rng.coin()
                       ? f_implies(gen_formula(t, vars, rng, depth - 1, 0),
                                   gen_formula(t, vars, rng, depth - 1, quantifiers))
                       : f_iff(gen_formula(t, vars, rng, depth - 1, 0),
                               gen_formula(t, vars, rng, depth - 1, quantifiers));
        default: {
            std::string v = "q" + std::to_string(rng.below(3));
            std::vector<std::string> inner = vars;
            inner.push_back(v);
            return f_quant(rng.coin() ? FormulaKind::exists : FormulaKind::forall, v,
                           gen_formula(t, inner, rng, depth - 1, quantifiers - 1));
        }
    }
    return gen_atom(t, vars, rng, 1);
}

// Sentence: close a random formula under universal quantifiers.
inline FormulaPtr gen_sentence(Theory t, Rng& rng, int depth = 4, int quantifiers = 3) {
    FormulaPtr f = gen_formula(t, {}, rng, depth, quantifiers);
    std::set<std::string> free = free_vars(f);
    for (const std::string& v : free) f = f_forall(v, f);
    return f;
}

}  // namespace numqe
