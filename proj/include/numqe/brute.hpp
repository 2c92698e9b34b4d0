#pragma once

#include "numqe/isolate.hpp"
#include "numqe/model.hpp"
#include "numqe/normalize.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace numqe {

// Independent existential oracle for single-variable conjunctions with
// ground parameters. Verdicts are computed without the elimination
// engines: literals become per-prime exponent constraints solved by
// residue search (plus one fresh prime coordinate), equalities by finite
// candidate enumeration. Every positive verdict carries a witness that
// eval_qf accepts.

struct BruteResult {
    bool verdict = false;
    std::optional<Value> witness;
};

namespace detail {

inline bool literal_holds(Theory t, const std::vector<FormulaPtr>& lits, const std::string& var,
                          const Value& v) {
    Assignment env{{var, v}};
    for (const FormulaPtr& lit : lits)
        if (!eval_qf(t, lit, env)) return false;
    return true;
}

struct MulLit {
    bool negated;
    Pred pred;
    Int pred_index;   // R[n]
    Int exponent;     // net exponent of x; 0 means the literal is ground on x != 0
    bool occurs;      // x occurs syntactically
    TermPtr lhs_rest; // x-free factor of the left side
    TermPtr rhs;      // full right side term (eq/neq), may mention x
    Int rhs_exponent;
    TermPtr rhs_rest;
    bool rhs_occurs;
};

inline MulLit split_mul_literal(const FormulaPtr& lit, const std::string& var) {
    bool negated = lit->kind == FormulaKind::negation;
    const FormulaPtr& atom = negated ? lit->sub : lit;
    if (atom->kind != FormulaKind::atom)
        throw std::invalid_argument("brute_exists: not a literal");
    MulLit out;
    out.negated = negated;
    out.pred = atom->pred;
    out.pred_index = atom->pred_index;
    auto lhs = collect_mul(atom->lhs_term, var);
    if (!lhs) throw std::invalid_argument("brute_exists: literal outside the oracle fragment");
    out.exponent = lhs->exponent;
    out.occurs = lhs->occurs;
    out.lhs_rest = lhs->rest;
    if (atom->pred == Pred::eq || atom->pred == Pred::neq) {
        auto rhs = collect_mul(atom->rhs_term, var);
        if (!rhs) throw std::invalid_argument("brute_exists: literal outside the oracle fragment");
        out.rhs = atom->rhs_term;
        out.rhs_exponent = rhs->exponent;
        out.rhs_rest = rhs->rest;
        out.rhs_occurs = rhs->occurs;
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// additive oracles

inline BruteResult brute_exists_z_add(const std::string& var,
                                      const std::vector<FormulaPtr>& lits) {
    struct Constraint {
        bool negated;
        bool congruence;
        Int modulus;  // congruence only
        Int k;        // net coefficient of x
        Int c;        // ground side
    };
    std::vector<Constraint> cs;
    for (const FormulaPtr& lit : lits) {
        bool negated = lit->kind == FormulaKind::negation;
        const FormulaPtr& atom = negated ? lit->sub : lit;
        if (atom->kind != FormulaKind::atom)
            throw std::invalid_argument("brute_exists: not a literal");
        if (atom->pred == Pred::positive || atom->pred == Pred::nth_power)
            throw std::invalid_argument("brute_exists: literal outside z-add");
        auto lhs = collect_add(atom->lhs_term, var);
        auto rhs = collect_add(atom->rhs_term, var);
        if (!lhs || !rhs) throw std::invalid_argument("brute_exists: non-additive literal");
        Int k = lhs->coeff - rhs->coeff;
        Int c = std::get<Int>(eval_term(Theory::z_add, rhs->rest, {})) -
                std::get<Int>(eval_term(Theory::z_add, lhs->rest, {}));
        bool is_cong = atom->pred == Pred::congruent;
        bool neg = is_cong ? negated : (negated != (atom->pred == Pred::neq));
        cs.push_back({neg, is_cong, atom->pred_index, k, c});
    }
    // ground literals (k == 0) decide immediately
    std::vector<Constraint> live;
    for (const auto& con : cs) {
        if (con.k != 0) {
            live.push_back(con);
            continue;
        }
        bool value = con.congruence ? mod_floor(-con.c, con.modulus) == 0 : con.c == 0;
        if (con.negated) value = !value;
        if (!value) return {false, std::nullopt};
    }
    auto verify = [&](const Int& x) -> BruteResult {
        Value v = x;
        if (detail::literal_holds(Theory::z_add, lits, var, v)) return {true, v};
        return {false, std::nullopt};
    };
    // an equality pins the candidate
    for (const auto& con : live) {
        if (con.congruence || con.negated) continue;
        if (!divides(con.k, con.c)) return {false, std::nullopt};
        return verify(con.c / con.k);
    }
    // residue search modulo the lcm of the moduli
    Int L = 1;
    for (const auto& con : live)
        if (con.congruence) L = lcm(L, con.modulus);
    std::vector<Int> excluded;
    Int shifts = 1;
    for (const auto& con : live)
        if (!con.congruence) {
            ++shifts;
            if (divides(con.k, con.c)) excluded.push_back(con.c / con.k);
        }
    for (Int r = 0; r < L; ++r) {
        bool ok = true;
        for (const auto& con : live) {
            if (!con.congruence) continue;
            bool value = mod_floor(con.k * r - con.c, con.modulus) == 0;
            if (con.negated) value = !value;
            if (!value) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (Int j = 0; j <= shifts; ++j) {
            Int x = r + j * L;
            if (std::find(excluded.begin(), excluded.end(), x) != excluded.end()) continue;
            BruteResult res = verify(x);
            if (res.verdict) return res;
            break;  // a failed candidate means a non-excluded constraint failed
        }
    }
    return {false, std::nullopt};
}

inline BruteResult brute_exists_div_add(const std::string& var,
                                        const std::vector<FormulaPtr>& lits) {
    struct Constraint {
        bool negated;
        Rat point;  // k.x <> c  <=>  x <> c/k
        bool ground_true;
        bool is_ground;
    };
    std::vector<Constraint> cs;
    for (const FormulaPtr& lit : lits) {
        bool negated = lit->kind == FormulaKind::negation;
        const FormulaPtr& atom = negated ? lit->sub : lit;
        if (atom->kind != FormulaKind::atom || atom->pred == Pred::positive ||
            atom->pred == Pred::nth_power || atom->pred == Pred::congruent)
            throw std::invalid_argument("brute_exists: literal outside div-add");
        bool neq = (atom->pred == Pred::neq) != negated;
        auto lhs = collect_add(atom->lhs_term, var);
        auto rhs = collect_add(atom->rhs_term, var);
        if (!lhs || !rhs) throw std::invalid_argument("brute_exists: non-additive literal");
        Int k = lhs->coeff - rhs->coeff;
        Rat c = std::get<Rat>(eval_term(Theory::div_add, rhs->rest, {})) -
                std::get<Rat>(eval_term(Theory::div_add, lhs->rest, {}));
        if (k == 0) {
            bool value = (c == 0) != neq;
            if (!value) return {false, std::nullopt};
            continue;
        }
        cs.push_back({neq, c / Rat(k), false, false});
    }
    auto verify = [&](const Rat& x) -> BruteResult {
        Value v = x;
        if (detail::literal_holds(Theory::div_add, lits, var, v)) return {true, v};
        return {false, std::nullopt};
    };
    for (const auto& con : cs)
        if (!con.negated) return verify(con.point);
    for (Int j = 0;; ++j) {
        Rat x(j);
        bool clash = false;
        for (const auto& con : cs)
            if (con.point == x) {
                clash = true;
                break;
            }
        if (!clash) return verify(x);
    }
}

// ---------------------------------------------------------------------------
// positive rationals: per-prime residue search with one fresh coordinate

inline BruteResult brute_exists_qplus(const std::string& var,
                                      const std::vector<FormulaPtr>& lits) {
    struct RootCon {
        bool negated;
        Int modulus;
        Int exponent;    // >= 1 after normalization
        QPlusElem coeff; // u in R[m](u * x^g)
    };
    struct EqCon {
        bool negated;
        Int exponent;  // >= 1
        QPlusElem rhs;
    };
    std::vector<RootCon> roots;
    std::vector<EqCon> eqs;
    auto eval_q = [&](const TermPtr& t) {
        return std::get<QPlusElem>(eval_term(Theory::qpos_mul, t, {}));
    };
    for (const FormulaPtr& lit : lits) {
        detail::MulLit m = detail::split_mul_literal(lit, var);
        if (m.pred == Pred::positive || m.pred == Pred::congruent)
            throw std::invalid_argument("brute_exists: literal outside qpos-mul");
        if (m.pred == Pred::nth_power) {
            Int g = m.exponent;
            QPlusElem u = eval_q(m.lhs_rest);
            if (g == 0) {
                bool value = is_nth_power(u, m.pred_index) != m.negated;
                if (!value) return {false, std::nullopt};
                continue;
            }
            if (g < 0) {
                g = -g;
                u = inverse(u);
            }
            roots.push_back({m.negated, m.pred_index, g, u});
            continue;
        }
        // eq / neq
        Int g = m.exponent - m.rhs_exponent;
        QPlusElem c = mul(eval_q(m.rhs_rest), inverse(eval_q(m.lhs_rest)));
        bool neq = (m.pred == Pred::neq) != m.negated;
        if (g == 0) {
            bool value = (c == QPlusElem{}) != neq;
            if (!value) return {false, std::nullopt};
            continue;
        }
        if (g < 0) {
            g = -g;
            c = inverse(c);
        }
        eqs.push_back({neq, g, c});
    }
    auto verify = [&](const QPlusElem& x) -> BruteResult {
        Value v = x;
        if (detail::literal_holds(Theory::qpos_mul, lits, var, v)) return {true, v};
        return {false, std::nullopt};
    };
    // equality constraints pin the candidate exactly (torsion-free model)
    for (const auto& eq : eqs) {
        if (eq.negated) continue;
        if (!is_nth_power(eq.rhs, eq.exponent)) return {false, std::nullopt};
        return verify(nth_root(eq.rhs, eq.exponent));
    }
    // support primes of every parameter plus one fresh coordinate
    std::set<Int> support;
    for (const auto& r : roots)
        for (const Int& p : r.coeff.ev.support()) support.insert(p);
    for (const auto& e : eqs)
        for (const Int& p : e.rhs.ev.support()) support.insert(p);
    Int fresh = fresh_prime(support);
    std::vector<Int> coords(support.begin(), support.end());
    coords.push_back(fresh);
    Int L = 1;
    for (const auto& r : roots) L = lcm(L, r.modulus);
    // negatives to cover: remaining eqs are all inequations here
    std::vector<std::size_t> neg_roots;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (roots[i].negated) neg_roots.push_back(i);
    std::size_t nneg = neg_roots.size() + eqs.size();
    if (nneg > 20) throw std::invalid_argument("brute_exists: too many negative literals");
    Int shift_window(nneg);
    // per coordinate: candidate exponents and the negatives each violates
    const std::size_t full = nneg == 0 ? 0 : (std::size_t{1} << nneg) - 1;
    std::map<std::size_t, std::vector<std::pair<Int, Int>>> how;  // mask -> (prime, exponent)*
    how[0] = {};
    for (const Int& p : coords) {
        std::vector<std::pair<Int, std::size_t>> candidates;  // exponent, violation mask
        for (Int r = 0; r < L; ++r) {
            bool feasible = true;
            for (const auto& rc : roots) {
                if (rc.negated) continue;
                if (mod_floor(rc.coeff.ev.exponent(p) + rc.exponent * r, rc.modulus) != 0) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            for (Int j = 0; j <= shift_window; ++j) {
                Int alpha = r + j * L;
                std::size_t mask = 0;
                for (std::size_t b = 0; b < neg_roots.size(); ++b) {
                    const auto& rc = roots[neg_roots[b]];
                    if (mod_floor(rc.coeff.ev.exponent(p) + rc.exponent * alpha, rc.modulus) != 0)
                        mask |= std::size_t{1} << b;
                }
                for (std::size_t b = 0; b < eqs.size(); ++b) {
                    const auto& e = eqs[b];
                    if (e.exponent * alpha != e.rhs.ev.exponent(p))
                        mask |= std::size_t{1} << (neg_roots.size() + b);
                }
                candidates.push_back({alpha, mask});
            }
        }
        if (candidates.empty()) return {false, std::nullopt};
        std::map<std::size_t, std::vector<std::pair<Int, Int>>> next;
        for (const auto& [mask, assignment] : how)
            for (const auto& [alpha, bits] : candidates) {
                std::size_t m2 = mask | bits;
                if (next.count(m2)) continue;
                auto a2 = assignment;
                if (alpha != 0) a2.push_back({p, alpha});
                next[m2] = std::move(a2);
            }
        how = std::move(next);
    }
    for (const auto& [mask, assignment] : how) {
        if (mask != full) continue;
        QPlusElem x;
        for (const auto& [p, alpha] : assignment) x.ev.set(p, alpha);
        return verify(x);
    }
    return {false, std::nullopt};
}

// ---------------------------------------------------------------------------
// multiplicative models with zero and signs

namespace detail {

// Candidates for x from the equalities on the x != 0 branch, then direct
// verification of the whole conjunction. `make` turns (candidate index,
// equality) into model elements; shared by the complex and real oracles.
template <typename Elem>
inline BruteResult nonzero_branch(Theory theory, const std::string& var,
                                  const std::vector<FormulaPtr>& lits,
                                  const std::vector<std::vector<Elem>>& candidate_sets,
                                  const Elem& fallback_witness) {
    auto verify = [&](const Elem& x) -> BruteResult {
        Value v = x;
        if (literal_holds(theory, lits, var, v)) return {true, v};
        return {false, std::nullopt};
    };
    if (!candidate_sets.empty()) {
        // intersect: every equality admits finitely many candidates
        std::vector<Elem> current = candidate_sets[0];
        for (std::size_t i = 1; i < candidate_sets.size() && !current.empty(); ++i) {
            std::vector<Elem> kept;
            for (const Elem& e : current)
                if (std::find(candidate_sets[i].begin(), candidate_sets[i].end(), e) !=
                    candidate_sets[i].end())
                    kept.push_back(e);
            current = std::move(kept);
        }
        for (const Elem& e : current) {
            BruteResult r = verify(e);
            if (r.verdict) return r;
        }
        return {false, std::nullopt};
    }
    return verify(fallback_witness);
}

}  // namespace detail

inline BruteResult brute_exists_c_mul(const std::string& var,
                                      const std::vector<FormulaPtr>& lits) {
    auto eval_c = [&](const TermPtr& t) {
        return std::get<ComplexElem>(eval_term(Theory::c_mul, t, {}));
    };
    // parse (and fragment-check) every literal before evaluating anything
    std::vector<detail::MulLit> parsed;
    for (const FormulaPtr& lit : lits) {
        detail::MulLit m = detail::split_mul_literal(lit, var);
        if (m.pred != Pred::eq && m.pred != Pred::neq)
            throw std::invalid_argument("brute_exists: literal outside c-mul");
        parsed.push_back(std::move(m));
    }
    // x = 0 branch
    if (detail::literal_holds(Theory::c_mul, lits, var, Value(complex_zero())))
        return {true, Value(complex_zero())};
    // x != 0 branch: equalities yield finitely many candidates
    std::vector<std::vector<ComplexElem>> candidate_sets;
    std::set<Int> support{2};
    for (const detail::MulLit& m : parsed) {
        bool equal = (m.pred == Pred::eq) != m.negated;
        Int g = m.exponent - m.rhs_exponent;
        ComplexElem vl = eval_c(m.lhs_rest), vr = eval_c(m.rhs_rest);
        for (const Int& p : vl.ev.support()) support.insert(p);
        for (const Int& p : vr.ev.support()) support.insert(p);
        if (!equal || g == 0) continue;  // inequations never constrain candidates
        if (vl.zero || vr.zero) continue;  // decided on this branch by verification
        ComplexElem c = mul(vr, inverse(vl));
        std::vector<ComplexElem> cands;
        Int absg = g < 0 ? Int(-g) : g;
        for (Int i = 0; i < absg; ++i) {
            // g * tau == c.torsion (mod 1): tau = (c.torsion + i) / g
            Rat tau = (c.torsion + Rat(i)) / Rat(g);
            cands.push_back(complex_of(tau, scale(c.ev, Rat(1) / Rat(g))));
        }
        candidate_sets.push_back(std::move(cands));
    }
    ComplexElem fallback;
    {
        Int q = fresh_prime(support);
        RatExponents ev;
        ev.set(q, 1);
        fallback = complex_of(Rat(0), std::move(ev));
    }
    return detail::nonzero_branch<ComplexElem>(Theory::c_mul, var, lits, candidate_sets, fallback);
}

inline BruteResult brute_exists_real_family(Theory theory, const std::string& var,
                                            const std::vector<FormulaPtr>& lits) {
    auto eval_r = [&](const TermPtr& t) {
        return std::get<RealElem>(eval_term(theory, t, {}));
    };
    bool has_zero_elem = theory != Theory::rpos_mul;
    bool is_signed = theory == Theory::r_mul;
    std::set<Int> support{2};
    struct Parsed {
        detail::MulLit m;
        RealElem vl, vr;  // vr meaningful for eq/neq
    };
    std::vector<Parsed> parsed;
    for (const FormulaPtr& lit : lits) {
        detail::MulLit m = detail::split_mul_literal(lit, var);
        if (m.pred == Pred::nth_power || m.pred == Pred::congruent)
            throw std::invalid_argument("brute_exists: literal outside the real theories");
        if (m.pred == Pred::positive && theory != Theory::r_mul)
            throw std::invalid_argument("brute_exists: positivity outside r-mul");
        Parsed p{m, eval_r(m.lhs_rest), {}};
        if (m.pred != Pred::positive) p.vr = eval_r(m.rhs_rest);
        for (const Int& q : p.vl.ev.support()) support.insert(q);
        for (const Int& q : p.vr.ev.support()) support.insert(q);
        parsed.push_back(std::move(p));
    }
    if (has_zero_elem &&
        detail::literal_holds(theory, lits, var, Value(real_zero())))
        return {true, Value(real_zero())};
    Int q = fresh_prime(support);
    for (int sign : is_signed ? std::vector<int>{1, -1} : std::vector<int>{1}) {
        std::vector<std::vector<RealElem>> candidate_sets;
        for (const Parsed& p : parsed) {
            if (p.m.pred == Pred::positive) continue;
            bool equal = (p.m.pred == Pred::eq) != p.m.negated;
            Int g = p.m.exponent - p.m.rhs_exponent;
            if (!equal || g == 0 || p.vl.zero || p.vr.zero) continue;
            RealElem c = mul(p.vr, inverse(p.vl));
            // sign constraint: sign(x^g) must match sign(c)
            int lhs_sign = (g % 2 == 0) ? 1 : sign;
            if (lhs_sign != c.sign) {
                candidate_sets.push_back({});
                continue;
            }
            candidate_sets.push_back({real_make(sign, scale(c.ev, Rat(1) / Rat(g)))});
        }
        RatExponents ev;
        ev.set(q, 1);
        RealElem fallback = real_make(sign, std::move(ev));
        BruteResult r = detail::nonzero_branch<RealElem>(theory, var, lits, candidate_sets,
                                                         fallback);
        if (r.verdict) return r;
    }
    return {false, std::nullopt};
}

// Single-variable conjunction oracle; parameters must be ground.
inline BruteResult brute_exists(Theory theory, const std::string& var,
                                const std::vector<FormulaPtr>& lits) {
    for (const FormulaPtr& lit : lits) {
        std::set<std::string> vars;
        FormulaPtr probe = lit;
        collect_all_vars(probe, vars);
        vars.erase(var);
        if (!vars.empty())
            throw std::invalid_argument("brute_exists: parameters must be ground");
    }
    switch (theory) {
        case Theory::z_add: return brute_exists_z_add(var, lits);
        case Theory::div_add: return brute_exists_div_add(var, lits);
        case Theory::qpos_mul: return brute_exists_qplus(var, lits);
        case Theory::c_mul: return brute_exists_c_mul(var, lits);
        case Theory::r_mul:
        case Theory::rpos_mul:
        case Theory::rnonneg_mul: return brute_exists_real_family(theory, var, lits);
    }
    throw std::logic_error("brute_exists: bad theory");
}

}  // namespace numqe
