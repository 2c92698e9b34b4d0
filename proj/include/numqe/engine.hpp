#pragma once

#include "numqe/isolate.hpp"
#include "numqe/model.hpp"
#include "numqe/normalize.hpp"
#include "numqe/numtheory.hpp"
#include "numqe/parse.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace numqe {

// One single-existential-block eliminator per theory, the quantifier
// elimination driver on top of them, and the constructive root-system
// solver for the positive rationals.

struct TraceStep {
    int depth;  // 0 = whole-formula snapshots, chained; >0 = local rewrites
    std::string rule;
    std::string before;
    std::string after;
};

struct EliminationTrace {
    std::vector<TraceStep> steps;
};

struct ElimOptions {
    std::size_t dnf_cap = 1000000;   // literal occurrences per DNF conversion
    std::size_t step_cap = 5000000;  // eliminator work budget
};

// ---------------------------------------------------------------------------
// root systems over the positive rationals

// Parameterizes all solutions of { R[n_i](u_i * x) }: every solution is
// base * (n-th power), and base itself satisfies all the relations.
struct RootSystemSolution {
    QPlusElem base;
    Int modulus;              // lcm of the n_i
    std::vector<Int> coeffs;  // sum coeffs[i]*(modulus/n_i) == 1
};

struct RootRelation {
    Int index;  // n >= 1
    QPlusElem elem;
};

inline std::optional<RootSystemSolution> solve_root_system(
    const std::vector<RootRelation>& relations) {
    for (std::size_t i = 0; i < relations.size(); ++i)
        for (std::size_t j = 0; j < relations.size(); ++j) {
            if (i == j) continue;
            Int d = gcd(relations[i].index, relations[j].index);
            QPlusElem ratio = mul(relations[i].elem, inverse(relations[j].elem));
            if (!is_nth_power(ratio, d)) return std::nullopt;
        }
    Int n = 1;
    for (const auto& r : relations) n = lcm(n, r.index);
    QPlusElem base;
    std::vector<Int> coeffs;
    if (!relations.empty()) {
        std::vector<Int> quotients;
        for (const auto& r : relations) quotients.push_back(n / r.index);
        GenBezout bz = gen_bezout(quotients);
        assert(bz.g == 1);
        coeffs = bz.coeffs;
        for (std::size_t i = 0; i < relations.size(); ++i)
            base = mul(base, pow(relations[i].elem, -coeffs[i] * quotients[i]));
    }
    for (const auto& r : relations) assert(is_nth_power(mul(r.elem, base), r.index));
    return RootSystemSolution{base, n, coeffs};
}

struct RootSystemVerdict {
    bool satisfiable = false;
    std::optional<QPlusElem> witness;
};

// Satisfiable iff the positive part is compatible and, for every negated
// relation whose index divides the combined modulus, the base avoids it.
// The witness is base * p^n for a prime p fresh to all the inputs.
inline RootSystemVerdict solve_root_system_with_negations(
    const std::vector<RootRelation>& pos, const std::vector<RootRelation>& neg) {
    auto sol = solve_root_system(pos);
    if (!sol) return {false, std::nullopt};
    for (const auto& [m, v] : neg)
        if (divides(m, sol->modulus) && is_nth_power(mul(sol->base, v), m))
            return {false, std::nullopt};
    std::set<Int> avoid;
    for (const auto& r : pos)
        for (const Int& p : r.elem.ev.support()) avoid.insert(p);
    for (const auto& r : neg)
        for (const Int& p : r.elem.ev.support()) avoid.insert(p);
    Int p = fresh_prime(avoid);
    QPlusElem fresh;
    fresh.ev.set(p, sol->modulus);
    QPlusElem witness = mul(sol->base, fresh);
    for (const auto& r : pos) assert(is_nth_power(mul(r.elem, witness), r.index));
    for (const auto& r : neg) assert(!is_nth_power(mul(r.elem, witness), r.index));
    return {true, witness};
}

// ---------------------------------------------------------------------------
// the eliminator

class Eliminator {
  public:
    Eliminator(Signature s, ElimOptions opts = {}, EliminationTrace* trace = nullptr)
        : sig_(s), opts_(opts), trace_(trace) {}

    // Quantifier-free equivalent of f in the theory of the signature.
    // Iterates the one-block reduction at an innermost quantified
    // subformula until no quantifier remains; independent blocks never
    // contaminate each other's disjunctive normal forms.
    FormulaPtr eliminate(const FormulaPtr& f) {
        check_signature(f, sig_);
        FormulaPtr work = f;
        while (has_quantifier(work)) {
            bool universal = false;
            FormulaPtr next = fold(sig_.theory, replace_innermost(work, universal));
            note(0, universal ? "eliminate-forall-block" : "eliminate-exists-block", print(work),
                 print(next));
            work = next;
        }
        assert(!has_quantifier(work));
        return work;
    }

    // exists var . conjunction-of-literals, literals canonical in var or
    // var-free. This is the dispatch the per-theory engines sit behind.
    FormulaPtr eliminate_exists_block(const std::string& var,
                                      const std::vector<FormulaPtr>& literals) {
        std::vector<FormulaPtr> guards;
        std::vector<CanonicalLiteral> canonical;
        for (const FormulaPtr& lit : literals) {
            if (!mentions(lit, var)) {
                guards.push_back(lit);
                continue;
            }
            auto m = match_canonical(lit, var);
            if (!m) throw std::invalid_argument("eliminate_exists_block: non-canonical literal " +
                                                print(lit));
            canonical.push_back(*m);
        }
        FormulaPtr core = dispatch_core(var, canonical);
        return fold(sig_.theory, f_and(f_and_all(guards), core));
    }

    std::size_t steps_used() const { return steps_; }

  private:
    Signature sig_;
    ElimOptions opts_;
    EliminationTrace* trace_;
    std::size_t steps_ = 0;

    void bump() {
        if (++steps_ > opts_.step_cap)
            throw resource_error("eliminator step budget exceeded (" +
                                 std::to_string(opts_.step_cap) + ")");
    }

    void note(int depth, const std::string& rule, std::string before, std::string after) {
        if (trace_) trace_->steps.push_back({depth, rule, std::move(before), std::move(after)});
    }

    // Rewrites the leftmost innermost quantified subformula (whose body is
    // already quantifier-free) into its quantifier-free equivalent.
    FormulaPtr replace_innermost(const FormulaPtr& f, bool& universal) {
        switch (f->kind) {
            case FormulaKind::atom: return f;
            case FormulaKind::exists:
            case FormulaKind::forall:
                if (!has_quantifier(f->sub)) {
                    universal = f->kind == FormulaKind::forall;
                    return eliminate_one_block(f->kind, f->var, f->sub);
                }
                return f_quant(f->kind, f->var, replace_innermost(f->sub, universal));
            case FormulaKind::negation: return f_not(replace_innermost(f->sub, universal));
            default: {
                if (has_quantifier(f->sub)) {
                    Formula copy = *f;
                    copy.sub = replace_innermost(f->sub, universal);
                    return std::make_shared<Formula>(std::move(copy));
                }
                Formula copy = *f;
                copy.sub2 = replace_innermost(f->sub2, universal);
                return std::make_shared<Formula>(std::move(copy));
            }
        }
        throw std::logic_error("replace_innermost: bad node");
    }

    // One block: a universal quantifier goes through its existential dual,
    // the body through DNF, and the existential distributes over the
    // disjuncts into the theory engine.
    FormulaPtr eliminate_one_block(FormulaKind q, const std::string& var, const FormulaPtr& body) {
        bool universal = q == FormulaKind::forall;
        FormulaPtr psi = fold(sig_.theory, universal ? f_not(body) : body);
        FormulaPtr eliminated;
        if (is_true_formula(psi) || is_false_formula(psi) || !mentions(psi, var)) {
            eliminated = psi;  // the block binds nothing (domains are nonempty)
        } else {
            std::vector<Clause> clauses = to_dnf_clauses(psi, opts_.dnf_cap);
            std::vector<FormulaPtr> disjuncts;
            disjuncts.reserve(clauses.size());
            for (const Clause& clause : clauses)
                disjuncts.push_back(eliminate_clause(var, clause));
            eliminated = fold(sig_.theory, f_or_all(disjuncts));
        }
        return universal ? fold(sig_.theory, f_not(eliminated)) : eliminated;
    }

    // exists var over one DNF clause: isolate var in every literal that
    // mentions it, re-normalize, then hand each resulting conjunction to
    // the theory engine.
    FormulaPtr eliminate_clause(const std::string& var, const Clause& clause) {
        bump();
        std::vector<FormulaPtr> rest;
        std::vector<FormulaPtr> isolated;
        for (const FormulaPtr& lit : clause) {
            if (!mentions(lit, var)) {
                rest.push_back(lit);
                continue;
            }
            FormulaPtr iso = fold(sig_.theory, isolate_variable(lit, var, sig_));
            if (trace_ && !formula_equal(iso, lit)) note(1, "isolate", print(lit), print(iso));
            if (is_false_formula(iso)) return f_false();
            isolated.push_back(iso);
        }
        if (isolated.empty()) return fold(sig_.theory, f_and_all(clause));
        std::vector<Clause> subclauses = to_dnf_clauses(f_and_all(isolated), opts_.dnf_cap);
        std::vector<FormulaPtr> results;
        for (const Clause& sub : subclauses) {
            FormulaPtr folded = fold(sig_.theory, f_and_all(sub));
            if (is_false_formula(folded)) continue;
            if (!mentions(folded, var)) {
                results.push_back(folded);
                continue;
            }
            std::vector<FormulaPtr> lits;
            if (is_true_formula(folded)) {
                results.push_back(folded);
                continue;
            }
            detail::flatten(FormulaKind::conjunction, folded, lits);
            FormulaPtr out = eliminate_exists_block(var, lits);
            if (trace_) note(1, "eliminate-exists-" + theory_name(sig_.theory),
                             print(f_exists(var, folded)), print(out));
            results.push_back(out);
        }
        return fold(sig_.theory, f_and(f_and_all(rest), f_or_all(results)));
    }

    FormulaPtr dispatch_core(const std::string& var, std::vector<CanonicalLiteral> lits) {
        switch (sig_.theory) {
            case Theory::c_mul: return complex_core(var, std::move(lits));
            case Theory::div_add: return divisible_core(var, std::move(lits));
            case Theory::rpos_mul: return positive_core(var, std::move(lits));
            case Theory::r_mul: return real_core(var, std::move(lits), /*signed_model=*/true);
            case Theory::rnonneg_mul:
                return real_core(var, std::move(lits), /*signed_model=*/false);
            case Theory::z_add: return int_core(var, std::move(lits));
            case Theory::qpos_mul: return qplus_core(var, std::move(lits));
        }
        throw std::logic_error("dispatch_core: bad theory");
    }

    // Adds a guard literal after folding. Returns false when the guard is
    // ground-false, i.e. the branch dies.
    bool push_guard(std::vector<FormulaPtr>& guards, const FormulaPtr& lit) {
        FormulaPtr g = fold(sig_.theory, lit);
        if (is_false_formula(g)) return false;
        if (!is_true_formula(g)) guards.push_back(g);
        return true;
    }

    bool ground_zero(const TermPtr& t) {
        TermPtr g = fold_term(t);
        return g->kind == TermKind::numeral && g->value == 0;
    }
    bool ground_nonzero_numeral(const TermPtr& t) {
        TermPtr g = fold_term(t);
        return g->kind == TermKind::numeral && g->value != 0;
    }

    // ----- complex numbers ------------------------------------------------

    struct ComplexState {
        std::vector<std::pair<Int, TermPtr>> eqs;   // x^n = t
        std::vector<std::pair<Int, TermPtr>> neqs;  // x^m != s
        bool nonzero = false;                       // the distinguished x != 0 marker
        std::vector<FormulaPtr> guards;
    };

    FormulaPtr complex_core(const std::string& var, std::vector<CanonicalLiteral> lits) {
        ComplexState st;
        for (auto& lit : lits) {
            switch (lit.kind) {
                case CanonKind::eq: st.eqs.push_back({lit.exponent, fold_term(lit.rhs)}); break;
                case CanonKind::neq: st.neqs.push_back({lit.exponent, fold_term(lit.rhs)}); break;
                default:
                    throw std::invalid_argument("complex engine: literal outside {=, !=}");
            }
        }
        std::vector<FormulaPtr> disjuncts;
        complex_rec(var, std::move(st), disjuncts);
        return fold(sig_.theory, f_or_all(disjuncts));
    }

    void complex_rec(const std::string& var, ComplexState st, std::vector<FormulaPtr>& out) {
        bump();
        // x^m != 0 is just the nonzero marker
        for (std::size_t j = 0; j < st.neqs.size();) {
            if (ground_zero(st.neqs[j].second)) {
                st.nonzero = true;
                st.neqs.erase(st.neqs.begin() + j);
            } else {
                ++j;
            }
        }
        if (st.eqs.empty()) {
            // finitely many excluded values in an infinite model
            note(1, "infinite-model", "exists " + var + ". <inequations>", "0 = 0");
            out.push_back(fold(sig_.theory, f_and_all(st.guards)));
            return;
        }
        if (st.eqs.size() >= 2) {
            // align two equality exponents
            std::size_t i = 0;
            for (std::size_t k = 1; k < st.eqs.size(); ++k)
                if (st.eqs[k].first < st.eqs[i].first) i = k;
            std::size_t j = i == 0 ? 1 : 0;
            auto [ni, ti] = st.eqs[i];
            auto [nj, tj] = st.eqs[j];
            if (ni == nj) {
                ComplexState next = st;
                next.eqs.erase(next.eqs.begin() + j);
                if (push_guard(next.guards, f_eq(ti, tj)))
                    complex_rec(var, std::move(next), out);
                return;
            }
            note(1, "mul-eq-align", "x^" + ni.str() + "=t, x^" + nj.str() + "=u",
                 "x^" + ni.str() + "=t, x^" + Int(nj - ni).str() + "=u*inv(t)");
            {  // branch: t_i = 0, so x = 0 and t_j = 0
                ComplexState next = st;
                auto larger = next.eqs.begin() + j;
                auto smaller = next.eqs.begin() + i;
                if (j > i) {
                    next.eqs.erase(larger);
                    next.eqs.erase(smaller);
                } else {
                    next.eqs.erase(smaller);
                    next.eqs.erase(larger);
                }
                next.eqs.push_back({1, t_zero()});
                if (push_guard(next.guards, f_eq(ti, t_zero())) &&
                    push_guard(next.guards, f_eq(tj, t_zero())))
                    complex_rec(var, std::move(next), out);
            }
            {  // branch: t_i != 0, divide the exponents
                ComplexState next = st;
                next.eqs[j] = {nj - ni, fold_term(t_mul(tj, t_inv(ti)))};
                if (push_guard(next.guards, f_neq(ti, t_zero())))
                    complex_rec(var, std::move(next), out);
            }
            return;
        }
        // exactly one equality x^n = t
        auto [n, t] = st.eqs[0];
        if (st.neqs.empty()) {
            if (st.nonzero) {
                // exists x (x != 0 & x^n = t)  <->  t != 0
                note(1, "terminal-nonzero-root", "exists " + var + ". " + var + " != 0 & " +
                                                     var + "^" + n.str() + " = " + print(t),
                     print(t) + " != 0");
                ComplexState next = std::move(st);
                if (push_guard(next.guards, f_neq(t, t_zero())))
                    out.push_back(fold(sig_.theory, f_and_all(next.guards)));
            } else {
                // exists x (x^n = t) always holds: the model is divisible
                note(1, "terminal-root-exists",
                     "exists " + var + ". " + var + "^" + n.str() + " = " + print(t), "0 = 0");
                out.push_back(fold(sig_.theory, f_and_all(st.guards)));
            }
            return;
        }
        // eliminate one inequation via the roots of unity
        auto [m, s] = st.neqs.back();
        st.neqs.pop_back();
        note(1, "neq-root-of-unity-split",
             var + "^" + m.str() + " != " + print(s),
             "s = 0 branch; " + print(t) + "^" + m.str() + " != " + print(s) + "^" + n.str() +
                 " branch; " + Int(n - 1).str() + " root-twist branches");
        {  // s = 0: the inequation is x != 0
            ComplexState next = st;
            next.nonzero = true;
            if (push_guard(next.guards, f_eq(s, t_zero())))
                complex_rec(var, std::move(next), out);
        }
        {  // s != 0 and x^{mn} != s^n, which x^n = t turns into t^m != s^n
            ComplexState next = st;
            if (push_guard(next.guards, f_neq(s, t_zero())) &&
                push_guard(next.guards,
                           f_neq(fold_term(t_pow(t, m)), fold_term(t_pow(s, n)))))
                complex_rec(var, std::move(next), out);
        }
        for (Int i = 1; i < n; ++i) {  // s != 0 and x^m = s * w[n]^i
            ComplexState next = st;
            if (!push_guard(next.guards, f_neq(s, t_zero()))) break;
            next.eqs.push_back({m, fold_term(t_mul(s, t_pow(t_omega(n), i)))});
            complex_rec(var, std::move(next), out);
        }
    }

    // ----- divisible torsion-free groups ----------------------------------

    // div_add: coefficients unify via torsion-freeness, then y = q.x turns
    // the block into plain equations on y, which substitution removes.
    FormulaPtr divisible_core(const std::string& var, std::vector<CanonicalLiteral> lits) {
        Int h = 1;
        for (const auto& lit : lits) {
            if (lit.kind != CanonKind::eq && lit.kind != CanonKind::neq)
                throw std::invalid_argument("divisible engine: literal outside {=, !=}");
            h = lcm(h, lit.exponent);
        }
        std::vector<TermPtr> eqs, neqs;
        for (const auto& lit : lits) {
            TermPtr scaled = fold_term(t_scale(h / lit.exponent, lit.rhs));
            (lit.kind == CanonKind::eq ? eqs : neqs).push_back(scaled);
        }
        note(1, "coefficient-unify", "coefficients on " + var, "all equal to " + h.str());
        if (eqs.empty()) {
            note(1, "infinite-model", "exists " + var + ". <inequations>", "0 = 0");
            return f_true();
        }
        std::vector<FormulaPtr> parts;
        for (std::size_t i = 1; i < eqs.size(); ++i) parts.push_back(f_eq(eqs[0], eqs[i]));
        for (const TermPtr& s : neqs) parts.push_back(f_neq(eqs[0], s));
        note(1, "substitute-witness", var + " := representative of " + print(eqs[0]),
             print(f_and_all(parts)));
        return fold(sig_.theory, f_and_all(parts));
    }

    // rpos_mul: the multiplicative mirror image of divisible_core.
    FormulaPtr positive_core(const std::string& var, std::vector<CanonicalLiteral> lits) {
        Int h = 1;
        for (const auto& lit : lits) {
            if (lit.kind != CanonKind::eq && lit.kind != CanonKind::neq)
                throw std::invalid_argument("positive engine: literal outside {=, !=}");
            h = lcm(h, lit.exponent);
        }
        std::vector<TermPtr> eqs, neqs;
        for (const auto& lit : lits) {
            TermPtr scaled = fold_term(t_pow(lit.rhs, h / lit.exponent));
            (lit.kind == CanonKind::eq ? eqs : neqs).push_back(scaled);
        }
        note(1, "exponent-unify", "exponents on " + var, "all equal to " + h.str());
        if (eqs.empty()) {
            note(1, "infinite-model", "exists " + var + ". <inequations>", "0 = 0");
            return f_true();
        }
        std::vector<FormulaPtr> parts;
        for (std::size_t i = 1; i < eqs.size(); ++i) parts.push_back(f_eq(eqs[0], eqs[i]));
        for (const TermPtr& s : neqs) parts.push_back(f_neq(eqs[0], s));
        note(1, "substitute-witness", var + " := root of " + print(eqs[0]),
             print(f_and_all(parts)));
        return fold(sig_.theory, f_and_all(parts));
    }

    // ----- signed and non-negative reals -----------------------------------

    struct SignedTerm {
        int sign;  // -1, 0, +1
        TermPtr magnitude;
    };

    // Sign and magnitude of a multiplicative term under a sign assignment
    // for its variables. The magnitude replaces negative variables y by
    // -1 * y and numerals by their absolute values.
    static SignedTerm term_sign(const TermPtr& t, const std::map<std::string, int>& signs) {
        switch (t->kind) {
            case TermKind::variable: {
                int s = signs.at(t->var);
                if (s == 0) return {0, t_zero()};
                if (s > 0) return {1, t};
                return {-1, t_mul(t_num(-1), t)};
            }
            case TermKind::numeral: {
                if (t->value == 0) return {0, t_zero()};
                if (t->value > 0) return {1, t};
                return {-1, t_num(-t->value)};
            }
            case TermKind::product: {
                SignedTerm a = term_sign(t->child, signs);
                SignedTerm b = term_sign(t->child2, signs);
                if (a.sign == 0 || b.sign == 0) return {0, t_zero()};
                return {a.sign * b.sign, fold_term(t_mul(a.magnitude, b.magnitude))};
            }
            case TermKind::inverse: {
                SignedTerm a = term_sign(t->child, signs);
                if (a.sign == 0) return {0, t_zero()};  // 0^-1 = 0
                return {a.sign, fold_term(t_inv(a.magnitude))};
            }
            case TermKind::power: {
                SignedTerm a = term_sign(t->child, signs);
                if (a.sign == 0) return {0, t_zero()};
                int s = (t->index % 2 == 0) ? 1 : a.sign;
                return {s, fold_term(t_pow(a.magnitude, t->index))};
            }
            default:
                throw std::invalid_argument("term_sign: additive node in a multiplicative theory");
        }
    }

    // Shared by r_mul (three-way sign split) and rnonneg_mul (zero split,
    // reconstructed on the signed pattern): case analysis on the sign of
    // every variable purges P-literals and minus signs, then the positive
    // engine finishes each branch.
    FormulaPtr real_core(const std::string& var, std::vector<CanonicalLiteral> lits,
                         bool signed_model) {
        for (const auto& lit : lits) {
            bool ok = lit.kind == CanonKind::eq || lit.kind == CanonKind::neq ||
                      (signed_model && (lit.kind == CanonKind::pos || lit.kind == CanonKind::not_pos));
            if (!ok) throw std::invalid_argument("real engine: unsupported literal");
        }
        std::set<std::string> params;
        for (const auto& lit : lits) {
            if (lit.rhs) collect_term_vars(lit.rhs, params);
            if (lit.coeff) collect_term_vars(lit.coeff, params);
        }
        params.erase(var);
        std::vector<std::string> param_list(params.begin(), params.end());
        std::vector<FormulaPtr> disjuncts;
        std::vector<int> choice(param_list.size(), 0);
        const int nsigns = signed_model ? 3 : 2;  // 0 | + | -
        const char* rule = signed_model ? "sign-split" : "zero-split-delegate";
        note(1, rule, "variables of the block",
             std::to_string(param_list.size()) + " parameters, distinguished " + var);
        std::size_t total = 1;
        for (std::size_t i = 0; i < param_list.size(); ++i) total *= nsigns;
        for (std::size_t pattern = 0; pattern < total; ++pattern) {
            std::size_t code = pattern;
            std::map<std::string, int> signs;
            std::vector<FormulaPtr> guards;
            bool dead = false;
            for (std::size_t i = 0; i < param_list.size(); ++i) {
                int c = static_cast<int>(code % nsigns);
                code /= nsigns;
                int sign = c == 0 ? 0 : (c == 1 ? 1 : -1);
                signs[param_list[i]] = sign;
                TermPtr y = t_var(param_list[i]);
                FormulaPtr guard =
                    sign == 0
                        ? f_eq(y, t_zero())
                        : (signed_model
                               ? f_positive(sign > 0 ? y : t_mul(t_num(-1), y))
                               : f_neq(y, t_zero()));
                if (!push_guard(guards, guard)) {
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            for (int xs : signed_model ? std::vector<int>{0, 1, -1} : std::vector<int>{0, 1}) {
                bump();
                signs[var] = xs;
                auto branch = real_branch(var, lits, signs, xs);
                if (!branch) continue;
                FormulaPtr result = fold(sig_.theory, f_and(f_and_all(guards), *branch));
                if (!is_false_formula(result)) disjuncts.push_back(result);
            }
        }
        return fold(sig_.theory, f_or_all(disjuncts));
    }

    // One sign branch: fold every literal to true, false, or a literal of
    // the positive fragment, then delegate.
    std::optional<FormulaPtr> real_branch(const std::string& var,
                                          const std::vector<CanonicalLiteral>& lits,
                                          const std::map<std::string, int>& signs, int xsign) {
        std::vector<CanonicalLiteral> core;
        for (const auto& lit : lits) {
            if (lit.kind == CanonKind::eq || lit.kind == CanonKind::neq) {
                SignedTerm rhs = term_sign(lit.rhs, signs);
                int lhs_sign = xsign == 0 ? 0 : (lit.exponent % 2 == 0 ? 1 : xsign);
                bool equal = lit.kind == CanonKind::eq;
                if (lhs_sign == 0 || rhs.sign == 0 || lhs_sign != rhs.sign) {
                    bool truth = (lhs_sign == rhs.sign) ? equal             // both zero
                                                        : !equal;          // signs differ
                    if (!truth) return std::nullopt;
                    continue;  // literal holds on this branch
                }
                core.push_back({var, lit.kind, lit.exponent, 0, nullptr, rhs.magnitude});
                continue;
            }
            // positivity literal P(u * x^g) with polarity
            SignedTerm u = term_sign(lit.coeff, signs);
            int value_sign =
                (xsign == 0 || u.sign == 0) ? 0 : (lit.exponent % 2 == 0 ? 1 : xsign) * u.sign;
            bool value = value_sign > 0;
            bool want = lit.kind == CanonKind::pos;
            if (value != want) return std::nullopt;
        }
        if (xsign == 0) return f_true();  // every literal already folded
        // delegate the all-positive block
        bool had = !core.empty();
        FormulaPtr out = positive_core(var, std::move(core));
        if (had) note(2, "delegate-positive", "positive block on " + var, print(out));
        return out;
    }

    // ----- additive integers ----------------------------------------------

    FormulaPtr int_core(const std::string& var, std::vector<CanonicalLiteral> lits) {
        Int h = 1;
        for (const auto& lit : lits) {
            if (lit.kind == CanonKind::pos || lit.kind == CanonKind::not_pos ||
                lit.kind == CanonKind::root || lit.kind == CanonKind::not_root)
                throw std::invalid_argument("integer engine: literal outside {=, !=, =[n]}");
            h = lcm(h, lit.exponent);
        }
        std::vector<TermPtr> eqs, neqs;
        std::vector<std::pair<Int, TermPtr>> congs, not_congs;  // y =[q] r / ~(y =[q] r)
        for (const auto& lit : lits) {
            Int scale_by = h / lit.exponent;
            TermPtr rhs = fold_term(t_scale(scale_by, lit.rhs));
            switch (lit.kind) {
                case CanonKind::eq: eqs.push_back(rhs); break;
                case CanonKind::neq: neqs.push_back(rhs); break;
                case CanonKind::cong: congs.push_back({lit.modulus * scale_by, rhs}); break;
                case CanonKind::not_cong:
                    not_congs.push_back({lit.modulus * scale_by, rhs});
                    break;
                default: break;
            }
        }
        note(1, "coefficient-unify", "coefficients on " + var, "all equal to " + h.str());
        if (h >= 2) congs.push_back({h, t_zero()});  // y = h.x forces y =[h] 0
        if (!eqs.empty()) {
            std::vector<FormulaPtr> parts;
            for (std::size_t i = 1; i < eqs.size(); ++i) parts.push_back(f_eq(eqs[0], eqs[i]));
            for (const TermPtr& s : neqs) parts.push_back(f_neq(eqs[0], s));
            for (const auto& [q, r] : congs) parts.push_back(f_congruent(q, eqs[0], r));
            for (const auto& [q, r] : not_congs)
                parts.push_back(f_not(f_congruent(q, eqs[0], r)));
            note(1, "substitute-witness", var + " := solution of " + print(eqs[0]),
                 print(f_and_all(parts)));
            return fold(sig_.theory, f_and_all(parts));
        }
        note(1, "drop-inequations", std::to_string(neqs.size()) + " inequations",
             "solvability is untouched by finitely many exclusions");
        return int_congruence_core(congs, not_congs, neqs);
    }

    // Solvability of a pure congruence system over one variable. Ground
    // residues go through residue search modulo the lcm; symbolic negated
    // congruences expand into the finite shift disjunction first.
    FormulaPtr int_congruence_core(const std::vector<std::pair<Int, TermPtr>>& congs,
                                   const std::vector<std::pair<Int, TermPtr>>& not_congs,
                                   const std::vector<TermPtr>& neqs) {
        bump();
        auto ground_residue = [&](const TermPtr& r) -> std::optional<Int> {
            TermPtr rf = fold_term(r);
            if (rf->kind == TermKind::numeral && is_integer(rf->value)) return numer(rf->value);
            return std::nullopt;
        };
        bool all_ground = true;
        for (const auto& [q, r] : congs)
            if (!ground_residue(r)) all_ground = false;
        for (const auto& [q, r] : not_congs)
            if (!ground_residue(r)) all_ground = false;
        if (all_ground) {
            // solutions form whole residue classes modulo the lcm, so the
            // finitely many excluded points never matter
            Int l = 1;
            for (const auto& [q, r] : congs) l = lcm(l, q);
            for (const auto& [q, r] : not_congs) l = lcm(l, q);
            for (Int x = 0; x < l; ++x) {
                bool ok = true;
                for (const auto& [q, r] : congs)
                    if (mod_floor(x - *ground_residue(r), q) != 0) ok = false;
                for (const auto& [q, r] : not_congs)
                    if (ok && mod_floor(x - *ground_residue(r), q) == 0) ok = false;
                if (ok) {
                    if (trace_ && !congs.empty()) {
                        CongruenceSystem sys;
                        for (const auto& [q, r] : congs) sys.add(q, *ground_residue(r));
                        std::vector<Int> forbidden;
                        for (const TermPtr& s : neqs)
                            if (auto v = ground_residue(s)) forbidden.push_back(*v);
                        auto verdict = crt_with_inequations(sys, forbidden);
                        note(2, "crt-ground-witness", "ground congruence system",
                             verdict.solvable ? "witness " + verdict.witness.str()
                                              : "unsolvable");
                    }
                    note(1, "crt-residue-search", "residue " + x.str() + " modulo " + l.str(),
                         "0 = 0");
                    return f_true();
                }
            }
            note(1, "crt-residue-search", "no residue modulo " + l.str(), "0 != 0");
            return f_false();
        }
        if (!not_congs.empty()) {
            // (t !=[q] u)  <->  OR_{0<i<q} t =[q] u + i, then recurse over
            // the expanded disjunction
            auto [q, r] = not_congs.front();
            std::vector<std::pair<Int, TermPtr>> rest(not_congs.begin() + 1, not_congs.end());
            std::vector<FormulaPtr> branches;
            for (Int i = 1; i < q; ++i) {
                auto shifted = congs;
                shifted.push_back({q, fold_term(t_add(r, t_num(Rat(i))))});
                branches.push_back(int_congruence_core(shifted, rest, neqs));
            }
            note(1, "negated-congruence-expand", "modulus " + q.str(),
                 std::to_string(branches.size()) + " shifted branches");
            return fold(sig_.theory, f_or_all(branches));
        }
        // symbolic positive congruences: the pairwise compatibility criterion
        std::vector<FormulaPtr> parts;
        for (std::size_t i = 0; i < congs.size(); ++i)
            for (std::size_t j = i + 1; j < congs.size(); ++j) {
                Int d = gcd(congs[i].first, congs[j].first);
                if (d >= 2) parts.push_back(f_congruent(d, congs[i].second, congs[j].second));
            }
        note(1, "crt-pairwise", std::to_string(congs.size()) + " congruences",
             print(f_and_all(parts)));
        return fold(sig_.theory, f_and_all(parts));
    }

    // ----- positive rationals ----------------------------------------------

    FormulaPtr qplus_core(const std::string& var, std::vector<CanonicalLiteral> lits) {
        Int h = 1;
        for (const auto& lit : lits) {
            if (lit.kind == CanonKind::pos || lit.kind == CanonKind::not_pos ||
                lit.kind == CanonKind::cong)
                throw std::invalid_argument("rational engine: unsupported literal");
            h = lcm(h, lit.exponent);
        }
        std::vector<TermPtr> eqs, neqs;
        std::vector<std::pair<Int, TermPtr>> roots, not_roots;  // R[n](u * y)
        for (const auto& lit : lits) {
            Int e = h / lit.exponent;
            switch (lit.kind) {
                case CanonKind::eq: eqs.push_back(fold_term(t_pow(lit.rhs, e))); break;
                case CanonKind::neq: neqs.push_back(fold_term(t_pow(lit.rhs, e))); break;
                case CanonKind::root:
                    roots.push_back({lit.modulus * e, fold_term(t_pow(lit.coeff, e))});
                    break;
                case CanonKind::not_root:
                    not_roots.push_back({lit.modulus * e, fold_term(t_pow(lit.coeff, e))});
                    break;
                default: break;
            }
        }
        note(1, "exponent-unify", "exponents on " + var, "all equal to " + h.str());
        if (h >= 2) roots.push_back({h, t_one()});  // y = x^h forces R[h](y)
        if (!eqs.empty()) {
            std::vector<FormulaPtr> parts;
            for (std::size_t i = 1; i < eqs.size(); ++i) parts.push_back(f_eq(eqs[0], eqs[i]));
            for (const TermPtr& s : neqs) parts.push_back(f_neq(eqs[0], s));
            for (const auto& [n, u] : roots)
                parts.push_back(f_nth_power(n, fold_term(t_mul(u, eqs[0]))));
            for (const auto& [m, v] : not_roots)
                parts.push_back(f_not(f_nth_power(m, fold_term(t_mul(v, eqs[0])))));
            note(1, "substitute-witness", var + " := root of " + print(eqs[0]),
                 print(f_and_all(parts)));
            return fold(sig_.theory, f_and_all(parts));
        }
        note(1, "drop-inequations", std::to_string(neqs.size()) + " inequations",
             "infinitely many fresh primes remain");
        if (roots.empty()) return f_true();
        // pairwise compatibility of the positive root constraints
        std::vector<FormulaPtr> parts;
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j) {
                Int d = gcd(roots[i].first, roots[j].first);
                if (d >= 2)
                    parts.push_back(f_nth_power(
                        d, fold_term(t_mul(roots[i].second, t_inv(roots[j].second)))));
            }
        // base element a = prod u_i^(-c_i * n / n_i); negative powers print
        // through inverse nodes
        Int n = 1;
        for (const auto& [ni, u] : roots) n = lcm(n, ni);
        std::vector<Int> quotients;
        for (const auto& [ni, u] : roots) quotients.push_back(n / ni);
        GenBezout bz = gen_bezout(quotients);
        assert(bz.g == 1);
        TermPtr base = t_one();
        for (std::size_t i = 0; i < roots.size(); ++i) {
            Int e = -bz.coeffs[i] * quotients[i];
            if (e == 0) continue;
            TermPtr factor = e > 0 ? t_pow(roots[i].second, e)
                                   : t_inv(t_pow(roots[i].second, -e));
            base = fold_term(t_mul(base, factor));
        }
        note(1, "root-system-base", "combined modulus " + n.str(), print(base));
        for (const auto& [m, v] : not_roots) {
            if (!divides(m, n)) continue;  // a fresh prime witness dodges these
            parts.push_back(f_not(f_nth_power(m, fold_term(t_mul(base, v)))));
        }
        note(1, "pairwise-root-compat", std::to_string(roots.size()) + " root constraints",
             print(f_and_all(parts)));
        return fold(sig_.theory, f_and_all(parts));
    }
};

// ---------------------------------------------------------------------------
// public operations

inline FormulaPtr eliminate_quantifiers(const FormulaPtr& f, const Signature& s,
                                        const ElimOptions& opts = {},
                                        EliminationTrace* trace = nullptr) {
    Eliminator e(s, opts, trace);
    return e.eliminate(f);
}

// The per-theory single-block engines, callable directly on a conjunction
// of canonical and var-free literals.
inline FormulaPtr eliminate_exists_block(Theory t, const std::string& var,
                                         const std::vector<FormulaPtr>& literals,
                                         const ElimOptions& opts = {},
                                         EliminationTrace* trace = nullptr) {
    Eliminator e(sig(t), opts, trace);
    return e.eliminate_exists_block(var, literals);
}

inline FormulaPtr eliminate_exists_complex(const std::string& var,
                                           const std::vector<FormulaPtr>& literals) {
    return eliminate_exists_block(Theory::c_mul, var, literals);
}
inline FormulaPtr eliminate_exists_additive_divisible(const std::string& var,
                                                      const std::vector<FormulaPtr>& literals) {
    return eliminate_exists_block(Theory::div_add, var, literals);
}
inline FormulaPtr eliminate_exists_real_positive(const std::string& var,
                                                 const std::vector<FormulaPtr>& literals) {
    return eliminate_exists_block(Theory::rpos_mul, var, literals);
}
inline FormulaPtr eliminate_exists_real(const std::string& var,
                                        const std::vector<FormulaPtr>& literals) {
    return eliminate_exists_block(Theory::r_mul, var, literals);
}
inline FormulaPtr eliminate_exists_real_nonneg(const std::string& var,
                                               const std::vector<FormulaPtr>& literals) {
    return eliminate_exists_block(Theory::rnonneg_mul, var, literals);
}
inline FormulaPtr eliminate_exists_int_add(const std::string& var,
                                           const std::vector<FormulaPtr>& literals) {
    return eliminate_exists_block(Theory::z_add, var, literals);
}
inline FormulaPtr eliminate_exists_qplus(const std::string& var,
                                         const std::vector<FormulaPtr>& literals) {
    return eliminate_exists_block(Theory::qpos_mul, var, literals);
}

struct Decision {
    bool verdict;
    FormulaPtr quantifier_free;
    EliminationTrace trace;
};

// Eliminate, then ground-evaluate the variable-free residue.
inline Decision decide_sentence(const FormulaPtr& sentence, const Signature& s,
                                const ElimOptions& opts = {}) {
    if (!free_vars(sentence).empty())
        throw std::invalid_argument("decide_sentence: formula has free variables");
    Decision d{false, nullptr, {}};
    d.quantifier_free = eliminate_quantifiers(sentence, s, opts, &d.trace);
    FormulaPtr folded = fold(s.theory, d.quantifier_free);
    if (is_true_formula(folded))
        d.verdict = true;
    else if (is_false_formula(folded))
        d.verdict = false;
    else
        throw std::logic_error("decide_sentence: ground residue did not fold: " + print(folded));
    d.trace.steps.push_back({0, "ground-evaluate", print(d.quantifier_free),
                             d.verdict ? "TRUE" : "FALSE"});
    return d;
}

inline Decision decide_sentence(const std::string& text, const Signature& s,
                                const ElimOptions& opts = {}) {
    return decide_sentence(parse(text, s), s, opts);
}

}  // namespace numqe
