#pragma once

#include "numqe/ast.hpp"
#include "numqe/signature.hpp"

#include <string>
#include <vector>

namespace numqe {

// The axiom-schema catalogs of all seven theories, instantiated as
// well-formed sentences. decide_sentence must return TRUE on every
// instance of a theory's own schemas; this is the engines' self-test.

struct AxiomInstance {
    std::string name;  // e.g. "M7,3" or "M16,2[3,5]" or "A7,4o"
    FormulaPtr sentence;
};

namespace detail {

inline TermPtr x() { return t_var("x"); }
inline TermPtr y() { return t_var("y"); }
inline TermPtr z() { return t_var("z"); }

inline FormulaPtr forall_xyz(FormulaPtr body) {
    return f_forall("x", f_forall("y", f_forall("z", std::move(body))));
}
inline FormulaPtr forall_xy(FormulaPtr body) {
    return f_forall("x", f_forall("y", std::move(body)));
}

inline TermPtr omega_power(const Int& n, const Int& i) {
    assert(i >= 0);
    if (i == 0) return t_one();
    if (i == 1) return t_omega(n);
    return t_pow(t_omega(n), i);
}

// exists! y . phi(y), expanded as
// (exists y phi) & forall y,y2 (phi(y) & phi(y2) -> y = y2)
inline FormulaPtr exists_unique(const std::string& v, const std::string& v2,
                                const FormulaPtr& phi_v, const FormulaPtr& phi_v2) {
    return f_and(f_exists(v, phi_v),
                 f_forall(v, f_forall(v2, f_implies(f_and(phi_v, phi_v2),
                                                    f_eq(t_var(v), t_var(v2))))));
}

}  // namespace detail

inline std::vector<AxiomInstance> axiom_instances(const Signature& s, const Int& n_max,
                                                  const Int& l_max) {
    using namespace detail;
    if (n_max < 2) throw std::invalid_argument("axiom_instances: n_max must be >= 2");
    std::vector<AxiomInstance> out;
    auto add = [&](std::string name, FormulaPtr f) { out.push_back({std::move(name), std::move(f)}); };

    const bool mul = s.multiplicative();
    if (mul) {
        add("M1", forall_xyz(f_eq(t_mul(x(), t_mul(y(), z())), t_mul(t_mul(x(), y()), z()))));
        add("M2", f_forall("x", f_eq(t_mul(x(), t_one()), x())));
        if (s.has_zero())
            add("M3", f_forall("x", f_implies(f_neq(x(), t_zero()),
                                              f_eq(t_mul(x(), t_inv(x())), t_one()))));
        else
            add("M3o", f_forall("x", f_eq(t_mul(x(), t_inv(x())), t_one())));
        add("M4", forall_xy(f_eq(t_mul(x(), y()), t_mul(y(), x()))));
    } else {
        add("A1", forall_xyz(f_eq(t_add(x(), t_add(y(), z())), t_add(t_add(x(), y()), z()))));
        add("A2", f_forall("x", f_eq(t_add(x(), t_zero()), x())));
        add("A3", f_forall("x", f_eq(t_add(x(), t_neg(x())), t_zero())));
        add("A4", forall_xy(f_eq(t_add(x(), y()), t_add(y(), x()))));
    }

    switch (s.theory) {
        case Theory::c_mul: {
            add("M5", f_forall("x", f_and(f_eq(t_mul(x(), t_zero()), t_zero()),
                                          f_eq(t_inv(t_zero()), t_zero()))));
            for (Int n = 2; n <= n_max; ++n) {
                std::vector<FormulaPtr> distinct;
                for (Int i = 0; i < n; ++i)
                    for (Int j = i + 1; j < n; ++j)
                        distinct.push_back(f_neq(omega_power(n, i), omega_power(n, j)));
                add("M6," + n.str(), f_and_all(distinct));
                std::vector<FormulaPtr> roots;
                for (Int i = 0; i < n; ++i) roots.push_back(f_eq(x(), omega_power(n, i)));
                add("M7," + n.str(),
                    f_forall("x", f_iff(f_eq(t_pow(x(), n), t_one()), f_or_all(roots))));
                add("M8," + n.str(), f_forall("x", f_exists("y", f_eq(t_pow(y(), n), x()))));
            }
            break;
        }
        case Theory::rpos_mul: {
            add("M9", f_exists("y", f_neq(y(), t_one())));
            for (Int n = 1; n <= n_max; ++n) {
                add("M7," + n.str() + "o",
                    f_forall("x", f_implies(f_eq(t_pow(x(), n), t_one()), f_eq(x(), t_one()))));
                add("M8," + n.str(), f_forall("x", f_exists("y", f_eq(x(), t_pow(y(), n)))));
            }
            break;
        }
        case Theory::rnonneg_mul: {
            add("M9o", f_exists("y", f_and(f_neq(y(), t_zero()), f_neq(y(), t_one()))));
            add("M10", f_forall("x", f_and(f_eq(t_mul(x(), t_zero()), t_zero()),
                                           f_eq(t_inv(t_zero()), t_zero()))));
            for (Int n = 1; n <= n_max; ++n) {
                add("M7," + n.str() + "o",
                    f_forall("x", f_implies(f_eq(t_pow(x(), n), t_one()), f_eq(x(), t_one()))));
                add("M8," + n.str(), f_forall("x", f_exists("y", f_eq(x(), t_pow(y(), n)))));
            }
            break;
        }
        case Theory::r_mul: {
            add("M9d", f_exists("y", f_and(f_neq(y(), t_num(-1)),
                                           f_and(f_neq(y(), t_zero()), f_neq(y(), t_one())))));
            add("M10", f_forall("x", f_and(f_eq(t_mul(x(), t_zero()), t_zero()),
                                           f_eq(t_inv(t_zero()), t_zero()))));
            add("M13", f_forall("x", f_iff(f_positive(x()),
                                           f_exists("y", f_and(f_neq(y(), t_zero()),
                                                               f_eq(x(), t_pow(y(), 2)))))));
            add("M14", f_forall("x", f_implies(f_neq(x(), t_zero()),
                                               f_iff(f_not(f_positive(x())),
                                                     f_positive(t_mul(t_num(-1), x()))))));
            add("M15", forall_xy(f_implies(
                           f_and(f_neq(x(), t_zero()), f_neq(y(), t_zero())),
                           f_iff(f_positive(t_mul(x(), y())),
                                 f_iff(f_positive(x()), f_positive(y()))))));
            for (Int n = 1; n <= n_max; ++n) {
                add("M11," + n.str(),
                    f_forall("x", f_iff(f_eq(t_pow(x(), 2 * n), t_one()),
                                        f_or(f_eq(x(), t_one()), f_eq(x(), t_num(-1))))));
                add("M12," + n.str(),
                    f_forall("x", f_exists("y", f_eq(x(), t_pow(y(), 2 * n + 1)))));
            }
            break;
        }
        case Theory::qpos_mul: {
            for (Int n = 1; n <= n_max; ++n)
                add("M7," + n.str() + "o",
                    f_forall("x", f_implies(f_eq(t_pow(x(), n), t_one()), f_eq(x(), t_one()))));
            // M16,n over sequences m_1..m_l <= n_max with no m_k dividing n;
            // enumeration: n ascending, length ascending, lexicographic
            for (Int n = 1; n <= n_max; ++n) {
                std::vector<Int> nondivisors;
                for (Int m = 2; m <= n_max; ++m)
                    if (!divides(m, n)) nondivisors.push_back(m);
                if (nondivisors.empty()) continue;
                std::vector<std::vector<Int>> tuples = {{}};
                for (Int len = 1; len <= l_max; ++len) {
                    std::vector<std::vector<Int>> next;
                    for (const auto& tup : tuples)
                        if (Int(tup.size()) == len - 1)
                            for (const Int& m : nondivisors) {
                                auto t2 = tup;
                                t2.push_back(m);
                                next.push_back(t2);
                            }
                    for (const auto& tup : next) {
                        std::vector<FormulaPtr> body;
                        std::string label;
                        for (std::size_t k = 0; k < tup.size(); ++k) {
                            TermPtr vk = t_var("v" + std::to_string(k + 1));
                            body.push_back(f_neq(t_mul(t_pow(x(), n), vk),
                                                 t_pow(z(), tup[k])));
                            label += (k ? "," : "") + tup[k].str();
                        }
                        FormulaPtr inner = f_forall("z", f_and_all(body));
                        FormulaPtr f = f_exists("x", inner);
                        for (std::size_t k = tup.size(); k-- > 0;)
                            f = f_forall("v" + std::to_string(k + 1), f);
                        add("M16," + n.str() + "[" + label + "]", f);
                    }
                    tuples = std::move(next);
                }
            }
            break;
        }
        case Theory::z_add: {
            add("A6o", f_neq(t_one(), t_zero()));
            for (Int n = 1; n <= n_max; ++n)
                add("A5," + n.str(),
                    f_forall("x", f_implies(f_eq(t_scale(n, x()), t_zero()), f_eq(x(), t_zero()))));
            for (Int n = 2; n <= n_max; ++n) {
                auto phi = [&](const std::string& v) {
                    std::vector<FormulaPtr> cases;
                    for (Int i = 0; i < n; ++i)
                        cases.push_back(
                            f_eq(x(), i == 0 ? TermPtr(t_scale(n, t_var(v)))
                                             : t_add(t_scale(n, t_var(v)), t_num(Rat(i)))));
                    return f_or_all(cases);
                };
                add("A7," + n.str() + "o",
                    f_forall("x", exists_unique("y", "y2", phi("y"), phi("y2"))));
            }
            break;
        }
        case Theory::div_add: {
            add("A6", f_exists("y", f_neq(y(), t_zero())));
            for (Int n = 1; n <= n_max; ++n) {
                add("A5," + n.str(),
                    f_forall("x", f_implies(f_eq(t_scale(n, x()), t_zero()), f_eq(x(), t_zero()))));
                add("A7," + n.str(), f_forall("x", f_exists("y", f_eq(x(), t_scale(n, y())))));
            }
            break;
        }
    }
    return out;
}

}  // namespace numqe
