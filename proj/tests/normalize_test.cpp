#include "numqe/brute.hpp"
#include "numqe/generate.hpp"
#include "numqe/isolate.hpp"
#include "numqe/normalize.hpp"
#include "numqe/parse.hpp"

#include <catch2/catch.hpp>

#include <functional>
#include <map>

using namespace numqe;

namespace {

// boolean evaluation treating atoms as opaque. An inequation counts as the
// negation of the matching equation, so the NNF eq/neq flip stays honest.
std::string atom_key(const FormulaPtr& atom, bool& flipped) {
    flipped = atom->pred == Pred::neq;
    if (!flipped) return print(atom);
    return print(f_eq(atom->lhs_term, atom->rhs_term));
}

bool eval_opaque(const FormulaPtr& f, const std::map<std::string, bool>& vals) {
    switch (f->kind) {
        case FormulaKind::atom: {
            bool flipped;
            std::string key = atom_key(f, flipped);
            return vals.at(key) != flipped;
        }
        case FormulaKind::negation: return !eval_opaque(f->sub, vals);
        case FormulaKind::conjunction: return eval_opaque(f->sub, vals) && eval_opaque(f->sub2, vals);
        case FormulaKind::disjunction: return eval_opaque(f->sub, vals) || eval_opaque(f->sub2, vals);
        case FormulaKind::implication: return !eval_opaque(f->sub, vals) || eval_opaque(f->sub2, vals);
        case FormulaKind::equivalence: return eval_opaque(f->sub, vals) == eval_opaque(f->sub2, vals);
        default: throw std::logic_error("quantifier in opaque evaluation");
    }
}

void collect_atoms(const FormulaPtr& f, std::set<std::string>& atoms) {
    if (f->kind == FormulaKind::atom) {
        bool flipped;
        atoms.insert(atom_key(f, flipped));
        return;
    }
    if (f->sub) collect_atoms(f->sub, atoms);
    if (f->sub2) collect_atoms(f->sub2, atoms);
}

FormulaPtr qf_formula(Theory t, Rng& rng) {
    return gen_formula(t, {"a", "b", "c"}, rng, 3, 0);
}

}  // namespace

TEST_CASE("prenex examples") {
    auto f = parse("~(forall x. x = y)", sig(Theory::div_add));
    CHECK(print(to_prenex(f)) == "exists x. ~x = y");

    auto qf = parse("a = b & c = d", sig(Theory::div_add));
    CHECK(to_prenex(qf) == qf);  // untouched, same object

    f = parse("(exists x. x = y) & (exists x. x = z)", sig(Theory::div_add));
    CHECK(print(to_prenex(f)) == "exists x_1. exists x_2. x_1 = y & x_2 = z");
}

TEST_CASE("prenex yields a quantifier prefix over a quantifier-free matrix") {
    for (Theory t : all_theories) {
        Rng rng(17 + static_cast<int>(t));
        for (int i = 0; i < 150; ++i) {
            FormulaPtr f = gen_formula(t, {"a"}, rng, 4, 3);
            FormulaPtr p = to_prenex(f);
            FormulaPtr body = p;
            while (body->kind == FormulaKind::exists || body->kind == FormulaKind::forall)
                body = body->sub;
            CHECK(!has_quantifier(body));
            CHECK(free_vars(p) == free_vars(f));
        }
    }
}

TEST_CASE("prenex preserves matrix truth under aligned instantiation") {
    // strip the prefixes of a prenex formula and of its double negation,
    // instantiate the bound variables identically, and compare
    Rng rng(4242);
    for (int i = 0; i < 100; ++i) {
        FormulaPtr matrix = qf_formula(Theory::z_add, rng);
        FormulaPtr f = f_forall("a", f_exists("b", matrix));
        FormulaPtr variant = to_prenex(f_not(f_not(f)));
        Prenex parts = to_prenex_parts(variant);
        REQUIRE(parts.prefix.items.size() == 2);
        CHECK(parts.prefix.items[0].first == FormulaKind::forall);
        CHECK(parts.prefix.items[1].first == FormulaKind::exists);
        for (int j = 0; j < 5; ++j) {
            Assignment env{{"a", Int(rng.range(-20, 20))},
                           {"b", Int(rng.range(-20, 20))},
                           {"c", Int(rng.range(-20, 20))}};
            Assignment env2{{parts.prefix.items[0].second, env.at("a")},
                            {parts.prefix.items[1].second, env.at("b")},
                            {"c", env.at("c")}};
            CHECK(eval_qf(Theory::z_add, matrix, env) ==
                  eval_qf(Theory::z_add, parts.matrix, env2));
        }
    }
}

TEST_CASE("dnf examples") {
    auto f = parse("a = b & (c = d | e = f)", sig(Theory::div_add));
    CHECK(print(to_dnf(f)) == "a = b & c = d | a = b & e = f");

    f = parse("a != b", sig(Theory::div_add));
    CHECK(print(to_dnf(f)) == "a != b");

    f = parse("~(a = b & c = d)", sig(Theory::div_add));
    CHECK(print(to_dnf(f)) == "a != b | c != d");
}

TEST_CASE("dnf is truth-table equivalent to its input") {
    for (Theory t : {Theory::z_add, Theory::c_mul, Theory::qpos_mul}) {
        Rng rng(99 + static_cast<int>(t));
        for (int i = 0; i < 200; ++i) {
            FormulaPtr f = qf_formula(t, rng);
            FormulaPtr d = to_dnf(f);
            std::set<std::string> atoms;
            collect_atoms(f, atoms);
            collect_atoms(d, atoms);
            std::vector<std::string> names(atoms.begin(), atoms.end());
            if (names.size() > 10) continue;
            for (std::size_t bits = 0; bits < (std::size_t{1} << names.size()); ++bits) {
                std::map<std::string, bool> vals;
                for (std::size_t k = 0; k < names.size(); ++k)
                    vals[names[k]] = ((bits >> k) & 1) != 0;
                CHECK(eval_opaque(f, vals) == eval_opaque(d, vals));
            }
        }
    }
}

TEST_CASE("dnf cap is an explicit resource error") {
    std::vector<FormulaPtr> parts;
    for (int i = 0; i < 10; ++i) {
        TermPtr a = t_var("a" + std::to_string(i));
        parts.push_back(f_or(f_eq(a, t_zero()), f_eq(a, t_num(1))));
    }
    FormulaPtr f = f_and_all(parts);  // 2^10 clauses of 10 literals each
    CHECK_THROWS_AS(to_dnf_clauses(f, 1000), resource_error);
    CHECK(to_dnf_clauses(f, 1000000).size() == 1024);
}

TEST_CASE("fold evaluates ground atoms in the exact model") {
    auto folded = [](const std::string& text, Theory t) {
        return print(fold(t, parse(text, sig(t))));
    };
    CHECK(folded("w[3] * w[3] * w[3] = 1", Theory::c_mul) == "0 = 0");
    CHECK(folded("2 * 3 = 6", Theory::c_mul) == "0 = 0");
    CHECK(folded("P(-1 * -1)", Theory::r_mul) == "0 = 0");
    CHECK(folded("P(-1)", Theory::r_mul) == "0 != 0");
    CHECK(folded("R[2](4)", Theory::qpos_mul) == "0 = 0");
    CHECK(folded("R[2](2)", Theory::qpos_mul) == "0 != 0");
    CHECK(folded("5 =[3] 2", Theory::z_add) == "0 = 0");
    CHECK(folded("x = x", Theory::div_add) == "0 = 0");
    CHECK(folded("inv(0) = 0", Theory::c_mul) == "0 = 0");
    CHECK(folded("x = y & 1 = 2", Theory::div_add) == "0 != 0");
    CHECK(folded("x = y | 1 = 1", Theory::div_add) == "0 = 0");
}

TEST_CASE("isolate_variable follows the displayed case splits") {
    Signature c = sig(Theory::c_mul);
    auto lit = parse("x ^ 2 * t = x * u", c);
    auto iso = isolate_variable(lit, "x", c);
    CHECK(print(iso) ==
          "x = 0 | x != 0 & (t = 0 & u = 0 | t != 0 & x = u * inv(t))");

    lit = parse("x ^ 3 * t != u", c);
    iso = isolate_variable(lit, "x", c);
    CHECK(print(iso) == "t = 0 & u != 0 | t != 0 & x ^ 3 != u * inv(t)");

    Signature z = sig(Theory::z_add);
    lit = parse("2 . x + t = u", z);
    iso = isolate_variable(lit, "x", z);
    CHECK(print(iso) == "2 . x = u + -t");

    // group isolation has no case splits
    Signature q = sig(Theory::qpos_mul);
    lit = parse("x ^ 2 * t = x ^ 5 * u", q);
    iso = isolate_variable(lit, "x", q);
    CHECK(print(iso) == "x ^ 3 = t * inv(u)");

    CHECK_THROWS_AS(isolate_variable(parse("t = u", c), "x", c), std::invalid_argument);
}

TEST_CASE("isolation output is canonical in the distinguished variable") {
    // every literal of the output either omits x or matches a canonical shape
    std::function<void(const FormulaPtr&, const std::string&)> check_canonical =
        [&](const FormulaPtr& f, const std::string& x) {
            if (is_literal(f)) {
                if (mentions(f, x)) CHECK(match_canonical(f, x).has_value());
                return;
            }
            if (f->sub) check_canonical(f->sub, x);
            if (f->sub2) check_canonical(f->sub2, x);
        };

    struct Example {
        Theory theory;
        std::string text;
    };
    std::vector<Example> examples = {
        {Theory::c_mul, "x ^ 2 * t = x * u"},
        {Theory::c_mul, "inv(x) * t = u"},
        {Theory::c_mul, "x * inv(x) * t = u"},
        {Theory::c_mul, "x ^ 4 != u * w[3]"},
        {Theory::r_mul, "P(x ^ 2 * t)"},
        {Theory::r_mul, "~P(inv(x) * t)"},
        {Theory::r_mul, "x * -2 = t"},
        {Theory::rnonneg_mul, "x * t = 0"},
        {Theory::rpos_mul, "inv(x ^ 2) = t"},
        {Theory::qpos_mul, "R[3](2 * inv(x))"},
        {Theory::qpos_mul, "~R[4](x ^ 2 * t)"},
        {Theory::z_add, "3 . x + t != u + x"},
        {Theory::z_add, "~(x + x =[4] u)"},
        {Theory::div_add, "2 . (x + t) = u"},
    };
    for (const auto& ex : examples) {
        Signature s = sig(ex.theory);
        auto lit = parse(ex.text, s);
        auto iso = isolate_variable(lit, "x", s);
        INFO(ex.text << "  ==>  " << print(iso));
        check_canonical(iso, "x");
    }
}

TEST_CASE("isolation preserves truth at random ground assignments") {
    struct Example {
        Theory theory;
        std::string text;
    };
    std::vector<Example> examples = {
        {Theory::c_mul, "x ^ 2 * t = x * u"},
        {Theory::c_mul, "x ^ 3 * t != u"},
        {Theory::c_mul, "inv(x) * t = u"},
        {Theory::c_mul, "x * inv(x) * t = u"},
        {Theory::r_mul, "P(x ^ 3 * t)"},
        {Theory::r_mul, "~P(x * u)"},
        {Theory::r_mul, "x ^ 2 * t != u"},
        {Theory::rnonneg_mul, "x * t = 0"},
        {Theory::rnonneg_mul, "x ^ 2 != u"},
        {Theory::rpos_mul, "x ^ 2 * t = x ^ 5 * u"},
        {Theory::qpos_mul, "R[3](t * inv(x))"},
        {Theory::qpos_mul, "~R[2](x ^ 2 * u)"},
        {Theory::z_add, "2 . x + t = u"},
        {Theory::z_add, "3 . x =[4] u"},
        {Theory::z_add, "~(x + t =[3] u)"},
        {Theory::div_add, "4 . x + t != u"},
    };
    for (const auto& ex : examples) {
        Signature s = sig(ex.theory);
        auto lit = parse(ex.text, s);
        auto iso = isolate_variable(lit, "x", s);
        Rng rng(7 + static_cast<int>(ex.theory));
        for (int i = 0; i < 100; ++i) {
            Assignment env;
            for (const std::string& v : {"x", "t", "u"}) {
                TermPtr param = gen_ground_param(ex.theory, rng);
                env[v] = eval_term(ex.theory, param, {});
            }
            INFO(ex.text << " | " << print(iso));
            CHECK(eval_qf(ex.theory, lit, env) == eval_qf(ex.theory, iso, env));
        }
    }
}
