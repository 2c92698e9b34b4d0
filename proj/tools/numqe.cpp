#include "numqe/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace numqe;

int main(int argc, char** argv) {
    CLI::App app{"numqe: decide and eliminate quantifiers in the multiplicative and additive "
                 "first-order theories of number structures"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string theory_name_arg;
    std::string format_arg = "text";
    std::uint64_t seed = 1;
    std::size_t dnf_cap = 1000000;

    auto add_common = [&](CLI::App* sub, bool needs_theory) {
        if (needs_theory)
            sub->add_option("--theory", theory_name_arg,
                            "theory: c-mul r-mul rpos-mul rnonneg-mul qpos-mul z-add div-add");
        sub->add_option("--seed", seed, "generator seed");
        sub->add_option("--dnf-cap", dnf_cap, "literal cap per DNF conversion");
        sub->add_option("--format", format_arg, "text | json-lines");
    };

    auto* decide = app.add_subcommand("decide", "decide a sentence; prints TRUE or FALSE");
    auto* eliminate = app.add_subcommand("eliminate", "print a quantifier-free equivalent");
    auto* trace = app.add_subcommand("trace", "print the elimination step log");
    std::string formula_arg, file_arg;
    for (auto* sub : {decide, eliminate, trace}) {
        add_common(sub, true);
        sub->add_option("formula", formula_arg, "formula (omit to read --file or stdin)");
        sub->add_option("--file", file_arg, "batch input, one formula per line");
    }

    auto* axioms = app.add_subcommand("axioms", "enumerate axiom-schema instances");
    add_common(axioms, true);
    long n_max = 5, l_max = 1;
    axioms->add_option("--n-max", n_max, "largest schema index");
    axioms->add_option("--l-max", l_max, "largest sequence length in the root-avoidance schema");

    auto* oracle = app.add_subcommand("oracle-check",
                                      "compare the eliminators against the brute-force oracle");
    add_common(oracle, true);
    long count = 1000;
    oracle->add_option("--count", count, "instances per theory");

    auto* counter = app.add_subcommand("counterexamples",
                                       "reproduce the non-finite-axiomatizability substructures");
    add_common(counter, false);
    long ce_n = 5, ce_prime = 127, ce_small = 7;
    counter->add_option("--n", ce_n, "N with M = N!");
    counter->add_option("--prime", ce_prime, "large separating prime");
    counter->add_option("--small-prime", ce_small, "prime for the integer substructure");

    CLI11_PARSE(app, argc, argv);

    if (format_arg == "json-lines") {
        cfg.format = OutputFormat::json_lines;
    } else if (format_arg != "text") {
        std::cerr << "unknown format " << format_arg << "\n";
        return exit_internal;
    }
    cfg.seed = seed;
    cfg.dnf_cap = dnf_cap;
    if (!theory_name_arg.empty()) {
        auto t = parse_theory_name(theory_name_arg);
        if (!t) {
            std::cerr << "unknown theory " << theory_name_arg << "\n";
            return exit_internal;
        }
        cfg.theory = *t;
        cfg.theory_set = true;
    }

    auto need_theory = [&](const char* what) {
        if (!cfg.theory_set) {
            std::cerr << what << " requires --theory\n";
            return false;
        }
        return true;
    };

    if (decide->parsed() || eliminate->parsed() || trace->parsed()) {
        cfg.subcommand = decide->parsed() ? Subcommand::decide
                         : eliminate->parsed() ? Subcommand::eliminate
                                               : Subcommand::trace;
        if (!need_theory("decide/eliminate/trace")) return exit_internal;
        cfg.input = formula_arg;
        cfg.file = file_arg;
    } else if (axioms->parsed()) {
        cfg.subcommand = Subcommand::axioms;
        if (!need_theory("axioms")) return exit_internal;
        cfg.axiom_n_max = n_max;
        cfg.axiom_l_max = l_max;
    } else if (oracle->parsed()) {
        cfg.subcommand = Subcommand::oracle_check;
        cfg.oracle_count = count;
    } else if (counter->parsed()) {
        cfg.subcommand = Subcommand::counterexamples;
        cfg.counterexample_n = ce_n;
        cfg.counterexample_prime = ce_prime;
        cfg.counterexample_small_prime = ce_small;
    }

    return run_cli(cfg, std::cin, std::cout, std::cerr);
}
