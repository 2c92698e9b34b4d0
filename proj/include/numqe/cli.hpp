#pragma once

#include "numqe/axioms.hpp"
#include "numqe/brute.hpp"
#include "numqe/counterexample.hpp"
#include "numqe/engine.hpp"
#include "numqe/generate.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace numqe {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_false = 1;       // decide: sentence is false
inline constexpr int exit_parse = 64;      // lexical or syntax error
inline constexpr int exit_signature = 65;  // symbol not in the theory
inline constexpr int exit_resource = 66;   // cap exceeded
inline constexpr int exit_internal = 70;   // invariant violation

enum class Subcommand { decide, eliminate, trace, axioms, oracle_check, counterexamples };

enum class OutputFormat { text, json_lines };

struct RunConfig {
    Subcommand subcommand = Subcommand::decide;
    Theory theory = Theory::c_mul;
    bool theory_set = false;
    std::string input;          // formula argument; empty means file/stdin
    std::string file;           // batch file, one formula per line
    bool use_stdin = false;
    OutputFormat format = OutputFormat::text;
    std::uint64_t seed = 1;
    std::size_t dnf_cap = 1000000;
    Int axiom_n_max = 5;
    Int axiom_l_max = 1;
    long oracle_count = 1000;
    Int counterexample_n = 5;
    Int counterexample_prime = 127;
    Int counterexample_small_prime = 7;
};

namespace detail {

struct LineOutcome {
    int exit_code;
    std::string text;
    nlohmann::json json;        // one object per input line...
    bool json_per_step = false; // ...unless it is an array of step objects
};

inline LineOutcome run_formula(const RunConfig& cfg, const std::string& line) {
    ElimOptions opts;
    opts.dnf_cap = cfg.dnf_cap;
    try {
        Signature s = sig(cfg.theory);
        FormulaPtr f = parse(line, s);
        switch (cfg.subcommand) {
            case Subcommand::decide: {
                Decision d = decide_sentence(f, s, opts);
                nlohmann::json j{{"verdict", d.verdict ? "TRUE" : "FALSE"},
                                 {"qf", print(d.quantifier_free)},
                                 {"theory", theory_name(cfg.theory)}};
                return {d.verdict ? exit_ok : exit_false, d.verdict ? "TRUE" : "FALSE", j};
            }
            case Subcommand::eliminate: {
                FormulaPtr qf = eliminate_quantifiers(f, s, opts);
                FormulaPtr folded = fold(s.theory, qf);
                nlohmann::json j{{"qf", print(folded)}, {"theory", theory_name(cfg.theory)}};
                return {exit_ok, print(folded), j};
            }
            case Subcommand::trace: {
                EliminationTrace trace;
                FormulaPtr qf = eliminate_quantifiers(f, s, opts, &trace);
                std::string text;
                nlohmann::json steps = nlohmann::json::array();
                int i = 0;
                for (const TraceStep& st : trace.steps) {
                    text += std::to_string(i) + (st.depth ? "  . " : "  ") + st.rule + ": " +
                            st.before + "  ==>  " + st.after + "\n";
                    steps.push_back({{"step", i},
                                     {"rule", st.rule},
                                     {"before", st.before},
                                     {"after", st.after},
                                     {"depth", st.depth}});
                    ++i;
                }
                std::string result = print(fold(s.theory, qf));
                text += "result: " + result;
                steps.push_back({{"step", i}, {"rule", "result"}, {"before", print(qf)},
                                 {"after", result}, {"depth", 0}});
                return {exit_ok, text, steps, true};
            }
            default: break;
        }
        return {exit_internal, "internal: bad subcommand", {}};
    } catch (const parse_error& e) {
        return {exit_parse, std::string("parse error: ") + e.what(),
                {{"error", "parse"}, {"message", e.what()}}};
    } catch (const signature_error& e) {
        return {exit_signature, std::string("signature error: ") + e.what(),
                {{"error", "signature"}, {"message", e.what()}}};
    } catch (const resource_error& e) {
        return {exit_resource, std::string("resource limit: ") + e.what(),
                {{"error", "resource"}, {"message", e.what()}}};
    } catch (const std::exception& e) {
        return {exit_internal, std::string("internal error: ") + e.what(),
                {{"error", "internal"}, {"message", e.what()}}};
    }
}

}  // namespace detail

// Runs one configured invocation; input lines come from the argument,
// the named file, or standard input. Returns the process exit code.
inline int run_cli(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    auto emit = [&](const detail::LineOutcome& o) {
        if (cfg.format != OutputFormat::json_lines) {
            out << o.text << "\n";
            return;
        }
        if (o.json_per_step)
            for (const auto& step : o.json) out << step.dump() << "\n";
        else
            out << o.json.dump() << "\n";
    };
    switch (cfg.subcommand) {
        case Subcommand::decide:
        case Subcommand::eliminate:
        case Subcommand::trace: {
            std::vector<std::string> lines;
            if (!cfg.input.empty()) {
                lines.push_back(cfg.input);
            } else if (!cfg.file.empty()) {
                std::ifstream fin(cfg.file);
                if (!fin) {
                    err << "cannot open " << cfg.file << "\n";
                    return exit_internal;
                }
                std::string line;
                while (std::getline(fin, line))
                    if (!line.empty()) lines.push_back(line);
            } else {
                std::string line;
                while (std::getline(in, line))
                    if (!line.empty()) lines.push_back(line);
            }
            int worst = exit_ok;
            for (const std::string& line : lines) {
                detail::LineOutcome o = detail::run_formula(cfg, line);
                emit(o);
                worst = std::max(worst, o.exit_code);
            }
            return worst;
        }
        case Subcommand::axioms: {
            auto instances = axiom_instances(sig(cfg.theory), cfg.axiom_n_max, cfg.axiom_l_max);
            for (const AxiomInstance& a : instances) {
                if (cfg.format == OutputFormat::json_lines)
                    out << nlohmann::json{{"name", a.name}, {"sentence", print(a.sentence)}}.dump()
                        << "\n";
                else
                    out << a.name << ": " << print(a.sentence) << "\n";
            }
            return exit_ok;
        }
        case Subcommand::oracle_check: {
            std::vector<Theory> theories;
            if (cfg.theory_set)
                theories = {cfg.theory};
            else
                theories = {Theory::qpos_mul, Theory::z_add, Theory::c_mul, Theory::r_mul,
                            Theory::rpos_mul};
            bool all_agree = true;
            for (Theory t : theories) {
                Rng rng(cfg.seed);
                long agree = 0, disagree = 0;
                for (long i = 0; i < cfg.oracle_count; ++i) {
                    OracleInstance inst = gen_oracle_instance(t, rng);
                    bool engine_verdict, oracle_verdict;
                    try {
                        ElimOptions opts;
                        opts.dnf_cap = cfg.dnf_cap;
                        FormulaPtr block = f_exists(inst.var, f_and_all(inst.literals));
                        FormulaPtr qf = fold(t, eliminate_quantifiers(block, sig(t), opts));
                        if (!is_true_formula(qf) && !is_false_formula(qf))
                            throw std::logic_error("ground block did not fold");
                        engine_verdict = is_true_formula(qf);
                        oracle_verdict = brute_exists(t, inst.var, inst.literals).verdict;
                    } catch (const std::exception& e) {
                        err << theory_name(t) << " instance " << i << ": " << e.what() << "\n";
                        all_agree = false;
                        continue;
                    }
                    if (engine_verdict == oracle_verdict) {
                        ++agree;
                    } else {
                        ++disagree;
                        all_agree = false;
                        err << theory_name(t) << " disagreement on instance " << i << ": ";
                        for (const auto& lit : inst.literals) err << print(lit) << " & ";
                        err << " engine=" << engine_verdict << " oracle=" << oracle_verdict
                            << "\n";
                    }
                }
                if (cfg.format == OutputFormat::json_lines)
                    out << nlohmann::json{{"theory", theory_name(t)},
                                          {"agree", agree},
                                          {"disagree", disagree},
                                          {"seed", cfg.seed}}
                               .dump()
                        << "\n";
                else
                    out << theory_name(t) << ": " << agree << "/" << (agree + disagree)
                        << " agree (seed " << cfg.seed << ")\n";
            }
            return all_agree ? exit_ok : exit_internal;
        }
        case Subcommand::counterexamples: {
            auto reports = check_all_counterexamples(cfg.counterexample_n, cfg.counterexample_prime,
                                                     cfg.counterexample_small_prime, cfg.seed);
            bool all_match = true;
            for (const Report& r : reports) {
                if (cfg.format == OutputFormat::json_lines) {
                    nlohmann::json findings = nlohmann::json::array();
                    for (const Finding& f : r.findings)
                        findings.push_back({{"check", f.check},
                                            {"holds", f.holds},
                                            {"expected", f.expected_holds},
                                            {"witness", f.witness}});
                    out << nlohmann::json{{"counterexample", counterexample_name(r.spec.kind)},
                                          {"findings", findings}}
                               .dump()
                        << "\n";
                } else {
                    out << r.to_text();
                }
                all_match = all_match && r.matches_expectation();
            }
            return all_match ? exit_ok : exit_internal;
        }
    }
    return exit_internal;
}

}  // namespace numqe
