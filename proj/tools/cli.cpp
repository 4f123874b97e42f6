#include "cli.hpp"

#include "lamlab/corpus.hpp"
#include "lamlab/engine.hpp"
#include "lamlab/equivalence.hpp"
#include "lamlab/errors.hpp"
#include "lamlab/factorial.hpp"
#include "lamlab/report.hpp"

#include "CLI11.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace lamlab::cli {

namespace {

struct Common {
    std::string strategy;
    std::uint64_t fuel = 100000;
    bool json = false;
    bool strict_fuel = false;
};

void add_common(CLI::App* sub, Common& c, bool with_strategy) {
    if (with_strategy) sub->add_option("-s,--strategy", c.strategy, "Strategy alias or encoding")->required();
    sub->add_option("--fuel", c.fuel, "Beta-contraction budget")->capture_default_str();
    sub->add_flag("--json", c.json, "Emit JSON");
    sub->add_flag("--strict-fuel", c.strict_fuel, "Exit 2 when fuel or resources run out");
}

// "@name" selects a term from the built-in paper corpus.
Term read_term(const std::string& text) {
    if (!text.empty() && text[0] == '@') return paper_term(text.substr(1));
    return parse_term(text);
}

int status_code(const Common& c, Status s) {
    return c.strict_fuel && s != Status::Converged ? kResourceError : kOk;
}

std::string status_line(const Outcome& o) {
    std::string s = to_string(o.status) + " after " + std::to_string(o.fuel_used) + " steps";
    if (o.converged()) s = "converged in " + std::to_string(o.fuel_used) + " steps";
    if (!o.detail.empty()) s += " (" + o.detail + ")";
    return s;
}

std::vector<Term> corpus_terms(const std::string& file, const GenConfig& g, std::size_t n, bool paper,
                               std::string& name) {
    std::vector<Term> terms;
    if (!file.empty()) {
        terms = load_corpus(file);
        name = file;
    } else if (n > 0) {
        terms = generate(g, n);
        name = "random";
    }
    if (paper) {
        for (const auto& nt : paper_corpus()) terms.push_back(nt.term);
        name += name.empty() ? "paper" : "+paper";
    }
    if (name.empty()) name = "empty";
    return terms;
}

void print_report_text(std::ostream& out, const CorpusReport& r) {
    out << r.a << "  vs  " << r.b << "  on " << r.corpus << " (n=" << r.n << ", fuel=" << r.fuel << ")\n";
    for (const auto& [k, c] : r.verdicts) out << "  " << std::left << std::setw(28) << k << c << "\n";
    out << "failures: " << r.failures << "\n";
    for (const auto& cx : r.counterexamples) {
        out << "  #" << cx.index << " " << cx.verdict << ": " << cx.term << "\n";
        if (cx.witness) out << "    " << witness_to_text(*cx.witness) << "\n";
        if (!cx.note.empty()) out << "    " << cx.note << "\n";
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reduction-strategy laboratory for the pure lambda calculus", "lamlab"};
    app.require_subcommand(1);

    Common c;
    std::string term_text, spec_a, spec_b, out_file, corpus_file, check = "compare";
    std::vector<std::string> strategies;
    GenConfig gen;
    std::size_t n = 100;
    unsigned fact_n = 3;
    std::size_t workers = 1, cap = 10;
    bool paper = false;

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a term");
    add_common(eval_cmd, c, true);
    eval_cmd->add_option("term", term_text, "Term (or @name)")->required();

    auto* trace_cmd = app.add_subcommand("trace", "Evaluate and print the reduction sequence");
    add_common(trace_cmd, c, true);
    trace_cmd->add_option("term", term_text)->required();

    auto* tree_cmd = app.add_subcommand("tree", "Print the big-step derivation");
    add_common(tree_cmd, c, true);
    tree_cmd->add_option("term", term_text)->required();

    auto* classify_cmd = app.add_subcommand("classify", "Report which normal-form sets contain a term");
    add_common(classify_cmd, c, false);
    classify_cmd->add_option("term", term_text)->required();

    auto* compare_cmd = app.add_subcommand("compare", "Compare two strategies on one term");
    add_common(compare_cmd, c, false);
    compare_cmd->add_option("a", spec_a)->required();
    compare_cmd->add_option("b", spec_b)->required();
    compare_cmd->add_option("term", term_text)->required();

    auto* fuse_cmd = app.add_subcommand("fuse", "Fuse a readback encoding into a hybrid");
    add_common(fuse_cmd, c, false);
    fuse_cmd->add_option("spec", spec_a)->required();

    auto* defuse_cmd = app.add_subcommand("defuse", "List readback encodings fusing to a hybrid");
    add_common(defuse_cmd, c, false);
    defuse_cmd->add_option("spec", spec_a)->required();

    auto* validate_cmd = app.add_subcommand("validate", "Check an encoding against the provisos");
    add_common(validate_cmd, c, false);
    validate_cmd->add_option("spec", spec_a)->required();

    auto* cat_cmd = app.add_subcommand("catalogue", "List the strategy catalogue");
    add_common(cat_cmd, c, false);

    auto add_gen = [&](CLI::App* sub) {
        sub->add_option("--seed", gen.seed)->capture_default_str();
        sub->add_option("--size-max", gen.size_max)->capture_default_str();
        sub->add_option("--n", n, "Number of random terms")->capture_default_str();
        sub->add_option("--pool", gen.free_var_pool, "Free variables (comma separated)")->delimiter(',');
        sub->add_option("--redex-bias", gen.redex_bias)->capture_default_str();
        sub->add_flag("--paper", paper, "Include the named paper terms");
        sub->add_option("--out", out_file, "Write output to a file");
    };

    auto* gen_cmd = app.add_subcommand("corpus-gen", "Generate a term corpus");
    add_common(gen_cmd, c, false);
    add_gen(gen_cmd);

    auto* run_cmd = app.add_subcommand("corpus-run", "Run a differential check over a corpus");
    add_common(run_cmd, c, false);
    add_gen(run_cmd);
    run_cmd->add_option("-s,--strategy", strategies, "compare: a b; absorption: outer inner; fusion: readback")
        ->required();
    run_cmd->add_option("--check", check)->check(CLI::IsMember({"compare", "absorption", "fusion"}))
        ->capture_default_str();
    run_cmd->add_option("--corpus", corpus_file, "Corpus file instead of random terms");
    run_cmd->add_option("--workers", workers, "0 = one per hardware thread")->capture_default_str();
    run_cmd->add_option("--cap", cap, "Counterexample cap")->capture_default_str();

    auto* fact_cmd = app.add_subcommand("demo-factorial", "Evaluate the factorial encoding for a strategy");
    add_common(fact_cmd, c, true);
    fact_cmd->add_option("--n", fact_n)->capture_default_str();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kDomainError;
    }

    try {
        if (eval_cmd->parsed() || trace_cmd->parsed()) {
            StrategySpec s = parse_spec(c.strategy);
            Term t = read_term(term_text);
            EvalOptions opts;
            // Plain eval skips the trace unless it is serialised.
            opts.record_trace = trace_cmd->parsed() || c.json;
            Outcome o = eval(s, t, c.fuel, opts);
            if (c.json) {
                out << outcome_to_json(print_spec(s), t, o) << "\n";
            } else if (trace_cmd->parsed()) {
                out << sequence_to_text(t, o.trace) << status_line(o) << "\n";
            } else {
                if (o.result) out << print_term(*o.result) << "\n";
                out << status_line(o) << "\n";
            }
            return status_code(c, o.status);
        }
        if (tree_cmd->parsed()) {
            StrategySpec s = parse_spec(c.strategy);
            Derivation d = derivation_tree(s, read_term(term_text), c.fuel);
            out << (c.json ? derivation_to_json(print_spec(s), d) + "\n" : derivation_to_text(d));
            return status_code(c, d.outcome.status);
        }
        if (classify_cmd->parsed()) {
            Term t = read_term(term_text);
            FormSet f = classify(t);
            out << (c.json ? classification_to_json(t, f) : to_string(f)) << "\n";
            return kOk;
        }
        if (compare_cmd->parsed()) {
            StrategySpec a = parse_spec(spec_a), b = parse_spec(spec_b);
            Term t = read_term(term_text);
            CompareVerdict v = compare(a, b, t, c.fuel);
            if (c.json) {
                out << verdict_to_json(a, b, t, v) << "\n";
            } else {
                out << to_string(v.kind) << "\n";
                if (v.witness) out << "witness " << witness_to_text(*v.witness) << "\n";
                if (!v.note.empty()) out << v.note << "\n";
            }
            bool exhausted = v.kind == VerdictKind::Inconclusive || v.kind == VerdictKind::BothExhaustedEqualPrefix ||
                             v.kind == VerdictKind::BothExhaustedMcrPrefix;
            return c.strict_fuel && exhausted ? kResourceError : kOk;
        }
        if (fuse_cmd->parsed()) {
            StrategySpec s = parse_spec(spec_a);
            const auto* er = std::get_if<ReadbackEncoding>(&s);
            if (!er) throw DomainError("fuse expects a readback encoding, got " + print_spec(s));
            FuseResult r = fuse(*er);
            out << (c.json ? fuse_to_json(*er, r) : fuse_to_text(r)) << "\n";
            return kOk;
        }
        if (defuse_cmd->parsed()) {
            StrategySpec s = parse_spec(spec_a);
            const auto* hy = std::get_if<HybridEncoding>(&s);
            if (!hy) throw DomainError("defuse expects a hybrid encoding, got " + print_spec(s));
            auto ers = defuse(*hy);
            if (c.json) {
                out << defuse_to_json(*hy, ers) << "\n";
            } else {
                if (ers.empty()) out << "(none)\n";
                for (const auto& er : ers) out << display_spec(er) << "\n";
            }
            return kOk;
        }
        if (validate_cmd->parsed()) {
            StrategySpec s = parse_spec(spec_a);
            ValidationReport r = validate(s);
            if (c.json) {
                out << validation_to_json(s, r) << "\n";
            } else {
                out << display_spec(s) << ": " << to_string(r.verdict) << "\n";
                for (const auto& d : r.diagnostics) out << "  [" << d.proviso << "] " << d.message << "\n";
            }
            bool valid = r.verdict == Verdict::ValidUniform || r.verdict == Verdict::ValidHybridBalanced ||
                         r.verdict == Verdict::ValidHybridUnbalanced || r.verdict == Verdict::ValidReadback;
            return valid ? kOk : kDomainError;
        }
        if (cat_cmd->parsed()) {
            const auto& rows = catalogue();
            if (c.json) {
                out << catalogue_to_json(rows) << "\n";
                return kOk;
            }
            for (const auto& e : rows) {
                out << std::left << std::setw(5) << (e.alias.empty() ? "-" : e.alias) << std::setw(12)
                    << print_spec(e.spec) << std::setw(26) << to_string(e.kind) << std::setw(6)
                    << to_string(e.result);
                if (e.equivalent) out << " ~ " << display_spec(*e.equivalent);
                if (e.mcr) out << " (mcr)";
                if (!e.name.empty()) out << "  " << e.name;
                out << "\n";
            }
            return kOk;
        }
        if (gen_cmd->parsed()) {
            std::vector<Term> terms = generate(gen, n);
            std::vector<NamedTerm> named;
            for (std::size_t i = 0; i < terms.size(); ++i) named.push_back({"random " + std::to_string(i), terms[i]});
            if (paper)
                for (const auto& nt : paper_corpus()) named.push_back(nt);
            std::string text;
            if (c.json) {
                std::vector<Term> all;
                std::vector<std::string> names;
                for (const auto& nt : named) {
                    all.push_back(nt.term);
                    names.push_back(nt.name);
                }
                text = corpus_to_json(all, paper ? names : std::vector<std::string>{}) + "\n";
            } else {
                text = paper ? format_corpus(named) : format_corpus(terms);
            }
            if (out_file.empty()) {
                out << text;
            } else {
                save_text(out_file, text);
                out << "wrote " << named.size() << " terms to " << out_file << "\n";
            }
            return kOk;
        }
        if (run_cmd->parsed()) {
            LabOptions lo;
            lo.workers = workers;
            lo.counterexample_cap = cap;
            lo.seed = gen.seed;
            std::vector<Term> terms = corpus_terms(corpus_file, gen, corpus_file.empty() ? n : 0, paper,
                                                   lo.corpus_name);
            std::string json;
            auto need = [&](std::size_t k) {
                if (strategies.size() != k)
                    throw DomainError("--check " + check + " needs " + std::to_string(k) + " strategies");
            };
            if (check == "fusion") {
                need(1);
                StrategySpec s = parse_spec(strategies[0]);
                const auto* er = std::get_if<ReadbackEncoding>(&s);
                if (!er) throw DomainError("fusion check expects a readback encoding");
                FusionReport r = check_fusion_row(*er, terms, c.fuel, lo);
                json = fusion_report_to_json(r);
                if (!c.json) {
                    print_report_text(out, r.compare);
                    out << "fused: " << fuse_to_text(r.fused) << "\n"
                        << "hy.ev = hy: " << r.absorption_checked - r.absorption_failures << "/"
                        << r.absorption_checked << "\n"
                        << "ev.ev = ev: " << r.idempotence_checked - r.idempotence_failures << "/"
                        << r.idempotence_checked << "\n"
                        << (r.passed() ? "PASS" : "FAIL") << "\n";
                }
            } else {
                need(2);
                StrategySpec a = parse_spec(strategies[0]), b = parse_spec(strategies[1]);
                CorpusReport r = check == "compare" ? compare_corpus(a, b, terms, c.fuel, lo)
                                                    : check_absorption(a, b, terms, c.fuel, lo);
                json = report_to_json(r);
                if (!c.json) print_report_text(out, r);
            }
            if (c.json) out << json << "\n";
            if (!out_file.empty()) save_text(out_file, json + "\n");
            return kOk;
        }
        if (fact_cmd->parsed()) {
            StrategySpec s = parse_spec(c.strategy);
            FactorialReport r = demo_factorial(s, fact_n, c.fuel);
            if (c.json) {
                out << factorial_report_to_json(r) << "\n";
            } else {
                out << fact_n << "! under " << r.strategy << " (" << to_string(r.encoding) << ")\n";
                if (r.outcome.result) out << print_term(*r.outcome.result) << "\n";
                out << status_line(r.outcome) << "\n";
                if (r.full_reducing)
                    out << "value: " << (r.value >= 0 ? std::to_string(r.value) : "not a numeral") << ", expected "
                        << r.expected << "\n";
                else
                    out << "forms: " << to_string(r.forms) << ", expected " << to_string(r.expected_form) << "\n";
                out << (r.success ? "ok" : "mismatch") << "\n";
            }
            return status_code(c, r.outcome.status);
        }
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return kResourceError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
    return kDomainError;
}

} // namespace lamlab::cli
