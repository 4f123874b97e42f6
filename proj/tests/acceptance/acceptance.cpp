// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "oracle.hpp"

#include "lamlab/builtins.hpp"
#include "lamlab/corpus.hpp"
#include "lamlab/deep_stack.hpp"
#include "lamlab/engine.hpp"
#include "lamlab/equivalence.hpp"
#include "lamlab/errors.hpp"
#include "lamlab/factorial.hpp"
#include "lamlab/report.hpp"
#include "lamlab/strategy.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace lamlab;

namespace {

struct Result {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void fail(const std::string& why) {
        pass = false;
        failures.push_back(why);
    }
};

constexpr std::uint64_t kCorpusSeed = 20240601;

const std::vector<Term>& random_corpus() {
    static const std::vector<Term> terms = [] {
        GenConfig g;
        g.seed = kCorpusSeed;
        g.size_max = 30;
        return generate(g, 1000);
    }();
    return terms;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1 ---------------------------------------------------------------------

bool is_rule(const DerivationTree& d, Rule r, const char* in, const char* out) {
    return d.rule == r && alpha_eq(d.input, parse_term(in)) && alpha_eq(d.output, parse_term(out));
}

void criterion1(Result& r) {
    Term t = paper_term("sestoft-fig-example");
    StrategySpec bv = parse_spec("bv");
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = eval(bv, t, 1000);
    double ms = ms_since(t0);
    if (!o.converged() || !alpha_eq(*o.result, parse_term("z"))) r.fail("result is not z");
    const char* contracta[] = {"z", R"((\x.x) z)", "z"};
    if (o.trace.size() != 3) {
        r.fail("expected 3 contractions, got " + std::to_string(o.trace.size()));
    } else {
        for (int i = 0; i < 3; ++i)
            if (!alpha_eq(o.trace[i].contractum, parse_term(contracta[i])))
                r.fail("contractum " + std::to_string(i + 1) + " is " + print_term(o.trace[i].contractum));
    }

    // Shape of the figure: CON at the root over the operator's ABS, the
    // operand's CON (I z => z) and the contractum's CON (I z => z).
    Derivation d = derivation_tree(bv, t, 1000);
    bool shape = d.roots.size() == 1;
    if (shape) {
        const DerivationTree& root = d.roots[0];
        shape = is_rule(root, Rule::CON, R"((\x.#I z)(#I z))", "z") && root.premises.size() == 3 &&
                is_rule(root.premises[0], Rule::ABS, R"(\x.#I z)", R"(\x.#I z)") &&
                is_rule(root.premises[1], Rule::CON, "#I z", "z") &&
                is_rule(root.premises[2], Rule::CON, "#I z", "z");
        for (std::size_t k = 1; shape && k < 3; ++k) {
            const DerivationTree& c = root.premises[k];
            shape = c.premises.size() == 3 && is_rule(c.premises[0], Rule::ABS, "#I", "#I") &&
                    is_rule(c.premises[1], Rule::VAR, "z", "z") && is_rule(c.premises[2], Rule::VAR, "z", "z");
        }
    }
    if (!shape) r.fail("derivation tree does not match the figure");
    auto seq = sequence_from_tree(d.roots);
    if (seq.size() != o.trace.size()) r.fail("tree sequence length differs from trace");
    for (std::size_t i = 0; i < std::min(seq.size(), o.trace.size()); ++i)
        if (!events_equal(seq[i], o.trace[i])) r.fail("tree sequence differs from trace");
    r.detail << "z in " << o.trace.size() << " steps, contracta z, Iz, z; tree matches; " << ms << " ms";
}

// ---- 2 ---------------------------------------------------------------------

void criterion2(Result& r) {
    const auto& corpus = random_corpus();
    EvalOptions opts;
    opts.record_trace = false;
    std::size_t entries = 0, converged = 0, violations = 0;
    std::map<std::string, std::string> first_violation;
    run_on_deep_stack([&] {
        for (const auto& e : catalogue()) {
            if (std::holds_alternative<ReadbackEncoding>(e.spec)) continue;
            ++entries;
            for (const Term& t : corpus) {
                Outcome o = eval(e.spec, t, 20000, opts);
                if (!o.converged()) continue;
                ++converged;
                if (classify(*o.result).has(e.result)) continue;
                ++violations;
                std::string key = display_spec(e.spec) + " expects " + to_string(e.result);
                if (!first_violation.count(key))
                    first_violation[key] = print_term(t) + " => " + print_term(*o.result) + " " +
                                           to_string(classify(*o.result));
            }
        }
    });
    if (entries != 41) r.fail("expected 41 eval-apply entries, have " + std::to_string(entries));
    for (const auto& [k, v] : first_violation) r.fail(k + ", e.g. " + v);
    r.detail << entries << " entries x " << corpus.size() << " terms, " << converged << " converged runs, "
             << violations << " violations";
}

// ---- 3 ---------------------------------------------------------------------

void criterion3(Result& r) {
    std::vector<Term> corpus = random_corpus();
    for (const auto& nt : paper_corpus()) corpus.push_back(nt.term);
    LabOptions lo;
    lo.corpus_name = "random+paper";
    lo.seed = kCorpusSeed;
    std::size_t rows = 0, inconclusive = 0, mcr_rows = 0;
    for (const auto& e : catalogue()) {
        const auto* er = std::get_if<ReadbackEncoding>(&e.spec);
        if (!er) continue;
        ++rows;
        FusionReport rep = check_fusion_row(*er, corpus, 20000, lo);
        inconclusive += rep.inconclusive;
        mcr_rows += rep.fused.mcr;
        if (!e.equivalent || !(rep.fused.hybrid == std::get<HybridEncoding>(*e.equivalent)) ||
            rep.fused.mcr != e.mcr)
            r.fail(print_spec(*er) + " fuses to " + fuse_to_text(rep.fused));
        if (!rep.passed()) {
            std::string why = print_spec(*er) + ": " + std::to_string(rep.compare.failures) + " compare failures, " +
                              std::to_string(rep.absorption_failures) + " hy.ev failures, " +
                              std::to_string(rep.idempotence_failures) + " ev.ev failures";
            if (!rep.compare.counterexamples.empty()) why += ", e.g. " + rep.compare.counterexamples[0].term;
            r.fail(why);
        }
    }
    if (rows != 22) r.fail("expected 22 readback rows, have " + std::to_string(rows));
    r.detail << rows << " rows (" << mcr_rows << " mcr) on " << corpus.size() << " terms, " << inconclusive
             << " inconclusive comparisons excluded";
}

// ---- 4 ---------------------------------------------------------------------

void criterion4(Result& r) {
    const std::pair<const char*, const char*> equations[] = {
        {"(RE)(RE).III", "HIH<>III"}, // normal order
        {"R(RE).SII", "HIH<>SII"},    // hybrid normal order
        {"(RE)I.III", "HII<>III"},    // head reduction
        {"(RE)R.ISS", "HSH<>ISS"},    // strict normalisation
        {"(RE)I.ISS", "HSS<>ISS"},    // ahead machine
    };
    for (auto [er, hy] : equations) {
        FuseResult f = fuse(std::get<ReadbackEncoding>(parse_spec(er)));
        if (print_spec(f.hybrid) != hy) r.fail(std::string(er) + " fuses to " + print_spec(f.hybrid));
    }
    std::size_t round_trips = 0;
    for (const auto& e : catalogue()) {
        const auto* er = std::get_if<ReadbackEncoding>(&e.spec);
        if (!er) continue;
        auto back = defuse(fuse(*er).hybrid);
        if (std::find(back.begin(), back.end(), *er) == back.end())
            r.fail("defuse(fuse(" + print_spec(*er) + ")) misses it");
        else
            ++round_trips;
    }
    for (const char* h : {"ha", "so"})
        if (!defuse(std::get<HybridEncoding>(parse_spec(h))).empty()) r.fail(std::string("defuse ") + h + " not empty");
    r.detail << "5 equations exact, " << round_trips << "/22 round trips, defuse(ha)=defuse(so)=[]";
}

// ---- 5 ---------------------------------------------------------------------

std::size_t count(const CorpusReport& rep, const std::string& kind) {
    auto it = rep.verdicts.find(kind);
    return it == rep.verdicts.end() ? 0 : it->second;
}

void criterion5(Result& r) {
    const auto& corpus = random_corpus();
    for (const char* outer : {"IIS", "he"}) {
        CorpusReport rep = check_absorption(parse_spec(outer), parse_spec("bn"), corpus, 5000);
        std::size_t bad = count(rep, "result-differs");
        if (bad) r.fail(std::string(outer) + " . bn differs on " + std::to_string(bad) + " convergent terms");
        r.detail << outer << ".bn absorbed on " << count(rep, "absorbed") << " terms; ";
    }
    struct Neg {
        const char* outer;
        const char* inner;
        const char* term;
    };
    const Neg negs[] = {
        {"SIS", "he", "sis-counterexample"},           {"SIS", "bn", "sis-counterexample"},
        {"SIS", "IIS", "sis-counterexample"},          {"bv", "bn", "strictness-counterexample"},
        {"ao", "he", "strictness-counterexample"},     {"bn", "bv", "strictness-counterexample"},
        {"ao", "ISI", "ao-counterexample"},            {"ao", "bv", "ao-counterexample"},
        {"ao", "ho", "ao-counterexample"},             {"bv", "ISI", "bv-isi-counterexample"},
        {"ho", "ISI", "ho-isi-counterexample"},
    };
    std::size_t witnessed = 0;
    for (const Neg& n : negs) {
        CorpusReport rep = check_absorption(parse_spec(n.outer), parse_spec(n.inner), {paper_term(n.term)}, 5000);
        if (rep.failures == 1)
            ++witnessed;
        else
            r.fail(std::string(n.outer) + " absorbs " + n.inner + " on " + n.term);
    }
    r.detail << witnessed << "/" << std::size(negs) << " negative witnesses reproduce";
}

// ---- 6 ---------------------------------------------------------------------

void criterion6(Result& r) {
    for (const char* s : {"HIH<>SIS", "HSI<>SSI", "IHH<>ISS", "HHI<>SSI"})
        if (validate(parse_spec(s)).verdict != Verdict::Spurious) r.fail(std::string(s) + " not spurious");
    if (validate(parse_spec("SIS<>SIS")).verdict != Verdict::DegenerateUniform) r.fail("SIS<>SIS not degenerate");
    if (validate(parse_spec("II.ISS")).verdict != Verdict::Invalid) r.fail("vacuous readback II.ISS accepted");
    std::size_t checked = 0;
    for (const auto& e : catalogue()) {
        Verdict v = validate(e.spec).verdict;
        if (v != e.kind) r.fail(display_spec(e.spec) + " validates as " + to_string(v));
        ++checked;
    }
    r.detail << "4 spurious, 1 degenerate, vacuous readback invalid, " << checked << " catalogue kinds match";
}

// ---- 7 ---------------------------------------------------------------------

// A witness of one-step non-equivalence: traces differ (results may agree).
bool non_equivalent(const CompareVerdict& v) {
    return (v.kind == VerdictKind::Differ || v.kind == VerdictKind::BigStepEqualOnly) && v.witness.has_value();
}

void criterion7(Result& r) {
    struct Probe {
        const char* a;
        const char* b;
    };
    const Probe probes[] = {{"no", "hr"}, {"no", "hn"}, {"HIS<>bn", "HIS<>IIS"}, {"HSH<>ISI", "sn"}};
    for (const Probe& p : probes) {
        StrategySpec a = parse_spec(p.a), b = parse_spec(p.b);
        std::string found;
        for (const auto& nt : paper_corpus()) {
            CompareVerdict v = compare(a, b, nt.term, 5000);
            if (non_equivalent(v)) {
                found = nt.name + " (" + to_string(v.kind) + ")";
                break;
            }
        }
        if (found.empty())
            r.fail(std::string(p.a) + " vs " + p.b + ": no witness");
        else
            r.detail << p.a << "/" << p.b << ": " << found << "; ";
    }
    // The specific counterexamples named for the two hybrid probes.
    if (!non_equivalent(compare(parse_spec("HIS<>bn"), parse_spec("HIS<>IIS"), paper_term("his-counterexample"), 5000)))
        r.fail("x(xR) does not separate HIS<>bn and HIS<>IIS");
    if (!non_equivalent(compare(parse_spec("HSH<>ISI"), parse_spec("sn"),
                                paper_term("strict-subsidiary-counterexample"), 5000)))
        r.fail("((\\x.B)(xR))N does not separate HSH<>ISI and sn");
}

// ---- 8 ---------------------------------------------------------------------

void criterion8(Result& r) {
    std::uint64_t fact = 1;
    std::size_t ok = 0;
    for (unsigned n = 0; n <= 4; ++n) {
        if (n > 0) fact *= n;
        auto expected = oracle::normalize(factorial_term(FactorialEncoding::Direct, n), 1000000);
        if (!expected || !alpha_eq(*expected, church(fact))) {
            r.fail("oracle disagrees with " + std::to_string(fact) + " at n=" + std::to_string(n));
            continue;
        }
        for (const char* s : {"no", "hn", "sn", "ha", "so", "bs", "bn", "hr", "he", "bv", "am", "ho", "IIS"}) {
            FactorialReport rep = demo_factorial(parse_spec(s), n, 200000);
            bool good = rep.success;
            if (rep.full_reducing) good = good && rep.outcome.result && alpha_eq(*rep.outcome.result, *expected);
            if (good)
                ++ok;
            else
                r.fail(std::string(s) + " n=" + std::to_string(n) + ": " + to_string(rep.outcome.status) +
                       (rep.outcome.result ? " " + to_string(rep.forms) : ""));
        }
    }
    r.detail << ok << "/65 (strategy, n) runs correct";
}

// ---- 9 ---------------------------------------------------------------------

bool same_events(const std::vector<TraceEvent>& a, const std::vector<TraceEvent>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!events_equal(a[i], b[i]) || a[i].step_index != b[i].step_index) return false;
    return true;
}

bool same_outcome(const Outcome& a, const Outcome& b) {
    if (a.status != b.status || a.fuel_used != b.fuel_used) return false;
    if (a.result.has_value() != b.result.has_value()) return false;
    if (a.result && !(*a.result == *b.result)) return false;
    return same_events(a.trace, b.trace);
}

void criterion9(Result& r) {
    std::vector<StrategySpec> specs;
    for (const auto& e : catalogue())
        if (e.kind != Verdict::Invalid) specs.push_back(e.spec);
    std::mt19937_64 rng(kCorpusSeed);
    GenConfig closed{kCorpusSeed + 1, 24, {}, 0.5};
    GenConfig open{kCorpusSeed + 2, 24, {"x", "y", "z"}, 0.5};
    auto closed_terms = generate(closed, 1000);
    auto open_terms = generate(open, 1000);
    const std::uint64_t fuel = 2000;
    std::map<std::string, std::size_t> bad;
    std::size_t converged = 0;
    run_on_deep_stack([&] {
        for (std::size_t i = 0; i < 2000; ++i) {
            const StrategySpec& s = specs[rng() % specs.size()];
            const Term& t = i % 2 ? open_terms[i / 2] : closed_terms[i / 2];
            Outcome o = eval(s, t, fuel);
            if (o.status == Status::ResourceExhausted) continue;
            converged += o.converged();
            if (!same_outcome(o, eval(s, t, fuel))) ++bad["determinism"];

            // Fuel monotonicity: less fuel gives a prefix, the exact amount suffices.
            std::uint64_t half = o.fuel_used / 2;
            Outcome less = eval(s, t, half);
            bool prefix = less.status == Status::FuelExhausted && less.trace.size() == half;
            for (std::size_t k = 0; prefix && k < half; ++k) prefix = events_equal(less.trace[k], o.trace[k]);
            if (o.fuel_used > 0 && !prefix) ++bad["fuel monotonicity"];
            if (o.converged()) {
                Outcome exact = eval(s, t, o.fuel_used);
                Outcome more = eval(s, t, fuel * 2);
                if (!same_outcome(exact, o) || !same_outcome(more, o)) ++bad["fuel monotonicity"];
            }

            if (o.converged()) {
                Derivation d = derivation_tree(s, t, fuel);
                if (!same_events(sequence_from_tree(d.roots), o.trace)) ++bad["trace/tree coherence"];
            }

            try {
                auto seq = reconstruct_sequence(t, o.trace);
                if (o.converged() && !alpha_eq(seq.back(), *o.result)) ++bad["replay soundness"];
            } catch (const EvalError&) {
                ++bad["replay soundness"];
            }

            for (const auto& e : o.trace) {
                if (!e.redex.is_redex()) {
                    ++bad["contractum soundness"];
                    break;
                }
                auto want = oracle::contract_at(oracle::from_term(e.redex), "");
                if (!oracle::equal(want, oracle::from_term(e.contractum))) {
                    ++bad["contractum soundness"];
                    break;
                }
            }
        }
    });
    for (const auto& [k, v] : bad) r.fail(k + ": " + std::to_string(v) + " violations");
    r.detail << "2000 (spec, term) pairs, " << converged << " converged; determinism, fuel monotonicity, "
             << "trace/tree coherence, replay and contractum soundness checked";
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<void(Result&)> run;
    };
    const Criterion criteria[] = {
        {1, "natural-semantics example replay", criterion1},
        {2, "catalogue result-form soundness", criterion2},
        {3, "fusion table", criterion3},
        {4, "fuse/defuse algebra", criterion4},
        {5, "absorption suite", criterion5},
        {6, "proviso validation", criterion6},
        {7, "non-equivalence probes", criterion7},
        {8, "factorial table", criterion8},
        {9, "engine properties", criterion9},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Result r;
        auto t0 = std::chrono::steady_clock::now();
        try {
            run_on_deep_stack([&] { c.run(r); });
        } catch (const std::exception& e) {
            r.fail(std::string("exception: ") + e.what());
        }
        failed += !r.pass;
        std::printf("criterion %d [%s] %s: %s (%.1fs)\n", c.id, r.pass ? "PASS" : "FAIL", c.title,
                    r.detail.str().c_str(), ms_since(t0) / 1000.0);
        for (std::size_t i = 0; i < r.failures.size() && i < 20; ++i)
            std::printf("    - %s\n", r.failures[i].c_str());
        if (r.failures.size() > 20) std::printf("    - ... %zu more\n", r.failures.size() - 20);
        std::fflush(stdout);
    }
    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed ? 1 : 0;
}
