#include "lamlab/equivalence.hpp"

#include "lamlab/deep_stack.hpp"
#include "lamlab/errors.hpp"
#include "lamlab/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace lamlab {

std::string to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::OneStepEqual: return "one-step-equal";
    case VerdictKind::EqualMcr: return "equal-mcr";
    case VerdictKind::BigStepEqualOnly: return "big-step-equal-only";
    case VerdictKind::Differ: return "differ";
    case VerdictKind::BothExhaustedEqualPrefix: return "both-exhausted-equal-prefix";
    case VerdictKind::BothExhaustedMcrPrefix: return "both-exhausted-mcr-prefix";
    case VerdictKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

bool events_independent(const TraceEvent& a, const TraceEvent& b) { return paths_disjoint(a.position, b.position); }

bool events_equal(const TraceEvent& a, const TraceEvent& b) {
    return a.position == b.position && alpha_eq(a.redex, b.redex) && alpha_eq(a.contractum, b.contractum);
}

std::vector<TraceEvent> canonicalize(const std::vector<TraceEvent>& trace) {
    // Greedy smallest-available topological order, built incrementally: a new
    // event becomes available right after the last event it depends on, and
    // is placed before the first later event with a greater position.
    std::vector<TraceEvent> out;
    out.reserve(trace.size());
    for (const TraceEvent& e : trace) {
        std::size_t k = out.size();
        while (k > 0 && events_independent(out[k - 1], e)) --k;
        std::size_t j = k;
        while (j < out.size() && out[j].position < e.position) ++j;
        out.insert(out.begin() + std::ptrdiff_t(j), e);
    }
    return out;
}

bool mcr_prefix_consistent(const std::vector<TraceEvent>& a, const std::vector<TraceEvent>& b) {
    std::vector<char> used(b.size(), 0);
    std::vector<std::size_t> left_a;
    std::size_t first_free = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const TraceEvent& e = a[i];
        bool blocked = std::any_of(left_a.begin(), left_a.end(),
                                   [&](std::size_t u) { return !events_independent(a[u], e); });
        std::size_t found = b.size();
        if (!blocked) {
            for (std::size_t j = first_free; j < b.size(); ++j) {
                if (used[j]) continue;
                if (events_equal(b[j], e)) {
                    found = j;
                    break;
                }
                if (!events_independent(b[j], e)) break;
            }
        }
        if (found == b.size()) {
            left_a.push_back(i);
            continue;
        }
        used[found] = 1;
        while (first_free < b.size() && used[first_free]) ++first_free;
    }
    for (std::size_t j = first_free; j < b.size(); ++j) {
        if (used[j]) continue;
        for (std::size_t u : left_a)
            if (!events_independent(a[u], b[j])) return false;
    }
    return true;
}

namespace {

// Index of the first differing event, or npos when the traces are equal.
std::size_t first_mismatch(const std::vector<TraceEvent>& a, const std::vector<TraceEvent>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!events_equal(a[i], b[i])) return i;
    return a.size() == b.size() ? std::size_t(-1) : n;
}

Witness make_witness(const std::vector<TraceEvent>& a, const std::vector<TraceEvent>& b, std::size_t i) {
    Witness w;
    w.step = i;
    if (i < a.size()) w.a = a[i];
    if (i < b.size()) w.b = b[i];
    return w;
}

} // namespace

CompareVerdict compare_outcomes(const Outcome& a, const Outcome& b) {
    CompareVerdict v;
    run_on_deep_stack([&] {
        if (a.status == Status::ResourceExhausted || b.status == Status::ResourceExhausted) {
            v.kind = VerdictKind::Inconclusive;
            v.note = "resource limit";
            return;
        }
        const std::size_t npos = std::size_t(-1);
        if (a.converged() && b.converged()) {
            bool same_result = alpha_eq(*a.result, *b.result);
            std::size_t raw = first_mismatch(a.trace, b.trace);
            if (raw == npos && same_result) {
                v.kind = VerdictKind::OneStepEqual;
                return;
            }
            auto ca = canonicalize(a.trace);
            auto cb = canonicalize(b.trace);
            std::size_t canon = first_mismatch(ca, cb);
            if (canon == npos && same_result) {
                v.kind = VerdictKind::EqualMcr;
                return;
            }
            v.kind = same_result ? VerdictKind::BigStepEqualOnly : VerdictKind::Differ;
            v.witness = canon == npos ? make_witness(a.trace, b.trace, raw) : make_witness(ca, cb, canon);
            if (!same_result) v.note = "results differ: " + print_term(*a.result) + " vs " + print_term(*b.result);
            return;
        }
        if (a.status == Status::FuelExhausted && b.status == Status::FuelExhausted) {
            std::size_t raw = first_mismatch(a.trace, b.trace);
            if (raw == npos) {
                v.kind = VerdictKind::BothExhaustedEqualPrefix;
            } else if (mcr_prefix_consistent(a.trace, b.trace)) {
                v.kind = VerdictKind::BothExhaustedMcrPrefix;
            } else {
                v.kind = VerdictKind::Differ;
                v.witness = make_witness(a.trace, b.trace, raw);
                v.note = "fuel-bounded prefixes contract different redexes";
            }
            return;
        }
        v.kind = VerdictKind::Inconclusive;
        v.note = a.converged() ? "second side exhausted fuel" : "first side exhausted fuel";
    });
    return v;
}

CompareVerdict compare(const StrategySpec& a, const StrategySpec& b, const Term& t, std::uint64_t fuel,
                       const EvalOptions& opts) {
    EvalOptions o = opts;
    o.record_trace = true;
    Outcome oa = eval(a, t, fuel, o);
    Outcome ob = eval(b, t, fuel, o);
    return compare_outcomes(oa, ob);
}

// ---- corpus drivers --------------------------------------------------------

namespace {

template <class Fn>
void for_each_index(std::size_t n, std::size_t workers, Fn&& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        run_on_deep_stack([&] {
            for (std::size_t i = 0; i < n; ++i) fn(i);
        });
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::exception_ptr error;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                run_on_deep_stack([&] {
                    for (std::size_t i = next++; i < n; i = next++) fn(i);
                });
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct TermVerdict {
    std::string kind;
    bool counterexample = false;
    std::optional<Witness> witness;
    std::string note;
};

CorpusReport aggregate(std::string a, std::string b, const std::vector<Term>& corpus, std::uint64_t fuel,
                       const LabOptions& opts, const std::vector<TermVerdict>& per_term) {
    CorpusReport r;
    r.a = std::move(a);
    r.b = std::move(b);
    r.corpus = opts.corpus_name;
    r.seed = opts.seed;
    r.fuel = fuel;
    r.n = corpus.size();
    for (std::size_t i = 0; i < per_term.size(); ++i) {
        const TermVerdict& tv = per_term[i];
        ++r.verdicts[tv.kind];
        if (!tv.counterexample) continue;
        ++r.failures;
        if (r.counterexamples.size() < opts.counterexample_cap)
            r.counterexamples.push_back({i, print_term(corpus[i]), tv.kind, tv.witness, tv.note});
    }
    return r;
}

EvalOptions traced(const EvalOptions& o) {
    EvalOptions r = o;
    r.record_trace = true;
    return r;
}

EvalOptions untraced(const EvalOptions& o) {
    EvalOptions r = o;
    r.record_trace = false;
    return r;
}

} // namespace

CorpusReport compare_corpus(const StrategySpec& a, const StrategySpec& b, const std::vector<Term>& corpus,
                            std::uint64_t fuel, const LabOptions& opts) {
    std::vector<TermVerdict> per(corpus.size());
    for_each_index(corpus.size(), opts.workers, [&](std::size_t i) {
        CompareVerdict v = compare(a, b, corpus[i], fuel, opts.eval);
        bool cx = v.kind == VerdictKind::Differ || v.kind == VerdictKind::BigStepEqualOnly;
        per[i] = {to_string(v.kind), cx, v.witness, v.note};
    });
    return aggregate(print_spec(a), print_spec(b), corpus, fuel, opts, per);
}

CorpusReport check_absorption(const StrategySpec& outer, const StrategySpec& inner, const std::vector<Term>& corpus,
                              std::uint64_t fuel, const LabOptions& opts) {
    std::vector<TermVerdict> per(corpus.size());
    EvalOptions eo = untraced(opts.eval);
    for_each_index(corpus.size(), opts.workers, [&](std::size_t i) {
        const Term& t = corpus[i];
        Outcome direct = eval(outer, t, fuel, eo);
        Outcome first = eval(inner, t, fuel, eo);
        Outcome composed = first;
        if (first.converged()) composed = eval(outer, *first.result, fuel, eo);
        TermVerdict tv;
        if (direct.status == Status::ResourceExhausted || composed.status == Status::ResourceExhausted) {
            tv.kind = "inconclusive";
            tv.note = "resource limit";
        } else if (direct.converged() && composed.converged()) {
            if (alpha_eq(*direct.result, *composed.result)) {
                tv.kind = "absorbed";
            } else {
                tv.kind = "result-differs";
                tv.counterexample = true;
                tv.note = print_term(*composed.result) + " vs " + print_term(*direct.result);
            }
        } else if (direct.converged() != composed.converged()) {
            tv.kind = "status-differs";
            tv.counterexample = true;
            tv.note = direct.converged() ? "composition exhausts fuel, outer alone converges"
                                         : "composition converges, outer alone exhausts fuel";
        } else {
            tv.kind = "both-exhausted";
        }
        per[i] = std::move(tv);
    });
    std::string comp = print_spec(outer) + " . " + print_spec(inner);
    return aggregate(comp, print_spec(outer), corpus, fuel, opts, per);
}

FusionReport check_fusion_row(const ReadbackEncoding& er, const std::vector<Term>& corpus, std::uint64_t fuel,
                              const LabOptions& opts) {
    FusionReport rep;
    rep.er = er;
    rep.fused = fuse(er);
    const StrategySpec hy = rep.fused.hybrid;
    const StrategySpec ev = er.eval;
    const bool mcr = rep.fused.mcr;

    struct Extra {
        bool abs_checked = false, abs_fail = false, idem_checked = false, idem_fail = false;
    };
    std::vector<TermVerdict> per(corpus.size());
    std::vector<Extra> extra(corpus.size());
    EvalOptions to = traced(opts.eval), uo = untraced(opts.eval);

    for_each_index(corpus.size(), opts.workers, [&](std::size_t i) {
        const Term& t = corpus[i];
        Outcome staged = eval(er, t, fuel, to);
        Outcome fused = eval(hy, t, fuel, to);
        CompareVerdict v = compare_outcomes(staged, fused);
        bool fail = v.kind == VerdictKind::Differ || v.kind == VerdictKind::BigStepEqualOnly ||
                    (!mcr && (v.kind == VerdictKind::EqualMcr || v.kind == VerdictKind::BothExhaustedMcrPrefix));
        TermVerdict tv{to_string(v.kind), fail, v.witness, v.note};

        Extra x;
        Outcome e1 = eval(ev, t, fuel, uo);
        if (e1.converged()) {
            Outcome e2 = eval(ev, *e1.result, fuel, uo);
            x.idem_checked = true;
            x.idem_fail = !e2.converged() || !alpha_eq(*e2.result, *e1.result);
            if (x.idem_fail) tv.note += (tv.note.empty() ? "" : "; ") + std::string("ev.ev != ev");
            if (fused.converged()) {
                Outcome h2 = eval(hy, *e1.result, fuel, uo);
                if (h2.converged()) {
                    x.abs_checked = true;
                    x.abs_fail = !alpha_eq(*h2.result, *fused.result);
                    if (x.abs_fail) tv.note += (tv.note.empty() ? "" : "; ") + std::string("hy.ev != hy");
                }
            }
        }
        tv.counterexample = tv.counterexample || x.abs_fail || x.idem_fail;
        per[i] = std::move(tv);
        extra[i] = x;
    });

    rep.compare = aggregate(print_spec(er), print_spec(hy), corpus, fuel, opts, per);
    for (const auto& x : extra) {
        rep.absorption_checked += x.abs_checked;
        rep.absorption_failures += x.abs_fail;
        rep.idempotence_checked += x.idem_checked;
        rep.idempotence_failures += x.idem_fail;
    }
    auto it = rep.compare.verdicts.find("inconclusive");
    rep.inconclusive = it == rep.compare.verdicts.end() ? 0 : it->second;
    return rep;
}

// ---- rendering -----------------------------------------------------------

namespace {

using nlohmann::json;

json event_json(const TraceEvent& e) {
    return {{"i", e.step_index},
            {"path", path_to_string(e.position)},
            {"redex", print_term(e.redex)},
            {"contractum", print_term(e.contractum)}};
}

json witness_json(const Witness& w) {
    json j{{"step", w.step}};
    j["a"] = w.a ? event_json(*w.a) : json(nullptr);
    j["b"] = w.b ? event_json(*w.b) : json(nullptr);
    return j;
}

json report_json(const CorpusReport& r) {
    json j{{"a", r.a}, {"b", r.b}, {"corpus", r.corpus}, {"seed", r.seed}, {"fuel", r.fuel}, {"n", r.n}};
    json counts = json::object();
    for (const auto& [k, c] : r.verdicts) counts[k] = c;
    j["verdicts"] = std::move(counts);
    j["failures"] = r.failures;
    json cx = json::array();
    for (const auto& c : r.counterexamples) {
        json e{{"index", c.index}, {"term", c.term}, {"verdict", c.verdict}};
        e["witness"] = c.witness ? witness_json(*c.witness) : json(nullptr);
        if (!c.note.empty()) e["note"] = c.note;
        cx.push_back(std::move(e));
    }
    j["counterexamples"] = std::move(cx);
    return j;
}

} // namespace

std::string report_to_json(const CorpusReport& r) {
    std::string s;
    run_on_deep_stack([&] { s = report_json(r).dump(); });
    return s;
}

std::string fusion_report_to_json(const FusionReport& r) {
    std::string s;
    run_on_deep_stack([&] {
        json j = report_json(r.compare);
        j["hybrid"] = print_spec(r.fused.hybrid);
        j["mcr"] = r.fused.mcr;
        j["absorption_checked"] = r.absorption_checked;
        j["absorption_failures"] = r.absorption_failures;
        j["idempotence_checked"] = r.idempotence_checked;
        j["idempotence_failures"] = r.idempotence_failures;
        j["inconclusive"] = r.inconclusive;
        j["passed"] = r.passed();
        s = j.dump();
    });
    return s;
}

std::string verdict_to_json(const StrategySpec& a, const StrategySpec& b, const Term& t, const CompareVerdict& v) {
    std::string s;
    run_on_deep_stack([&] {
        json j{{"a", print_spec(a)}, {"b", print_spec(b)}, {"term", print_term(t)}, {"verdict", to_string(v.kind)}};
        j["witness"] = v.witness ? witness_json(*v.witness) : json(nullptr);
        if (!v.note.empty()) j["note"] = v.note;
        s = j.dump();
    });
    return s;
}

std::string witness_to_text(const Witness& w) {
    std::string s = "step " + std::to_string(w.step) + ": ";
    auto ev = [](const std::optional<TraceEvent>& e) {
        if (!e) return std::string("(none)");
        return "@" + (e->position.empty() ? std::string(".") : path_to_string(e->position)) + " " +
               print_term(e->redex) + " -> " + print_term(e->contractum);
    };
    return s + ev(w.a) + "  vs  " + ev(w.b);
}

} // namespace lamlab
