#pragma once

#include "lamlab/engine.hpp"
#include "lamlab/strategy.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lamlab {

enum class VerdictKind : std::uint8_t {
    OneStepEqual,
    EqualMcr,
    BigStepEqualOnly,
    Differ,
    BothExhaustedEqualPrefix,
    BothExhaustedMcrPrefix,
    Inconclusive,
};

std::string to_string(VerdictKind k);

// First point where two traces disagree.  Either event may be absent when
// one trace is a strict prefix of the other.
struct Witness {
    std::size_t step = 0;
    std::optional<TraceEvent> a;
    std::optional<TraceEvent> b;
};

struct CompareVerdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::optional<Witness> witness; // always set for Differ and BigStepEqualOnly
    std::string note;
};

// Events are equal when positions coincide and redexes and contracta are
// alpha-equal.
bool events_equal(const TraceEvent& a, const TraceEvent& b);
// Steps commute iff their positions are disjoint.
bool events_independent(const TraceEvent& a, const TraceEvent& b);

// Lexicographically least (by position, Fun < Arg < Body) linearization
// respecting the dependency order of the trace.
std::vector<TraceEvent> canonicalize(const std::vector<TraceEvent>& trace);

// Whether two finite prefixes could be extended to equivalent traces modulo
// commuting steps: after matching common events, the leftovers commute.
bool mcr_prefix_consistent(const std::vector<TraceEvent>& a, const std::vector<TraceEvent>& b);

CompareVerdict compare_outcomes(const Outcome& a, const Outcome& b);
CompareVerdict compare(const StrategySpec& a, const StrategySpec& b, const Term& t, std::uint64_t fuel,
                       const EvalOptions& opts = {});

// ---- corpus-level checks ---------------------------------------------------

struct Counterexample {
    std::size_t index = 0;
    std::string term;
    std::string verdict;
    std::optional<Witness> witness;
    std::string note;
};

struct CorpusReport {
    std::string a;
    std::string b;
    std::string corpus;
    std::uint64_t seed = 0;
    std::uint64_t fuel = 0;
    std::size_t n = 0;
    std::map<std::string, std::size_t> verdicts; // counts sum to n
    std::vector<Counterexample> counterexamples;  // capped
    std::size_t failures = 0;                     // uncapped count
};

struct LabOptions {
    EvalOptions eval;
    std::size_t counterexample_cap = 10;
    // 0 = one worker per hardware thread.  Results do not depend on it.
    std::size_t workers = 1;
    std::string corpus_name = "corpus";
    std::uint64_t seed = 0;
};

// compare(a, b, ·) on every term; differ and big-step-equal-only verdicts
// are listed as counterexamples.
CorpusReport compare_corpus(const StrategySpec& a, const StrategySpec& b, const std::vector<Term>& corpus,
                            std::uint64_t fuel, const LabOptions& opts = {});

// Big-step comparison of outer∘inner against outer.  Per-term verdicts:
// "absorbed" (equal results), "result-differs", "status-differs" (exactly one
// side converges), "both-exhausted", "inconclusive" (resource limits).
// The two "-differs" kinds are counterexamples.
CorpusReport check_absorption(const StrategySpec& outer, const StrategySpec& inner, const std::vector<Term>& corpus,
                              std::uint64_t fuel, const LabOptions& opts = {});

struct FusionReport {
    ReadbackEncoding er;
    FuseResult fused;
    CorpusReport compare;              // staged vs fused, verdict counts
    std::size_t absorption_checked = 0; // hy∘ev = hy, both sides converged
    std::size_t absorption_failures = 0;
    std::size_t idempotence_checked = 0; // ev∘ev = ev
    std::size_t idempotence_failures = 0;
    std::size_t inconclusive = 0;
    bool passed() const { return compare.failures == 0 && absorption_failures == 0 && idempotence_failures == 0; }
};

// Throws DomainError when `er` is not a valid readback encoding.
FusionReport check_fusion_row(const ReadbackEncoding& er, const std::vector<Term>& corpus, std::uint64_t fuel,
                              const LabOptions& opts = {});

std::string report_to_json(const CorpusReport& r);
std::string fusion_report_to_json(const FusionReport& r);
std::string witness_to_text(const Witness& w);

} // namespace lamlab
