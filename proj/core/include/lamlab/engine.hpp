#pragma once

#include "lamlab/strategy.hpp"
#include "lamlab/term.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lamlab {

// One contraction.  `position` addresses the redex in the whole term at the
// moment of contraction.
struct TraceEvent {
    Path position;
    Term redex;      // App(Lam(x, B), N')
    Term contractum; // [N'/x]B
    std::size_t step_index = 0;
};

enum class Status : std::uint8_t {
    Converged,
    FuelExhausted,
    // Recursion depth or term size limit hit before fuel ran out.
    ResourceExhausted,
};

std::string to_string(Status s);

struct Outcome {
    Status status = Status::Converged;
    std::optional<Term> result; // present iff converged
    std::vector<TraceEvent> trace;
    std::uint64_t fuel_used = 0;
    std::string detail; // resource diagnostic, empty otherwise

    bool converged() const { return status == Status::Converged; }
};

struct EvalOptions {
    bool record_trace = true;
    std::uint64_t max_term_size = 200000;
    std::size_t max_depth = 100000;
};

// Fuel counts beta contractions.  Readback encodings share one budget across
// the eval and readback stages.  Throws DomainError for invalid specs and
// EvalError when readback meets a redex at the top of an application.
Outcome eval(const StrategySpec& spec, const Term& t, std::uint64_t fuel, const EvalOptions& opts = {});

// ---- derivation trees ------------------------------------------------------

enum class Rule : std::uint8_t { VAR, ABS, CON, NEU };
std::string to_string(Rule r);

struct DerivationTree {
    Rule rule = Rule::VAR;
    std::string evaluator; // which evaluator concluded this judgement
    Path position;
    Term input;
    Term output;
    // Identity premises are omitted; a readback-after-eval premise appears as
    // two consecutive premises.
    std::vector<DerivationTree> premises;
    // CON only.
    std::optional<Term> operand_result;
    std::optional<Term> contractum;
    std::optional<TraceEvent> event;
};

struct Derivation {
    Outcome outcome;
    // One root for eval-apply specs; two stacked roots (eval, then readback)
    // for readback encodings.  Empty unless the run converged.
    std::vector<DerivationTree> roots;
};

Derivation derivation_tree(const StrategySpec& spec, const Term& t, std::uint64_t fuel,
                           const EvalOptions& opts = {});

// In-order collection of the CON rules.
std::vector<TraceEvent> sequence_from_tree(const DerivationTree& tree);
std::vector<TraceEvent> sequence_from_tree(const std::vector<DerivationTree>& roots);

// M0 = t, M(i+1) = M(i) with trace[i].redex at trace[i].position replaced by
// trace[i].contractum.  Throws EvalError on a position/redex mismatch.
std::vector<Term> reconstruct_sequence(const Term& t, const std::vector<TraceEvent>& trace);

// ---- rendering -----------------------------------------------------------

std::string outcome_to_json(const std::string& spec, const Term& t, const Outcome& o);
std::string derivation_to_json(const std::string& spec, const Derivation& d);
// Indented text rendering, one judgement per line.
std::string derivation_to_text(const Derivation& d);
// Evaluation sequence with the contracted redex of each step in brackets.
std::string sequence_to_text(const Term& t, const std::vector<TraceEvent>& trace);

} // namespace lamlab
