#pragma once

#include "lamlab/term.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lamlab {

// Parameter value of an evaluator slot.  Uniform triples use I/S only;
// hybrid triples may also use H (recursive call on the hybrid itself).
enum class Slot : std::uint8_t { I, S, H };

// (la, ar1, ar2); op1 is implicitly the evaluator itself, op2 the identity.
struct UniformTriple {
    Slot la = Slot::I, ar1 = Slot::I, ar2 = Slot::I;
    friend bool operator==(const UniformTriple&, const UniformTriple&) = default;
};

// hybrid triple over {I,S,H} on top of a uniform subsidiary.  op1 is the
// subsidiary, op2 the hybrid.
struct HybridEncoding {
    Slot la = Slot::I, ar1 = Slot::I, ar2 = Slot::I;
    UniformTriple sub;
    friend bool operator==(const HybridEncoding&, const HybridEncoding&) = default;
};

// Readback slot: identity, eval, readback, readback after eval.
enum class RbSlot : std::uint8_t { I, E, R, RE };

// (la, ar2) pair over an eval triple; the readback's operator slot is
// implicitly R and there is no contraction rule.
struct ReadbackEncoding {
    RbSlot la = RbSlot::I, ar2 = RbSlot::I;
    UniformTriple eval;
    friend bool operator==(const ReadbackEncoding&, const ReadbackEncoding&) = default;
};

using StrategySpec = std::variant<UniformTriple, HybridEncoding, ReadbackEncoding>;

// Accepts encodings ("ISS", "HIH<>III", "(RE)R.ISS") and aliases ("bv", "no",
// "byValue").  Uniform aliases are also accepted inside encodings
// ("HIS<>bn").  Throws ParseError / DomainError.
StrategySpec parse_spec(std::string_view text);
std::string print_spec(const StrategySpec& s);
std::optional<std::string> alias_of(const StrategySpec& s);
// "HSH<>ISS (sn)" or just the encoding when there is no alias.
std::string display_spec(const StrategySpec& s);

char slot_char(Slot s);
std::string rb_slot_string(RbSlot s);
std::string print_triple(const UniformTriple& t);

// ---- validation ----------------------------------------------------------

enum class Verdict : std::uint8_t {
    ValidUniform,
    ValidHybridBalanced,
    ValidHybridUnbalanced,
    ValidReadback,
    Spurious,
    DegenerateUniform,
    Invalid,
};

std::string to_string(Verdict v);

struct Diagnostic {
    std::string proviso; // "U1", "H2", "H3", "ER2", ...
    std::string message;
};

struct ValidationReport {
    Verdict verdict = Verdict::Invalid;
    std::vector<Diagnostic> diagnostics;
    bool usable() const { return verdict != Verdict::Invalid; }
};

ValidationReport validate(const StrategySpec& s);

// ---- fusion --------------------------------------------------------------

struct FuseResult {
    HybridEncoding hybrid;
    bool mcr = false; // one-step equivalent only modulo commuting redexes
};

// Throws DomainError when the encoding is not a valid readback.
FuseResult fuse(const ReadbackEncoding& er);
// All valid readback encodings fusing to `hy`; empty when `hy` is unbalanced
// or otherwise outside the image of fuse.
std::vector<ReadbackEncoding> defuse(const HybridEncoding& hy);

// ---- catalogue -----------------------------------------------------------

struct CatalogueEntry {
    std::string alias;          // may be empty
    std::string name;           // descriptive name, may be empty
    StrategySpec spec;
    Verdict kind;               // expected validation verdict
    FormClass result;           // final-form column
    // Readback rows: the listed one-step equivalent hybrid, intermediate form
    // and mcr mark.  Hybrid rows: equivalent noted in the table, if any.
    std::optional<StrategySpec> equivalent;
    std::optional<FormClass> intermediate;
    bool mcr = false;
};

const std::vector<CatalogueEntry>& catalogue();
// Final form of a catalogued spec (nullopt when not in the catalogue).
std::optional<FormClass> result_form(const StrategySpec& s);

} // namespace lamlab
