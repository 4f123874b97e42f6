#pragma once

#include "lamlab/term.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lamlab {

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t size_max = 30;            // node count, >= 1
    std::vector<std::string> free_var_pool; // empty => closed terms
    double redex_bias = 0.5;               // chance an application gets an abstraction operator
};

// Deterministic per (cfg, n); generate(cfg, n) is a prefix of
// generate(cfg, n + k).  Throws DomainError when no term fits the bounds
// (size_max == 0, or size_max == 1 with an empty pool).
std::vector<Term> generate(const GenConfig& cfg, std::size_t n);

struct NamedTerm {
    std::string name;
    Term term;
};

// Illustration and counterexample terms with metavariables instantiated:
// R = (\a.a) u, Ri = (\a.a) ui, N = \w.w, B = x x.
const std::vector<NamedTerm>& paper_corpus();
// Throws DomainError for an unknown name.
Term paper_term(const std::string& name);

// One term per line; blank lines and `--` comments are skipped.  Parse errors
// carry the file line number.
std::vector<Term> parse_corpus(const std::string& text);
std::vector<Term> load_corpus(const std::string& path);
std::string format_corpus(const std::vector<Term>& terms);
// Names, when given, are written as a `-- name` comment above each term.
std::string format_corpus(const std::vector<NamedTerm>& terms);
void save_text(const std::string& path, const std::string& text);

} // namespace lamlab
