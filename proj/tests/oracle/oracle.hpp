#pragma once

// Small-step reference reducer on de Bruijn terms.  Shares nothing with the
// library's evaluator beyond reading Term structure on input.

#include "lamlab/term.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

struct Node;
using Ptr = std::shared_ptr<const Node>;

struct Node {
    enum Kind { Bound, Free, Lam, App } kind;
    int index = 0;    // Bound
    std::string name; // Free
    Ptr l, r;         // Lam body in l; App fun/arg in l/r
};

Ptr from_term(const lamlab::Term& t);
lamlab::Term to_term(const Ptr& p);
bool equal(const Ptr& a, const Ptr& b);
std::size_t size(const Ptr& p);

enum class Mode {
    Normal,   // leftmost-outermost, under binders
    Head,     // head redex only, under binders
    WeakHead, // head redex only, not under binders
};

// Path ("FAB" letters) of the next redex, or nullopt when in normal form for
// the mode.
std::optional<std::string> next_redex(const Ptr& p, Mode m);
Ptr contract_at(const Ptr& p, const std::string& path);

struct Run {
    bool halted = false; // reached a normal form within fuel
    Ptr result;
    std::vector<std::string> positions;
};

Run reduce(const Ptr& p, Mode m, std::size_t fuel);

// Normal-order normal form of t, or nullopt when fuel runs out.
std::optional<lamlab::Term> normalize(const lamlab::Term& t, std::size_t fuel);

} // namespace oracle
