#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lamlab {

// Interned identifier.  Cheap to copy and compare; the spelling lives in a
// process-wide, append-only table.
class Symbol {
public:
    Symbol() = default;
    static Symbol intern(std::string_view name);

    const std::string& str() const;
    // Value of the trailing decimal digits (0 when there are none).
    std::uint64_t trailing_number() const;
    // Spelling with trailing digits removed.
    std::string_view stem() const;

    std::uint32_t id() const { return id_; }
    bool valid() const { return id_ != 0; }

    friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
    friend auto operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

private:
    explicit Symbol(std::uint32_t id) : id_(id) {}
    std::uint32_t id_ = 0;
};

enum class TermKind : std::uint8_t { Var, Lam, App };

namespace detail {
struct Node;
}

// Sorted (by symbol id) set of free variables, shared between nodes.
using FreeSet = std::vector<Symbol>;

// Immutable lambda term.  Subterms are shared; copying a Term copies a pointer.
class Term {
public:
    Term() = default;

    static Term var(Symbol x);
    static Term var(std::string_view x) { return var(Symbol::intern(x)); }
    static Term lam(Symbol x, Term body);
    static Term lam(std::string_view x, Term body) { return lam(Symbol::intern(x), std::move(body)); }
    static Term app(Term fun, Term arg);

    bool null() const { return !node_; }
    TermKind kind() const;
    bool is_var() const { return kind() == TermKind::Var; }
    bool is_lam() const { return kind() == TermKind::Lam; }
    bool is_app() const { return kind() == TermKind::App; }
    bool is_redex() const { return is_app() && fun().is_lam(); }

    // Variable name (Var) or parameter (Lam).
    Symbol name() const;
    const Term& body() const; // Lam
    const Term& fun() const;  // App
    const Term& arg() const;  // App

    // Node count, saturating at UINT64_MAX.
    std::uint64_t size() const;
    const FreeSet& free_syms() const;
    bool has_free(Symbol x) const;
    bool closed() const { return free_syms().empty(); }

    const void* identity() const { return node_.get(); }

    // Structural (syntactic) equality.
    friend bool operator==(const Term& a, const Term& b);

private:
    explicit Term(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::Node> node_;
    friend struct detail::Node;
};

namespace detail {
struct Node {
    TermKind kind;
    Symbol sym;
    std::uint64_t size;
    Term a; // Lam body / App operator
    Term b; // App operand
    std::shared_ptr<const FreeSet> fv;
    ~Node();
};
} // namespace detail

// ---- paths ---------------------------------------------------------------

// Moves are ordered Fun < Arg < Body; canonical trace ordering relies on it.
enum class Move : std::uint8_t { Fun = 0, Arg = 1, Body = 2 };
using Path = std::vector<Move>;

std::string path_to_string(const Path& p); // "FAB" letters
Path path_from_string(std::string_view s);
bool path_is_prefix(const Path& prefix, const Path& p);
// Disjoint: neither is a prefix of the other.
bool paths_disjoint(const Path& a, const Path& b);
// Subterm at p; throws EvalError on an illegal move.
Term subterm_at(const Term& t, const Path& p);
Term replace_at(const Term& t, const Path& p, const Term& replacement);

// ---- syntax --------------------------------------------------------------

// Parses the concrete syntax; `#Name` references expand to builtins.
Term parse_term(std::string_view text);
std::string print_term(const Term& t);
// Print with the subterm at `mark` wrapped in brackets.
std::string print_term_marked(const Term& t, const Path& mark);

// ---- operations ----------------------------------------------------------

std::set<std::string> free_vars(const Term& t);

// [operand/x](body), capture-avoiding.
Term substitute(const Term& operand, Symbol x, const Term& body);
Term substitute(const Term& operand, std::string_view x, const Term& body);

// Stem of `base` followed by (largest trailing number in `used`) + 1.
std::string fresh_var(const std::set<std::string>& used, std::string_view base);
Symbol fresh_symbol(const std::vector<Symbol>& used, Symbol base);

bool alpha_eq(const Term& a, const Term& b);

// ---- final forms -----------------------------------------------------------

enum class FormClass : std::uint8_t { NF, WNF, HNF, WHNF, VHNF, Neutral, Redex };

class FormSet {
public:
    FormSet() = default;
    bool has(FormClass c) const { return bits_ & bit(c); }
    void add(FormClass c) { bits_ |= bit(c); }
    std::uint8_t bits() const { return bits_; }
    std::vector<FormClass> members() const;
    friend bool operator==(FormSet a, FormSet b) { return a.bits_ == b.bits_; }

private:
    static std::uint8_t bit(FormClass c) { return std::uint8_t(1u << unsigned(c)); }
    std::uint8_t bits_ = 0;
};

std::string to_string(FormClass c);
FormClass form_class_from_string(std::string_view s);
std::string to_string(FormSet s); // "{NF, WNF, ...}"

FormSet classify(const Term& t);

} // namespace lamlab

template <>
struct std::hash<lamlab::Symbol> {
    std::size_t operator()(lamlab::Symbol s) const noexcept { return s.id(); }
};
