#include "lamlab/term.hpp"

#include "lamlab/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <limits>
#include <mutex>
#include <unordered_map>

namespace lamlab {

// ---- symbol table ----------------------------------------------------------

namespace {

struct SymEntry {
    std::string name;
    std::uint64_t trailing = 0;
    std::size_t stem_len = 0;
};

constexpr std::size_t kChunkBits = 12;
constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
constexpr std::size_t kMaxChunks = std::size_t{1} << 16;

// Append-only.  Entries are written under the mutex before their id escapes,
// so readers holding an id never race with the write of that entry.
struct SymbolTable {
    std::mutex mu;
    std::unordered_map<std::string, std::uint32_t> ids;
    std::atomic<SymEntry*> chunks[kMaxChunks] = {};
    std::uint32_t next = 1; // 0 is the invalid symbol
};

SymbolTable& table() {
    static SymbolTable* t = new SymbolTable; // never destroyed: symbols outlive statics
    return *t;
}

const SymEntry& entry(std::uint32_t id) {
    SymEntry* chunk = table().chunks[id >> kChunkBits].load(std::memory_order_acquire);
    return chunk[id & (kChunkSize - 1)];
}

SymEntry make_entry(std::string_view name) {
    SymEntry e;
    e.name = std::string(name);
    std::size_t i = name.size();
    while (i > 0 && name[i - 1] >= '0' && name[i - 1] <= '9') --i;
    e.stem_len = i;
    constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() / 16;
    for (std::size_t k = i; k < name.size(); ++k) {
        e.trailing = e.trailing * 10 + std::uint64_t(name[k] - '0');
        if (e.trailing > cap) {
            e.trailing = cap;
            break;
        }
    }
    return e;
}

} // namespace

Symbol Symbol::intern(std::string_view name) {
    SymbolTable& t = table();
    std::lock_guard lock(t.mu);
    auto it = t.ids.find(std::string(name));
    if (it != t.ids.end()) return Symbol(it->second);
    std::uint32_t id = t.next++;
    std::size_t c = id >> kChunkBits;
    if (c >= kMaxChunks) throw ResourceError("symbol table exhausted");
    SymEntry* chunk = t.chunks[c].load(std::memory_order_relaxed);
    if (!chunk) {
        chunk = new SymEntry[kChunkSize];
        t.chunks[c].store(chunk, std::memory_order_release);
    }
    chunk[id & (kChunkSize - 1)] = make_entry(name);
    t.ids.emplace(std::string(name), id);
    return Symbol(id);
}

const std::string& Symbol::str() const {
    static const std::string invalid = "<invalid>";
    return id_ ? entry(id_).name : invalid;
}

std::uint64_t Symbol::trailing_number() const { return id_ ? entry(id_).trailing : 0; }

std::string_view Symbol::stem() const {
    if (!id_) return {};
    const SymEntry& e = entry(id_);
    return std::string_view(e.name).substr(0, e.stem_len);
}

// ---- nodes -----------------------------------------------------------------

namespace {

using FvPtr = std::shared_ptr<const FreeSet>;

const FvPtr& empty_fv() {
    static const FvPtr e = std::make_shared<const FreeSet>();
    return e;
}

bool fv_contains(const FreeSet& s, Symbol x) { return std::binary_search(s.begin(), s.end(), x); }

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

} // namespace

detail::Node::~Node() {
    // Release children iteratively so that very deep terms cannot overflow the
    // stack on destruction.
    thread_local std::vector<Term> pending;
    thread_local bool draining = false;
    if (!a.null()) pending.push_back(std::move(a));
    if (!b.null()) pending.push_back(std::move(b));
    if (draining) return;
    draining = true;
    while (!pending.empty()) {
        Term t = std::move(pending.back());
        pending.pop_back();
    }
    draining = false;
}

Term Term::var(Symbol x) {
    auto n = std::make_shared<detail::Node>();
    n->kind = TermKind::Var;
    n->sym = x;
    n->size = 1;
    n->fv = std::make_shared<const FreeSet>(FreeSet{x});
    return Term(std::move(n));
}

Term Term::lam(Symbol x, Term body) {
    auto n = std::make_shared<detail::Node>();
    n->kind = TermKind::Lam;
    n->sym = x;
    n->size = sat_add(1, body.size());
    const FvPtr& bfv = body.node_->fv;
    if (!fv_contains(*bfv, x)) {
        n->fv = bfv;
    } else if (bfv->size() == 1) {
        n->fv = empty_fv();
    } else {
        auto s = std::make_shared<FreeSet>();
        s->reserve(bfv->size() - 1);
        for (Symbol y : *bfv)
            if (y != x) s->push_back(y);
        n->fv = std::move(s);
    }
    n->a = std::move(body);
    return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
    auto n = std::make_shared<detail::Node>();
    n->kind = TermKind::App;
    n->size = sat_add(1, sat_add(fun.size(), arg.size()));
    const FvPtr& f = fun.node_->fv;
    const FvPtr& g = arg.node_->fv;
    if (g->empty() || f == g || *f == *g) {
        n->fv = f;
    } else if (f->empty()) {
        n->fv = g;
    } else {
        auto s = std::make_shared<FreeSet>();
        s->reserve(f->size() + g->size());
        std::set_union(f->begin(), f->end(), g->begin(), g->end(), std::back_inserter(*s));
        if (s->size() == f->size())
            n->fv = f;
        else if (s->size() == g->size())
            n->fv = g;
        else
            n->fv = std::move(s);
    }
    n->a = std::move(fun);
    n->b = std::move(arg);
    return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
Symbol Term::name() const { return node_->sym; }
const Term& Term::body() const { return node_->a; }
const Term& Term::fun() const { return node_->a; }
const Term& Term::arg() const { return node_->b; }
std::uint64_t Term::size() const { return node_->size; }
const FreeSet& Term::free_syms() const { return *node_->fv; }
bool Term::has_free(Symbol x) const { return fv_contains(*node_->fv, x); }

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.null() || b.null()) return false;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
    case TermKind::Var:
        return a.name() == b.name();
    case TermKind::Lam:
        return a.name() == b.name() && a.body() == b.body();
    case TermKind::App:
        return a.fun() == b.fun() && a.arg() == b.arg();
    }
    return false;
}

// ---- paths -----------------------------------------------------------------

std::string path_to_string(const Path& p) {
    std::string s;
    s.reserve(p.size());
    for (Move m : p) s.push_back(m == Move::Fun ? 'F' : m == Move::Arg ? 'A' : 'B');
    return s;
}

Path path_from_string(std::string_view s) {
    Path p;
    p.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case 'F': p.push_back(Move::Fun); break;
        case 'A': p.push_back(Move::Arg); break;
        case 'B': p.push_back(Move::Body); break;
        default: throw DomainError(std::string("bad path letter '") + c + "'");
        }
    }
    return p;
}

bool path_is_prefix(const Path& prefix, const Path& p) {
    return prefix.size() <= p.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

bool paths_disjoint(const Path& a, const Path& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return true;
    return false;
}

namespace {
const Term& step(const Term& t, Move m) {
    switch (m) {
    case Move::Body:
        if (t.is_lam()) return t.body();
        break;
    case Move::Fun:
        if (t.is_app()) return t.fun();
        break;
    case Move::Arg:
        if (t.is_app()) return t.arg();
        break;
    }
    throw EvalError("illegal path move");
}
} // namespace

Term subterm_at(const Term& t, const Path& p) {
    const Term* cur = &t;
    for (Move m : p) cur = &step(*cur, m);
    return *cur;
}

Term replace_at(const Term& t, const Path& p, const Term& replacement) {
    // Walk down recording the spine, then rebuild bottom-up.
    std::vector<const Term*> spine;
    spine.reserve(p.size());
    const Term* cur = &t;
    for (Move m : p) {
        spine.push_back(cur);
        cur = &step(*cur, m);
    }
    Term acc = replacement;
    for (std::size_t i = p.size(); i-- > 0;) {
        const Term& parent = *spine[i];
        switch (p[i]) {
        case Move::Body: acc = Term::lam(parent.name(), std::move(acc)); break;
        case Move::Fun: acc = Term::app(std::move(acc), parent.arg()); break;
        case Move::Arg: acc = Term::app(parent.fun(), std::move(acc)); break;
        }
    }
    return acc;
}

// ---- printing --------------------------------------------------------------

namespace {

struct Printer {
    std::string out;
    const Path* mark = nullptr;

    // `depth` is the number of mark moves matched so far, or npos once the
    // current position has left the marked path.
    static constexpr std::size_t off = std::size_t(-1);

    std::size_t descend(std::size_t depth, Move m) const {
        if (!mark || depth == off || depth >= mark->size()) return off;
        return (*mark)[depth] == m ? depth + 1 : off;
    }
    bool marked(std::size_t depth) const { return mark && depth == mark->size(); }

    void term(const Term& t, std::size_t depth) {
        if (marked(depth)) {
            out += '[';
            term(t, off);
            out += ']';
            return;
        }
        switch (t.kind()) {
        case TermKind::Var:
            out += t.name().str();
            break;
        case TermKind::Lam:
            out += '\\';
            out += t.name().str();
            out += '.';
            term(t.body(), descend(depth, Move::Body));
            break;
        case TermKind::App:
            operand_or_operator(t.fun(), descend(depth, Move::Fun), true);
            out += ' ';
            operand_or_operator(t.arg(), descend(depth, Move::Arg), false);
            break;
        }
    }

    void operand_or_operator(const Term& t, std::size_t depth, bool is_operator) {
        bool parens = !marked(depth) && (is_operator ? t.is_lam() : !t.is_var());
        if (parens) out += '(';
        term(t, depth);
        if (parens) out += ')';
    }
};

} // namespace

std::string print_term(const Term& t) {
    Printer p;
    p.term(t, Printer::off);
    return std::move(p.out);
}

std::string print_term_marked(const Term& t, const Path& mark) {
    Printer p;
    p.mark = &mark;
    p.term(t, 0);
    return std::move(p.out);
}

// ---- free variables, substitution, freshness --------------------------------

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> s;
    for (Symbol x : t.free_syms()) s.insert(x.str());
    return s;
}

Symbol fresh_symbol(const std::vector<Symbol>& used, Symbol base) {
    std::uint64_t top = 0;
    for (Symbol s : used) top = std::max(top, s.trailing_number());
    std::string name(base.stem());
    name += std::to_string(top + 1);
    return Symbol::intern(name);
}

std::string fresh_var(const std::set<std::string>& used, std::string_view base) {
    std::vector<Symbol> syms;
    syms.reserve(used.size());
    for (const auto& u : used) syms.push_back(Symbol::intern(u));
    return fresh_symbol(syms, Symbol::intern(base)).str();
}

namespace {

Term subst_rec(const Term& n, Symbol x, const Term& b) {
    if (!b.has_free(x)) return b;
    switch (b.kind()) {
    case TermKind::Var:
        return n; // the only free variable of a Var is itself
    case TermKind::App: {
        Term f = subst_rec(n, x, b.fun());
        Term a = subst_rec(n, x, b.arg());
        return Term::app(std::move(f), std::move(a));
    }
    case TermKind::Lam: {
        Symbol y = b.name();
        if (!n.has_free(y)) return Term::lam(y, subst_rec(n, x, b.body()));
        // Rename the parameter: scan the free variables of all three inputs.
        std::vector<Symbol> used(n.free_syms().begin(), n.free_syms().end());
        used.insert(used.end(), b.free_syms().begin(), b.free_syms().end());
        used.push_back(x);
        Symbol z = fresh_symbol(used, y);
        Term renamed = subst_rec(Term::var(z), y, b.body());
        return Term::lam(z, subst_rec(n, x, renamed));
    }
    }
    return b;
}

} // namespace

Term substitute(const Term& operand, Symbol x, const Term& body) { return subst_rec(operand, x, body); }

Term substitute(const Term& operand, std::string_view x, const Term& body) {
    return subst_rec(operand, Symbol::intern(x), body);
}

// ---- alpha equivalence -----------------------------------------------------

namespace {

using Binders = std::vector<std::pair<Symbol, Symbol>>;

bool alpha_rec(const Term& a, const Term& b, Binders& env) {
    if (a.size() != b.size() || a.kind() != b.kind()) return false;
    if (a.identity() == b.identity() && (env.empty() || a.closed())) return true;
    switch (a.kind()) {
    case TermKind::Var: {
        Symbol x = a.name(), y = b.name();
        for (std::size_t i = env.size(); i-- > 0;) {
            if (env[i].first == x || env[i].second == y)
                return env[i].first == x && env[i].second == y;
        }
        return x == y;
    }
    case TermKind::Lam: {
        env.emplace_back(a.name(), b.name());
        bool r = alpha_rec(a.body(), b.body(), env);
        env.pop_back();
        return r;
    }
    case TermKind::App:
        return alpha_rec(a.fun(), b.fun(), env) && alpha_rec(a.arg(), b.arg(), env);
    }
    return false;
}

} // namespace

bool alpha_eq(const Term& a, const Term& b) {
    Binders env;
    return alpha_rec(a, b, env);
}

// ---- classification --------------------------------------------------------

std::string to_string(FormClass c) {
    switch (c) {
    case FormClass::NF: return "NF";
    case FormClass::WNF: return "WNF";
    case FormClass::HNF: return "HNF";
    case FormClass::WHNF: return "WHNF";
    case FormClass::VHNF: return "VHNF";
    case FormClass::Neutral: return "Neutral";
    case FormClass::Redex: return "Redex";
    }
    return "?";
}

FormClass form_class_from_string(std::string_view s) {
    for (auto c : {FormClass::NF, FormClass::WNF, FormClass::HNF, FormClass::WHNF, FormClass::VHNF,
                   FormClass::Neutral, FormClass::Redex})
        if (to_string(c) == s) return c;
    throw DomainError("unknown form class '" + std::string(s) + "'");
}

std::vector<FormClass> FormSet::members() const {
    std::vector<FormClass> v;
    for (auto c : {FormClass::NF, FormClass::WNF, FormClass::HNF, FormClass::WHNF, FormClass::VHNF,
                   FormClass::Neutral, FormClass::Redex})
        if (has(c)) v.push_back(c);
    return v;
}

std::string to_string(FormSet s) {
    std::string out = "{";
    bool first = true;
    for (FormClass c : s.members()) {
        if (!first) out += ", ";
        out += to_string(c);
        first = false;
    }
    return out + "}";
}

namespace {

constexpr std::uint8_t bitof(FormClass c) { return std::uint8_t(1u << unsigned(c)); }
constexpr std::uint8_t kNF = bitof(FormClass::NF), kWNF = bitof(FormClass::WNF),
                       kHNF = bitof(FormClass::HNF), kWHNF = bitof(FormClass::WHNF),
                       kVHNF = bitof(FormClass::VHNF), kNeutral = bitof(FormClass::Neutral),
                       kRedex = bitof(FormClass::Redex);

// Grammars:  NF   ::= λx.NF   | x NF*
//            WNF  ::= λx.Λ    | x WNF*
//            HNF  ::= λx.HNF  | x Λ*
//            WHNF ::= λx.Λ    | x Λ*
//            VHNF ::= λx.VHNF | x WNF*
std::uint8_t classify_bits(const Term& t) {
    switch (t.kind()) {
    case TermKind::Var:
        return kNF | kWNF | kHNF | kWHNF | kVHNF;
    case TermKind::Lam:
        return kWNF | kWHNF | (classify_bits(t.body()) & (kNF | kHNF | kVHNF));
    case TermKind::App: {
        std::uint8_t r = t.fun().is_lam() ? kRedex : 0;
        const Term* head = &t;
        while (head->is_app()) head = &head->fun();
        if (!head->is_var()) return r;
        r |= kNeutral | kHNF | kWHNF;
        bool nf = true, wnf = true;
        for (const Term* s = &t; s->is_app() && (nf || wnf); s = &s->fun()) {
            std::uint8_t c = classify_bits(s->arg());
            nf = nf && (c & kNF);
            wnf = wnf && (c & kWNF);
        }
        if (nf) r |= kNF;
        if (wnf) r |= kWNF | kVHNF;
        return r;
    }
    }
    return 0;
}

} // namespace

FormSet classify(const Term& t) {
    FormSet s;
    std::uint8_t bits = classify_bits(t);
    for (auto c : {FormClass::NF, FormClass::WNF, FormClass::HNF, FormClass::WHNF, FormClass::VHNF,
                   FormClass::Neutral, FormClass::Redex})
        if (bits & bitof(c)) s.add(c);
    return s;
}

} // namespace lamlab
