#include "lamlab/builtins.hpp"

#include "lamlab/errors.hpp"

#include <charconv>
#include <map>
#include <mutex>

namespace lamlab {

namespace {

// Definitions may reference earlier entries with #Name.
const std::vector<std::pair<std::string, std::string>>& sources() {
    static const std::vector<std::pair<std::string, std::string>> defs = {
        {"I", R"(\x.x)"},
        {"Omega", R"((\x.x x) (\x.x x))"},
        {"Y", R"(\f.(\x.f (x x)) (\x.f (x x)))"},
        {"Z", R"(\f.(\x.f (\v.x x v)) (\x.f (\v.x x v)))"},
        {"True", R"(\t.\f.t)"},
        {"False", R"(\t.\f.f)"},
        {"Cond", R"(\p.\a.\b.p a b)"},
        {"IsZero", R"(\n.n (\x.#False) #True)"},
        {"One", R"(\f.\x.f x)"},
        {"Mult", R"(\m.\n.\f.m (n f))"},
        {"Pred", R"(\n.\f.\x.n (\g.\h.h (g f)) (\u.x) (\u.u))"},
        {"F_direct", R"(\f.\n.#Cond (#IsZero n) #One (#Mult n (f (#Pred n))))"},
        // The recursive call yields a thunk, so it is forced with the current
        // thunk's argument before multiplying.
        {"F_thunkLambda", R"(\f.\n.#Cond (#IsZero n) (\v.#One) (\v.#Mult n (f (#Pred n) v)))"},
        // Same shape without forcing the recursive thunk; kept to document why
        // the forcing application above is needed.
        {"F_thunkLambda_unforced", R"(\f.\n.#Cond (#IsZero n) (\v.#One) (\v.#Mult n (f (#Pred n))))"},
        {"F_cps", R"(\f.\n.#Cond (#IsZero n) (\k.k #One) (\k.f (#Pred n) (\x.k (#Mult n x))))"},
        {"F_delimcps", R"(\f.\n.\k.#Cond (#IsZero n) (k #One) (k (f (#Pred n) (#Mult n))))"},
    };
    return defs;
}

struct Cache {
    std::mutex mu;
    std::map<std::string, Term, std::less<>> terms;
};

Cache& cache() {
    static Cache c;
    return c;
}

} // namespace

Term church(std::uint64_t n) {
    Symbol f = Symbol::intern("f"), x = Symbol::intern("x");
    Term body = Term::var(x);
    Term fv = Term::var(f);
    for (std::uint64_t i = 0; i < n; ++i) body = Term::app(fv, body);
    return Term::lam(f, Term::lam(x, body));
}

long long church_value(const Term& t) {
    if (!t.is_lam() || !t.body().is_lam()) return -1;
    Symbol f = t.name(), x = t.body().name();
    if (f == x) return -1;
    long long n = 0;
    const Term* cur = &t.body().body();
    while (cur->is_app()) {
        if (!cur->fun().is_var() || cur->fun().name() != f) return -1;
        cur = &cur->arg();
        ++n;
    }
    return (cur->is_var() && cur->name() == x) ? n : -1;
}

Term builtin(std::string_view name) {
    constexpr std::string_view prefix = "church:";
    if (name.substr(0, prefix.size()) == prefix) {
        std::string_view digits = name.substr(prefix.size());
        std::uint64_t n = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || n > 100000)
            throw DomainError("bad Church numeral reference '" + std::string(name) + "'");
        return church(n);
    }
    Cache& c = cache();
    {
        std::lock_guard lock(c.mu);
        auto it = c.terms.find(name);
        if (it != c.terms.end()) return it->second;
    }
    for (const auto& [n, src] : sources()) {
        if (n == name) {
            Term t = parse_term(src); // may recurse into builtin() for #refs
            std::lock_guard lock(c.mu);
            c.terms.emplace(n, t);
            return t;
        }
    }
    throw DomainError("unknown builtin '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
    std::vector<std::string> v;
    for (const auto& [n, src] : sources()) v.push_back(n);
    v.push_back("church:N");
    return v;
}

} // namespace lamlab
