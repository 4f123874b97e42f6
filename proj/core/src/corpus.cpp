#include "lamlab/corpus.hpp"

#include "lamlab/errors.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace lamlab {

namespace {

const char* const kBinders[] = {"x", "y", "z", "w", "v"};

class Generator {
public:
    explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
        for (const auto& p : cfg.free_var_pool) pool_.push_back(Symbol::intern(p));
    }

    Term term() {
        std::size_t min = pool_.empty() ? 2 : 1;
        std::size_t budget = std::uniform_int_distribution<std::size_t>(min, cfg_.size_max)(rng_);
        return gen(budget);
    }

private:
    bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

    // Smallest term buildable in the current scope.
    std::size_t min_size() const { return scope_.empty() && pool_.empty() ? 2 : 1; }

    Term variable() {
        std::vector<Symbol> names = pool_;
        for (Symbol s : scope_)
            if (std::find(names.begin(), names.end(), s) == names.end()) names.push_back(s);
        return Term::var(names[pick(names.size())]);
    }

    Term lambda(std::size_t budget) {
        Symbol x = Symbol::intern(kBinders[pick(std::size(kBinders))]);
        scope_.push_back(x);
        Term body = gen(budget - 1);
        scope_.pop_back();
        return Term::lam(x, std::move(body));
    }

    // Produces a term of at most `budget` nodes; budget >= min_size().
    Term gen(std::size_t budget) {
        const std::size_t m = min_size();
        bool can_var = m == 1;
        bool can_lam = budget >= 2;
        bool can_app = budget >= 1 + 2 * m;
        // Leaves become likelier as the budget shrinks.
        double depleted = 1.0 - double(budget) / double(cfg_.size_max);
        double w_var = can_var ? 0.3 + 0.7 * depleted * depleted : 0.0;
        double w_lam = can_lam ? 0.35 : 0.0;
        double w_app = can_app ? 0.35 : 0.0;
        double r = std::uniform_real_distribution<double>(0.0, w_var + w_lam + w_app)(rng_);
        if (r < w_var) return variable();
        if (r < w_var + w_lam) return lambda(budget);

        std::size_t rest = budget - 1;
        bool redex = rest >= 2 + m && coin(cfg_.redex_bias);
        std::size_t fun_min = redex ? 2 : m;
        std::size_t fun_budget = std::uniform_int_distribution<std::size_t>(fun_min, rest - m)(rng_);
        Term f = redex ? lambda(fun_budget) : gen(fun_budget);
        Term a = gen(rest - f.size());
        return Term::app(std::move(f), std::move(a));
    }

    const GenConfig& cfg_;
    std::mt19937_64 rng_;
    std::vector<Symbol> pool_;
    std::vector<Symbol> scope_;
};

} // namespace

std::vector<Term> generate(const GenConfig& cfg, std::size_t n) {
    if (cfg.size_max == 0) throw DomainError("size_max must be at least 1");
    if (cfg.size_max == 1 && cfg.free_var_pool.empty())
        throw DomainError("no closed term has a single node; raise size_max or give a variable pool");
    if (!(cfg.redex_bias >= 0.0 && cfg.redex_bias <= 1.0)) throw DomainError("redex_bias must lie in [0,1]");
    Generator g(cfg);
    std::vector<Term> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(g.term());
    return out;
}

const std::vector<NamedTerm>& paper_corpus() {
    static const std::vector<NamedTerm> terms = [] {
        std::vector<std::pair<const char*, const char*>> src = {
            {"sestoft-fig-example", R"((\x.#I z) (#I z))"},
            {"strictness-counterexample", R"((\x.y) #Omega)"},
            {"strictness-neutral", R"((\y.z) (x (\w.w)))"},
            {"sis-counterexample", R"((\k.k #Omega) (\x.y))"},
            {"ao-counterexample", R"((\x.y) (\k.k #Omega))"},
            {"bv-isi-counterexample", R"((\x.y) (x #Omega))"},
            {"ho-isi-counterexample", R"((\x.y) (\x.#Omega))"},
            {"neutral-two-redexes", R"(x ((\a.a) u) ((\b.b) v))"},
            {"mcr-neutral", R"(x (\x.(\a.a) u1) ((\a.a) u2) ((\a.a) u3))"},
            {"his-counterexample", R"(x (x ((\a.a) u)))"},
            {"strict-subsidiary-counterexample", R"((\x.x x) (x ((\a.a) u)) (\w.w))"},
            {"spine-copy", R"((\x.(\y.\z.y) x x) (\w.w))"},
            {"spine-y", R"((\x.#Y x) (\w.w))"},
        };
        std::vector<NamedTerm> out;
        for (auto [name, text] : src) out.push_back({name, parse_term(text)});
        return out;
    }();
    return terms;
}

Term paper_term(const std::string& name) {
    for (const auto& nt : paper_corpus())
        if (nt.name == name) return nt.term;
    throw DomainError("unknown corpus term: " + name);
}

std::vector<Term> parse_corpus(const std::string& text) {
    std::vector<Term> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line.compare(first, 2, "--") == 0) continue;
        try {
            out.push_back(parse_term(line));
        } catch (const ParseError& e) {
            throw ParseError(e.message(), lineno, e.column());
        }
    }
    return out;
}

std::vector<Term> load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str());
}

std::string format_corpus(const std::vector<Term>& terms) {
    std::string out;
    for (const auto& t : terms) out += print_term(t) + "\n";
    return out;
}

std::string format_corpus(const std::vector<NamedTerm>& terms) {
    std::string out;
    for (const auto& t : terms) out += "-- " + t.name + "\n" + print_term(t.term) + "\n";
    return out;
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + path);
    out << text;
    if (!out) throw DomainError("write failed: " + path);
}

} // namespace lamlab
