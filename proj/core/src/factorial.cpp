#include "lamlab/factorial.hpp"

#include "lamlab/builtins.hpp"
#include "lamlab/deep_stack.hpp"
#include "lamlab/errors.hpp"

#include "json.hpp"

namespace lamlab {

std::string to_string(FactorialEncoding e) {
    switch (e) {
    case FactorialEncoding::Direct: return "direct";
    case FactorialEncoding::ThunkLambda: return "thunk-lambda";
    case FactorialEncoding::DelimCps: return "delimited-cps";
    }
    return "?";
}

namespace {

struct Row {
    StrategySpec spec;
    FactorialEncoding enc;
};

const std::vector<Row>& rows() {
    static const std::vector<Row> r = [] {
        std::vector<Row> out;
        for (const char* s : {"bn", "hr", "he", "no", "hn", "IIS"})
            out.push_back({parse_spec(s), FactorialEncoding::Direct});
        for (const char* s : {"bv", "am", "sn", "ha"}) out.push_back({parse_spec(s), FactorialEncoding::ThunkLambda});
        for (const char* s : {"ho", "so", "bs"}) out.push_back({parse_spec(s), FactorialEncoding::DelimCps});
        return out;
    }();
    return r;
}

std::uint64_t fact(unsigned n) {
    std::uint64_t r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

std::optional<FactorialEncoding> factorial_encoding(const StrategySpec& s) {
    for (const auto& row : rows())
        if (row.spec == s) return row.enc;
    return std::nullopt;
}

Term factorial_term(FactorialEncoding e, unsigned n) {
    Term num = church(n);
    switch (e) {
    case FactorialEncoding::Direct:
        return Term::app(Term::app(builtin("Y"), builtin("F_direct")), num);
    case FactorialEncoding::ThunkLambda:
        // The recursion yields a thunk; I forces the outermost one.
        return Term::app(Term::app(Term::app(builtin("Z"), builtin("F_thunkLambda")), num), builtin("I"));
    case FactorialEncoding::DelimCps:
        // I is the initial continuation.
        return Term::app(Term::app(Term::app(builtin("Y"), builtin("F_delimcps")), num), builtin("I"));
    }
    throw DomainError("unknown factorial encoding");
}

FactorialReport demo_factorial(const StrategySpec& s, unsigned n, std::uint64_t fuel) {
    auto enc = factorial_encoding(s);
    if (!enc) throw DomainError("no factorial encoding prescribed for " + display_spec(s));
    if (n > 8) throw DomainError("factorial demo supports n <= 8");
    auto form = result_form(s);
    if (!form) throw DomainError("no result form catalogued for " + display_spec(s));

    FactorialReport r;
    r.strategy = display_spec(s);
    r.n = n;
    r.encoding = *enc;
    r.term = factorial_term(*enc, n);
    r.expected = fact(n);
    r.expected_form = *form;
    r.full_reducing = *form == FormClass::NF;

    EvalOptions opts;
    opts.record_trace = false;
    r.outcome = eval(s, r.term, fuel, opts);
    if (r.outcome.converged()) {
        run_on_deep_stack([&] {
            r.forms = classify(*r.outcome.result);
            r.value = church_value(*r.outcome.result);
        });
        if (r.full_reducing)
            r.success = r.value >= 0 && std::uint64_t(r.value) == r.expected;
        else
            r.success = r.forms.has(r.expected_form);
    }
    return r;
}

std::string factorial_report_to_json(const FactorialReport& r) {
    using nlohmann::json;
    std::string s;
    run_on_deep_stack([&] {
        json j{{"strategy", r.strategy},
               {"n", r.n},
               {"encoding", to_string(r.encoding)},
               {"term", print_term(r.term)},
               {"status", to_string(r.outcome.status)},
               {"fuel_used", r.outcome.fuel_used},
               {"full_reducing", r.full_reducing},
               {"expected", r.expected},
               {"expected_form", to_string(r.expected_form)},
               {"success", r.success}};
        j["result"] = r.outcome.result ? json(print_term(*r.outcome.result)) : json(nullptr);
        j["value"] = r.value >= 0 ? json(r.value) : json(nullptr);
        json forms = json::array();
        for (FormClass c : r.forms.members()) forms.push_back(to_string(c));
        j["forms"] = std::move(forms);
        s = j.dump();
    });
    return s;
}

} // namespace lamlab
