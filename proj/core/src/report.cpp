#include "lamlab/report.hpp"

#include "lamlab/deep_stack.hpp"

#include "json.hpp"

namespace lamlab {

using nlohmann::json;

namespace {

json forms_json(FormSet s) {
    json a = json::array();
    for (FormClass c : s.members()) a.push_back(to_string(c));
    return a;
}

json alias_json(const StrategySpec& s) {
    auto a = alias_of(s);
    return a ? json(*a) : json(nullptr);
}

} // namespace

std::string classification_to_json(const Term& t, FormSet forms) {
    std::string s;
    run_on_deep_stack([&] { s = json{{"term", print_term(t)}, {"forms", forms_json(forms)}}.dump(); });
    return s;
}

std::string validation_to_json(const StrategySpec& s, const ValidationReport& r) {
    json d = json::array();
    for (const auto& x : r.diagnostics) d.push_back({{"proviso", x.proviso}, {"message", x.message}});
    return json{{"spec", print_spec(s)}, {"alias", alias_json(s)}, {"verdict", to_string(r.verdict)}, {"diagnostics", d}}
        .dump();
}

std::string fuse_to_json(const ReadbackEncoding& er, const FuseResult& r) {
    return json{{"readback", print_spec(er)},
                {"hybrid", print_spec(r.hybrid)},
                {"alias", alias_json(r.hybrid)},
                {"mcr", r.mcr}}
        .dump();
}

std::string defuse_to_json(const HybridEncoding& hy, const std::vector<ReadbackEncoding>& ers) {
    json a = json::array();
    for (const auto& er : ers) a.push_back(print_spec(er));
    return json{{"hybrid", print_spec(hy)}, {"alias", alias_json(hy)}, {"readbacks", a}}.dump();
}

std::string catalogue_to_json(const std::vector<CatalogueEntry>& rows) {
    json a = json::array();
    for (const auto& e : rows) {
        json j{{"alias", e.alias.empty() ? json(nullptr) : json(e.alias)},
               {"name", e.name},
               {"spec", print_spec(e.spec)},
               {"kind", to_string(e.kind)},
               {"result", to_string(e.result)},
               {"mcr", e.mcr}};
        j["equivalent"] = e.equivalent ? json(print_spec(*e.equivalent)) : json(nullptr);
        j["intermediate"] = e.intermediate ? json(to_string(*e.intermediate)) : json(nullptr);
        a.push_back(std::move(j));
    }
    return a.dump();
}

std::string corpus_to_json(const std::vector<Term>& terms, const std::vector<std::string>& names) {
    std::string s;
    run_on_deep_stack([&] {
        json a = json::array();
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i < names.size())
                a.push_back({{"name", names[i]}, {"term", print_term(terms[i])}});
            else
                a.push_back(print_term(terms[i]));
        }
        s = json{{"n", terms.size()}, {"terms", a}}.dump();
    });
    return s;
}

std::string fuse_to_text(const FuseResult& r) {
    return display_spec(r.hybrid) + ", mcr=" + (r.mcr ? "true" : "false");
}

} // namespace lamlab
