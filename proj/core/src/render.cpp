#include "lamlab/deep_stack.hpp"
#include "lamlab/engine.hpp"

#include "json.hpp"

namespace lamlab {

using nlohmann::json;

std::string outcome_to_json(const std::string& spec, const Term& t, const Outcome& o) {
    json j;
    run_on_deep_stack([&] {
        j["spec"] = spec;
        j["term"] = print_term(t);
        j["status"] = to_string(o.status);
        j["result"] = o.result ? json(print_term(*o.result)) : json(nullptr);
        j["fuel_used"] = o.fuel_used;
        json tr = json::array();
        for (const auto& e : o.trace)
            tr.push_back({{"i", e.step_index},
                          {"path", path_to_string(e.position)},
                          {"redex", print_term(e.redex)},
                          {"contractum", print_term(e.contractum)}});
        j["trace"] = std::move(tr);
        if (!o.detail.empty()) j["detail"] = o.detail;
    });
    return j.dump();
}

namespace {

json tree_json(const DerivationTree& d) {
    json j{{"rule", to_string(d.rule)},
           {"evaluator", d.evaluator},
           {"path", path_to_string(d.position)},
           {"input", print_term(d.input)},
           {"output", print_term(d.output)}};
    if (d.rule == Rule::CON) {
        j["operand_result"] = print_term(*d.operand_result);
        j["contractum"] = print_term(*d.contractum);
        j["step"] = d.event->step_index;
    }
    json prem = json::array();
    for (const auto& p : d.premises) prem.push_back(tree_json(p));
    j["premises"] = std::move(prem);
    return j;
}

void tree_text(const DerivationTree& d, int indent, std::string& out) {
    out.append(std::size_t(indent) * 2, ' ');
    out += to_string(d.rule) + " " + d.evaluator + " @" + (d.position.empty() ? "." : path_to_string(d.position)) +
           "  " + print_term(d.input) + "  =>  " + print_term(d.output) + "\n";
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
        if (d.rule == Rule::CON && i + 1 == d.premises.size()) {
            out.append(std::size_t(indent + 1) * 2, ' ');
            out += "contract #" + std::to_string(d.event->step_index + 1) + ": " + print_term(d.event->redex) +
                   "  ->  " + print_term(*d.contractum) + "\n";
        }
        tree_text(d.premises[i], indent + 1, out);
    }
}

} // namespace

std::string derivation_to_json(const std::string& spec, const Derivation& d) {
    json j;
    run_on_deep_stack([&] {
        j["spec"] = spec;
        j["status"] = to_string(d.outcome.status);
        j["fuel_used"] = d.outcome.fuel_used;
        json stages = json::array();
        for (const auto& r : d.roots) stages.push_back(tree_json(r));
        j["stages"] = std::move(stages);
        if (!d.outcome.detail.empty()) j["detail"] = d.outcome.detail;
    });
    return j.dump();
}

std::string derivation_to_text(const Derivation& d) {
    std::string out;
    run_on_deep_stack([&] {
        if (!d.outcome.converged()) {
            out = "no derivation: " + to_string(d.outcome.status) + " after " + std::to_string(d.outcome.fuel_used) +
                  " contractions\n";
            return;
        }
        for (std::size_t i = 0; i < d.roots.size(); ++i) {
            if (d.roots.size() > 1) out += i == 0 ? "-- eval stage\n" : "-- readback stage\n";
            tree_text(d.roots[i], 0, out);
        }
    });
    return out;
}

std::string sequence_to_text(const Term& t, const std::vector<TraceEvent>& trace) {
    std::string out;
    run_on_deep_stack([&] {
        std::vector<Term> seq = reconstruct_sequence(t, trace);
        for (std::size_t i = 0; i < seq.size(); ++i) {
            out += std::to_string(i) + ": ";
            out += i < trace.size() ? print_term_marked(seq[i], trace[i].position) : print_term(seq[i]);
            out += "\n";
        }
    });
    return out;
}

} // namespace lamlab
