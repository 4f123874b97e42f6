// Generic eval-apply and readback evaluators.
//
// A spec compiles to a small graph of evaluator nodes.  Each slot of a node
// refers to another node (identity, the node itself, a subsidiary, ...), so
// one interpreter loop serves every uniform, hybrid and readback encoding.
#include "lamlab/engine.hpp"

#include "lamlab/deep_stack.hpp"
#include "lamlab/errors.hpp"

#include <cassert>
#include <unordered_set>

namespace lamlab {

std::string to_string(Status s) {
    switch (s) {
    case Status::Converged: return "converged";
    case Status::FuelExhausted: return "fuel-exhausted";
    case Status::ResourceExhausted: return "resource-exhausted";
    }
    return "?";
}

std::string to_string(Rule r) {
    switch (r) {
    case Rule::VAR: return "VAR";
    case Rule::ABS: return "ABS";
    case Rule::CON: return "CON";
    case Rule::NEU: return "NEU";
    }
    return "?";
}

namespace {

struct EvNode {
    enum Kind { Id, EvalApply, Readback, Compose } kind = Id;
    // EvalApply: la op1 ar1 op2 ar2.  Readback: la ar2.
    int la = 0, op1 = 0, ar1 = 0, op2 = 0, ar2 = 0;
    // Compose: run `inner`, then `outer`.
    int inner = 0, outer = 0;
    std::string label;

    static EvNode of(Kind k) {
        EvNode n;
        n.kind = k;
        return n;
    }
};

struct Program {
    std::vector<EvNode> nodes{EvNode{}}; // node 0 is the identity
    int root = 0;

    int add(EvNode n) {
        nodes.push_back(std::move(n));
        return int(nodes.size()) - 1;
    }

    std::string label_of(const StrategySpec& s) {
        if (auto a = alias_of(s)) return *a;
        return print_spec(s);
    }

    int uniform(const UniformTriple& u) {
        int self = add(EvNode::of(EvNode::EvalApply));
        EvNode& n = nodes[self];
        auto pick = [&](Slot s) { return s == Slot::S ? self : 0; };
        n.la = pick(u.la);
        n.op1 = self;
        n.ar1 = pick(u.ar1);
        n.op2 = 0;
        n.ar2 = pick(u.ar2);
        n.label = label_of(u);
        return self;
    }

    int hybrid(const HybridEncoding& h) {
        int sub = uniform(h.sub);
        int self = add(EvNode::of(EvNode::EvalApply));
        EvNode& n = nodes[self];
        auto pick = [&](Slot s) { return s == Slot::I ? 0 : s == Slot::S ? sub : self; };
        n.la = pick(h.la);
        n.op1 = sub;
        n.ar1 = pick(h.ar1);
        n.op2 = self;
        n.ar2 = pick(h.ar2);
        n.label = label_of(h);
        return self;
    }

    int readback(const ReadbackEncoding& r) {
        int ev = uniform(r.eval);
        int rb = add(EvNode::of(EvNode::Readback));
        int staged = add(EvNode::of(EvNode::Compose));
        nodes[staged].inner = ev;
        nodes[staged].outer = rb;
        auto pick = [&](RbSlot s) {
            switch (s) {
            case RbSlot::I: return 0;
            case RbSlot::E: return ev;
            case RbSlot::R: return rb;
            case RbSlot::RE: return staged;
            }
            return 0;
        };
        nodes[rb].la = pick(r.la);
        nodes[rb].ar2 = pick(r.ar2);
        nodes[rb].label = "rb:" + rb_slot_string(r.la) + rb_slot_string(r.ar2);
        nodes[staged].label = label_of(r);
        return staged;
    }

    static Program compile(const StrategySpec& s) {
        ValidationReport rep = validate(s);
        if (!rep.usable()) {
            std::string msg = "invalid strategy " + print_spec(s) + ":";
            for (const auto& d : rep.diagnostics) msg += " [" + d.proviso + "] " + d.message + ";";
            throw DomainError(msg);
        }
        Program p;
        p.root = std::visit(
            [&](const auto& v) -> int {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, UniformTriple>) return p.uniform(v);
                else if constexpr (std::is_same_v<T, HybridEncoding>) return p.hybrid(v);
                else return p.readback(v);
            },
            s);
        return p;
    }
};

struct FuelOut {};

using Sink = std::vector<DerivationTree>;

class Machine {
public:
    Machine(const Program& p, std::uint64_t fuel, const EvalOptions& o) : prog_(p), fuel_(fuel), opts_(o) {}

    Term run(int id, const Term& t, Sink* sink) {
        const EvNode& n = prog_.nodes[id];
        switch (n.kind) {
        case EvNode::Id:
            return t;
        case EvNode::Compose: {
            Term mid = run(n.inner, t, sink);
            return run(n.outer, mid, sink);
        }
        case EvNode::EvalApply:
        case EvNode::Readback:
            return memo_run(id, t, sink);
        }
        return t;
    }

    std::vector<TraceEvent> trace;
    std::uint64_t used = 0;

private:
    const Program& prog_;
    std::uint64_t fuel_;
    const EvalOptions& opts_;
    Path path_;
    std::size_t depth_ = 0;

    struct DepthGuard {
        explicit DepthGuard(Machine& m) : m_(m) {
            if (++m_.depth_ > m_.opts_.max_depth) {
                --m_.depth_;
                throw ResourceError("recursion depth limit (" + std::to_string(m_.opts_.max_depth) + ") exceeded");
            }
        }
        ~DepthGuard() { --m_.depth_; }
        Machine& m_;
    };

    Term sub(int id, const Term& t, Move m, Sink* sink) {
        if (id == 0) return t;
        path_.push_back(m);
        Term r = run(id, t, sink);
        path_.pop_back();
        return r;
    }

    // Applications an evaluator node has already left untouched (no steps,
    // same term).  Hybrids re-run their subsidiary over spines it has just
    // normalised; without this a neutral spine costs quadratic time.  Skipped
    // while building derivation trees, which need every premise.
    struct FixKey {
        int id;
        const void* term;
        bool operator==(const FixKey&) const = default;
    };
    struct FixHash {
        std::size_t operator()(const FixKey& k) const noexcept {
            return std::hash<const void*>{}(k.term) * 31 + std::size_t(k.id);
        }
    };
    std::unordered_set<FixKey, FixHash> fixed_;
    std::vector<Term> pinned_; // keeps memoised identities alive

    Term memo_run(int id, const Term& t, Sink* sink) {
        const bool memo = !sink && t.is_app();
        if (memo && fixed_.count({id, t.identity()})) return t;
        const std::uint64_t before = used;
        Term r = prog_.nodes[id].kind == EvNode::EvalApply ? eval_apply(id, t, sink) : readback(id, t, sink);
        if (memo && used == before && r.identity() == t.identity()) {
            fixed_.insert({id, t.identity()});
            pinned_.push_back(t);
        }
        return r;
    }

    void check_size(const Term& t) const {
        if (t.size() > opts_.max_term_size)
            throw ResourceError("term size limit (" + std::to_string(opts_.max_term_size) + ") exceeded");
    }

    static DerivationTree* open(Sink* sink, Rule rule, const std::string& label, const Path& pos, const Term& in) {
        if (!sink) return nullptr;
        DerivationTree& d = sink->emplace_back();
        d.rule = rule;
        d.evaluator = label;
        d.position = pos;
        d.input = in;
        return &d;
    }

    Term rebuild_app(const Term& t, Term f, Term a) const {
        if (f.identity() == t.fun().identity() && a.identity() == t.arg().identity()) return t;
        Term r = Term::app(std::move(f), std::move(a));
        check_size(r);
        return r;
    }

    Term rebuild_lam(const Term& t, Term b) const {
        if (b.identity() == t.body().identity()) return t;
        Term r = Term::lam(t.name(), std::move(b));
        check_size(r);
        return r;
    }

    Term eval_apply(int id, Term t, Sink* sink) {
        DepthGuard guard(*this);
        const EvNode& n = prog_.nodes[id];
        // CON nodes whose contractum evaluation is still running; their output
        // is the final result of this loop.
        std::vector<DerivationTree*> chain;
        auto finish = [&](DerivationTree* d, const Term& r) {
            if (d) d->output = r;
            for (DerivationTree* c : chain) c->output = r;
            return r;
        };
        for (;;) {
            switch (t.kind()) {
            case TermKind::Var: {
                DerivationTree* d = open(sink, Rule::VAR, n.label, path_, t);
                return finish(d, t);
            }
            case TermKind::Lam: {
                DerivationTree* d = open(sink, Rule::ABS, n.label, path_, t);
                Term b = sub(n.la, t.body(), Move::Body, d ? &d->premises : nullptr);
                return finish(d, rebuild_lam(t, std::move(b)));
            }
            case TermKind::App: {
                // Rule kind is known only after the operator premise.
                DerivationTree* d = open(sink, Rule::NEU, n.label, path_, t);
                Sink* prem = d ? &d->premises : nullptr;
                Term m = sub(n.op1, t.fun(), Move::Fun, prem);
                if (m.is_lam()) {
                    Term a = sub(n.ar1, t.arg(), Move::Arg, prem);
                    if (used >= fuel_) throw FuelOut{};
                    Term redex = (m.identity() == t.fun().identity() && a.identity() == t.arg().identity())
                                     ? t
                                     : Term::app(m, a);
                    Term c = substitute(a, m.name(), m.body());
                    check_size(c);
                    TraceEvent ev{path_, redex, c, std::size_t(used)};
                    ++used;
                    if (d) {
                        d->rule = Rule::CON;
                        d->operand_result = a;
                        d->contractum = c;
                        d->event = ev;
                        chain.push_back(d);
                        sink = &d->premises;
                    }
                    if (opts_.record_trace) trace.push_back(std::move(ev));
                    t = std::move(c);
                    continue; // contractum evaluated at the redex's position
                }
                Term f = sub(n.op2, m, Move::Fun, prem);
                Term a = sub(n.ar2, t.arg(), Move::Arg, prem);
                return finish(d, rebuild_app(t, std::move(f), std::move(a)));
            }
            }
        }
    }

    Term readback(int id, const Term& t, Sink* sink) {
        DepthGuard guard(*this);
        const EvNode& n = prog_.nodes[id];
        switch (t.kind()) {
        case TermKind::Var: {
            DerivationTree* d = open(sink, Rule::VAR, n.label, path_, t);
            if (d) d->output = t;
            return t;
        }
        case TermKind::Lam: {
            DerivationTree* d = open(sink, Rule::ABS, n.label, path_, t);
            Term b = sub(n.la, t.body(), Move::Body, d ? &d->premises : nullptr);
            Term r = rebuild_lam(t, std::move(b));
            if (d) d->output = r;
            return r;
        }
        case TermKind::App: {
            if (t.fun().is_lam()) throw EvalError("readback applied to non-intermediate form");
            DerivationTree* d = open(sink, Rule::NEU, n.label, path_, t);
            Sink* prem = d ? &d->premises : nullptr;
            Term f = sub(id, t.fun(), Move::Fun, prem);
            Term a = sub(n.ar2, t.arg(), Move::Arg, prem);
            Term r = rebuild_app(t, std::move(f), std::move(a));
            if (d) d->output = r;
            return r;
        }
        }
        return t;
    }
};

Outcome run_machine(const StrategySpec& spec, const Term& t, std::uint64_t fuel, const EvalOptions& opts,
                    std::vector<DerivationTree>* roots) {
    Program prog = Program::compile(spec);
    Outcome out;
    run_on_deep_stack([&] {
        Machine m(prog, fuel, opts);
        try {
            Term r = m.run(prog.root, t, roots);
            out.status = Status::Converged;
            out.result = std::move(r);
        } catch (const FuelOut&) {
            out.status = Status::FuelExhausted;
        } catch (const ResourceError& e) {
            out.status = Status::ResourceExhausted;
            out.detail = e.what();
        }
        out.trace = std::move(m.trace);
        out.fuel_used = m.used;
        if (!out.converged() && roots) roots->clear();
    });
    return out;
}

} // namespace

Outcome eval(const StrategySpec& spec, const Term& t, std::uint64_t fuel, const EvalOptions& opts) {
    return run_machine(spec, t, fuel, opts, nullptr);
}

Derivation derivation_tree(const StrategySpec& spec, const Term& t, std::uint64_t fuel, const EvalOptions& opts) {
    Derivation d;
    EvalOptions o = opts;
    o.record_trace = true;
    d.outcome = run_machine(spec, t, fuel, o, &d.roots);
    return d;
}

namespace {
void collect(const DerivationTree& d, std::vector<TraceEvent>& out) {
    // The contractum premise comes last in a CON node, after operator and
    // operand premises; the contraction itself sits between them.
    if (d.rule == Rule::CON) {
        assert(!d.premises.empty());
        for (std::size_t i = 0; i + 1 < d.premises.size(); ++i) collect(d.premises[i], out);
        out.push_back(*d.event);
        collect(d.premises.back(), out);
        return;
    }
    for (const auto& p : d.premises) collect(p, out);
}
} // namespace

std::vector<TraceEvent> sequence_from_tree(const DerivationTree& tree) {
    std::vector<TraceEvent> out;
    run_on_deep_stack([&] { collect(tree, out); });
    return out;
}

std::vector<TraceEvent> sequence_from_tree(const std::vector<DerivationTree>& roots) {
    std::vector<TraceEvent> out;
    run_on_deep_stack([&] {
        for (const auto& r : roots) collect(r, out);
    });
    return out;
}

std::vector<Term> reconstruct_sequence(const Term& t, const std::vector<TraceEvent>& trace) {
    std::vector<Term> seq{t};
    run_on_deep_stack([&] {
        Term cur = t;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            const TraceEvent& e = trace[i];
            Term at;
            try {
                at = subterm_at(cur, e.position);
            } catch (const EvalError&) {
                throw EvalError("replay mismatch at step " + std::to_string(i) + ": no subterm at path " +
                                path_to_string(e.position));
            }
            if (!alpha_eq(at, e.redex))
                throw EvalError("replay mismatch at step " + std::to_string(i) + ": expected redex " +
                                print_term(e.redex) + " at " + path_to_string(e.position) + ", found " +
                                print_term(at));
            cur = replace_at(cur, e.position, e.contractum);
            seq.push_back(cur);
        }
    });
    return seq;
}

} // namespace lamlab
