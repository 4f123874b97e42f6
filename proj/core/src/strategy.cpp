#include "lamlab/strategy.hpp"

#include "lamlab/errors.hpp"

#include <array>
#include <map>

namespace lamlab {

namespace {

const std::vector<std::pair<std::string, std::string>>& alias_table() {
    static const std::vector<std::pair<std::string, std::string>> t = {
        {"bn", "III"},        {"bv", "ISS"},        {"ao", "SSS"},        {"he", "SII"},
        {"ho", "SSI"},        {"no", "HIH<>III"},   {"hr", "HII<>III"},   {"sn", "HSH<>ISS"},
        {"hn", "HIH<>SII"},   {"ha", "HHH<>ISS"},   {"am", "HSS<>ISS"},   {"so", "HHH<>SSI"},
        {"bs", "HSH<>SSI"},   {"byValue", "(RE)R.ISS"}, {"byName", "R(RE).SII"},
    };
    return t;
}

const std::string* alias_target(std::string_view name) {
    for (const auto& [a, enc] : alias_table())
        if (a == name) return &enc;
    return nullptr;
}

[[noreturn]] void spec_error(std::string_view text, std::size_t pos, const std::string& msg) {
    throw ParseError(msg + " in strategy '" + std::string(text) + "'", 1, pos + 1);
}

Slot parse_slot(char c, bool allow_h, std::string_view text, std::size_t pos) {
    switch (c) {
    case 'I': return Slot::I;
    case 'S': return Slot::S;
    case 'H':
        if (allow_h) return Slot::H;
        break;
    default: break;
    }
    spec_error(text, pos, std::string("bad slot '") + c + "'");
}

UniformTriple parse_uniform_part(std::string_view part, std::string_view text, std::size_t offset) {
    if (const std::string* enc = alias_target(part)) {
        if (enc->size() == 3) part = *enc;
        else spec_error(text, offset, "'" + std::string(part) + "' is not a uniform strategy");
    }
    if (part.size() != 3) spec_error(text, offset, "expected a uniform triple");
    return UniformTriple{parse_slot(part[0], false, text, offset), parse_slot(part[1], false, text, offset + 1),
                         parse_slot(part[2], false, text, offset + 2)};
}

StrategySpec parse_encoding(std::string_view text) {
    if (auto p = text.find("<>"); p != std::string_view::npos) {
        std::string_view hy = text.substr(0, p);
        if (hy.size() != 3) spec_error(text, 0, "expected a hybrid triple before '<>'");
        HybridEncoding h;
        h.la = parse_slot(hy[0], true, text, 0);
        h.ar1 = parse_slot(hy[1], true, text, 1);
        h.ar2 = parse_slot(hy[2], true, text, 2);
        h.sub = parse_uniform_part(text.substr(p + 2), text, p + 2);
        return h;
    }
    if (auto p = text.rfind('.'); p != std::string_view::npos) {
        std::string_view pair = text.substr(0, p);
        std::vector<RbSlot> slots;
        std::size_t i = 0;
        while (i < pair.size()) {
            if (pair.substr(i, 4) == "(RE)") {
                slots.push_back(RbSlot::RE);
                i += 4;
                continue;
            }
            switch (pair[i]) {
            case 'I': slots.push_back(RbSlot::I); break;
            case 'E': slots.push_back(RbSlot::E); break;
            case 'R': slots.push_back(RbSlot::R); break;
            default: spec_error(text, i, std::string("bad readback slot '") + pair[i] + "'");
            }
            ++i;
        }
        if (slots.size() != 2) spec_error(text, 0, "expected two readback slots before '.'");
        return ReadbackEncoding{slots[0], slots[1], parse_uniform_part(text.substr(p + 1), text, p + 1)};
    }
    return parse_uniform_part(text, text, 0);
}

bool is_h(Slot s) { return s == Slot::H; }

} // namespace

char slot_char(Slot s) { return s == Slot::I ? 'I' : s == Slot::S ? 'S' : 'H'; }

std::string rb_slot_string(RbSlot s) {
    switch (s) {
    case RbSlot::I: return "I";
    case RbSlot::E: return "E";
    case RbSlot::R: return "R";
    case RbSlot::RE: return "(RE)";
    }
    return "?";
}

std::string print_triple(const UniformTriple& t) {
    return {slot_char(t.la), slot_char(t.ar1), slot_char(t.ar2)};
}

StrategySpec parse_spec(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty strategy", 1, 1);
    if (const std::string* enc = alias_target(text)) return parse_encoding(*enc);
    return parse_encoding(text);
}

std::string print_spec(const StrategySpec& s) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, UniformTriple>) {
                return print_triple(v);
            } else if constexpr (std::is_same_v<T, HybridEncoding>) {
                return std::string{slot_char(v.la), slot_char(v.ar1), slot_char(v.ar2)} + "<>" + print_triple(v.sub);
            } else {
                return rb_slot_string(v.la) + rb_slot_string(v.ar2) + "." + print_triple(v.eval);
            }
        },
        s);
}

std::optional<std::string> alias_of(const StrategySpec& s) {
    std::string enc = print_spec(s);
    for (const auto& [a, e] : alias_table())
        if (e == enc) return a;
    return std::nullopt;
}

std::string display_spec(const StrategySpec& s) {
    std::string enc = print_spec(s);
    if (auto a = alias_of(s)) return enc + " (" + *a + ")";
    return enc;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::ValidUniform: return "valid-uniform";
    case Verdict::ValidHybridBalanced: return "valid-hybrid-balanced";
    case Verdict::ValidHybridUnbalanced: return "valid-hybrid-unbalanced";
    case Verdict::ValidReadback: return "valid-readback";
    case Verdict::Spurious: return "spurious";
    case Verdict::DegenerateUniform: return "degenerate-uniform";
    case Verdict::Invalid: return "invalid";
    }
    return "?";
}

// ---- validation ----------------------------------------------------------

namespace {

ValidationReport validate_hybrid(const HybridEncoding& h) {
    ValidationReport r;
    const UniformTriple& s = h.sub;
    auto add = [&](std::string id, std::string msg) { r.diagnostics.push_back({std::move(id), std::move(msg)}); };

    // The hybrid never evaluates less than its subsidiary on la/ar2.
    if (s.la == Slot::S && h.la == Slot::I)
        add("H2", "la is I where the subsidiary evaluates abstraction bodies");
    if (s.ar2 == Slot::S && h.ar2 == Slot::I)
        add("H2", "ar2 is I where the subsidiary evaluates neutral operands");
    // Operands of redexes: identity when non-strict, at least the subsidiary
    // when strict.
    if (s.ar1 == Slot::I && h.ar1 != Slot::I)
        add("H3", "ar1 must be I over a non-strict subsidiary");
    if (s.ar1 == Slot::S && h.ar1 == Slot::I)
        add("H3", "ar1 must be S or H over a strict subsidiary");
    if (!r.diagnostics.empty()) {
        r.verdict = Verdict::Invalid;
        return r;
    }

    UniformTriple as_uniform{h.la == Slot::H ? Slot::S : h.la, h.ar1 == Slot::H ? Slot::S : h.ar1,
                             h.ar2 == Slot::H ? Slot::S : h.ar2};
    bool has_h = is_h(h.la) || is_h(h.ar2);
    if (!has_h && !is_h(h.ar1) && as_uniform == s) {
        r.verdict = Verdict::DegenerateUniform;
        add("H2", "hybrid triple equals its subsidiary; the evaluator defined is uniform " + print_triple(s));
        return r;
    }

    bool exceeds = (s.la == Slot::I && h.la != Slot::I) || (s.ar2 == Slot::I && h.ar2 != Slot::I);
    if (!has_h || !exceeds) {
        r.verdict = Verdict::Spurious;
        if (!has_h) add("H2", "neither la nor ar2 calls the hybrid");
        if (!exceeds) add("H2", "no la/ar2 slot evaluates more than the subsidiary");
        return r;
    }

    // Weak, non-strict, and only recursing on neutral operands: the hybrid
    // coincides with the uniform evaluator obtained by reading H as S.
    if (h.la == Slot::I && h.ar1 == Slot::I && h.ar2 == Slot::H) {
        r.verdict = Verdict::DegenerateUniform;
        add("H2", "defines uniform " + print_triple(as_uniform));
        return r;
    }

    r.verdict = h.ar1 == Slot::H ? Verdict::ValidHybridUnbalanced : Verdict::ValidHybridBalanced;
    return r;
}

bool rb_compatible(RbSlot r, Slot e) {
    if (e == Slot::I) return r == RbSlot::I || r == RbSlot::E || r == RbSlot::RE;
    return r == RbSlot::I || r == RbSlot::R;
}

ValidationReport validate_readback(const ReadbackEncoding& er) {
    ValidationReport r;
    auto add = [&](std::string id, std::string msg) { r.diagnostics.push_back({std::move(id), std::move(msg)}); };
    if (!rb_compatible(er.la, er.eval.la))
        add("ER2", "la slot " + rb_slot_string(er.la) + " is incompatible with eval slot " + slot_char(er.eval.la));
    if (!rb_compatible(er.ar2, er.eval.ar2))
        add("ER2",
            "ar2 slot " + rb_slot_string(er.ar2) + " is incompatible with eval slot " + slot_char(er.eval.ar2));
    auto calls_eval = [](RbSlot s) { return s == RbSlot::E || s == RbSlot::RE; };
    auto calls_rb = [](RbSlot s) { return s == RbSlot::R || s == RbSlot::RE; };
    if (!calls_eval(er.la) && !calls_eval(er.ar2))
        add("ER2", "readback must call eval on a slot left unevaluated by eval (rb-ev)");
    if (!calls_rb(er.la) && !calls_rb(er.ar2))
        add("ER2", "readback must call itself on at least one slot (rb-rb)");
    r.verdict = r.diagnostics.empty() ? Verdict::ValidReadback : Verdict::Invalid;
    return r;
}

} // namespace

ValidationReport validate(const StrategySpec& s) {
    return std::visit(
        [](const auto& v) -> ValidationReport {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, UniformTriple>) {
                return ValidationReport{Verdict::ValidUniform, {}};
            } else if constexpr (std::is_same_v<T, HybridEncoding>) {
                return validate_hybrid(v);
            } else {
                return validate_readback(v);
            }
        },
        s);
}

// ---- fusion --------------------------------------------------------------

namespace {

std::optional<Slot> compose(RbSlot r, Slot e) {
    if (e == Slot::I) {
        switch (r) {
        case RbSlot::I: return Slot::I;
        case RbSlot::E: return Slot::S;
        case RbSlot::RE: return Slot::H;
        case RbSlot::R: return std::nullopt;
        }
    } else if (e == Slot::S) {
        if (r == RbSlot::I) return Slot::S;
        if (r == RbSlot::R) return Slot::H;
    }
    return std::nullopt;
}

} // namespace

FuseResult fuse(const ReadbackEncoding& er) {
    ValidationReport rep = validate(er);
    if (!rep.usable()) {
        std::string msg = "cannot fuse " + print_spec(er) + ":";
        for (const auto& d : rep.diagnostics) msg += " [" + d.proviso + "] " + d.message + ";";
        throw DomainError(msg);
    }
    auto la = compose(er.la, er.eval.la);
    auto ar2 = compose(er.ar2, er.eval.ar2);
    if (!la || !ar2) throw DomainError("incompatible slot combination in " + print_spec(er));
    FuseResult r;
    r.hybrid = HybridEncoding{*la, er.eval.ar1, *ar2, er.eval};
    r.mcr = er.eval.ar2 != Slot::I;
    return r;
}

std::vector<ReadbackEncoding> defuse(const HybridEncoding& hy) {
    std::vector<ReadbackEncoding> out;
    if (hy.ar1 == Slot::H) return out;
    constexpr std::array<RbSlot, 4> all = {RbSlot::I, RbSlot::E, RbSlot::R, RbSlot::RE};
    for (RbSlot a : all) {
        for (RbSlot b : all) {
            ReadbackEncoding er{a, b, hy.sub};
            if (!validate(er).usable()) continue;
            if (fuse(er).hybrid == hy) out.push_back(er);
        }
    }
    return out;
}

// ---- catalogue -----------------------------------------------------------

namespace {

StrategySpec spec(std::string_view s) { return parse_spec(s); }

std::vector<CatalogueEntry> build_catalogue() {
    using F = FormClass;
    using V = Verdict;
    std::vector<CatalogueEntry> c;
    auto uni = [&](std::string alias, std::string name, std::string_view enc, F res) {
        c.push_back({std::move(alias), std::move(name), spec(enc), V::ValidUniform, res, std::nullopt,
                     std::nullopt, false});
    };
    uni("bn", "Call-by-name", "III", F::WHNF);
    uni("", "", "IIS", F::WNF);
    uni("he", "Head spine", "SII", F::HNF);
    uni("", "", "SIS", F::NF);
    uni("", "", "ISI", F::WHNF);
    uni("bv", "Call-by-value", "ISS", F::WNF);
    uni("ho", "Head applicative order", "SSI", F::HNF);
    uni("ao", "Applicative order", "SSS", F::NF);

    auto hyb = [&](std::string alias, std::string name, std::string_view enc, V kind, F res,
                   std::optional<std::string_view> eq = std::nullopt, bool mcr = false) {
        std::optional<StrategySpec> e;
        if (eq) e = spec(*eq);
        c.push_back({std::move(alias), std::move(name), spec(enc), kind, res, e, std::nullopt, mcr});
    };
    const V bal = V::ValidHybridBalanced, unb = V::ValidHybridUnbalanced;
    hyb("", "", "IIH<>III", V::DegenerateUniform, F::WNF, "IIS");
    hyb("", "", "SIH<>III", bal, F::WNF);
    hyb("hr", "Head reduction", "HII<>III", bal, F::HNF);
    hyb("", "", "HIS<>III", bal, F::VHNF);
    hyb("no", "Normal order", "HIH<>III", bal, F::NF, "HIH<>IIS", true);
    hyb("", "", "SIH<>IIS", bal, F::WNF);
    hyb("", "", "HIS<>IIS", bal, F::VHNF);
    hyb("", "", "HIH<>IIS", bal, F::NF, "HIH<>III", true);
    hyb("", "", "SIH<>SII", bal, F::WNF);
    hyb("", "", "HIS<>SII", bal, F::HNF);
    hyb("hn", "Hybrid normal order", "HIH<>SII", bal, F::NF);
    hyb("", "", "ISH<>ISI", bal, F::WNF);
    hyb("", "", "SSH<>ISI", bal, F::WNF);
    hyb("", "", "HSI<>ISI", bal, F::HNF);
    hyb("", "", "HSS<>ISI", bal, F::VHNF);
    hyb("", "", "HSH<>ISI", bal, F::NF);
    hyb("", "", "SSH<>ISS", bal, F::WNF);
    hyb("am", "Ahead machine", "HSS<>ISS", bal, F::VHNF);
    hyb("sn", "Strict normalisation", "HSH<>ISS", bal, F::NF);
    hyb("", "", "SSH<>SSI", bal, F::WNF);
    hyb("", "", "HSS<>SSI", bal, F::HNF);
    hyb("bs", "Balanced spine applicative order", "HSH<>SSI", bal, F::NF);
    hyb("", "", "IHH<>ISI", unb, F::WNF);
    hyb("", "", "SHH<>ISI", unb, F::WNF);
    hyb("", "", "HHI<>ISI", unb, F::HNF);
    hyb("", "", "HHS<>ISI", unb, F::VHNF);
    hyb("", "", "HHH<>ISI", unb, F::NF);
    hyb("", "", "SHH<>ISS", unb, F::WNF);
    hyb("", "", "HHS<>ISS", unb, F::VHNF);
    hyb("ha", "Hybrid applicative order", "HHH<>ISS", unb, F::NF);
    hyb("", "", "SHH<>SSI", unb, F::WNF);
    hyb("", "", "HHS<>SSI", unb, F::HNF);
    hyb("so", "Spine applicative order", "HHH<>SSI", unb, F::NF);

    auto rb = [&](std::string alias, std::string name, std::string_view enc, std::string_view hy, bool mcr, F mid,
                  F res) {
        c.push_back({std::move(alias), std::move(name), spec(enc), V::ValidReadback, res, spec(hy), mid, mcr});
    };
    rb("", "", "I(RE).III", "IIH<>III", false, F::WHNF, F::WNF);
    rb("", "", "E(RE).III", "SIH<>III", false, F::WHNF, F::WNF);
    rb("", "Head reduction", "(RE)I.III", "HII<>III", false, F::WHNF, F::HNF);
    rb("", "", "(RE)E.III", "HIS<>III", false, F::WHNF, F::VHNF);
    rb("", "Normal order", "(RE)(RE).III", "HIH<>III", false, F::WHNF, F::NF);
    rb("", "", "ER.IIS", "SIH<>IIS", true, F::WNF, F::WNF);
    rb("", "", "(RE)I.IIS", "HIS<>IIS", true, F::WNF, F::VHNF);
    rb("", "", "(RE)R.IIS", "HIH<>IIS", true, F::WNF, F::NF);
    rb("", "", "I(RE).SII", "SIH<>SII", false, F::HNF, F::WNF);
    rb("", "", "RE.SII", "HIS<>SII", false, F::HNF, F::HNF);
    rb("byName", "byName", "R(RE).SII", "HIH<>SII", false, F::HNF, F::NF);
    rb("", "", "I(RE).ISI", "ISH<>ISI", false, F::WHNF, F::WNF);
    rb("", "", "E(RE).ISI", "SSH<>ISI", false, F::WHNF, F::WNF);
    rb("", "", "(RE)I.ISI", "HSI<>ISI", false, F::WHNF, F::HNF);
    rb("", "", "(RE)E.ISI", "HSS<>ISI", false, F::WHNF, F::VHNF);
    rb("", "", "(RE)(RE).ISI", "HSH<>ISI", false, F::WHNF, F::NF);
    rb("", "", "ER.ISS", "SSH<>ISS", true, F::WNF, F::WNF);
    rb("", "Ahead machine", "(RE)I.ISS", "HSS<>ISS", true, F::WNF, F::VHNF);
    rb("byValue", "byValue", "(RE)R.ISS", "HSH<>ISS", true, F::WNF, F::NF);
    rb("", "", "I(RE).SSI", "SSH<>SSI", false, F::HNF, F::WNF);
    rb("", "", "RE.SSI", "HSS<>SSI", false, F::HNF, F::HNF);
    rb("", "Balanced spine applicative order", "R(RE).SSI", "HSH<>SSI", false, F::HNF, F::NF);
    return c;
}

} // namespace

const std::vector<CatalogueEntry>& catalogue() {
    static const std::vector<CatalogueEntry> c = build_catalogue();
    return c;
}

std::optional<FormClass> result_form(const StrategySpec& s) {
    for (const auto& e : catalogue())
        if (e.spec == s) return e.result;
    return std::nullopt;
}

} // namespace lamlab
