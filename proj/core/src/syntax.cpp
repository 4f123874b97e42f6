// Recursive-descent parser for the term syntax:
//   term := lam | app ;  lam := ("\" | "λ") ident+ "." term
//   app  := atom+ [lam] ; atom := ident | "(" term ")" | "#" builtin
#include "lamlab/builtins.hpp"
#include "lamlab/errors.hpp"
#include "lamlab/term.hpp"

#include <cctype>

namespace lamlab {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : src_(s) {}

    Term parse() {
        skip();
        if (eof()) fail("empty term");
        Term t = term();
        skip();
        if (!eof()) fail(std::string("unexpected '") + peek() + "'");
        return t;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return eof() ? '\0' : src_[pos_]; }

    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(src_[i]) & 0xC0) != 0x80) {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    void skip() {
        while (!eof()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
                while (!eof() && peek() != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    bool at_lambda() const {
        if (peek() == '\\') return true;
        return src_.substr(pos_, 2) == "\xCE\xBB"; // UTF-8 λ
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    bool at_atom() const { return ident_start(peek()) || peek() == '(' || peek() == '#'; }

    std::string_view ident() {
        if (!ident_start(peek())) fail("expected identifier");
        std::size_t start = pos_;
        while (!eof() && ident_char(peek())) ++pos_;
        return src_.substr(start, pos_ - start);
    }

    Term term() {
        skip();
        if (at_lambda()) return lam();
        return app();
    }

    Term lam() {
        pos_ += peek() == '\\' ? 1 : 2;
        std::vector<Symbol> params;
        skip();
        while (ident_start(peek())) {
            params.push_back(Symbol::intern(ident()));
            skip();
        }
        if (params.empty()) fail("expected parameter after lambda");
        if (peek() != '.') fail("expected '.' after parameters");
        ++pos_;
        Term body = term();
        for (auto it = params.rbegin(); it != params.rend(); ++it) body = Term::lam(*it, std::move(body));
        return body;
    }

    Term app() {
        skip();
        if (!at_atom()) fail(eof() ? "unexpected end of input" : std::string("unexpected '") + peek() + "'");
        Term acc = atom();
        for (;;) {
            skip();
            if (at_atom()) {
                acc = Term::app(std::move(acc), atom());
            } else if (at_lambda()) {
                acc = Term::app(std::move(acc), lam());
                return acc;
            } else {
                return acc;
            }
        }
    }

    Term atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Term t = term();
            skip();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return t;
        }
        if (c == '#') {
            std::size_t at = pos_;
            ++pos_;
            std::string name(ident());
            if (peek() == ':') {
                ++pos_;
                name += ':';
                std::size_t s = pos_;
                while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
                if (s == pos_) fail("expected digits after ':'");
                name += src_.substr(s, pos_ - s);
            }
            try {
                return builtin(name);
            } catch (const ParseError&) {
                throw;
            } catch (const DomainError& e) {
                pos_ = at;
                fail(e.what());
            }
        }
        return Term::var(Symbol::intern(ident()));
    }
};

} // namespace

Term parse_term(std::string_view text) { return Parser(text).parse(); }

} // namespace lamlab
