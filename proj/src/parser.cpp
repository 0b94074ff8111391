#include "letf/error.hpp"
#include "letf/syntax.hpp"

#include <cctype>
#include <optional>

namespace letf {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Not, Circ, Bullet, And, Or, SupT, SupF, End };

struct Token {
    Tok type;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto ident_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j]))
                ++j;
            out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), i});
            i = j;
            continue;
        }
        Tok t;
        switch (c) {
        case '(': t = Tok::LParen; break;
        case ')': t = Tok::RParen; break;
        case ',': t = Tok::Comma; break;
        case '.': t = Tok::Dot; break;
        case '~': t = Tok::Not; break;
        case '@': t = Tok::Circ; break;
        case '#': t = Tok::Bullet; break;
        case '&': t = Tok::And; break;
        case '|': t = Tok::Or; break;
        case '^':
            if (i + 1 < text.size() && (text[i + 1] == 'T' || text[i + 1] == 'F')) {
                out.push_back({text[i + 1] == 'T' ? Tok::SupT : Tok::SupF,
                               std::string(text.substr(i, 2)), i});
                i += 2;
                continue;
            }
            [[fallthrough]];
        default:
            throw Error(ErrorKind::Lexical, "unexpected character '" + std::string(1, c) +
                                                "' at position " + std::to_string(i));
        }
        out.push_back({t, std::string(1, c), i});
        ++i;
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

bool is_keyword(const std::string &s) {
    return s == "forall" || s == "exists" || s == "top" || s == "bot";
}

class Parser {
public:
    Parser(std::string_view text, Signature &sig, bool extend,
           const std::set<std::string> &free_variables)
        : tokens_(lex(text)), sig_(sig), extend_(extend), free_variables_(free_variables) {}

    Formula parse_all() {
        Formula f = formula();
        if (peek().type != Tok::End)
            fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token &peek() const { return tokens_[pos_]; }
    const Token &take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string &msg) const {
        throw Error(ErrorKind::Syntax, msg + " at position " + std::to_string(peek().pos));
    }

    void expect(Tok t, const char *what) {
        if (peek().type != t)
            fail(std::string("expected ") + what);
        ++pos_;
    }

    bool at_quantifier() const {
        return peek().type == Tok::Ident && (peek().text == "forall" || peek().text == "exists");
    }

    Formula formula() {
        Formula f = conjunction();
        while (peek().type == Tok::Or) {
            ++pos_;
            f = disj(std::move(f), conjunction());
        }
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (peek().type == Tok::And) {
            ++pos_;
            f = conj(std::move(f), unary());
        }
        return f;
    }

    Formula unary() {
        switch (peek().type) {
        case Tok::Not:
            ++pos_;
            return neg(unary());
        case Tok::Circ:
            ++pos_;
            return circ(unary());
        case Tok::Bullet:
            ++pos_;
            return bullet(unary());
        default:
            break;
        }
        Formula f = primary();
        for (;;) {
            if (peek().type == Tok::SupT)
                f = t_sup(f);
            else if (peek().type == Tok::SupF)
                f = f_sup(f);
            else
                return f;
            ++pos_;
        }
    }

    Formula quantified() {
        const bool universal = take().text == "forall";
        if (peek().type != Tok::Ident || is_keyword(peek().text))
            fail("expected a variable");
        std::string var = take().text;
        expect(Tok::Dot, "'.'");
        bound_.push_back(var);
        Formula body = formula();
        bound_.pop_back();
        try {
            return universal ? forall(var, std::move(body)) : exists(var, std::move(body));
        } catch (const Error &) {
            throw Error(ErrorKind::VoidQuantifier,
                        "void quantifier: '" + var + "' does not occur free in its body");
        }
    }

    Formula primary() {
        if (peek().type == Tok::LParen) {
            ++pos_;
            Formula f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (peek().type != Tok::Ident)
            fail(peek().type == Tok::End ? "unexpected end of input"
                                         : "unexpected '" + peek().text + "'");
        if (at_quantifier())
            return quantified();
        const Token &tok = take();
        if (tok.text == "top")
            return top();
        if (tok.text == "bot")
            return bottom();
        if (peek().type == Tok::LParen) {
            ++pos_;
            std::vector<Term> args;
            args.push_back(term());
            while (peek().type == Tok::Comma) {
                ++pos_;
                args.push_back(term());
            }
            expect(Tok::RParen, "')'");
            resolve_predicate(tok.text, args.size());
            return atom(tok.text, std::move(args));
        }
        if (tok.text == reserved_atom)
            return prop(tok.text);
        if (tok.text.front() == '_')
            throw Error(ErrorKind::Lexical, "identifiers starting with '_' are reserved");
        resolve_predicate(tok.text, 0);
        return prop(tok.text);
    }

    Term term() {
        if (peek().type != Tok::Ident || is_keyword(peek().text))
            fail("expected a term");
        std::string name = take().text;
        if (name.front() == '_')
            throw Error(ErrorKind::Lexical, "identifiers starting with '_' are reserved");
        for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
            if (*it == name)
                return Term::variable(name);
        if (free_variables_.count(name))
            return Term::variable(name);
        if (sig_.constants.count(name))
            return Term::constant(name);
        if (!extend_)
            throw Error(ErrorKind::UnboundName, "unbound name '" + name + "'");
        sig_.declare_constant(name);
        return Term::constant(name);
    }

    void resolve_predicate(const std::string &name, std::size_t arity) {
        auto it = sig_.predicates.find(name);
        if (it == sig_.predicates.end()) {
            if (!extend_)
                throw Error(ErrorKind::UnboundName,
                            (arity == 0 ? "unknown atom '" : "unknown predicate '") + name + "'");
            sig_.declare_predicate(name, arity);
            return;
        }
        if (it->second != arity)
            throw Error(ErrorKind::Arity, "'" + name + "' has arity " +
                                              std::to_string(it->second) + ", used with " +
                                              std::to_string(arity));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    Signature &sig_;
    bool extend_;
    const std::set<std::string> &free_variables_;
    std::vector<std::string> bound_;
};

} // namespace

Formula parse(std::string_view text, const Signature &sig,
              const std::set<std::string> &free_variables) {
    Signature copy = sig;
    return Parser(text, copy, false, free_variables).parse_all();
}

Formula parse_extending(std::string_view text, Signature &sig) {
    static const std::set<std::string> none;
    Signature work = sig;
    Formula f = Parser(text, work, true, none).parse_all();
    sig = std::move(work);
    return f;
}

Formula parse(std::string_view text) {
    Signature sig;
    return parse_extending(text, sig);
}

} // namespace letf
