#include "letf/error.hpp"
#include "letf/proof.hpp"

#include <cctype>
#include <sstream>

namespace letf {

namespace {

struct Token {
    enum class Type { Open, Close, String, Atom, End } type;
    std::string text;
    std::size_t pos;
};

class Reader {
public:
    Reader(std::string_view text, Signature &sig) : text_(text), sig_(sig) { advance(); }

    ProofTree proof() {
        auto t = node();
        if (tok_.type != Token::Type::End)
            fail("trailing input");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string &what) const {
        throw Error(ErrorKind::Format,
                    "proof file: " + what + " at position " + std::to_string(tok_.pos));
    }

    void advance() {
        while (i_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[i_]))) {
                ++i_;
            } else if (text_[i_] == ';') {
                while (i_ < text_.size() && text_[i_] != '\n')
                    ++i_;
            } else {
                break;
            }
        }
        const std::size_t start = i_;
        if (i_ == text_.size()) {
            tok_ = {Token::Type::End, "", start};
            return;
        }
        const char ch = text_[i_];
        if (ch == '(' || ch == ')') {
            ++i_;
            tok_ = {ch == '(' ? Token::Type::Open : Token::Type::Close, std::string(1, ch), start};
            return;
        }
        if (ch == '"') {
            std::string s;
            ++i_;
            while (i_ < text_.size() && text_[i_] != '"') {
                if (text_[i_] == '\\' && i_ + 1 < text_.size())
                    ++i_;
                s += text_[i_++];
            }
            if (i_ == text_.size()) {
                tok_.pos = start;
                fail("unterminated string");
            }
            ++i_;
            tok_ = {Token::Type::String, std::move(s), start};
            return;
        }
        while (i_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[i_])) &&
               text_[i_] != '(' && text_[i_] != ')' && text_[i_] != '"' && text_[i_] != ';')
            ++i_;
        tok_ = {Token::Type::Atom, std::string(text_.substr(start, i_ - start)), start};
    }

    Token take(Token::Type type, const char *what) {
        if (tok_.type != type)
            fail(std::string("expected ") + what);
        Token t = tok_;
        advance();
        return t;
    }

    Formula formula() {
        const auto t = take(Token::Type::String, "a quoted formula");
        try {
            return parse_extending(t.text, sig_);
        } catch (const Error &e) {
            throw Error(e.kind(), "proof file: formula at position " + std::to_string(t.pos) +
                                      ": " + e.what());
        }
    }

    ProofTree node() {
        take(Token::Type::Open, "'('");
        const auto head = take(Token::Type::Atom, "premise, hyp or rule");
        std::optional<ProofTree> t;
        if (head.text == "premise") {
            t = ProofTree::premise(formula());
        } else if (head.text == "hyp") {
            auto label = take(Token::Type::Atom, "a hypothesis label").text;
            t = ProofTree::hypothesis(std::move(label), formula());
        } else if (head.text == "rule") {
            const auto name = take(Token::Type::Atom, "a rule name");
            const auto id = rule_by_name(name.text);
            if (!id || *id == RuleId::Premise || *id == RuleId::Hypothesis)
                throw Error(ErrorKind::UnknownName, "proof file: unknown rule " + name.text +
                                                        " at position " + std::to_string(name.pos));
            std::optional<Formula> conclusion;
            std::optional<std::string> label, eigen;
            while (tok_.type == Token::Type::Atom) {
                const auto key = take(Token::Type::Atom, "a keyword").text;
                if (key == ":conclude")
                    conclusion = formula();
                else if (key == ":discharge")
                    label = take(Token::Type::Atom, "a label").text;
                else if (key == ":eigen")
                    eigen = take(Token::Type::Atom, "a constant").text;
                else
                    fail("unknown keyword " + key);
            }
            if (!conclusion)
                fail("rule " + name.text + " without :conclude");
            std::vector<ProofTree> children;
            while (tok_.type == Token::Type::Open)
                children.push_back(node());
            t = ProofTree::node(*id, *conclusion, std::move(children));
            t->label = std::move(label);
            t->eigen = std::move(eigen);
        } else {
            fail("unknown node kind " + head.text);
        }
        take(Token::Type::Close, "')'");
        return std::move(*t);
    }

    std::string_view text_;
    Signature &sig_;
    std::size_t i_ = 0;
    Token tok_{Token::Type::End, "", 0};
};

void write(std::ostringstream &os, const ProofTree &t, int indent) {
    os << std::string(static_cast<std::size_t>(indent) * 2, ' ');
    const auto text = '"' + render(t.conclusion) + '"';
    switch (t.rule) {
    case RuleId::Premise:
        os << "(premise " << text << ')';
        return;
    case RuleId::Hypothesis:
        os << "(hyp " << t.label.value_or("?") << ' ' << text << ')';
        return;
    default:
        break;
    }
    os << "(rule " << rule_name(t.rule) << " :conclude " << text;
    if (t.label)
        os << " :discharge " << *t.label;
    if (t.eigen)
        os << " :eigen " << *t.eigen;
    for (const auto &c : t.children) {
        os << '\n';
        write(os, c, indent + 1);
    }
    os << ')';
}

} // namespace

ProofTree parse_proof(std::string_view text, Signature &sig) { return Reader(text, sig).proof(); }

std::vector<Formula> parse_premises(std::string_view text, Signature &sig) {
    std::vector<Formula> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == ';')
            continue;
        try {
            out.push_back(parse_extending(line, sig));
        } catch (const Error &e) {
            throw Error(e.kind(), "premises line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::string format_proof(const ProofTree &t) {
    std::ostringstream os;
    write(os, t, 0);
    os << '\n';
    return os.str();
}

} // namespace letf
