#include "letf/error.hpp"
#include "letf/fo_models.hpp"

#include <cctype>
#include <sstream>

namespace letf {

namespace {

struct Tok {
    std::string text;
    std::size_t line;
};

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Tok> tokenize(std::string_view text) {
    std::vector<Tok> out;
    std::size_t line = 1;
    for (std::size_t i = 0; i < text.size();) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
        } else if (word_char(c)) {
            std::size_t j = i;
            while (j < text.size() && word_char(text[j]))
                ++j;
            out.push_back({std::string(text.substr(i, j - i)), line});
            i = j;
        } else if (std::string_view(":=/{};,()+-").find(c) != std::string_view::npos) {
            out.push_back({std::string(1, c), line});
            ++i;
        } else {
            throw Error(ErrorKind::Format, "line " + std::to_string(line) +
                                               ": unexpected character '" + std::string(1, c) +
                                               "'");
        }
    }
    return out;
}

class Reader {
public:
    explicit Reader(std::string_view text) : toks_(tokenize(text)) {}

    Structure read() {
        Structure s;
        bool have_domain = false;
        std::vector<std::pair<std::string, std::pair<std::size_t, std::vector<std::vector<Tok>>>>>
            pending; // predicates are read after the domain is known
        while (!done()) {
            const Tok &t = take();
            if (t.text == "domain") {
                expect(":");
                if (have_domain)
                    fail(t, "domain given twice");
                have_domain = true;
                while (!done() && peek().text != "const" && peek().text != "pred")
                    s.domain.push_back(word());
            } else if (t.text == "const") {
                std::string name = word();
                expect("=");
                const_refs_.push_back({name, take()});
            } else if (t.text == "pred") {
                std::string name = word();
                expect("/");
                const Tok &arity_tok = take();
                std::size_t arity = 0;
                try {
                    arity = std::stoul(arity_tok.text);
                } catch (...) {
                    fail(arity_tok, "expected an arity");
                }
                expect("{");
                std::vector<std::vector<Tok>> entries(1);
                while (!done() && peek().text != "}") {
                    const Tok &e = take();
                    if (e.text == ";")
                        entries.emplace_back();
                    else
                        entries.back().push_back(e);
                }
                expect("}");
                std::erase_if(entries, [](const auto &e) { return e.empty(); });
                pending.push_back({name, {arity, std::move(entries)}});
            } else {
                fail(t, "expected 'domain', 'const' or 'pred'");
            }
        }
        if (!have_domain || s.domain.empty())
            throw Error(ErrorKind::Format, "missing or empty domain");
        for (const auto &[name, tok] : const_refs_) {
            if (s.constants.count(name))
                fail(tok, "constant '" + name + "' given twice");
            s.constants[name] = element(s, tok);
        }
        for (auto &[name, def] : pending) {
            if (s.predicates.count(name))
                throw Error(ErrorKind::Format, "predicate '" + name + "' given twice");
            s.predicates[name] = read_predicate(s, def.first, def.second);
        }
        s.validate();
        return s;
    }

private:
    bool done() const { return pos_ >= toks_.size(); }
    const Tok &peek() const { return toks_[pos_]; }
    const Tok &take() {
        if (done())
            throw Error(ErrorKind::Format, "unexpected end of structure text");
        return toks_[pos_++];
    }
    [[noreturn]] static void fail(const Tok &t, const std::string &msg) {
        throw Error(ErrorKind::Format, "line " + std::to_string(t.line) + ": " + msg);
    }
    void expect(const char *text) {
        const Tok &t = take();
        if (t.text != text)
            fail(t, std::string("expected '") + text + "', got '" + t.text + "'");
    }
    std::string word() {
        const Tok &t = take();
        if (!word_char(t.text.front()))
            fail(t, "expected a name, got '" + t.text + "'");
        return t.text;
    }

    static std::size_t element(const Structure &s, const Tok &t) {
        for (std::size_t i = 0; i < s.domain.size(); ++i)
            if (s.domain[i] == t.text)
                return i;
        fail(t, "unknown element '" + t.text + "'");
    }

    // Tuples: "()" for arity 0, otherwise elements separated by commas.
    static std::vector<Tuple> tuples(const Structure &s, std::span<const Tok> toks,
                                     std::size_t arity, const Tok &where) {
        std::vector<Tuple> out;
        std::size_t i = 0;
        while (i < toks.size()) {
            Tuple t;
            if (toks[i].text == "(") {
                if (i + 1 >= toks.size() || toks[i + 1].text != ")")
                    fail(toks[i], "expected '()'");
                i += 2;
            } else {
                t.push_back(element(s, toks[i++]));
                while (i + 1 < toks.size() && toks[i].text == ",") {
                    t.push_back(element(s, toks[i + 1]));
                    i += 2;
                }
            }
            if (t.size() != arity)
                fail(where, "tuple of length " + std::to_string(t.size()) +
                                " for a predicate of arity " + std::to_string(arity));
            out.push_back(std::move(t));
        }
        return out;
    }

    static Interpretation read_predicate(const Structure &s, std::size_t arity,
                                         const std::vector<std::vector<Tok>> &entries) {
        const std::size_t cells = power(s.domain.size(), arity);
        const bool has_o_element =
            std::find(s.domain.begin(), s.domain.end(), "o") != s.domain.end();
        bool extension_form = false;
        for (const auto &e : entries)
            if (e.size() >= 2 && e[1].text == ":" &&
                (e[0].text == "+" || e[0].text == "-" || (e[0].text == "o" && !has_o_element)))
                extension_form = true;

        if (extension_form) {
            ExtensionTriple triple;
            for (const auto &e : entries) {
                if (e.size() < 2 || e[1].text != ":")
                    fail(e[0], "expected '+:', '-:' or 'o:'");
                std::set<Tuple> *target = e[0].text == "+"   ? &triple.plus
                                          : e[0].text == "-" ? &triple.minus
                                          : e[0].text == "o" ? &triple.circ
                                                             : nullptr;
                if (!target)
                    fail(e[0], "expected '+:', '-:' or 'o:'");
                for (Tuple &t : tuples(s, std::span(e).subspan(2), arity, e[0]))
                    target->insert(std::move(t));
            }
            return from_extensions(triple, arity, s.domain.size());
        }

        Interpretation interp{arity, std::vector<Snapshot>(cells)};
        std::vector<bool> seen(cells, false);
        for (const auto &e : entries) {
            std::span<const Tok> tuple_toks;
            const Tok *value_tok = &e.back();
            if (e.size() == 1 && arity == 0) {
                // `pred q/0 { T }`
            } else {
                if (e.size() < 3 || e[e.size() - 2].text != ":")
                    fail(e[0], "expected 'tuple: value'");
                tuple_toks = std::span(e).first(e.size() - 2);
            }
            auto value = parse_value(value_tok->text);
            if (!value)
                fail(*value_tok, "unknown value '" + value_tok->text + "'");
            std::vector<Tuple> ts = arity == 0 && tuple_toks.empty()
                                        ? std::vector<Tuple>{Tuple{}}
                                        : tuples(s, tuple_toks, arity, e[0]);
            if (ts.size() != 1)
                fail(e[0], "expected exactly one tuple per entry");
            const std::size_t index = tuple_index(ts[0], s.domain.size());
            if (seen[index])
                fail(e[0], "tuple given twice");
            seen[index] = true;
            interp.table[index] = Snapshot(*value);
        }
        for (std::size_t i = 0; i < cells; ++i)
            if (!seen[i])
                throw Error(ErrorKind::Format, "interpretation is not total: missing tuple " +
                                                   std::to_string(i));
        return interp;
    }

    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
    std::vector<std::pair<std::string, Tok>> const_refs_;
};

} // namespace

Structure parse_structure(std::string_view text) { return Reader(text).read(); }

std::string format_structure(const Structure &s) {
    std::ostringstream out;
    out << "domain:";
    for (const std::string &e : s.domain)
        out << ' ' << e;
    out << '\n';
    for (const auto &[name, element] : s.constants)
        out << "const " << name << " = " << s.domain[element] << '\n';
    for (const auto &[name, interp] : s.predicates) {
        out << "pred " << name << '/' << interp.arity << " { ";
        for (std::size_t i = 0; i < interp.table.size(); ++i) {
            if (i > 0)
                out << "; ";
            if (interp.arity > 0) {
                const Tuple t = tuple_at(i, interp.arity, s.domain.size());
                for (std::size_t j = 0; j < t.size(); ++j)
                    out << (j ? "," : "") << s.domain[t[j]];
                out << ": ";
            }
            out << to_string(interp.table[i].value());
        }
        out << " }\n";
    }
    return out.str();
}

} // namespace letf
