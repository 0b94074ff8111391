#include "letf/syntax.hpp"

#include "letf/error.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <unordered_set>

namespace letf {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::vector<std::string> merge_sorted(const std::vector<std::string> &a,
                                      const std::vector<std::string> &b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

Formula make_formula(Kind kind, std::string name, std::vector<Term> args,
                     std::vector<Formula> children) {
    std::size_t h = mix(static_cast<std::size_t>(kind) + 1, std::hash<std::string>{}(name));
    std::vector<std::string> free;
    for (const Term &t : args) {
        h = mix(h, static_cast<std::size_t>(t.kind));
        h = mix(h, std::hash<std::string>{}(t.name));
        if (t.is_variable())
            free.push_back(t.name);
    }
    std::sort(free.begin(), free.end());
    free.erase(std::unique(free.begin(), free.end()), free.end());
    for (const Formula &c : children) {
        h = mix(h, c.hash());
        free = merge_sorted(free, c.free_variables());
    }
    if (kind == Kind::Forall || kind == Kind::Exists) {
        auto it = std::lower_bound(free.begin(), free.end(), name);
        if (it == free.end() || *it != name)
            throw Error(ErrorKind::VoidQuantifier,
                        "quantified variable '" + name + "' does not occur free in its body");
        free.erase(it);
    }
    auto node = std::make_shared<const FormulaNode>(FormulaNode{
        kind, std::move(name), std::move(args), std::move(children), std::move(free), h});
    return Formula(std::move(node));
}

bool Formula::operator==(const Formula &other) const {
    if (node_ == other.node_)
        return true;
    const FormulaNode &a = *node_;
    const FormulaNode &b = *other.node_;
    return a.hash == b.hash && a.kind == b.kind && a.name == b.name && a.args == b.args &&
           a.children == b.children;
}

Formula prop(std::string name) { return make_formula(Kind::PropAtom, std::move(name), {}, {}); }

Formula atom(std::string predicate, std::vector<Term> args) {
    if (args.empty())
        return prop(std::move(predicate));
    return make_formula(Kind::Atom, std::move(predicate), std::move(args), {});
}

Formula neg(Formula f) { return make_formula(Kind::Not, {}, {}, {std::move(f)}); }

Formula conj(Formula a, Formula b) {
    return make_formula(Kind::And, {}, {}, {std::move(a), std::move(b)});
}

Formula disj(Formula a, Formula b) {
    return make_formula(Kind::Or, {}, {}, {std::move(a), std::move(b)});
}

Formula circ(Formula f) { return make_formula(Kind::Circ, {}, {}, {std::move(f)}); }

Formula forall(std::string var, Formula body) {
    return make_formula(Kind::Forall, std::move(var), {}, {std::move(body)});
}

Formula exists(std::string var, Formula body) {
    return make_formula(Kind::Exists, std::move(var), {}, {std::move(body)});
}

Formula bullet(Formula f) { return neg(circ(std::move(f))); }
Formula t_sup(const Formula &f) { return conj(circ(f), f); }
Formula f_sup(const Formula &f) { return conj(circ(f), neg(f)); }

Formula top() {
    static const Formula t = circ(circ(prop(std::string(reserved_atom))));
    return t;
}

Formula bottom() {
    static const Formula b = bullet(bullet(prop(std::string(reserved_atom))));
    return b;
}

bool is_top(const Formula &f) { return f == top(); }
bool is_bottom(const Formula &f) { return f == bottom(); }

void Signature::declare_predicate(const std::string &name, std::size_t arity) {
    if (arity == 0 && constants.count(name))
        throw Error(ErrorKind::Arity, "'" + name + "' is used both as a constant and as an atom");
    auto [it, inserted] = predicates.emplace(name, arity);
    if (!inserted && it->second != arity)
        throw Error(ErrorKind::Arity, "predicate '" + name + "' used with arity " +
                                          std::to_string(arity) + " but declared with arity " +
                                          std::to_string(it->second));
}

void Signature::declare_constant(const std::string &name) {
    auto it = predicates.find(name);
    if (it != predicates.end() && it->second == 0)
        throw Error(ErrorKind::Arity, "'" + name + "' is used both as a constant and as an atom");
    constants.insert(name);
}

void Signature::merge(const Signature &other) {
    for (const auto &[name, arity] : other.predicates)
        declare_predicate(name, arity);
    for (const auto &c : other.constants)
        declare_constant(c);
}

void collect_signature(const Formula &f, Signature &sig) {
    switch (f.kind()) {
    case Kind::PropAtom:
        if (f.name() != reserved_atom)
            sig.declare_predicate(f.name(), 0);
        return;
    case Kind::Atom:
        sig.declare_predicate(f.name(), f.args().size());
        for (const Term &t : f.args())
            if (t.kind == Term::Kind::Constant)
                sig.declare_constant(t.name);
        return;
    case Kind::Not:
    case Kind::Circ:
        collect_signature(f.operand(), sig);
        return;
    case Kind::And:
    case Kind::Or:
        collect_signature(f.lhs(), sig);
        collect_signature(f.rhs(), sig);
        return;
    case Kind::Forall:
    case Kind::Exists:
        collect_signature(f.body(), sig);
        return;
    }
}

Signature signature_of(std::span<const Formula> formulas) {
    Signature sig;
    for (const Formula &f : formulas)
        collect_signature(f, sig);
    return sig;
}

// Rendering. Quantifiers extend to the right, so they are parenthesised
// whenever they are an operand; & and | associate to the left.

namespace {

void render_to(const Formula &f, std::string &out);

void render_operand(const Formula &f, bool wrap, std::string &out) {
    if (wrap)
        out += '(';
    render_to(f, out);
    if (wrap)
        out += ')';
}

void render_to(const Formula &f, std::string &out) {
    if (is_top(f)) {
        out += "top";
        return;
    }
    if (is_bottom(f)) {
        out += "bot";
        return;
    }
    switch (f.kind()) {
    case Kind::PropAtom:
        out += f.name();
        return;
    case Kind::Atom: {
        out += f.name();
        out += '(';
        bool first = true;
        for (const Term &t : f.args()) {
            if (!first)
                out += ',';
            first = false;
            out += render(t);
        }
        out += ')';
        return;
    }
    case Kind::Not:
    case Kind::Circ: {
        out += f.kind() == Kind::Not ? '~' : '@';
        const Formula &g = f.operand();
        render_operand(g, g.is_binary() || g.is_quantifier(), out);
        return;
    }
    case Kind::And:
        render_operand(f.lhs(), f.lhs().kind() == Kind::Or || f.lhs().is_quantifier(), out);
        out += " & ";
        render_operand(f.rhs(), f.rhs().is_binary() || f.rhs().is_quantifier(), out);
        return;
    case Kind::Or:
        render_operand(f.lhs(), f.lhs().is_quantifier(), out);
        out += " | ";
        render_operand(f.rhs(), f.rhs().kind() == Kind::Or || f.rhs().is_quantifier(), out);
        return;
    case Kind::Forall:
    case Kind::Exists:
        out += f.kind() == Kind::Forall ? "forall " : "exists ";
        out += f.variable();
        out += ". ";
        render_to(f.body(), out);
        return;
    }
}

} // namespace

std::string render(const Term &t) {
    if (t.kind == Term::Kind::Element)
        return "[" + t.name + "]";
    return t.name;
}

std::string render(const Formula &f) {
    std::string out;
    render_to(f, out);
    return out;
}

std::ostream &operator<<(std::ostream &os, const Formula &f) { return os << render(f); }

std::size_t complexity(const Formula &f) {
    switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::Atom:
        return 1;
    case Kind::Not:
        return complexity(f.operand()) + 1;
    case Kind::Circ:
        return complexity(f.operand()) + 2;
    case Kind::And:
    case Kind::Or:
        return complexity(f.lhs()) + complexity(f.rhs()) + 1;
    case Kind::Forall:
    case Kind::Exists:
        return complexity(f.body()) + 1;
    }
    return 0;
}

std::size_t depth(const Formula &f) {
    switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::Atom:
        return 0;
    case Kind::Not:
    case Kind::Circ:
        return depth(f.operand()) + 1;
    case Kind::And:
    case Kind::Or:
        return std::max(depth(f.lhs()), depth(f.rhs())) + 1;
    case Kind::Forall:
    case Kind::Exists:
        return depth(f.body()) + 1;
    }
    return 0;
}

Formula substitute(const Formula &f, const std::string &var, const Term &replacement) {
    if (!std::binary_search(f.free_variables().begin(), f.free_variables().end(), var))
        return f;
    switch (f.kind()) {
    case Kind::PropAtom:
        return f;
    case Kind::Atom: {
        std::vector<Term> args = f.args();
        for (Term &t : args)
            if (t.is_variable() && t.name == var)
                t = replacement;
        return atom(f.name(), std::move(args));
    }
    case Kind::Not:
        return neg(substitute(f.operand(), var, replacement));
    case Kind::Circ:
        return circ(substitute(f.operand(), var, replacement));
    case Kind::And:
        return conj(substitute(f.lhs(), var, replacement), substitute(f.rhs(), var, replacement));
    case Kind::Or:
        return disj(substitute(f.lhs(), var, replacement), substitute(f.rhs(), var, replacement));
    case Kind::Forall:
        return forall(f.variable(), substitute(f.body(), var, replacement));
    case Kind::Exists:
        return exists(f.variable(), substitute(f.body(), var, replacement));
    }
    return f;
}

Formula substitute(const Formula &f, const std::string &var, const std::string &constant) {
    return substitute(f, var, Term::constant(constant));
}

std::set<std::string> free_vars(const Formula &f) {
    return {f.free_variables().begin(), f.free_variables().end()};
}

bool is_sentence(const Formula &f) { return f.is_sentence(); }

bool is_generalized_literal(const Formula &f) {
    if (f.is_atomic())
        return true;
    return (f.kind() == Kind::Not || f.kind() == Kind::Circ) && f.operand().is_atomic();
}

bool is_quantifier_free(const Formula &f) {
    switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::Atom:
        return true;
    case Kind::Not:
    case Kind::Circ:
        return is_quantifier_free(f.operand());
    case Kind::And:
    case Kind::Or:
        return is_quantifier_free(f.lhs()) && is_quantifier_free(f.rhs());
    case Kind::Forall:
    case Kind::Exists:
        return false;
    }
    return false;
}

bool occurs_constant(const Formula &f, const std::string &constant) {
    switch (f.kind()) {
    case Kind::PropAtom:
        return false;
    case Kind::Atom:
        return std::any_of(f.args().begin(), f.args().end(), [&](const Term &t) {
            return t.kind == Term::Kind::Constant && t.name == constant;
        });
    case Kind::Not:
    case Kind::Circ:
        return occurs_constant(f.operand(), constant);
    case Kind::And:
    case Kind::Or:
        return occurs_constant(f.lhs(), constant) || occurs_constant(f.rhs(), constant);
    case Kind::Forall:
    case Kind::Exists:
        return occurs_constant(f.body(), constant);
    }
    return false;
}

namespace {

void collect_names(const Formula &f, std::set<std::string> &out) {
    switch (f.kind()) {
    case Kind::PropAtom:
        out.insert(f.name());
        return;
    case Kind::Atom:
        out.insert(f.name());
        for (const Term &t : f.args())
            out.insert(t.name);
        return;
    case Kind::Not:
    case Kind::Circ:
        collect_names(f.operand(), out);
        return;
    case Kind::And:
    case Kind::Or:
        collect_names(f.lhs(), out);
        collect_names(f.rhs(), out);
        return;
    case Kind::Forall:
    case Kind::Exists:
        out.insert(f.variable());
        collect_names(f.body(), out);
        return;
    }
}

void collect_subformulas(const Formula &f, std::unordered_set<Formula, FormulaHash> &seen,
                         std::vector<Formula> &out) {
    if (seen.count(f))
        return;
    switch (f.kind()) {
    case Kind::Not:
    case Kind::Circ:
        collect_subformulas(f.operand(), seen, out);
        break;
    case Kind::And:
    case Kind::Or:
        collect_subformulas(f.lhs(), seen, out);
        collect_subformulas(f.rhs(), seen, out);
        break;
    case Kind::Forall:
    case Kind::Exists:
        collect_subformulas(f.body(), seen, out);
        break;
    default:
        break;
    }
    seen.insert(f);
    out.push_back(f);
}

void count_binders(const Formula &f, std::map<std::string, int> &count) {
    switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::Atom:
        return;
    case Kind::Not:
    case Kind::Circ:
        count_binders(f.operand(), count);
        return;
    case Kind::And:
    case Kind::Or:
        count_binders(f.lhs(), count);
        count_binders(f.rhs(), count);
        return;
    case Kind::Forall:
    case Kind::Exists:
        ++count[f.variable()];
        count_binders(f.body(), count);
        return;
    }
}

Formula rename_clashing(const Formula &f, const std::set<std::string> &clashing,
                        FreshNames &fresh) {
    switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::Atom:
        return f;
    case Kind::Not:
        return neg(rename_clashing(f.operand(), clashing, fresh));
    case Kind::Circ:
        return circ(rename_clashing(f.operand(), clashing, fresh));
    case Kind::And: {
        Formula l = rename_clashing(f.lhs(), clashing, fresh);
        return conj(std::move(l), rename_clashing(f.rhs(), clashing, fresh));
    }
    case Kind::Or: {
        Formula l = rename_clashing(f.lhs(), clashing, fresh);
        return disj(std::move(l), rename_clashing(f.rhs(), clashing, fresh));
    }
    case Kind::Forall:
    case Kind::Exists: {
        std::string var = f.variable();
        Formula body = f.body();
        if (clashing.count(var)) {
            std::string renamed = fresh.next();
            body = substitute(body, var, Term::variable(renamed));
            var = std::move(renamed);
        }
        body = rename_clashing(body, clashing, fresh);
        return f.kind() == Kind::Forall ? forall(std::move(var), std::move(body))
                                        : exists(std::move(var), std::move(body));
    }
    }
    return f;
}

} // namespace

std::set<std::string> names_in(const Formula &f) {
    std::set<std::string> out;
    collect_names(f, out);
    return out;
}

std::vector<Formula> subformulas(const Formula &f) {
    std::unordered_set<Formula, FormulaHash> seen;
    std::vector<Formula> out;
    collect_subformulas(f, seen, out);
    return out;
}

std::string FreshNames::next() {
    for (;;) {
        std::string candidate = prefix_ + std::to_string(++counter_);
        if (taken_.insert(candidate).second)
            return candidate;
    }
}

Formula rename_bound(const Formula &f, FreshNames &fresh) {
    std::map<std::string, int> count;
    count_binders(f, count);
    std::set<std::string> clashing;
    for (const auto &[var, n] : count)
        if (n > 1 || std::binary_search(f.free_variables().begin(), f.free_variables().end(), var))
            clashing.insert(var);
    if (clashing.empty())
        return f;
    return rename_clashing(f, clashing, fresh);
}

Formula rename_bound(const Formula &f) {
    FreshNames fresh("x", names_in(f));
    return rename_bound(f, fresh);
}

} // namespace letf
