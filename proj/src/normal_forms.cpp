#include "letf/normal_forms.hpp"

#include "letf/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace letf {

namespace {

// Where a chain of ~/@ over a base ends up; every chain lands in one of these.
enum class Prefix { Plain, Negated, Circled, Bulleted, Top, Bottom };

Prefix apply_not(Prefix p) {
    switch (p) {
    case Prefix::Plain: return Prefix::Negated;
    case Prefix::Negated: return Prefix::Plain;      // DN
    case Prefix::Circled: return Prefix::Bulleted;   // ~@A = #A
    case Prefix::Bulleted: return Prefix::Circled;   // ~~@A, DN
    case Prefix::Top: return Prefix::Bottom;         // ~@@A = #@A, constantly F
    case Prefix::Bottom: return Prefix::Top;         // ~##A = @#A = @@A
    }
    return p;
}

Prefix apply_circ(Prefix p) {
    switch (p) {
    case Prefix::Plain:
    case Prefix::Negated: return Prefix::Circled;    // @~A = @A
    default: return Prefix::Top;                     // @ over @-headed: @@B
    }
}

Formula build(Prefix p, const Formula &base) {
    switch (p) {
    case Prefix::Plain: return base;
    case Prefix::Negated: return neg(base);
    case Prefix::Circled: return circ(base);
    case Prefix::Bulleted: return bullet(base);
    case Prefix::Top: return top();
    case Prefix::Bottom: return bottom();
    }
    return base;
}

Formula reduce_children(const Formula &f) {
    switch (f.kind()) {
    case Kind::And: return conj(reduce_prefix(f.lhs()), reduce_prefix(f.rhs()));
    case Kind::Or: return disj(reduce_prefix(f.lhs()), reduce_prefix(f.rhs()));
    case Kind::Forall: return forall(f.variable(), reduce_prefix(f.body()));
    case Kind::Exists: return exists(f.variable(), reduce_prefix(f.body()));
    default: return f;
    }
}

Formula left_fold(const std::vector<Formula> &items, Formula (*op)(Formula, Formula)) {
    Formula acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i)
        acc = op(std::move(acc), items[i]);
    return acc;
}

// @(A&B) and @(A|B), expanded one level.
Formula circ_of_and(const Formula &a, const Formula &b) {
    return disj(disj(left_fold({circ(a), circ(b), a, b}, conj), conj(circ(a), neg(a))),
                conj(circ(b), neg(b)));
}

Formula circ_of_or(const Formula &a, const Formula &b) {
    return disj(disj(conj(circ(a), a), conj(circ(b), b)),
                left_fold({circ(a), circ(b), neg(a), neg(b)}, conj));
}

// #(A&B) and #(A|B).
Formula bullet_of_and(const Formula &a, const Formula &b) {
    return conj(conj(left_fold({bullet(a), bullet(b), neg(a), neg(b)}, disj), disj(bullet(a), a)),
                disj(bullet(b), b));
}

Formula bullet_of_or(const Formula &a, const Formula &b) {
    return conj(conj(disj(bullet(a), neg(a)), disj(bullet(b), neg(b))),
                left_fold({bullet(a), bullet(b), a, b}, disj));
}

void require_quantifier_free(const Formula &f) {
    if (!is_quantifier_free(f))
        throw Error(ErrorKind::InvalidArgument,
                    "normal forms are propositional; got a quantified formula: " + render(f));
}

Formula expand(const Formula &f);

// Expansion of @g.
Formula expand_circ(const Formula &g) {
    switch (g.kind()) {
    case Kind::PropAtom:
    case Kind::Atom:
        return circ(g);
    case Kind::Not:
        return expand_circ(g.operand());
    case Kind::Circ:
        return top();
    case Kind::And:
        return expand(circ_of_and(g.lhs(), g.rhs()));
    case Kind::Or:
        return expand(circ_of_or(g.lhs(), g.rhs()));
    default:
        break;
    }
    return g;
}

// Expansion of #g.
Formula expand_bullet(const Formula &g) {
    switch (g.kind()) {
    case Kind::PropAtom:
    case Kind::Atom:
        return bullet(g);
    case Kind::Not:
        return expand_bullet(g.operand());
    case Kind::Circ:
        return bottom();
    case Kind::And:
        return expand(bullet_of_and(g.lhs(), g.rhs()));
    case Kind::Or:
        return expand(bullet_of_or(g.lhs(), g.rhs()));
    default:
        break;
    }
    return g;
}

Formula expand(const Formula &f) {
    if (is_top(f) || is_bottom(f))
        return f;
    switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::Atom:
        return f;
    case Kind::Not:
        if (f.operand().kind() == Kind::Circ)
            return expand_bullet(f.operand().operand());
        return neg(expand(f.operand()));
    case Kind::Circ:
        return expand_circ(f.operand());
    case Kind::And:
        return conj(expand(f.lhs()), expand(f.rhs()));
    case Kind::Or:
        return disj(expand(f.lhs()), expand(f.rhs()));
    default:
        break;
    }
    return f;
}

Formula push(const Formula &f) {
    switch (f.kind()) {
    case Kind::And:
        return conj(push(f.lhs()), push(f.rhs()));
    case Kind::Or:
        return disj(push(f.lhs()), push(f.rhs()));
    case Kind::Circ:
        return reduce_prefix(f);
    case Kind::Not: {
        const Formula &g = f.operand();
        switch (g.kind()) {
        case Kind::And: return disj(push(neg(g.lhs())), push(neg(g.rhs())));
        case Kind::Or: return conj(push(neg(g.lhs())), push(neg(g.rhs())));
        case Kind::Not: return push(g.operand());
        default: return reduce_prefix(f);
        }
    }
    default:
        return f;
    }
}

using Clause = std::vector<Formula>;

void add_unique(std::vector<Formula> &clause, const Formula &lit) {
    if (std::find(clause.begin(), clause.end(), lit) == clause.end())
        clause.push_back(lit);
}

bool subset(const Clause &a, const Clause &b) {
    return std::all_of(a.begin(), a.end(), [&b](const Formula &lit) {
        return std::find(b.begin(), b.end(), lit) != b.end();
    });
}

// Designation only sees first coordinates, which combine classically under
// & and |, so a clause containing another one is redundant (absorption).
void add_unique_clause(std::vector<Clause> &clauses, Clause c) {
    if (std::any_of(clauses.begin(), clauses.end(), [&c](const Clause &d) { return subset(d, c); }))
        return;
    std::erase_if(clauses, [&c](const Clause &d) { return subset(c, d); });
    clauses.push_back(std::move(c));
}

// Clauses of the outer connective `outer`; each clause is a list joined by the inner one.
std::vector<Clause> distribute(const Formula &f, Kind outer) {
    const Kind inner = outer == Kind::Or ? Kind::And : Kind::Or;
    if (f.kind() == outer) {
        std::vector<Clause> out = distribute(f.lhs(), outer);
        for (Clause &c : distribute(f.rhs(), outer))
            add_unique_clause(out, std::move(c));
        return out;
    }
    if (f.kind() == inner) {
        const std::vector<Clause> left = distribute(f.lhs(), outer);
        const std::vector<Clause> right = distribute(f.rhs(), outer);
        std::vector<Clause> out;
        for (const Clause &l : left) {
            for (const Clause &r : right) {
                Clause c = l;
                for (const Formula &lit : r)
                    add_unique(c, lit);
                add_unique_clause(out, std::move(c));
            }
        }
        return out;
    }
    return {{f}};
}

bool flatten(const Formula &f, Kind op, std::vector<Formula> &out) {
    if (f.kind() == op && !is_top(f) && !is_bottom(f)) {
        flatten(f.lhs(), op, out);
        flatten(f.rhs(), op, out);
    } else {
        out.push_back(f);
    }
    return true;
}

} // namespace

Formula reduce_prefix(const Formula &f) {
    std::vector<Kind> chain;
    const Formula *cur = &f;
    while (cur->kind() == Kind::Not || cur->kind() == Kind::Circ) {
        chain.push_back(cur->kind());
        cur = &cur->operand();
    }
    const Formula base = reduce_children(*cur);
    if (chain.empty())
        return base;
    Prefix p = Prefix::Plain;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        p = *it == Kind::Not ? apply_not(p) : apply_circ(p);
    return build(p, base);
}

Formula expand_classicality(const Formula &f) {
    require_quantifier_free(f);
    return expand(f);
}

Formula push_negations(const Formula &f) {
    require_quantifier_free(f);
    return push(f);
}

// Termination, as the lexicographic measure (connectives under @ or #,
// negation depth, inner connectives above outer ones): expand lowers the
// first, push lowers the second without raising the first, distribute
// lowers the third and leaves literals alone.
Formula to_normal_form(const Formula &f, NormalFormKind kind) {
    const Formula flat = push_negations(expand_classicality(f));
    const Kind outer = kind == NormalFormKind::DNF ? Kind::Or : Kind::And;
    const Kind inner = kind == NormalFormKind::DNF ? Kind::And : Kind::Or;
    std::vector<Formula> parts;
    for (const Clause &c : distribute(flat, outer))
        parts.push_back(left_fold(c, inner == Kind::And ? conj : disj));
    return left_fold(parts, outer == Kind::Or ? disj : conj);
}

bool is_nf_literal(const Formula &f) {
    if (is_top(f) || is_bottom(f) || f.is_atomic())
        return true;
    if (f.kind() == Kind::Circ)
        return f.operand().is_atomic();
    if (f.kind() == Kind::Not) {
        const Formula &g = f.operand();
        return g.is_atomic() || (g.kind() == Kind::Circ && g.operand().is_atomic());
    }
    return false;
}

bool is_normal_form(const Formula &f, NormalFormKind kind) {
    const Kind outer = kind == NormalFormKind::DNF ? Kind::Or : Kind::And;
    const Kind inner = kind == NormalFormKind::DNF ? Kind::And : Kind::Or;
    std::vector<Formula> clauses;
    flatten(f, outer, clauses);
    for (const Formula &c : clauses) {
        std::vector<Formula> lits;
        flatten(c, inner, lits);
        if (!std::all_of(lits.begin(), lits.end(), is_nf_literal))
            return false;
    }
    return true;
}

} // namespace letf
