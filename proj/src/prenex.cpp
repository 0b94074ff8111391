#include "letf/prenex.hpp"

#include "letf/error.hpp"

#include <utility>

namespace letf {

namespace {

Formula requantify(Kind kind, const std::string &var, Formula body) {
    return kind == Kind::Forall ? forall(var, std::move(body)) : exists(var, std::move(body));
}

Kind dual(Kind kind) { return kind == Kind::Forall ? Kind::Exists : Kind::Forall; }

std::size_t quantifier_count(const Formula &f) {
    switch (f.kind()) {
    case Kind::Forall:
    case Kind::Exists:
        return 1 + quantifier_count(f.body());
    case Kind::Not:
    case Kind::Circ:
        return quantifier_count(f.operand());
    case Kind::And:
    case Kind::Or:
        return quantifier_count(f.lhs()) + quantifier_count(f.rhs());
    default:
        return 0;
    }
}

// Equivalent formula in which ~ and @ apply to quantifier-free formulas only.
Formula lower(const Formula &f) {
    if (is_quantifier_free(f))
        return f;
    switch (f.kind()) {
    case Kind::And:
        return conj(lower(f.lhs()), lower(f.rhs()));
    case Kind::Or:
        return disj(lower(f.lhs()), lower(f.rhs()));
    case Kind::Forall:
    case Kind::Exists:
        return requantify(f.kind(), f.variable(), lower(f.body()));
    case Kind::Not: {
        const Formula &g = f.operand();
        switch (g.kind()) {
        case Kind::Not:
            return lower(g.operand());
        case Kind::And:
            return disj(lower(neg(g.lhs())), lower(neg(g.rhs())));
        case Kind::Or:
            return conj(lower(neg(g.lhs())), lower(neg(g.rhs())));
        case Kind::Forall:
        case Kind::Exists:
            // ~forall x A -| |- exists x ~A, ~exists x A -| |- forall x ~A
            return requantify(dual(g.kind()), g.variable(), lower(neg(g.body())));
        case Kind::Circ:
            return lower(neg(lower(g)));
        default:
            return f;
        }
    }
    case Kind::Circ: {
        const Formula &g = f.operand();
        switch (g.kind()) {
        case Kind::Not:
            return lower(circ(g.operand()));
        case Kind::Circ:
            return top();
        // @(A & B) -| |- @A & (@B | ~A) | @B & ~B, and dually for |. Only
        // @B is written twice, so B is taken to be the side with fewer
        // quantifiers: every copy of @ over a quantifier becomes two of them.
        case Kind::And:
        case Kind::Or: {
            const bool swap = quantifier_count(g.lhs()) < quantifier_count(g.rhs());
            const Formula &a = swap ? g.rhs() : g.lhs(), &b = swap ? g.lhs() : g.rhs();
            if (g.kind() == Kind::And)
                return lower(disj(conj(circ(a), disj(circ(b), neg(a))), conj(circ(b), neg(b))));
            return lower(disj(conj(circ(a), disj(circ(b), a)), conj(circ(b), b)));
        }
        case Kind::Forall: {
            // @forall x B -| |- forall x (B & @B) | exists x (~B & @B)
            const Formula &b = g.body();
            return lower(disj(forall(g.variable(), conj(b, circ(b))),
                              exists(g.variable(), conj(neg(b), circ(b)))));
        }
        case Kind::Exists: {
            // @exists x B -| |- exists x (B & @B) | forall x (~B & @B)
            const Formula &b = g.body();
            return lower(disj(exists(g.variable(), conj(b, circ(b))),
                              forall(g.variable(), conj(neg(b), circ(b)))));
        }
        default:
            return f;
        }
    }
    default:
        return f;
    }
}

struct Prefixed {
    std::vector<std::pair<Kind, std::string>> prefix;
    Formula matrix;
};

// Requires distinct bound variables, none of them free anywhere, so moving a
// quantifier over the other operand of & or | never captures.
Prefixed pull(const Formula &f) {
    if (f.is_quantifier()) {
        Prefixed inner = pull(f.body());
        inner.prefix.insert(inner.prefix.begin(), {f.kind(), f.variable()});
        return inner;
    }
    if (f.is_binary() && !is_quantifier_free(f)) {
        Prefixed l = pull(f.lhs());
        Prefixed r = pull(f.rhs());
        // The two prefixes may interleave in any order. A forall on each side
        // of & shares one variable (and an exists on each side of |), since
        // the quantifier folds the connective itself.
        const Kind shared = f.kind() == Kind::And ? Kind::Forall : Kind::Exists;
        Prefixed out{{}, top()};
        std::size_t i = 0, j = 0;
        while (i < l.prefix.size() || j < r.prefix.size()) {
            const bool li = i < l.prefix.size(), rj = j < r.prefix.size();
            if (li && rj && l.prefix[i].first == shared && r.prefix[j].first == shared) {
                r.matrix = substitute(r.matrix, r.prefix[j].second,
                                      Term::variable(l.prefix[i].second));
                out.prefix.push_back(l.prefix[i++]);
                ++j;
            } else if (li && (l.prefix[i].first != shared || !rj)) {
                out.prefix.push_back(l.prefix[i++]);
            } else {
                out.prefix.push_back(r.prefix[j++]);
            }
        }
        out.matrix = f.kind() == Kind::And ? conj(l.matrix, r.matrix) : disj(l.matrix, r.matrix);
        return out;
    }
    return {{}, f};
}

} // namespace

bool is_pnf(const Formula &f) {
    const Formula *cur = &f;
    while (cur->is_quantifier())
        cur = &cur->body();
    return is_quantifier_free(*cur);
}

Formula to_pnf(const Formula &f) {
    if (is_pnf(f))
        return f;
    const Formula renamed = rename_bound(lower(f));
    Prefixed p = pull(renamed);
    Formula out = p.matrix;
    for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it)
        out = requantify(it->first, it->second, std::move(out));
    return out;
}

FoVerdict verify_pnf(const Formula &f, const Formula &g, std::size_t max_size,
                     const Signature &sig, unsigned jobs) {
    FoOptions options;
    options.max_size = max_size;
    options.jobs = jobs;
    return fo_equivalent(f, g, sig, options);
}

} // namespace letf
