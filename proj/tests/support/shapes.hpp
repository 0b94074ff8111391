#pragma once

// Shape checkers and proof mutations shared by the unit tests and the
// acceptance run. Written against the formula tree only, not against the
// library's own predicates.

#include "letf/proof.hpp"
#include "letf/syntax.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace shapes {

using namespace letf;

inline bool nf_literal(const Formula &f) {
    if (f == top() || f == bottom() || f.kind() == Kind::PropAtom)
        return true;
    if (f.kind() == Kind::Circ)
        return f.operand().kind() == Kind::PropAtom;
    if (f.kind() == Kind::Not)
        return f.operand().kind() == Kind::PropAtom ||
               (f.operand().kind() == Kind::Circ &&
                f.operand().operand().kind() == Kind::PropAtom);
    return false;
}

inline bool flat(const Formula &f, Kind op) {
    if (f.kind() == op)
        return flat(f.lhs(), op) && flat(f.rhs(), op);
    return nf_literal(f);
}

// outer-connective tree of inner-connective trees of literals
inline bool shaped(const Formula &f, Kind outer, Kind inner) {
    if (f.kind() == outer)
        return shaped(f.lhs(), outer, inner) && shaped(f.rhs(), outer, inner);
    return flat(f, inner);
}

inline bool dnf_shape(const Formula &f) { return shaped(f, Kind::Or, Kind::And); }
inline bool cnf_shape(const Formula &f) { return shaped(f, Kind::And, Kind::Or); }

inline bool quantifier_free(const Formula &g) {
    switch (g.kind()) {
    case Kind::Forall:
    case Kind::Exists:
        return false;
    case Kind::Not:
    case Kind::Circ:
        return quantifier_free(g.operand());
    case Kind::And:
    case Kind::Or:
        return quantifier_free(g.lhs()) && quantifier_free(g.rhs());
    default:
        return true;
    }
}

// A quantifier prefix over a quantifier-free matrix.
inline bool prenex_shape(const Formula &f) {
    return f.is_quantifier() ? prenex_shape(f.body()) : quantifier_free(f);
}

inline void binders(const Formula &f, std::vector<std::string> &out) {
    if (f.is_quantifier()) {
        out.push_back(f.variable());
        binders(f.body(), out);
    } else if (f.kind() == Kind::Not || f.kind() == Kind::Circ) {
        binders(f.operand(), out);
    } else if (f.is_binary()) {
        binders(f.lhs(), out);
        binders(f.rhs(), out);
    }
}

inline std::vector<ProofTree *> nodes(ProofTree &t) {
    std::vector<ProofTree *> out{&t};
    for (auto &c : t.children)
        for (auto *n : nodes(c))
            out.push_back(n);
    return out;
}

// The rule concludes an arbitrary C that no premise constrains.
inline bool free_conclusion(RuleId id) {
    if (id == RuleId::Premise || id == RuleId::Hypothesis)
        return false;
    for (const auto &s : rule_info(id).schemas) {
        if (s.conclusion.kind != Pattern::Kind::Meta)
            continue;
        const bool constrained = std::any_of(s.premises.begin(), s.premises.end(),
                                             [&](const PremiseSlot &slot) {
                                                 return uses_meta(slot.formula, s.conclusion.meta);
                                             });
        if (!constrained)
            return true;
    }
    return false;
}

// Replaces the k-th subformula (preorder) by a fresh atom.
inline Formula replace_at(const Formula &f, int &k, const Formula &fresh) {
    if (k-- == 0)
        return fresh;
    switch (f.kind()) {
    case Kind::Not:
        return neg(replace_at(f.operand(), k, fresh));
    case Kind::Circ:
        return circ(replace_at(f.operand(), k, fresh));
    case Kind::And: {
        auto l = replace_at(f.lhs(), k, fresh);
        return conj(std::move(l), replace_at(f.rhs(), k, fresh));
    }
    case Kind::Or: {
        auto l = replace_at(f.lhs(), k, fresh);
        return disj(std::move(l), replace_at(f.rhs(), k, fresh));
    }
    default:
        return f;
    }
}

inline Formula mutate(const Formula &f, std::mt19937 &rng) {
    std::uniform_int_distribution<int> op(0, 3);
    switch (op(rng)) {
    case 0:
        return neg(f);
    case 1:
        return circ(f);
    case 2:
        if (f.kind() == Kind::And)
            return disj(f.lhs(), f.rhs());
        if (f.kind() == Kind::Or)
            return conj(f.lhs(), f.rhs());
        return conj(f, f);
    default: {
        std::uniform_int_distribution<int> at(0, static_cast<int>(complexity(f)) - 1);
        int k = at(rng);
        return replace_at(f, k, prop("mut"));
    }
    }
}

// One mutated node, never the root of a rule whose conclusion is unconstrained.
// Returns false when the mutation left the formula unchanged.
inline bool mutate_once(ProofTree &t, std::mt19937 &rng) {
    auto all = nodes(t);
    std::uniform_int_distribution<std::size_t> pick(free_conclusion(t.rule) ? 1 : 0,
                                                    all.size() - 1);
    auto *n = all[pick(rng)];
    auto mutated = mutate(n->conclusion, rng);
    if (mutated == n->conclusion)
        return false;
    n->conclusion = std::move(mutated);
    return true;
}

} // namespace shapes
