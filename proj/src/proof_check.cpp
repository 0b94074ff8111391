#include "letf/error.hpp"
#include "letf/proof.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace letf {

ProofTree ProofTree::premise(Formula f) { return {RuleId::Premise, std::move(f), {}, {}, {}}; }

ProofTree ProofTree::hypothesis(std::string label, Formula f) {
    return {RuleId::Hypothesis, std::move(f), {}, std::move(label), {}};
}

ProofTree ProofTree::node(RuleId rule, Formula conclusion, std::vector<ProofTree> children) {
    return {rule, std::move(conclusion), std::move(children), {}, {}};
}

ProofTree &ProofTree::discharge(std::string l) {
    label = std::move(l);
    return *this;
}

ProofTree &ProofTree::with_eigen(std::string constant) {
    eigen = std::move(constant);
    return *this;
}

std::size_t ProofTree::size() const {
    std::size_t n = 1;
    for (const auto &c : children)
        n += c.size();
    return n;
}

std::string_view to_string(ProofErrorKind k) {
    switch (k) {
    case ProofErrorKind::SchemaMismatch: return "schema mismatch";
    case ProofErrorKind::ArityMismatch: return "arity mismatch";
    case ProofErrorKind::UndischargedHypothesis: return "undischarged hypothesis";
    case ProofErrorKind::DoublyDischarged: return "doubly discharged";
    case ProofErrorKind::NotAPremise: return "not a premise";
    case ProofErrorKind::EigenvariableViolation: return "eigenvariable violation";
    case ProofErrorKind::FreeVariableViolation: return "free-variable violation";
    case ProofErrorKind::NotSentence: return "not a sentence";
    }
    return "?";
}

namespace {

struct Failure {
    ProofError error;
};

[[noreturn]] void fail(ProofErrorKind kind, const std::string &path, std::string reason) {
    throw Failure{{kind, path, std::move(reason)}};
}

struct Open {
    Formula formula;
    std::optional<std::string> label; // empty for premises
    std::string path;
};

using Item = std::pair<const Pattern *, Formula>;

// Matches items in any order, postponing those whose A(c/x) is not determined yet.
bool match_all(const std::vector<Item> &items, Bindings &b) {
    std::vector<bool> done(items.size(), false);
    std::size_t remaining = items.size();
    while (remaining > 0) {
        bool progress = false;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (done[i])
                continue;
            Bindings trial = b;
            switch (match(*items[i].first, items[i].second, trial)) {
            case MatchResult::Fail:
                return false;
            case MatchResult::Defer:
                break;
            case MatchResult::Ok:
                b = std::move(trial);
                done[i] = true;
                --remaining;
                progress = true;
                break;
            }
        }
        if (!progress)
            return false;
    }
    return true;
}

class Checker {
public:
    explicit Checker(std::span<const Formula> premises) : premises_(premises) {}

    std::vector<Open> check(const ProofTree &t, const std::string &path) {
        if (!t.conclusion.is_sentence())
            fail(ProofErrorKind::NotSentence, path, render(t.conclusion) + " has free variables");
        switch (t.rule) {
        case RuleId::Premise:
            leaf(t, path);
            if (std::find(premises_.begin(), premises_.end(), t.conclusion) == premises_.end())
                fail(ProofErrorKind::NotAPremise, path, render(t.conclusion) + " is not a premise");
            return {{t.conclusion, std::nullopt, path}};
        case RuleId::Hypothesis:
            leaf(t, path);
            if (!t.label)
                fail(ProofErrorKind::SchemaMismatch, path, "hypothesis without a label");
            return {{t.conclusion, t.label, path}};
        default:
            return inference(t, path);
        }
    }

private:
    static void leaf(const ProofTree &t, const std::string &path) {
        if (!t.children.empty())
            fail(ProofErrorKind::ArityMismatch, path, "leaves take no children");
    }

    std::vector<Open> inference(const ProofTree &t, const std::string &path) {
        const auto &info = rule_info(t.rule);
        const std::string name(info.name);
        if (t.children.size() != info.premise_count)
            fail(ProofErrorKind::ArityMismatch, path,
                 name + " takes " + std::to_string(info.premise_count) + " premises, got " +
                     std::to_string(t.children.size()));
        if (t.label && !info.discharges)
            fail(ProofErrorKind::SchemaMismatch, path, name + " discharges no hypotheses");
        if (t.label && std::find(labels_.begin(), labels_.end(), *t.label) != labels_.end())
            fail(ProofErrorKind::DoublyDischarged, path,
                 "label " + *t.label + " is already discharged by an enclosing rule");
        if (t.eigen && !std::any_of(info.schemas.begin(), info.schemas.end(), schema_has_instance))
            fail(ProofErrorKind::SchemaMismatch, path, name + " takes no eigen constant");

        std::vector<std::vector<Open>> opens;
        if (t.label)
            labels_.push_back(*t.label);
        for (std::size_t i = 0; i < t.children.size(); ++i)
            opens.push_back(check(t.children[i], path + "." + std::to_string(i)));
        if (t.label)
            labels_.pop_back();

        std::optional<Failure> side_failure;
        // A match that leaves one of this node's own hypotheses open (it sits in a
        // non-discharging slot) is kept only if nothing better turns up.
        std::optional<std::vector<Open>> leaky;
        for (const auto &schema : info.schemas) {
            std::vector<std::size_t> perm(t.children.size());
            std::iota(perm.begin(), perm.end(), 0);
            do {
                Bindings b;
                if (t.eigen)
                    b.constant = Term::constant(*t.eigen);
                if (!match_all(items(t, schema, perm, opens), b))
                    continue;
                try {
                    side_conditions(t, info, schema, perm, opens, b, path);
                } catch (const Failure &f) {
                    if (!side_failure)
                        side_failure = f;
                    continue;
                }
                auto rest = remaining(t, schema, perm, opens);
                const bool leaks = t.label && std::any_of(rest.begin(), rest.end(),
                                                          [&](const Open &o) { return o.label == t.label; });
                if (!leaks)
                    return rest;
                if (!leaky)
                    leaky = std::move(rest);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        if (leaky)
            return std::move(*leaky);
        if (side_failure)
            throw *side_failure;
        fail(ProofErrorKind::SchemaMismatch, path,
             render(t.conclusion) + " is not an instance of " + name);
    }

    static bool schema_has_instance(const Schema &s) {
        if (uses_instance(s.conclusion))
            return true;
        return std::any_of(s.premises.begin(), s.premises.end(), [](const PremiseSlot &slot) {
            return uses_instance(slot.formula) || (slot.discharges && uses_instance(*slot.discharges));
        });
    }

    // perm[slot] is the child filling that premise slot.
    std::vector<Item> items(const ProofTree &t, const Schema &schema,
                            const std::vector<std::size_t> &perm,
                            const std::vector<std::vector<Open>> &opens) const {
        std::vector<Item> out{{&schema.conclusion, t.conclusion}};
        for (std::size_t slot = 0; slot < schema.premises.size(); ++slot) {
            const auto &ps = schema.premises[slot];
            out.emplace_back(&ps.formula, t.children[perm[slot]].conclusion);
            if (ps.discharges && t.label)
                for (const auto &o : opens[perm[slot]])
                    if (o.label == t.label)
                        out.emplace_back(&*ps.discharges, o.formula);
        }
        return out;
    }

    std::vector<Open> remaining(const ProofTree &t, const Schema &schema,
                                const std::vector<std::size_t> &perm,
                                const std::vector<std::vector<Open>> &opens) const {
        std::vector<Open> out;
        for (std::size_t slot = 0; slot < schema.premises.size(); ++slot) {
            const bool discharging = schema.premises[slot].discharges && t.label;
            for (const auto &o : opens[perm[slot]])
                if (!discharging || o.label != t.label)
                    out.push_back(o);
        }
        return out;
    }

    static void side_conditions(const ProofTree &t, const RuleInfo &info, const Schema &schema,
                                const std::vector<std::size_t> &perm,
                                const std::vector<std::vector<Open>> &opens, const Bindings &b,
                                const std::string &path) {
        const auto eigen_kind = ProofErrorKind::EigenvariableViolation;
        switch (info.side) {
        case SideCondition::None:
            return;
        case SideCondition::NotFreeInB: {
            const auto &fv = b.metas[1]->free_variables();
            if (std::binary_search(fv.begin(), fv.end(), *b.variable))
                fail(ProofErrorKind::FreeVariableViolation, path,
                     *b.variable + " is free in " + render(*b.metas[1]));
            return;
        }
        case SideCondition::EigenIntro: {
            const auto &c = b.constant->name;
            if (occurs_constant(*b.metas[0], c))
                fail(eigen_kind, path, c + " occurs in " + render(*b.metas[0]));
            for (const auto &o : opens[perm[0]])
                if (occurs_constant(o.formula, c))
                    fail(eigen_kind, path,
                         c + " occurs in open assumption " + render(o.formula) + " at " + o.path);
            return;
        }
        case SideCondition::EigenElim: {
            if (!b.constant)
                return; // nothing discharged: the constant is unconstrained
            const auto &c = b.constant->name;
            if (occurs_constant(*b.metas[0], c))
                fail(eigen_kind, path, c + " occurs in " + render(*b.metas[0]));
            if (occurs_constant(t.conclusion, c))
                fail(eigen_kind, path, c + " occurs in the conclusion " + render(t.conclusion));
            for (std::size_t slot = 0; slot < schema.premises.size(); ++slot) {
                if (!schema.premises[slot].discharges)
                    continue;
                for (const auto &o : opens[perm[slot]]) {
                    if (t.label && o.label == t.label)
                        continue;
                    if (occurs_constant(o.formula, c))
                        fail(eigen_kind, path,
                             c + " occurs in open assumption " + render(o.formula) + " at " +
                                 o.path);
                }
            }
            return;
        }
        }
    }

    std::span<const Formula> premises_;
    std::vector<std::string> labels_;
};

} // namespace

ProofCheck check_proof(const ProofTree &t, std::span<const Formula> premises) {
    try {
        Checker checker(premises);
        for (const auto &o : checker.check(t, "root"))
            if (o.label)
                return {ProofError{ProofErrorKind::UndischargedHypothesis, o.path,
                                   "hypothesis " + render(o.formula) + " [" + *o.label +
                                       "] is never discharged"}};
        return {};
    } catch (const Failure &f) {
        return {f.error};
    }
}

} // namespace letf
