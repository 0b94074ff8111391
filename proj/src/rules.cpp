#include "letf/error.hpp"
#include "letf/proof.hpp"

#include <algorithm>

namespace letf {

namespace {

using K = Pattern::Kind;

Pattern mk(K k, std::vector<Pattern> kids = {}) { return Pattern{k, 0, std::move(kids)}; }

const Pattern A{K::Meta, 0, {}};
const Pattern B{K::Meta, 1, {}};
const Pattern C{K::Meta, 2, {}};
const Pattern Ac{K::Instance, 0, {}};

Pattern operator~(Pattern p) { return mk(K::Not, {std::move(p)}); }
Pattern operator&(Pattern a, Pattern b) { return mk(K::And, {std::move(a), std::move(b)}); }
Pattern operator|(Pattern a, Pattern b) { return mk(K::Or, {std::move(a), std::move(b)}); }
Pattern o(Pattern p) { return mk(K::Circ, {std::move(p)}); }
Pattern bul(Pattern p) { return ~o(std::move(p)); }
Pattern all(Pattern p) { return mk(K::Forall, {std::move(p)}); }
Pattern ex(Pattern p) { return mk(K::Exists, {std::move(p)}); }
Pattern Tm(const Pattern &p) { return o(p) & p; }
Pattern Fm(const Pattern &p) { return o(p) & ~p; }

PremiseSlot s(Pattern p) { return {std::move(p), std::nullopt}; }
PremiseSlot d(Pattern p, Pattern hyp) { return {std::move(p), std::move(hyp)}; }

Schema sc(std::vector<PremiseSlot> premises, Pattern conclusion) {
    return {std::move(premises), std::move(conclusion)};
}

struct Def {
    RuleId id;
    std::string_view name, display;
    SideCondition side;
    bool quantifier;
    std::vector<Schema> schemas;
};

std::vector<RuleInfo> build() {
    using R = RuleId;
    const auto none = SideCondition::None;
    const auto intro = SideCondition::EigenIntro;
    const auto elim = SideCondition::EigenElim;
    const auto nfree = SideCondition::NotFreeInB;
    std::vector<Def> defs = {
        {R::AndI, "I&", "I∧", none, false, {sc({s(A), s(B)}, A & B)}},
        {R::AndE, "E&", "E∧", none, false, {sc({s(A & B)}, A), sc({s(A & B)}, B)}},
        {R::OrI, "I|", "I∨", none, false, {sc({s(A)}, A | B), sc({s(B)}, A | B)}},
        {R::OrE, "E|", "E∨", none, false, {sc({s(A | B), d(C, A), d(C, B)}, C)}},
        {R::NotAndI, "I~&", "I¬∧", none, false, {sc({s(~A)}, ~(A & B)), sc({s(~B)}, ~(A & B))}},
        {R::NotAndE, "E~&", "E¬∧", none, false, {sc({s(~(A & B)), d(C, ~A), d(C, ~B)}, C)}},
        {R::NotOrI, "I~|", "I¬∨", none, false, {sc({s(~A), s(~B)}, ~(A | B))}},
        {R::NotOrE, "E~|", "E¬∨", none, false, {sc({s(~(A | B))}, ~A), sc({s(~(A | B))}, ~B)}},
        {R::DN, "DN", "DN", none, false, {sc({s(A)}, ~~A), sc({s(~~A)}, A)}},
        {R::ExpCirc, "EXP@", "EXP∘", none, false, {sc({s(o(A)), s(A), s(~A)}, C)}},
        {R::PemCirc, "PEM@", "PEM∘", none, false, {sc({s(o(A))}, A | ~A)}},
        {R::CircCircI, "I@@", "I∘∘", none, false, {sc({}, o(o(A)))}},
        {R::CircNotI, "I@~", "I∘¬", none, false, {sc({s(o(A))}, o(~A))}},
        {R::CircNotE, "E@~", "E∘¬", none, false, {sc({s(o(~A))}, o(A))}},
        {R::AndTI, "I&T", "I∧T", none, false, {sc({s(Tm(A)), s(Tm(B))}, Tm(A & B))}},
        {R::AndFI, "I&F", "I∧F", none, false,
         {sc({s(Fm(A))}, Fm(A & B)), sc({s(Fm(B))}, Fm(A & B))}},
        {R::OrTI, "I|T", "I∨T", none, false,
         {sc({s(Tm(A))}, Tm(A | B)), sc({s(Tm(B))}, Tm(A | B))}},
        {R::OrFI, "I|F", "I∨F", none, false, {sc({s(Fm(A)), s(Fm(B))}, Fm(A | B))}},
        {R::AndTE, "E&T", "E∧T", none, false,
         {sc({s(Tm(A & B))}, Tm(A)), sc({s(Tm(A & B))}, Tm(B))}},
        {R::AndFE, "E&F", "E∧F", none, false,
         {sc({s(Fm(A & B)), d(C, Fm(A)), d(C, Fm(B))}, C)}},
        {R::OrTE, "E|T", "E∨T", none, false, {sc({s(Tm(A | B)), d(C, Tm(A)), d(C, Tm(B))}, C)}},
        {R::OrFE, "E|F", "E∨F", none, false,
         {sc({s(Fm(A | B))}, Fm(A)), sc({s(Fm(A | B))}, Fm(B))}},
        {R::CircAndI1, "I@&1", "I∘∧1", none, false, {sc({s(o(A)), s(A), s(o(B)), s(B)}, o(A & B))}},
        {R::CircAndI2, "I@&2", "I∘∧2", none, false,
         {sc({s(o(A)), s(~A)}, o(A & B)), sc({s(o(B)), s(~B)}, o(A & B))}},
        {R::CircAndE1, "E@&1", "E∘∧1", none, false, {sc({s(o(A & B)), s(A), s(B)}, o(A) & o(B))}},
        {R::CircAndE2, "E@&2", "E∘∧2", none, false,
         {sc({s(o(A & B)), s(~A | ~B)}, (o(A) & ~A) | (o(B) & ~B))}},
        {R::CircOrI1, "I@|1", "I∘∨1", none, false,
         {sc({s(o(A)), s(~A), s(o(B)), s(~B)}, o(A | B))}},
        {R::CircOrI2, "I@|2", "I∘∨2", none, false,
         {sc({s(o(A)), s(A)}, o(A | B)), sc({s(o(B)), s(B)}, o(A | B))}},
        {R::CircOrE1, "E@|1", "E∘∨1", none, false, {sc({s(o(A | B)), s(~A), s(~B)}, o(A) & o(B))}},
        {R::CircOrE2, "E@|2", "E∘∨2", none, false,
         {sc({s(o(A | B)), s(A | B)}, (o(A) & A) | (o(B) & B))}},
        {R::ForallI, "Iforall", "I∀", intro, true, {sc({s(Ac)}, all(A))}},
        {R::ForallE, "Eforall", "E∀", none, true, {sc({s(all(A))}, Ac)}},
        {R::ExistsI, "Iexists", "I∃", none, true, {sc({s(Ac)}, ex(A))}},
        {R::ExistsE, "Eexists", "E∃", elim, true, {sc({s(ex(A)), d(C, Ac)}, C)}},
        {R::NotForallI, "I~forall", "I¬∀", none, true, {sc({s(~Ac)}, ~all(A))}},
        {R::NotForallE, "E~forall", "E¬∀", elim, true, {sc({s(~all(A)), d(C, ~Ac)}, C)}},
        {R::NotExistsI, "I~exists", "I¬∃", intro, true, {sc({s(~Ac)}, ~ex(A))}},
        {R::NotExistsE, "E~exists", "E¬∃", none, true, {sc({s(~ex(A))}, ~Ac)}},
        {R::CD, "CD", "CD", nfree, true, {sc({s(all(B | A))}, B | all(A))}},
        {R::ForallTI, "IforallT", "I∀T", intro, true, {sc({s(Tm(Ac))}, Tm(all(A)))}},
        {R::ForallTE, "EforallT", "E∀T", none, true, {sc({s(Tm(all(A)))}, Tm(Ac))}},
        {R::ExistsTI, "IexistsT", "I∃T", none, true, {sc({s(Tm(Ac))}, Tm(ex(A)))}},
        {R::ExistsTE, "EexistsT", "E∃T", elim, true, {sc({s(Tm(ex(A))), d(C, Tm(Ac))}, C)}},
        {R::ForallFI, "IforallF", "I∀F", none, true, {sc({s(Fm(Ac))}, Fm(all(A)))}},
        {R::ForallFE, "EforallF", "E∀F", elim, true, {sc({s(Fm(all(A))), d(C, Fm(Ac))}, C)}},
        {R::ExistsFI, "IexistsF", "I∃F", intro, true, {sc({s(Fm(Ac))}, Fm(ex(A)))}},
        {R::ExistsFE, "EexistsF", "E∃F", none, true, {sc({s(Fm(ex(A)))}, Fm(Ac))}},
        {R::CDPrime, "CD'", "CD′", nfree, true, {sc({s(all(B | Tm(A)))}, B | Tm(all(A)))}},
        {R::CircForallI1, "@forallI1", "∘∀I1", none, true, {sc({s(all(A & o(A)))}, o(all(A)))}},
        {R::CircForallI2, "@forallI2", "∘∀I2", none, true, {sc({s(ex(~A & o(A)))}, o(all(A)))}},
        {R::CircForallE, "@forallE", "∘∀E", none, true,
         {sc({s(o(all(A)))}, all(A & o(A)) | ex(~A & o(A)))}},
        {R::CircExistsI1, "@existsI1", "∘∃I1", none, true, {sc({s(ex(A & o(A)))}, o(ex(A)))}},
        {R::CircExistsI2, "@existsI2", "∘∃I2", none, true, {sc({s(all(~A & o(A)))}, o(ex(A)))}},
        {R::CircExistsE, "@existsE", "∘∃E", none, true,
         {sc({s(o(ex(A)))}, ex(A & o(A)) | all(~A & o(A)))}},
        {R::CDCirc, "CD@", "CD∘", nfree, true,
         {sc({s(all(B | (o(A) & A)))}, B | (o(all(A)) & all(A)))}},
        {R::Cons, "Cons", "Cons", none, false, {sc({s(o(A)), s(bul(A))}, C)}},
        {R::Comp, "Comp", "Comp", none, false, {sc({}, o(A) | bul(A))}},
        {R::BulletI, "I#", "I•", none, false, {sc({s(A), s(~A)}, bul(A))}},
        {R::Cases, "Cases", "Cases", none, false, {sc({}, (A | ~A) | bul(A))}},
        {R::BulletNotI, "I#~", "I•¬", none, false, {sc({s(bul(A))}, bul(~A))}},
        {R::BulletNotE, "E#~", "E•¬", none, false, {sc({s(bul(~A))}, bul(A))}},
        {R::BulletBulletE, "E##", "E••", none, false, {sc({s(bul(bul(A)))}, C)}},
    };
    std::vector<RuleInfo> out;
    out.reserve(defs.size());
    for (auto &def : defs) {
        const auto &first = def.schemas.front();
        const bool discharges =
            std::any_of(first.premises.begin(), first.premises.end(),
                        [](const PremiseSlot &slot) { return slot.discharges.has_value(); });
        out.push_back({def.id, def.name, def.display, first.premises.size(), discharges, def.side,
                       def.quantifier, std::move(def.schemas)});
    }
    return out;
}

std::optional<Term> find_constant(const Formula &a, const std::string &x, const Formula &g) {
    if (a.kind() != g.kind())
        return std::nullopt;
    switch (a.kind()) {
    case Kind::PropAtom:
        return std::nullopt;
    case Kind::Atom:
        if (a.args().size() != g.args().size())
            return std::nullopt;
        for (std::size_t i = 0; i < a.args().size(); ++i)
            if (a.args()[i] == Term::variable(x) && !g.args()[i].is_variable())
                return g.args()[i];
        return std::nullopt;
    case Kind::Not:
    case Kind::Circ:
        return find_constant(a.operand(), x, g.operand());
    case Kind::And:
    case Kind::Or:
        if (auto c = find_constant(a.lhs(), x, g.lhs()))
            return c;
        return find_constant(a.rhs(), x, g.rhs());
    case Kind::Forall:
    case Kind::Exists:
        if (a.variable() == x || a.variable() != g.variable())
            return std::nullopt;
        return find_constant(a.body(), x, g.body());
    }
    return std::nullopt;
}

} // namespace

const std::vector<RuleInfo> &rule_catalog() {
    static const std::vector<RuleInfo> catalog = build();
    return catalog;
}

const RuleInfo &rule_info(RuleId id) {
    for (const auto &r : rule_catalog())
        if (r.id == id)
            return r;
    throw Error(ErrorKind::InvalidArgument, "no inference rule for premise/hypothesis leaves");
}

std::optional<RuleId> rule_by_name(std::string_view name) {
    if (name == "premise")
        return RuleId::Premise;
    if (name == "hyp")
        return RuleId::Hypothesis;
    for (const auto &r : rule_catalog())
        if (r.name == name || r.display == name)
            return r.id;
    return std::nullopt;
}

std::string_view rule_name(RuleId id) {
    if (id == RuleId::Premise)
        return "premise";
    if (id == RuleId::Hypothesis)
        return "hyp";
    return rule_info(id).name;
}

MatchResult match(const Pattern &p, const Formula &f, Bindings &b) {
    switch (p.kind) {
    case K::Meta: {
        auto &slot = b.metas[static_cast<std::size_t>(p.meta)];
        if (!slot) {
            slot = f;
            return MatchResult::Ok;
        }
        return *slot == f ? MatchResult::Ok : MatchResult::Fail;
    }
    case K::Not:
    case K::Circ:
        if (f.kind() != (p.kind == K::Not ? Kind::Not : Kind::Circ))
            return MatchResult::Fail;
        return match(p.kids[0], f.operand(), b);
    case K::And:
    case K::Or: {
        if (f.kind() != (p.kind == K::And ? Kind::And : Kind::Or))
            return MatchResult::Fail;
        const auto left = match(p.kids[0], f.lhs(), b);
        if (left == MatchResult::Fail)
            return left;
        const auto right = match(p.kids[1], f.rhs(), b);
        if (right == MatchResult::Fail)
            return right;
        return left == MatchResult::Ok ? right : left;
    }
    case K::Forall:
    case K::Exists:
        if (f.kind() != (p.kind == K::Forall ? Kind::Forall : Kind::Exists))
            return MatchResult::Fail;
        if (!b.variable)
            b.variable = f.variable();
        else if (*b.variable != f.variable())
            return MatchResult::Fail;
        return match(p.kids[0], f.body(), b);
    case K::Instance: {
        const auto &body = b.metas[static_cast<std::size_t>(p.meta)];
        if (!body || !b.variable)
            return MatchResult::Defer;
        if (!b.constant) {
            const auto c = find_constant(*body, *b.variable, f);
            if (!c)
                return MatchResult::Fail;
            b.constant = *c;
        }
        return substitute(*body, *b.variable, *b.constant) == f ? MatchResult::Ok
                                                                 : MatchResult::Fail;
    }
    }
    return MatchResult::Fail;
}

Formula instantiate(const Pattern &p, const Bindings &b) {
    auto need = [](const auto &opt, const char *what) -> decltype(auto) {
        if (!opt)
            throw Error(ErrorKind::InvalidArgument, std::string("unbound schema ") + what);
        return *opt;
    };
    switch (p.kind) {
    case K::Meta:
        return need(b.metas[static_cast<std::size_t>(p.meta)], "metavariable");
    case K::Not:
        return neg(instantiate(p.kids[0], b));
    case K::Circ:
        return circ(instantiate(p.kids[0], b));
    case K::And:
        return conj(instantiate(p.kids[0], b), instantiate(p.kids[1], b));
    case K::Or:
        return disj(instantiate(p.kids[0], b), instantiate(p.kids[1], b));
    case K::Forall:
        return forall(need(b.variable, "variable"), instantiate(p.kids[0], b));
    case K::Exists:
        return exists(need(b.variable, "variable"), instantiate(p.kids[0], b));
    case K::Instance:
        return substitute(need(b.metas[static_cast<std::size_t>(p.meta)], "metavariable"),
                          need(b.variable, "variable"), need(b.constant, "constant"));
    }
    throw Error(ErrorKind::InvalidArgument, "bad pattern");
}

bool uses_meta(const Pattern &p, int meta) {
    if ((p.kind == K::Meta || p.kind == K::Instance) && p.meta == meta)
        return true;
    return std::any_of(p.kids.begin(), p.kids.end(),
                       [meta](const Pattern &k) { return uses_meta(k, meta); });
}

bool uses_instance(const Pattern &p) {
    if (p.kind == K::Instance)
        return true;
    return std::any_of(p.kids.begin(), p.kids.end(), [](const Pattern &k) { return uses_instance(k); });
}

} // namespace letf
