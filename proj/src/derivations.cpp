#include "letf/proof.hpp"

namespace letf {

namespace {

// A = p, B = q; first-order fixtures use P(x) as the body and k1, k2 as eigen constants.
class Builder {
public:
    Formula f(std::string_view text) { return parse_extending(text, sig_); }

    ProofTree premise(std::string_view text) { return ProofTree::premise(f(text)); }
    ProofTree hyp(std::string label, std::string_view text) {
        return ProofTree::hypothesis(std::move(label), f(text));
    }
    ProofTree rule(RuleId id, std::string_view text, std::vector<ProofTree> children = {}) {
        return ProofTree::node(id, f(text), std::move(children));
    }
    ProofTree discharging(RuleId id, std::string label, std::string_view text,
                          std::vector<ProofTree> children) {
        auto t = rule(id, text, std::move(children));
        t.discharge(std::move(label));
        return t;
    }

private:
    Signature sig_;
};

using R = RuleId;

PaperDerivation or_t_intro() {
    Builder b;
    const auto at = "@p & p";
    auto proof = b.rule(R::AndI, "@(p | q) & (p | q)",
                        {b.rule(R::CircOrI2, "@(p | q)",
                                {b.rule(R::AndE, "@p", {b.premise(at)}),
                                 b.rule(R::AndE, "p", {b.premise(at)})}),
                         b.rule(R::OrI, "p | q", {b.rule(R::AndE, "p", {b.premise(at)})})});
    return {"ND_F' (i): I|T", {b.f(at)}, std::move(proof)};
}

PaperDerivation and_f_elim() {
    Builder b;
    const auto major = "@(p & q) & ~(p & q)";
    const auto goal = "(@p & ~p) | (@q & ~q)";
    auto pi = b.rule(
        R::CircAndE2, goal,
        {b.rule(R::AndE, "@(p & q)", {b.premise(major)}),
         b.discharging(R::NotAndE, "1", "~p | ~q",
                       {b.rule(R::AndE, "~(p & q)", {b.premise(major)}),
                        b.rule(R::OrI, "~p | ~q", {b.hyp("1", "~p")}),
                        b.rule(R::OrI, "~p | ~q", {b.hyp("1", "~q")})})});
    auto proof = b.discharging(R::OrE, "2", goal,
                               {std::move(pi), b.rule(R::OrI, goal, {b.hyp("2", "@p & ~p")}),
                                b.rule(R::OrI, goal, {b.hyp("2", "@q & ~q")})});
    return {"ND_F' (ii): E&F", {b.f(major)}, std::move(proof)};
}

PaperDerivation circ_or_elim1() {
    Builder b;
    auto or_f = [&] {
        return b.rule(R::AndI, "@(p | q) & ~(p | q)",
                      {b.premise("@(p | q)"),
                       b.rule(R::NotOrI, "~(p | q)", {b.premise("~p"), b.premise("~q")})});
    };
    auto proof = b.rule(
        R::AndI, "@p & @q",
        {b.rule(R::AndE, "@p", {b.rule(R::OrFE, "@p & ~p", {or_f()})}),
         b.rule(R::AndE, "@q", {b.rule(R::OrFE, "@q & ~q", {or_f()})})});
    return {"ND_F (iii): E@|1", {b.f("@(p | q)"), b.f("~p"), b.f("~q")}, std::move(proof)};
}

PaperDerivation circ_and_intro2() {
    Builder b;
    auto proof = b.rule(
        R::AndE, "@(p & q)",
        {b.rule(R::AndFI, "@(p & q) & ~(p & q)",
                {b.rule(R::AndI, "@p & ~p", {b.premise("@p"), b.premise("~p")})})});
    return {"ND_F (iv): I@&2", {b.f("@p"), b.f("~p")}, std::move(proof)};
}

PaperDerivation bullet_not_intro() {
    Builder b;
    auto proof = b.discharging(
        R::OrE, "1", "#~p",
        {b.rule(R::Comp, "@~p | #~p"),
         b.rule(R::Cons, "#~p",
                {b.rule(R::CircNotE, "@p", {b.hyp("1", "@~p")}), b.premise("#p")}),
         b.hyp("1", "#~p")});
    return {"bullet (i): I#~", {b.f("#p")}, std::move(proof)};
}

PaperDerivation cases() {
    Builder b;
    const auto goal = "p | ~p | #p";
    auto proof = b.discharging(
        R::OrE, "1", goal,
        {b.rule(R::Comp, "@p | #p"),
         b.rule(R::OrI, goal, {b.rule(R::PemCirc, "p | ~p", {b.hyp("1", "@p")})}),
         b.rule(R::OrI, goal, {b.hyp("1", "#p")})});
    return {"bullet (ii): Cases", {}, std::move(proof)};
}

PaperDerivation bullet_bullet_elim() {
    Builder b;
    auto proof = b.rule(R::Cons, "q",
                        {b.rule(R::CircNotI, "@~@p", {b.rule(R::CircCircI, "@@p")}),
                         b.premise("##p")});
    return {"bullet (iii): E##", {b.f("##p")}, std::move(proof)};
}

PaperDerivation circ_forall_elim() {
    Builder b;
    const auto prem = "@(forall x. P(x))";
    const auto goal = "(forall x. P(x) & @P(x)) | (exists x. ~P(x) & @P(x))";
    auto forall_t = [&] {
        return b.rule(R::ForallTE, "@P(k1) & P(k1)",
                      {b.rule(R::AndI, "@(forall x. P(x)) & (forall x. P(x))",
                              {b.premise(prem), b.hyp("2", "forall x. P(x)")})});
    };
    auto left = b.rule(
        R::OrI, goal,
        {b.rule(R::ForallI, "forall x. P(x) & @P(x)",
                {b.rule(R::AndI, "P(k1) & @P(k1)",
                        {b.rule(R::AndE, "P(k1)", {forall_t()}),
                         b.rule(R::AndE, "@P(k1)", {forall_t()})})})});
    auto right = b.discharging(
        R::ForallFE, "1", goal,
        {b.rule(R::AndI, "@(forall x. P(x)) & ~(forall x. P(x))",
                {b.premise(prem), b.hyp("2", "~(forall x. P(x))")}),
         b.rule(R::OrI, goal,
                {b.rule(R::ExistsI, "exists x. ~P(x) & @P(x)",
                        {b.rule(R::AndI, "~P(k1) & @P(k1)",
                                {b.rule(R::AndE, "~P(k1)", {b.hyp("1", "@P(k1) & ~P(k1)")}),
                                 b.rule(R::AndE, "@P(k1)", {b.hyp("1", "@P(k1) & ~P(k1)")})})})})});
    auto proof = b.discharging(
        R::OrE, "2", goal,
        {b.rule(R::PemCirc, "(forall x. P(x)) | ~(forall x. P(x))", {b.premise(prem)}),
         std::move(left), std::move(right)});
    return {"ND'_QF (i): @forallE", {b.f(prem)}, std::move(proof)};
}

PaperDerivation circ_forall_intro_exists() {
    Builder b;
    const auto prem = "exists x. ~P(x) & @P(x)";
    auto proof = b.discharging(
        R::ExistsE, "1", "@(forall x. P(x))",
        {b.premise(prem),
         b.rule(R::AndE, "@(forall x. P(x))",
                {b.rule(R::ForallFI, "@(forall x. P(x)) & ~(forall x. P(x))",
                        {b.rule(R::AndI, "@P(k1) & ~P(k1)",
                                {b.rule(R::AndE, "@P(k1)", {b.hyp("1", "~P(k1) & @P(k1)")}),
                                 b.rule(R::AndE, "~P(k1)", {b.hyp("1", "~P(k1) & @P(k1)")})})})})});
    return {"ND'_QF (ii): @forallI from exists", {b.f(prem)}, std::move(proof)};
}

PaperDerivation circ_forall_intro_forall() {
    Builder b;
    const auto prem = "forall x. P(x) & @P(x)";
    auto inst = [&] { return b.rule(R::ForallE, "P(k1) & @P(k1)", {b.premise(prem)}); };
    auto t = b.rule(R::ForallTI, "@(forall x. P(x)) & (forall x. P(x))",
                    {b.rule(R::AndI, "@P(k1) & P(k1)",
                            {b.rule(R::AndE, "@P(k1)", {inst()}),
                             b.rule(R::AndE, "P(k1)", {inst()})})});
    auto proof = b.rule(R::AndE, "@(forall x. P(x))", {std::move(t)});
    return {"ND'_QF (ii): @forallI from forall", {b.f(prem)}, std::move(proof)};
}

PaperDerivation exists_t_elim() {
    Builder b;
    const auto prem = "@(exists x. P(x)) & (exists x. P(x))";
    const auto mid = "exists x. P(x) & @P(x)";
    const auto all_f = "forall x. ~P(x) & @P(x)";
    const auto goal = "exists x. @P(x) & P(x)";
    auto inst = [&] { return b.rule(R::ForallE, "~P(k1) & @P(k1)", {b.hyp("1", all_f)}); };
    auto absurd = b.discharging(
        R::ExistsE, "3", mid,
        {b.rule(R::AndE, "exists x. P(x)", {b.premise(prem)}),
         b.rule(R::ExpCirc, mid,
                {b.rule(R::AndE, "@P(k1)", {inst()}), b.hyp("3", "P(k1)"),
                 b.rule(R::AndE, "~P(k1)", {inst()})})});
    absurd.with_eigen("k1");
    auto major = b.discharging(
        R::OrE, "1", mid,
        {b.rule(R::CircExistsE, "(exists x. P(x) & @P(x)) | (forall x. ~P(x) & @P(x))",
                {b.rule(R::AndE, "@(exists x. P(x))", {b.premise(prem)})}),
         b.hyp("1", mid), std::move(absurd)});
    auto minor = b.rule(R::ExistsI, goal,
                        {b.rule(R::AndI, "@P(k2) & P(k2)",
                                {b.rule(R::AndE, "@P(k2)", {b.hyp("2", "P(k2) & @P(k2)")}),
                                 b.rule(R::AndE, "P(k2)", {b.hyp("2", "P(k2) & @P(k2)")})})});
    auto proof = b.discharging(R::ExistsE, "2", goal, {std::move(major), std::move(minor)});
    proof.with_eigen("k2");
    return {"ND'_QF (iii): EexistsT", {b.f(prem)}, std::move(proof)};
}

PaperDerivation exists_f_elim() {
    Builder b;
    const auto prem = "@(exists x. P(x)) & ~(exists x. P(x))";
    const auto some_t = "exists x. P(x) & @P(x)";
    const auto all_f = "forall x. ~P(x) & @P(x)";
    auto witness = b.discharging(
        R::ExistsE, "2", "exists x. P(x)",
        {b.hyp("1", some_t),
         b.rule(R::ExistsI, "exists x. P(x)",
                {b.rule(R::AndE, "P(k1)", {b.hyp("2", "P(k1) & @P(k1)")})})});
    witness.with_eigen("k1");
    auto absurd = b.rule(R::ExpCirc, all_f,
                         {b.rule(R::AndE, "@(exists x. P(x))", {b.premise(prem)}),
                          std::move(witness),
                          b.rule(R::AndE, "~(exists x. P(x))", {b.premise(prem)})});
    auto major = b.discharging(
        R::OrE, "1", all_f,
        {b.rule(R::CircExistsE, "(exists x. P(x) & @P(x)) | (forall x. ~P(x) & @P(x))",
                {b.rule(R::AndE, "@(exists x. P(x))", {b.premise(prem)})}),
         std::move(absurd), b.hyp("1", all_f)});
    auto proof = b.rule(R::ForallE, "~P(c) & @P(c)", {std::move(major)});
    return {"ND'_QF (iv): EexistsF", {b.f(prem)}, std::move(proof)};
}

} // namespace

std::vector<PaperDerivation> encode_paper_derivations() {
    return {or_t_intro(),          and_f_elim(),
            circ_or_elim1(),       circ_and_intro2(),
            bullet_not_intro(),    cases(),
            bullet_bullet_elim(),  circ_forall_elim(),
            circ_forall_intro_exists(), circ_forall_intro_forall(),
            exists_t_elim(),       exists_f_elim()};
}

} // namespace letf
