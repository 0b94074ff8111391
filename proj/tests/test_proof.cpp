#include "doctest.h"
#include "shapes.hpp"

#include "letf/audit.hpp"
#include "letf/error.hpp"
#include "letf/proof.hpp"

#include <algorithm>
#include <functional>
#include <random>

using namespace letf;
using shapes::nodes;

namespace {

struct Parsed {
    ProofTree proof;
    std::vector<Formula> premises;
};

Parsed read(std::string_view proof, std::string_view premises = "") {
    Signature sig;
    auto t = parse_proof(proof, sig);
    return {std::move(t), parse_premises(premises, sig)};
}

ProofCheck check(std::string_view proof, std::string_view premises = "") {
    const auto p = read(proof, premises);
    return check_proof(p.proof, p.premises);
}

std::optional<ProofErrorKind> error_kind(std::string_view proof, std::string_view premises = "") {
    const auto c = check(proof, premises);
    return c.error ? std::optional(c.error->kind) : std::nullopt;
}

} // namespace

TEST_CASE("catalog lookups") {
    const auto &cat = rule_catalog();
    CHECK(cat.size() == 62);
    for (const auto &r : cat) {
        CHECK(rule_by_name(r.name) == r.id);
        CHECK(rule_by_name(r.display) == r.id);
        CHECK(rule_name(r.id) == r.name);
        CHECK(&rule_info(r.id) == &r);
        for (const auto &s : r.schemas)
            CHECK(s.premises.size() == r.premise_count);
    }
    CHECK(rule_by_name("premise") == RuleId::Premise);
    CHECK_FALSE(rule_by_name("nonsense").has_value());
}

TEST_CASE("pattern matching") {
    const auto &and_i = rule_info(RuleId::AndI).schemas[0];
    Bindings b;
    REQUIRE(match(and_i.conclusion, parse("p & @q"), b) == MatchResult::Ok);
    CHECK(*b.metas[0] == parse("p"));
    CHECK(*b.metas[1] == parse("@q"));
    CHECK(instantiate(and_i.premises[1].formula, b) == parse("@q"));
    Bindings none;
    CHECK_THROWS_AS(instantiate(and_i.conclusion, none), Error);

    const auto &exists_i = rule_info(RuleId::ExistsI).schemas[0];
    Bindings q;
    CHECK(match(exists_i.premises[0].formula, parse("P(c) & Q(c)"), q) == MatchResult::Defer);
    Bindings q2;
    REQUIRE(match(exists_i.conclusion, parse("exists x. P(x) & Q(x)"), q2) == MatchResult::Ok);
    CHECK(match(exists_i.premises[0].formula, parse("P(c) & Q(c)"), q2) == MatchResult::Ok);
    CHECK(render(*q2.constant) == "c");
    Bindings q3 = q2;
    CHECK(match(exists_i.premises[0].formula, parse("P(c) & Q(d)"), q3) == MatchResult::Fail);
    CHECK(uses_instance(exists_i.premises[0].formula));
    CHECK_FALSE(uses_instance(exists_i.conclusion));
}

TEST_CASE("small proofs") {
    CHECK(check(R"~((premise "p"))~", "p").ok());
    CHECK(check(R"~((rule I@@ :conclude "@@P(c)"))~").ok());
    CHECK(check(R"~((rule I& :conclude "p & q" (premise "p") (premise "q")))~", "p\nq").ok());
    CHECK(check(R"~((rule I| :conclude "q | p" (premise "p")))~", "p").ok());
    CHECK(check(R"~((rule E| :conclude "q | p" :discharge 1
                     (premise "p | q")
                     (rule I| :conclude "q | p" (hyp 1 "p"))
                     (rule I| :conclude "q | p" (hyp 1 "q"))))~",
                "p | q")
              .ok());
}

TEST_CASE("rejections carry their kind and locus") {
    using enum ProofErrorKind;
    CHECK(error_kind(R"~((premise "p"))~") == NotAPremise);
    CHECK(error_kind(R"~((rule I& :conclude "p & q" (premise "p")))~", "p") == ArityMismatch);
    CHECK(error_kind(R"~((rule I& :conclude "p | q" (premise "p") (premise "q")))~", "p\nq") ==
          SchemaMismatch);
    CHECK(error_kind(R"~((rule I| :conclude "p | q" (hyp 1 "p")))~") == UndischargedHypothesis);
    CHECK(error_kind(R"~((rule E| :conclude "r" :discharge 1
                          (premise "p | q")
                          (rule E| :conclude "r" :discharge 1
                            (premise "p | q") (premise "r") (premise "r"))
                          (premise "r")))~",
                     "p | q\nr") == DoublyDischarged);
    CHECK(error_kind(R"~((rule Iforall :conclude "forall x. P(x)" :eigen c (hyp 1 "P(c)")))~") ==
          EigenvariableViolation);
    CHECK(error_kind(R"~((rule Iforall :conclude "forall x. P(x)" (premise "P(c)")))~", "P(c)") ==
          EigenvariableViolation);
    CHECK(error_kind(R"~((rule Iforall :conclude "forall x. P(x)" (rule E& :conclude "P(k1)"
                          (rule I& :conclude "P(k1) & q" (hyp 1 "P(k1)") (premise "q")))))~",
                     "q") == EigenvariableViolation);

    const auto c = check(R"~((rule I& :conclude "p & q" (premise "p") (premise "r")))~", "p\nr");
    REQUIRE(c.error);
    CHECK(c.error->locus.rfind("root", 0) == 0);
    const auto deep = check(R"~((rule I& :conclude "p & p" (premise "p")
                                 (rule E& :conclude "p" (premise "q & r"))))~",
                            "p\nq & r");
    REQUIRE(deep.error);
    CHECK(deep.error->kind == SchemaMismatch);
    CHECK(deep.error->locus == "root.1");
}

TEST_CASE("eigenvariable discipline for the eliminations") {
    using enum ProofErrorKind;
    // fine: k1 is fresh
    CHECK(check(R"~((rule Eexists :conclude "q" :discharge 1 :eigen k1
                     (premise "exists x. P(x)")
                     (rule E& :conclude "q" (rule I& :conclude "q & P(k1)" (premise "q") (hyp 1 "P(k1)")))))~",
                "exists x. P(x)\nq")
              .ok());
    // k1 escapes into the conclusion
    CHECK(error_kind(R"~((rule Eexists :conclude "P(k1)" :discharge 1 :eigen k1
                          (premise "exists x. P(x)") (hyp 1 "P(k1)")))~",
                     "exists x. P(x)") == EigenvariableViolation);
    // k1 occurs in another open assumption of the minor premise
    CHECK(error_kind(R"~((rule Eexists :conclude "q" :discharge 1 :eigen k1
                          (premise "exists x. P(x)")
                          (rule E& :conclude "q" (rule I& :conclude "q & Q(k1)" (premise "q") (premise "Q(k1)")))))~",
                     "exists x. P(x)\nq\nQ(k1)") == EigenvariableViolation);
}

TEST_CASE("CD needs x not free in B") {
    const auto k = error_kind(R"~((rule CD :conclude "(exists x. Q(x)) | (forall x. P(x))"
                                   (premise "forall x. (exists x. Q(x)) | P(x)")))~",
                              "forall x. (exists x. Q(x)) | P(x)");
    CHECK_FALSE(k.has_value());
    // x in the conclusion's Q(x) reads as a constant, so B differs from the premise's
    const auto bad = check(R"~((rule CD :conclude "Q(x) | (forall x. P(x))"
                                (premise "forall x. Q(x) | P(x)")))~",
                           "forall x. Q(x) | P(x)");
    CHECK_FALSE(bad.ok());
}

TEST_CASE("proof file format errors") {
    Signature sig;
    CHECK_THROWS_AS(parse_proof("(rule NOPE :conclude \"p\")", sig), Error);
    CHECK_THROWS_AS(parse_proof("(rule I& (premise \"p\"))", sig), Error);
    CHECK_THROWS_AS(parse_proof("(premise \"p\"", sig), Error);
    CHECK_THROWS_AS(parse_proof("(premise \"p &\")", sig), Error);
    CHECK_THROWS_AS(parse_proof("(premise \"p\") extra", sig), Error);
    CHECK(parse_premises("; comment\np\n\n  q & r\n", sig).size() == 2);
}

TEST_CASE("fixtures check and round-trip") {
    const auto fixtures = encode_paper_derivations();
    CHECK(fixtures.size() == 12);
    for (const auto &d : fixtures) {
        CAPTURE(d.name);
        const auto c = check_proof(d.proof, d.premises);
        if (c.error)
            MESSAGE(c.error->locus << ": " << c.error->reason);
        CHECK(c.ok());
        const auto text = format_proof(d.proof);
        Signature sig;
        const auto back = parse_proof(text, sig);
        CHECK(format_proof(back) == text);
        CHECK(back.size() == d.proof.size());
        CHECK(check_proof(back, d.premises).ok());
    }
}

TEST_CASE("property: single-node mutations are rejected") {
    std::mt19937 rng(47);
    for (const auto &d : encode_paper_derivations()) {
        CAPTURE(d.name);
        int done = 0;
        while (done < 50) {
            auto copy = d.proof;
            if (!shapes::mutate_once(copy, rng))
                continue;
            CAPTURE(format_proof(copy));
            CHECK_FALSE(check_proof(copy, d.premises).ok());
            ++done;
        }
    }
}

TEST_CASE("property: child order does not matter") {
    std::mt19937 rng(53);
    for (const auto &d : encode_paper_derivations()) {
        CAPTURE(d.name);
        for (int round = 0; round < 10; ++round) {
            auto copy = d.proof;
            for (auto *n : nodes(copy))
                std::shuffle(n->children.begin(), n->children.end(), rng);
            const auto c = check_proof(copy, d.premises);
            if (c.error)
                MESSAGE(c.error->locus << ": " << c.error->reason << "\n" << format_proof(copy));
            CHECK(c.ok());
        }
    }
    const auto bad = read(R"~((rule I& :conclude "p & q" (premise "q") (premise "r")))~", "q\nr");
    auto swapped = bad.proof;
    std::swap(swapped.children[0], swapped.children[1]);
    CHECK_FALSE(check_proof(bad.proof, bad.premises).ok());
    CHECK_FALSE(check_proof(swapped, bad.premises).ok());
}

TEST_CASE("audit of single rules") {
    AuditOptions small;
    small.fo_bound = 2;
    for (auto id : {RuleId::AndI, RuleId::OrE, RuleId::ExpCirc, RuleId::CircAndI2,
                    RuleId::ForallE, RuleId::ExistsI, RuleId::ForallI, RuleId::ExistsE, RuleId::CD}) {
        const auto a = audit_rule(rule_info(id), small);
        CAPTURE(a.rule);
        CHECK(a.instances > 0);
        CHECK(a.ok());
    }
}

TEST_CASE("audit flags unsound rules") {
    using K = Pattern::Kind;
    const Pattern A{K::Meta, 0, {}};
    const Pattern Ac{K::Instance, 0, {}};
    AuditOptions small;
    small.fo_bound = 2;

    RuleInfo circ_intro{RuleId::CircCircI, "fake@", "fake∘", 1, false, SideCondition::None, false,
                        {Schema{{PremiseSlot{A, std::nullopt}}, Pattern{K::Circ, 0, {A}}}}};
    const auto a = audit_rule(circ_intro, small);
    CHECK_FALSE(a.ok());
    CHECK_FALSE(a.findings.empty());

    RuleInfo some_all{RuleId::ExistsI, "fakeEA", "fake∃∀", 1, false, SideCondition::None, true,
                      {Schema{{PremiseSlot{Pattern{K::Exists, 0, {A}}, std::nullopt}},
                              Pattern{K::Forall, 0, {A}}}}};
    CHECK_FALSE(audit_rule(some_all, small).ok());

    // universal generalization without the freshness condition
    RuleInfo lax{RuleId::ExistsI, "fakeIA", "fakeI∀", 1, false, SideCondition::None, true,
                 {Schema{{PremiseSlot{Ac, std::nullopt}}, Pattern{K::Forall, 0, {A}}}}};
    CHECK_FALSE(audit_rule(lax, small).ok());

    // the same schema with the condition is sound
    lax.side = SideCondition::EigenIntro;
    CHECK(audit_rule(lax, small).ok());
}
