#pragma once

#include "letf/syntax.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace letf {

enum class RuleId : std::uint8_t {
    Premise,
    Hypothesis,
    // FDE core
    AndI, AndE, OrI, OrE, NotAndI, NotAndE, NotOrI, NotOrE, DN,
    // classicality
    ExpCirc, PemCirc, CircCircI, CircNotI, CircNotE,
    // T/F propagation
    AndTI, AndFI, OrTI, OrFI, AndTE, AndFE, OrTE, OrFE,
    CircAndI1, CircAndI2, CircAndE1, CircAndE2, CircOrI1, CircOrI2, CircOrE1, CircOrE2,
    // quantifiers
    ForallI, ForallE, ExistsI, ExistsE, NotForallI, NotForallE, NotExistsI, NotExistsE, CD,
    ForallTI, ForallTE, ExistsTI, ExistsTE, ForallFI, ForallFE, ExistsFI, ExistsFE, CDPrime,
    CircForallI1, CircForallI2, CircForallE, CircExistsI1, CircExistsI2, CircExistsE, CDCirc,
    // derived bullet rules
    Cons, Comp, BulletI, Cases, BulletNotI, BulletNotE, BulletBulletE,
};

enum class SideCondition : std::uint8_t {
    None,
    EigenIntro, // c not in A nor in the open assumptions of the premise
    EigenElim,  // c not in A, C, nor the minor's open assumptions other than the discharged ones
    NotFreeInB, // the bound variable is not free in B
};

// Schema pattern. Metas: 0 = A, 1 = B, 2 = C. Quantifier patterns share one
// bound-variable meta x; Instance stands for A(c/x).
struct Pattern {
    enum class Kind : std::uint8_t { Meta, Not, And, Or, Circ, Forall, Exists, Instance };

    Kind kind = Kind::Meta;
    int meta = 0;
    std::vector<Pattern> kids;
};

struct PremiseSlot {
    Pattern formula;
    std::optional<Pattern> discharges;
};

struct Schema {
    std::vector<PremiseSlot> premises;
    Pattern conclusion;
};

struct RuleInfo {
    RuleId id;
    std::string_view name;    // file-format name, e.g. "I&T"
    std::string_view display; // e.g. "I∧T"
    std::size_t premise_count;
    bool discharges;
    SideCondition side;
    bool quantifier;
    // Alternatives, e.g. both conjuncts for E∧.
    std::vector<Schema> schemas;
};

// Every inference rule, in RuleId order; Premise and Hypothesis are not included.
const std::vector<RuleInfo> &rule_catalog();
const RuleInfo &rule_info(RuleId id);
std::optional<RuleId> rule_by_name(std::string_view name);
std::string_view rule_name(RuleId id);

struct Bindings {
    std::array<std::optional<Formula>, 3> metas;
    std::optional<std::string> variable;
    std::optional<Term> constant;
};

enum class MatchResult : std::uint8_t { Ok, Fail, Defer };

// Defer: the pattern needs an Instance whose A or x is not bound yet. On Fail
// or Defer the bindings may be partially updated; callers keep a copy.
MatchResult match(const Pattern &p, const Formula &f, Bindings &b);
// Throws Error(InvalidArgument) when a meta the pattern uses is unbound.
Formula instantiate(const Pattern &p, const Bindings &b);
// Whether the pattern (or any slot of the schema) uses the given meta / A(c/x).
bool uses_meta(const Pattern &p, int meta);
bool uses_instance(const Pattern &p);

struct ProofTree {
    RuleId rule = RuleId::Premise;
    Formula conclusion;
    std::vector<ProofTree> children;
    std::optional<std::string> label; // discharge tag; for Hypothesis, the tag it belongs to
    std::optional<std::string> eigen;

    static ProofTree premise(Formula f);
    static ProofTree hypothesis(std::string label, Formula f);
    static ProofTree node(RuleId rule, Formula conclusion, std::vector<ProofTree> children = {});
    ProofTree &discharge(std::string label);
    ProofTree &with_eigen(std::string constant);

    std::size_t size() const;
};

enum class ProofErrorKind : std::uint8_t {
    SchemaMismatch,
    ArityMismatch,
    UndischargedHypothesis,
    DoublyDischarged,
    NotAPremise,
    EigenvariableViolation,
    FreeVariableViolation,
    NotSentence,
};

std::string_view to_string(ProofErrorKind k);

struct ProofError {
    ProofErrorKind kind;
    std::string locus; // "root", "root.0", "root.0.2", ...
    std::string reason;
};

struct ProofCheck {
    std::optional<ProofError> error;
    bool ok() const { return !error; }
};

ProofCheck check_proof(const ProofTree &t, std::span<const Formula> premises);

// (rule NAME :conclude "F" [:discharge L] [:eigen c] child...)
// (premise "F")   (hyp L "F")   ; comments run to end of line
// Formulas are parsed against sig, extending it.
ProofTree parse_proof(std::string_view text, Signature &sig);
// One formula per line; blank lines and lines starting with ';' are skipped.
std::vector<Formula> parse_premises(std::string_view text, Signature &sig);
std::string format_proof(const ProofTree &t);

struct PaperDerivation {
    std::string name;
    std::vector<Formula> premises;
    ProofTree proof;
};

std::vector<PaperDerivation> encode_paper_derivations();

} // namespace letf
