#pragma once

#include "letf/proof.hpp"
#include "letf/syntax.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace letf {

struct AuditFinding {
    std::string instance; // "A = p, B = @q"
    std::string counter;  // assignment or structure
};

struct RuleAudit {
    std::string rule;
    std::string method; // "table", "fo-entails", "generic-instance"
    std::uint64_t instances = 0;
    std::uint64_t invalid = 0;
    std::vector<AuditFinding> findings; // the first few invalid instances

    bool ok() const { return invalid == 0; }
};

struct AuditReport {
    std::vector<RuleAudit> rules;
    RuleAudit control; // {A} / @A, which must be flagged

    std::uint64_t invalid_count() const;
    bool ok() const;
};

// Every formula of depth <= 2 over p and q.
std::vector<Formula> default_audit_pool();
// Open formulas in x over unary P, Q used as quantifier bodies A.
std::vector<Formula> default_quantifier_bodies();
// Sentences used for B in the CD family.
std::vector<Formula> default_side_formulas();

struct AuditOptions {
    std::vector<Formula> pool = default_audit_pool();
    std::vector<Formula> bodies = default_quantifier_bodies();
    std::vector<Formula> side = default_side_formulas();
    std::size_t fo_bound = 3;
    unsigned jobs = 1;
};

// Propositional rules: every instance over the pool is checked pointwise over
// all assignments to p, q and a fresh atom r (standing for C); a discharging
// premise counts as "discharged hypotheses designated implies minor designated".
// Quantifier rules: the ones without eigen constants as fo_entails sequents
// with a signature constant c; the eigen rules through their generic reading
// (the premise holds for every diagram name) on every structure up to fo_bound.
AuditReport audit_rules(const AuditOptions &options = {});
// One rule, possibly outside the catalog; the method follows from the rule's
// quantifier flag and side condition.
RuleAudit audit_rule(const RuleInfo &info, const AuditOptions &options = {});
AuditReport audit_rules(std::span<const Formula> pool, std::size_t fo_bound, unsigned jobs = 1);

} // namespace letf
