#pragma once

#include "letf/algebra.hpp"
#include "letf/syntax.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace letf {

// Keyed by atom text: "p" for propositional atoms, "P(c)" for ground atoms.
using Assignment = std::map<std::string, Snapshot>;

std::string atom_key(const Formula &atomic);
// Sorted atom keys of the formulas; the reserved atom is left out.
std::vector<std::string> atoms_of(std::span<const Formula> formulas);

// The reserved atom is irrelevant to ⊤/⊥ and evaluates to n when unassigned.
Snapshot evaluate(const Formula &f, const Assignment &a);

class Bivaluation {
public:
    explicit Bivaluation(Assignment a) : assignment_(std::move(a)) {}
    bool operator()(const Formula &f) const { return evaluate(f, assignment_).z1(); }

private:
    Assignment assignment_;
};

Bivaluation bivaluation_of(Assignment a);

struct ClauseViolation {
    std::string clause; // "(13)", "(5')", ...
    std::string instance;
};

struct ClauseReport {
    std::size_t instances_checked = 0;
    std::vector<ClauseViolation> violations;

    bool ok() const { return violations.empty(); }
    void append(const ClauseReport &other);
};

using Rho = std::function<bool(const Formula &)>;

// Instances of clauses (1)-(18) and (4')-(7'): unary clauses for every pool
// formula, binary ones for every ordered pair. Built once, checked against any rho.
class ClauseSuite {
public:
    explicit ClauseSuite(std::span<const Formula> pool, bool close_under_subformulas = true);
    ClauseReport check(const Rho &rho) const;
    std::size_t size() const { return instances_.size(); }

private:
    struct Instance {
        const char *clause;
        std::vector<std::uint32_t> parts; // indices into formulas_
        bool (*holds)(const bool *r);
    };
    std::vector<Formula> formulas_; // each distinct part once, so rho runs once per formula
    std::vector<Instance> instances_;
};

ClauseReport check_bivaluation_clauses(const Assignment &a, std::span<const Formula> pool);

// Compiles quantifier-free formulas into one shared program over a fixed atom order.
// run() reuses internal scratch space: give each thread its own copy.
class Evaluator {
public:
    Evaluator(std::span<const Formula> formulas, std::vector<std::string> atoms);

    const std::vector<std::string> &atoms() const { return atoms_; }
    // atom_values follows atoms(); out receives one value per compiled formula.
    void run(std::span<const Snapshot> atom_values, std::span<Snapshot> out) const;

private:
    enum class Op : std::uint8_t { Load, Const, Not, And, Or, Circ };
    struct Instr {
        Op op;
        std::uint32_t a = 0, b = 0;
    };
    std::uint32_t compile(const Formula &f);

    std::vector<std::string> atoms_;
    std::vector<Instr> program_;
    std::vector<std::uint32_t> roots_;
    std::unordered_map<Formula, std::uint32_t, FormulaHash> memo_;
    mutable std::vector<Snapshot> scratch_;
};

struct Sequent {
    std::vector<Formula> premises;
    Formula conclusion;
};

struct Verdict {
    bool valid = true;
    std::optional<Assignment> countermodel;
};

struct EntailOptions {
    std::size_t max_atoms = 6;
    unsigned jobs = 1;
};

// Exhaustive search. Atoms are sorted and the first one is the most significant
// digit; each atom runs through T, T0, b, n, F0, F. The reported countermodel is
// the first in that order whatever the number of jobs.
Verdict entails(const Sequent &s, const EntailOptions &options = {});
Verdict equivalent(const Formula &f, const Formula &g, const EntailOptions &options = {});

std::string format_assignment(const Assignment &a); // "p=b q=n"
Assignment parse_assignment(std::string_view text); // "p=b,q=n"

} // namespace letf
