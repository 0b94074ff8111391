#pragma once

#include "letf/algebra.hpp"
#include "letf/prop_engine.hpp"
#include "letf/syntax.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace letf {

using Tuple = std::vector<std::size_t>;

// Snapshot-valued interpretation of one predicate: a table over domain^arity,
// row-major with the first argument most significant.
struct Interpretation {
    std::size_t arity = 0;
    std::vector<Snapshot> table;

    bool operator==(const Interpretation &) const = default;
};

std::size_t tuple_index(std::span<const std::size_t> tuple, std::size_t domain_size);
Tuple tuple_at(std::size_t index, std::size_t arity, std::size_t domain_size);
std::size_t power(std::size_t base, std::size_t exponent);

struct ExtensionTriple {
    std::set<Tuple> plus, minus, circ;

    bool operator==(const ExtensionTriple &) const = default;
};

ExtensionTriple extensions_of(const Interpretation &interp, std::size_t domain_size);
// Throws Error(ConstraintViolation) for a tuple in circ that is in both or
// neither of plus and minus.
Interpretation from_extensions(const ExtensionTriple &t, std::size_t arity,
                               std::size_t domain_size);

struct Structure {
    std::vector<std::string> domain;
    std::map<std::string, std::size_t> constants; // constant -> element index
    std::map<std::string, Interpretation> predicates;

    std::size_t element_index(const std::string &name) const;
    const Interpretation &interpretation(const std::string &predicate) const;
    Signature signature() const;
    // Throws when tables have the wrong size or constants point outside the domain.
    void validate() const;

    bool operator==(const Structure &) const = default;
};

// The diagram constant naming the i-th element.
Term diagram_name(const Structure &s, std::size_t element);

// Sentences grounded over a fixed domain: every quantifier is replaced by its
// instances A(a/x), one per element, with equal instances shared. Evaluating
// the result on a structure over that domain is then a single bottom-up pass.
class Grounding {
public:
    Grounding(std::span<const Formula> sentences, std::vector<std::string> domain);

    // One value per sentence; not thread-safe (scratch space), copy per thread.
    void evaluate(const Structure &s, std::span<Snapshot> out) const;
    std::size_t node_count() const { return nodes_.size(); }

private:
    enum class Op : std::uint8_t { Atom, Const, Not, And, Or, Circ, Forall, Exists };
    struct Arg {
        bool constant;
        std::size_t index; // element index, or position in constant_names_
    };
    struct Node {
        Op op;
        std::uint32_t a = 0, b = 0; // operands; for quantifiers, a range of kids_
        std::uint32_t atom = 0;     // index in atoms_
    };
    struct AtomRef {
        std::size_t predicate; // position in predicate_names_
        std::vector<Arg> args;
    };

    std::uint32_t ground(const Formula &f);
    std::uint32_t push(Node n);

    std::vector<std::string> domain_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> kids_;
    std::vector<AtomRef> atoms_;
    std::vector<std::string> predicate_names_;
    std::vector<std::string> constant_names_;
    std::vector<std::uint32_t> roots_;
    std::unordered_map<Formula, std::uint32_t, FormulaHash> memo_;
    mutable std::vector<Snapshot> scratch_;
    mutable std::vector<Snapshot> fold_;
};

// Throws Error(NotSentence) / Error(UnknownName).
Snapshot eval_sentence(const Structure &s, const Formula &f);
bool holds(const Structure &s, const Formula &f);

struct V3Lemma {
    bool every_branch = false; // forall: all instances reliable and true; exists: reliable and false
    bool some_branch = false;  // forall: some instance reliable and false; exists: reliable and true
    bool v3 = false;           // third coordinate of the quantified sentence
    bool holds() const { return v3 == (every_branch || some_branch); }
};

V3Lemma v3_lemma(const Structure &s, const Formula &quantified);
bool check_v3_lemma(const Structure &s, const Formula &quantified);

// Clauses (1)-(18), (4')-(7') over the pool closed under subformulas and
// instances, plus the atomic clauses (1')-(3') and quantifier clauses (8')-(13').
ClauseReport check_fo_bivaluation(const Structure &s, std::span<const Formula> pool);

struct EnumerationOptions {
    std::size_t max_size = 2;
    std::uint64_t cap = 20'000'000;
    bool symmetry_reduction = false;
};

// All structures over {e1..ek} for one k, in canonical order: the constant map
// (constants sorted, element order) is the most significant part, then the
// predicate tables (predicates sorted, cells row-major, values T..F).
class StructureSpace {
public:
    StructureSpace(const Signature &sig, std::size_t domain_size);

    std::uint64_t size() const { return size_; }
    Structure at(std::uint64_t index) const;
    void advance(Structure &s) const; // at(i) -> at(i+1)
    // True if no domain permutation maps s to a structure earlier in the order.
    bool is_canonical(const Structure &s) const;

private:
    std::vector<std::size_t> digits_of(const Structure &s) const;

    std::size_t domain_size_;
    std::vector<std::string> constants_;
    std::vector<std::pair<std::string, std::size_t>> predicates_;
    std::uint64_t size_ = 1;
    std::vector<std::vector<std::size_t>> permutations_;
};

// Throws Error(InvalidArgument) for a signature without predicates and
// Error(BoundExceeded) past the cap.
std::uint64_t count_structures(const Signature &sig, std::size_t max_size);
void for_each_structure(const Signature &sig, const EnumerationOptions &options,
                        const std::function<bool(const Structure &)> &visit);
std::vector<Structure> enumerate_structures(const Signature &sig,
                                            const EnumerationOptions &options = {});

struct FoOptions {
    std::size_t max_size = 3;
    std::uint64_t cap = 20'000'000;
    unsigned jobs = 1;
    bool symmetry_reduction = false;
};

// Bounded: valid means no counter-structure with |D| <= max_size exists.
struct FoVerdict {
    bool valid = true;
    bool bounded = true;
    std::size_t max_size = 0;
    std::uint64_t structures_checked = 0;
    std::optional<Structure> counter;
};

FoVerdict fo_entails(std::span<const Formula> premises, const Formula &conclusion,
                     const Signature &sig, const FoOptions &options = {});
FoVerdict fo_equivalent(const Formula &f, const Formula &g, const Signature &sig,
                        const FoOptions &options = {});

// Text format:
//   domain: a b
//   const c = a
//   pred P/1 { a: T; b: b }
//   pred R/2 { a,a: T; a,b: n; b,a: F; b,b: b }
//   pred q/0 { T }
//   pred P/1 { +: a b; -: b; o: a }
Structure parse_structure(std::string_view text);
std::string format_structure(const Structure &s);

} // namespace letf
