#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace letf {

struct Term {
    // Element terms are diagram names: one per domain element, never written by users.
    enum class Kind : std::uint8_t { Variable, Constant, Element };

    Kind kind = Kind::Constant;
    std::string name;

    static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }
    static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }
    static Term element(std::string name) { return {Kind::Element, std::move(name)}; }

    bool is_variable() const { return kind == Kind::Variable; }

    auto operator<=>(const Term &) const = default;
};

enum class Kind : std::uint8_t { PropAtom, Atom, Not, And, Or, Circ, Forall, Exists };

struct FormulaNode;

// Immutable, structurally shared formula tree over the eight primitive node kinds.
class Formula {
public:
    Kind kind() const;
    // Atom or predicate name; for quantifiers, the bound variable.
    const std::string &name() const;
    const std::vector<Term> &args() const;
    const Formula &operand() const; // Not, Circ
    const Formula &lhs() const;     // And, Or
    const Formula &rhs() const;
    const Formula &body() const; // Forall, Exists
    const std::string &variable() const { return name(); }
    // Sorted, duplicate free.
    const std::vector<std::string> &free_variables() const;
    std::size_t hash() const;

    bool is_atomic() const { return kind() == Kind::PropAtom || kind() == Kind::Atom; }
    bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
    bool is_binary() const { return kind() == Kind::And || kind() == Kind::Or; }
    bool is_sentence() const { return free_variables().empty(); }

    bool operator==(const Formula &other) const;

private:
    explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
    friend Formula make_formula(Kind, std::string, std::vector<Term>, std::vector<Formula>);

    std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::vector<Formula> children;
    std::vector<std::string> free;
    std::size_t hash;
};

inline Kind Formula::kind() const { return node_->kind; }
inline const std::string &Formula::name() const { return node_->name; }
inline const std::vector<Term> &Formula::args() const { return node_->args; }
inline const Formula &Formula::operand() const { return node_->children[0]; }
inline const Formula &Formula::lhs() const { return node_->children[0]; }
inline const Formula &Formula::rhs() const { return node_->children[1]; }
inline const Formula &Formula::body() const { return node_->children[0]; }
inline const std::vector<std::string> &Formula::free_variables() const { return node_->free; }
inline std::size_t Formula::hash() const { return node_->hash; }

struct FormulaHash {
    std::size_t operator()(const Formula &f) const { return f.hash(); }
};

// Atom standing in for the bottom/top particles; users cannot declare it.
inline constexpr std::string_view reserved_atom = "_p0";

Formula prop(std::string name);
Formula atom(std::string predicate, std::vector<Term> args);
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula circ(Formula f);
// Both throw Error(VoidQuantifier) when the variable is not free in the body.
Formula forall(std::string var, Formula body);
Formula exists(std::string var, Formula body);

// Sugar, expanded on construction.
Formula bullet(Formula f);            // ~@A
Formula t_sup(const Formula &f);      // @A & A
Formula f_sup(const Formula &f);      // @A & ~A
Formula top();                        // @@_p0
Formula bottom();                     // ##_p0

bool is_top(const Formula &f);
bool is_bottom(const Formula &f);

struct Signature {
    std::map<std::string, std::size_t> predicates; // propositional atoms have arity 0
    std::set<std::string> constants;

    // Both throw Error(Arity) on a conflicting declaration.
    void declare_predicate(const std::string &name, std::size_t arity);
    void declare_constant(const std::string &name);
    void merge(const Signature &other);

    bool operator==(const Signature &) const = default;
};

// Predicates (with arity) and constants occurring in f, added to sig.
void collect_signature(const Formula &f, Signature &sig);
Signature signature_of(std::span<const Formula> formulas);

// Strict: every name must resolve against sig; free_variables lists the
// identifiers that may occur as unbound variables.
Formula parse(std::string_view text, const Signature &sig,
              const std::set<std::string> &free_variables = {});
// Unknown names are declared in sig on first use (arity from that use).
Formula parse_extending(std::string_view text, Signature &sig);
Formula parse(std::string_view text);

std::string render(const Formula &f);
std::string render(const Term &t);
std::ostream &operator<<(std::ostream &os, const Formula &f);

std::size_t complexity(const Formula &f);
std::size_t depth(const Formula &f);
Formula substitute(const Formula &f, const std::string &var, const Term &replacement);
Formula substitute(const Formula &f, const std::string &var, const std::string &constant);
std::set<std::string> free_vars(const Formula &f);
bool is_sentence(const Formula &f);
bool is_generalized_literal(const Formula &f);
bool is_quantifier_free(const Formula &f);
bool occurs_constant(const Formula &f, const std::string &constant);
// Every identifier in f: atom/predicate names, terms, bound variables.
std::set<std::string> names_in(const Formula &f);
// Distinct subformulas, children before parents.
std::vector<Formula> subformulas(const Formula &f);

// Yields prefix1, prefix2, ... skipping anything in `taken`.
class FreshNames {
public:
    FreshNames(std::string prefix, std::set<std::string> taken)
        : prefix_(std::move(prefix)), taken_(std::move(taken)) {}
    std::string next();

private:
    std::string prefix_;
    std::set<std::string> taken_;
    std::size_t counter_ = 0;
};

// Renames every binder whose variable is bound more than once or also occurs
// free, using x1, x2, ... so that all bound variables end up distinct.
Formula rename_bound(const Formula &f);
Formula rename_bound(const Formula &f, FreshNames &fresh);

} // namespace letf

template <> struct std::hash<letf::Formula> {
    std::size_t operator()(const letf::Formula &f) const { return f.hash(); }
};
