#pragma once

// Independent reference semantics for the tests. Values are plain ints
// 0..5 in the order T, T0, b, n, F0, F; the operation tables are the
// literal cells of the published matrix, never the twist formulas.

#include "letf/fo_models.hpp"
#include "letf/syntax.hpp"

#include <array>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

inline constexpr std::string_view conj_cells = R"(
T  T0 b  n  F0 F
T0 T0 b  n  F0 F
b  b  b  F0 F0 F
n  n  F0 n  F0 F
F0 F0 F0 F0 F0 F
F  F  F  F  F  F
)";

inline constexpr std::string_view disj_cells = R"(
T  T  T  T  T  T
T  T0 T0 T0 T0 T0
T  T0 b  T0 b  b
T  T0 T0 n  n  n
T  T0 b  n  F0 F0
T  T0 b  n  F0 F
)";

inline constexpr std::string_view neg_cells = "F F0 b n T0 T";
inline constexpr std::string_view circ_cells = "T F F F F T";

inline constexpr std::array<std::string_view, 6> names{"T", "T0", "b", "n", "F0", "F"};

// (rho(A), rho(~A), rho(@A)) per value, as listed next to the six
// information states.
inline constexpr std::array<std::array<bool, 3>, 6> triples{{
    {true, false, true},
    {true, false, false},
    {true, true, false},
    {false, false, false},
    {false, true, false},
    {false, true, true},
}};

struct Tables {
    std::array<std::array<int, 6>, 6> conj{}, disj{};
    std::array<int, 6> neg{}, circ{};
};

const Tables &tables();

inline bool designated(int v) { return v <= 2; }
int from_triple(bool z1, bool z2, bool z3); // -1 for the two illegal triples
int value_of(letf::Snapshot s);             // via the triple, not the enum
letf::Snapshot snapshot_of(int v);

using Valuation = std::map<std::string, int>;

// Propositional evaluation by table lookup. The reserved atom defaults to n.
int eval(const letf::Formula &f, const Valuation &v);

// First-order evaluation with a variable environment (Tarskian, not
// substitutional) over a structure, folding the tables over the domain.
int eval(const letf::Structure &s, const letf::Formula &f);

// All 6^n valuations of the atoms, first atom most significant.
std::vector<Valuation> all_valuations(const std::vector<std::string> &atoms);

// Random formulas. Leaves get likelier as depth runs out; connectives are
// ~, @, &, | (no sugar, so every node is primitive).
letf::Formula random_qf(std::mt19937 &rng, const std::vector<std::string> &atoms,
                        int max_depth);

// Sentences over unary P, Q and nullary p, q with variables drawn from
// x, y, z; quantifiers always bind something.
letf::Formula random_sentence(std::mt19937 &rng, int max_depth);

} // namespace oracle
