#include "doctest.h"
#include "oracle.hpp"
#include "shapes.hpp"

#include "letf/normal_forms.hpp"
#include "letf/prop_engine.hpp"

#include <algorithm>
#include <random>

using namespace letf;
using shapes::cnf_shape;
using shapes::dnf_shape;

namespace {

const Formula p = prop("p");

// Pointwise designation agreement over every valuation of the atoms, by the oracle.
bool same_designation(const Formula &f, const Formula &g) {
    std::vector<Formula> both{f, g};
    for (const auto &v : oracle::all_valuations(atoms_of(both)))
        if (oracle::designated(oracle::eval(f, v)) != oracle::designated(oracle::eval(g, v)))
            return false;
    return true;
}

bool same_value(const Formula &f, const Formula &g) {
    std::vector<Formula> both{f, g};
    for (const auto &v : oracle::all_valuations(atoms_of(both)))
        if (oracle::eval(f, v) != oracle::eval(g, v))
            return false;
    return true;
}

bool circ_only_on_atoms(const Formula &f) {
    if (f == top() || f == bottom())
        return true;
    switch (f.kind()) {
    case Kind::Circ:
        return f.operand().kind() == Kind::PropAtom;
    case Kind::Not:
        return circ_only_on_atoms(f.operand());
    case Kind::And:
    case Kind::Or:
        return circ_only_on_atoms(f.lhs()) && circ_only_on_atoms(f.rhs());
    default:
        return true;
    }
}

} // namespace

TEST_CASE("reduce_prefix examples") {
    CHECK(reduce_prefix(parse("~@~p")) == parse("#p"));
    CHECK(reduce_prefix(parse("@@@p")) == top());
    CHECK(reduce_prefix(parse("~~p")) == p);
    CHECK(reduce_prefix(parse("~top")) == bottom());
    CHECK(reduce_prefix(parse("~~(p & ~~q)")) == parse("p & q"));
}

TEST_CASE("expand_classicality examples") {
    CHECK(expand_classicality(parse("@(p & q)")) ==
          parse("(@p & @q & p & q) | (@p & ~p) | (@q & ~q)"));
    CHECK(expand_classicality(parse("#(p | q)")) ==
          parse("(#p | ~p) & (#q | ~q) & (#p | #q | p | q)"));
    CHECK(expand_classicality(parse("@p")) == parse("@p"));
}

TEST_CASE("push_negations examples") {
    CHECK(push_negations(parse("~(p & ~q)")) == parse("~p | q"));
    CHECK(push_negations(parse("~@p")) == parse("#p"));
    CHECK(push_negations(parse("~top")) == bottom());
}

TEST_CASE("to_normal_form examples") {
    CHECK(to_normal_form(parse("p | (q & r)"), NormalFormKind::DNF) == parse("p | (q & r)"));
    CHECK(to_normal_form(parse("@(p & q)"), NormalFormKind::DNF) ==
          parse("(@p & @q & p & q) | (@p & ~p) | (@q & ~q)"));
    CHECK(to_normal_form(parse("~(p | q)"), NormalFormKind::CNF) == parse("~p & ~q"));
}

TEST_CASE("is_normal_form") {
    CHECK(is_normal_form(parse("(p & @q) | #r"), NormalFormKind::DNF));
    CHECK_FALSE(is_normal_form(parse("@(p & q)"), NormalFormKind::DNF));
    CHECK(is_normal_form(top(), NormalFormKind::CNF));
    CHECK(is_normal_form(parse("p & (q | r)"), NormalFormKind::CNF));
    CHECK_FALSE(is_normal_form(parse("p & (q | r)"), NormalFormKind::DNF));
    CHECK_FALSE(is_normal_form(parse("~~p"), NormalFormKind::DNF));
    CHECK(is_nf_literal(parse("#p")));
    CHECK_FALSE(is_nf_literal(parse("@~p")));
}

TEST_CASE("property: every prefix string collapses to a canonical form of the same value") {
    const std::vector<Formula> canonical{p, neg(p), circ(p), bullet(p), top(), bottom()};
    std::vector<Formula> layer{p};
    int checked = 0;
    for (int len = 0; len <= 5; ++len) {
        std::vector<Formula> next;
        for (const auto &f : layer) {
            const auto r = reduce_prefix(f);
            CAPTURE(render(f));
            CHECK(std::find(canonical.begin(), canonical.end(), r) != canonical.end());
            for (int v = 0; v < 6; ++v)
                CHECK(oracle::eval(f, {{"p", v}}) == oracle::eval(r, {{"p", v}}));
            ++checked;
            next.push_back(neg(f));
            next.push_back(circ(f));
            next.push_back(bullet(f));
        }
        layer = std::move(next);
    }
    CHECK(checked == 1 + 3 + 9 + 27 + 81 + 243);
}

TEST_CASE("property: rewriting stages keep their promises") {
    std::mt19937 rng(29);
    for (int i = 0; i < 300; ++i) {
        const auto f = oracle::random_qf(rng, {"p", "q", "r"}, 5);
        CAPTURE(render(f));
        const auto e = expand_classicality(f);
        CHECK(circ_only_on_atoms(e));
        CHECK(same_designation(f, e));
        const auto n = push_negations(f);
        CHECK(same_value(f, n));
    }
}

TEST_CASE("property: normal forms have the right shape and the same designation") {
    std::mt19937 rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto f = oracle::random_qf(rng, {"p", "q", "r"}, 6);
        CAPTURE(render(f));
        const auto d = to_normal_form(f, NormalFormKind::DNF);
        const auto c = to_normal_form(f, NormalFormKind::CNF);
        CHECK(dnf_shape(d));
        CHECK(cnf_shape(c));
        CHECK(is_normal_form(d, NormalFormKind::DNF));
        CHECK(is_normal_form(c, NormalFormKind::CNF));
        CHECK(same_designation(f, d));
        CHECK(same_designation(f, c));
    }
}
