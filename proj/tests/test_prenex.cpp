#include "doctest.h"
#include "oracle.hpp"
#include "shapes.hpp"

#include "letf/prenex.hpp"

#include <random>

using namespace letf;
using shapes::binders;
using shapes::prenex_shape;

namespace {

bool alpha_equal(const Formula &a, const Formula &b,
                 std::map<std::string, std::string> map = {}) {
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case Kind::PropAtom:
        return a.name() == b.name();
    case Kind::Atom: {
        if (a.name() != b.name() || a.args().size() != b.args().size())
            return false;
        for (std::size_t i = 0; i < a.args().size(); ++i) {
            const auto &x = a.args()[i], &y = b.args()[i];
            const auto it = x.is_variable() ? map.find(x.name) : map.end();
            if (x.kind != y.kind || (it == map.end() ? x.name : it->second) != y.name)
                return false;
        }
        return true;
    }
    case Kind::Not:
    case Kind::Circ:
        return alpha_equal(a.operand(), b.operand(), map);
    case Kind::And:
    case Kind::Or:
        return alpha_equal(a.lhs(), b.lhs(), map) && alpha_equal(a.rhs(), b.rhs(), map);
    case Kind::Forall:
    case Kind::Exists:
        map[a.variable()] = b.variable();
        return alpha_equal(a.body(), b.body(), map);
    }
    return false;
}

// Same value on every structure over the formulas' signature up to max_size,
// decided by the Tarskian oracle.
bool oracle_equivalent(const Formula &f, const Formula &g, std::size_t max_size) {
    const auto sig = signature_of(std::vector{f, g});
    bool same = true;
    for_each_structure(sig, {max_size, 50'000'000, false}, [&](const Structure &s) {
        same = oracle::designated(oracle::eval(s, f)) == oracle::designated(oracle::eval(s, g));
        return same;
    });
    return same;
}

} // namespace

TEST_CASE("is_pnf") {
    CHECK(is_pnf(parse("forall x. exists y. P(x) & ~Q(y)")));
    CHECK_FALSE(is_pnf(parse("@(forall x. P(x))")));
    CHECK(is_pnf(parse("@P(c)")));
    CHECK(is_pnf(top()));
    CHECK_FALSE(is_pnf(parse("(forall x. P(x)) | q")));
}

TEST_CASE("to_pnf examples") {
    CHECK(to_pnf(parse("~(forall x. P(x))")) == parse("exists x. ~P(x)"));
    CHECK(alpha_equal(to_pnf(parse("@(forall x. P(x))")),
                      parse("forall x. exists y. (P(x) & @P(x)) | (~P(y) & @P(y))")));
    CHECK(alpha_equal(to_pnf(parse("(forall x. P(x)) | (forall x. Q(x))")),
                      parse("forall x. forall y. P(x) | Q(y)")));
    const auto lit = parse("@P(c)");
    CHECK(to_pnf(lit) == lit);
}

TEST_CASE("verify_pnf examples") {
    CHECK(verify_pnf(parse("~(exists x. P(x))"), parse("forall x. ~P(x)"), 3).valid);
    CHECK(verify_pnf(parse("exists x. q & P(x)"), parse("q & (exists x. P(x))"), 3).valid);
    const auto v = verify_pnf(parse("forall x. P(x)"), parse("exists x. P(x)"), 3);
    REQUIRE_FALSE(v.valid);
    CHECK(v.counter->domain.size() == 2);
}

TEST_CASE("property: random sentences prenex correctly") {
    std::mt19937 rng(43);
    for (int i = 0; i < 40; ++i) {
        const auto f = oracle::random_sentence(rng, 4);
        const auto g = to_pnf(f);
        CAPTURE(render(f));
        CAPTURE(render(g));
        CHECK(prenex_shape(g));
        CHECK(is_pnf(g));
        CHECK(g.is_sentence());
        std::vector<std::string> vars;
        binders(g, vars);
        CHECK(std::set<std::string>(vars.begin(), vars.end()).size() == vars.size());
        if (i < 10) // the Tarskian oracle is slow; a few suffice next to verify_pnf
            CHECK(oracle_equivalent(f, g, 2));
        CHECK(verify_pnf(f, g, 2).valid);
    }
}
