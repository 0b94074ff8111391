#include "doctest.h"
#include "oracle.hpp"

#include "letf/error.hpp"
#include "letf/fo_models.hpp"

#include <random>

using namespace letf;

namespace {

Structure unary(std::vector<SixValue> values) {
    Structure s;
    Interpretation p{1, {}};
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.domain.push_back(std::string(1, static_cast<char>('a' + i)));
        p.table.push_back(values[i]);
    }
    s.predicates["P"] = p;
    return s;
}

Signature sig_of(std::string_view text) {
    Signature sig;
    parse_extending(text, sig);
    return sig;
}

Formula F(std::string_view text, Signature &sig) { return parse_extending(text, sig); }

} // namespace

TEST_CASE("extension triples") {
    using enum SixValue;
    const Interpretation t{1, {T}};
    const auto ext = extensions_of(t, 1);
    CHECK(ext.plus.count({0}) == 1);
    CHECK(ext.minus.count({0}) == 0);
    CHECK(ext.circ.count({0}) == 1);

    ExtensionTriple bad;
    bad.plus = bad.minus = bad.circ = {{0}};
    CHECK_THROWS_AS(from_extensions(bad, 1, 1), Error);
    bad.plus.clear();
    bad.minus.clear();
    CHECK_THROWS_AS(from_extensions(bad, 1, 1), Error);

    CHECK(from_extensions({}, 1, 1).table == std::vector<Snapshot>{Snapshot(N)});
}

TEST_CASE("property: extensions_of and from_extensions are inverse") {
    for (std::size_t d = 1; d <= 2; ++d) {
        for (std::size_t arity = 0; arity <= 2; ++arity) {
            const std::size_t cells = power(d, arity);
            const std::size_t total = power(6, cells);
            for (std::size_t code = 0; code < total; ++code) {
                Interpretation in{arity, {}};
                std::size_t rest = code;
                for (std::size_t c = 0; c < cells; ++c, rest /= 6)
                    in.table.push_back(oracle::snapshot_of(static_cast<int>(rest % 6)));
                const auto back = from_extensions(extensions_of(in, d), arity, d);
                CHECK(back == in);
            }
        }
    }
}

TEST_CASE("tuple indexing") {
    CHECK(tuple_index(std::vector<std::size_t>{1, 0}, 3) == 3);
    CHECK(tuple_at(5, 2, 3) == Tuple{1, 2});
    CHECK(power(6, 3) == 216);
}

TEST_CASE("sentence values") {
    using enum SixValue;
    const auto s = unary({T, B});
    CHECK(eval_sentence(s, parse("forall x. P(x)")).value() == B);
    CHECK(eval_sentence(s, parse("@(forall x. P(x))")).value() == F);
    CHECK(holds(s, parse("forall x. P(x)")));
    CHECK(eval_sentence(unary({F0}), parse("exists x. P(x)")).value() == F0);

    auto c = unary({T0});
    c.constants["c"] = 0;
    CHECK_FALSE(holds(c, parse("@P(c)")));
    c.predicates["P"].table[0] = N;
    CHECK_FALSE(holds(c, parse("P(c) | ~P(c)")));

    try {
        eval_sentence(s, parse("P(x)", sig_of("P(c)"), {"x"}));
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NotSentence);
    }
    CHECK_THROWS_AS(eval_sentence(s, parse("Q(a)")), Error);
}

TEST_CASE("diagram names evaluate as their elements") {
    using enum SixValue;
    const auto s = unary({T, F0});
    CHECK(eval_sentence(s, atom("P", {diagram_name(s, 1)})).value() == F0);
}

TEST_CASE("v3 lemma cases") {
    using enum SixValue;
    const auto all = parse("forall x. P(x)");
    auto l = v3_lemma(unary({T, T}), all);
    CHECK(l.v3);
    CHECK(l.every_branch);
    l = v3_lemma(unary({T, F}), all);
    CHECK(l.v3);
    CHECK(l.some_branch);
    l = v3_lemma(unary({T, B}), all);
    CHECK_FALSE(l.v3);
    CHECK(l.holds());
    CHECK_THROWS_AS(v3_lemma(unary({T}), parse("P(a)")), Error);
}

TEST_CASE("counting and enumeration") {
    const auto p = sig_of("exists x. P(x) | q");
    CHECK(count_structures(sig_of("exists x. P(x)"), 1) == 6);
    CHECK(count_structures(sig_of("exists x. P(x)"), 2) == 42);
    CHECK(count_structures(p, 2) == 6 * 6 + 36 * 6);
    CHECK(count_structures(sig_of("P(c)"), 2) == 6 + 2 * 36);
    CHECK_THROWS_AS(count_structures(Signature{}, 2), Error);

    const auto all = enumerate_structures(p, {2, 1000, false});
    CHECK(all.size() == 252);
    CHECK(all.front().domain == std::vector<std::string>{"e1"});
    for (const auto &s : all)
        s.validate();
    const auto reduced = enumerate_structures(p, {2, 1000, true});
    CHECK(reduced.size() < all.size());
    CHECK(reduced.size() == 6 * 6 + 6 * 21);

    StructureSpace space(p, 2);
    Structure s = space.at(0);
    for (std::uint64_t i = 0; i < space.size(); ++i, space.advance(s))
        CHECK(s == space.at(i));

    try {
        enumerate_structures(p, {3, 10, false});
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::BoundExceeded);
    }
}

TEST_CASE("fo_entails examples") {
    Signature sig;
    const auto all = F("forall x. P(x)", sig);
    const auto inst = F("P(c)", sig);
    const auto v = fo_entails(std::vector{all}, inst, sig);
    CHECK(v.valid);
    CHECK(v.bounded);
    CHECK(v.max_size == 3);
    CHECK(v.structures_checked == count_structures(sig, 3));

    Signature sig2;
    const auto some = F("exists x. P(x)", sig2);
    const auto every = F("forall x. P(x)", sig2);
    const auto w = fo_entails(std::vector{some}, every, sig2);
    REQUIRE_FALSE(w.valid);
    REQUIRE(w.counter.has_value());
    CHECK(w.counter->domain.size() == 2);
    CHECK(oracle::designated(oracle::eval(*w.counter, some)));
    CHECK_FALSE(oracle::designated(oracle::eval(*w.counter, every)));

    Signature sig3;
    const auto prem = F("@(forall x. P(x))", sig3);
    const auto concl = F("(forall x. P(x) & @P(x)) | (exists x. ~P(x) & @P(x))", sig3);
    CHECK(fo_entails(std::vector{prem}, concl, sig3).valid);
}

TEST_CASE("fo verdicts do not depend on jobs or symmetry reduction") {
    std::mt19937 rng(37);
    for (int i = 0; i < 25; ++i) {
        const auto a = oracle::random_sentence(rng, 3), b = oracle::random_sentence(rng, 3);
        Signature sig = signature_of(std::vector{a, b});
        const std::vector prem{a};
        FoOptions base{2, 20'000'000, 1, false};
        const auto one = fo_entails(prem, b, sig, base);
        base.jobs = 3;
        const auto three = fo_entails(prem, b, sig, base);
        base.symmetry_reduction = true;
        const auto sym = fo_entails(prem, b, sig, base);
        CHECK(one.valid == three.valid);
        CHECK(one.valid == sym.valid);
        if (!one.valid)
            CHECK(*one.counter == *three.counter);
    }
}

TEST_CASE("structure text format") {
    const auto s = parse_structure(R"(
        domain: a b
        const c = a
        pred P/1 { a: T; b: b }
        pred R/2 { +: a,a a,b; -: a,b b,b; o: a,a b,b }
        pred q/0 { F0 }
    )");
    CHECK(s.domain == std::vector<std::string>{"a", "b"});
    CHECK(s.constants.at("c") == 0);
    CHECK(s.interpretation("P").table[1].value() == SixValue::B);
    const auto &r = s.interpretation("R").table;
    CHECK(r[0].value() == SixValue::T);
    CHECK(r[1].value() == SixValue::B);
    CHECK(r[2].value() == SixValue::N);
    CHECK(r[3].value() == SixValue::F);
    CHECK(parse_structure(format_structure(s)) == s);
    CHECK_THROWS_AS(parse_structure("domain: a\npred P/1 { +: a; -: a; o: a }"), Error);
    CHECK_THROWS_AS(parse_structure("pred P/1 { a: T }"), Error);
    CHECK_THROWS_AS(parse_structure("domain: a b\npred P/1 { a: T }"), Error);
}

TEST_CASE("property: quantifiers are the folds of conj and disj") {
    for (std::size_t d = 1; d <= 3; ++d) {
        for (std::size_t code = 0; code < power(6, d); ++code) {
            std::vector<SixValue> vals;
            std::size_t rest = code;
            for (std::size_t i = 0; i < d; ++i, rest /= 6)
                vals.push_back(all_values[rest % 6]);
            const auto s = unary(vals);
            int all = static_cast<int>(vals[0]), some = all;
            for (std::size_t i = 1; i < d; ++i) {
                all = oracle::tables().conj[all][static_cast<int>(vals[i])];
                some = oracle::tables().disj[some][static_cast<int>(vals[i])];
            }
            const auto fa = parse("forall x. P(x)"), ex = parse("exists x. P(x)");
            CHECK(oracle::value_of(eval_sentence(s, fa)) == all);
            CHECK(oracle::value_of(eval_sentence(s, ex)) == some);
            CHECK(check_v3_lemma(s, fa));
            CHECK(check_v3_lemma(s, ex));
        }
    }
}

TEST_CASE("property: grounded evaluation matches the Tarskian oracle") {
    std::mt19937 rng(41);
    for (int i = 0; i < 60; ++i) {
        const auto f = oracle::random_sentence(rng, 4);
        const std::vector fs{f};
        const auto sig = signature_of(fs);
        std::uniform_int_distribution<std::size_t> size(1, 3);
        const std::size_t d = size(rng);
        const StructureSpace space(sig, d);
        std::uniform_int_distribution<std::uint64_t> pick(0, space.size() - 1);
        Grounding g(fs, space.at(0).domain);
        for (int k = 0; k < 30; ++k) {
            const auto s = space.at(pick(rng));
            Snapshot out;
            g.evaluate(s, std::span(&out, 1));
            CAPTURE(render(f));
            CHECK(oracle::value_of(out) == oracle::eval(s, f));
            CHECK(oracle::value_of(eval_sentence(s, f)) == oracle::eval(s, f));
        }
    }
}

TEST_CASE("property: first-order bivaluation clauses hold") {
    Signature sig;
    const std::vector pool{F("forall x. P(x)", sig), F("exists x. ~P(x) & q", sig),
                           F("@(exists x. P(x) | @P(x))", sig), F("P(c) & ~q", sig)};
    std::size_t checked = 0;
    for (const auto &s : enumerate_structures(sig, {2, 1'000'000, false})) {
        const auto report = check_fo_bivaluation(s, pool);
        CHECK(report.ok());
        checked += report.instances_checked;
    }
    CHECK(checked > 0);
}
