#include "oracle.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace oracle {

namespace {

int cell(const std::string &word) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == word)
            return static_cast<int>(i);
    throw std::logic_error("bad table cell " + word);
}

std::vector<int> cells(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<int> out;
    for (std::string w; in >> w;)
        out.push_back(cell(w));
    return out;
}

Tables build() {
    Tables t;
    const auto c = cells(conj_cells), d = cells(disj_cells);
    const auto n = cells(neg_cells), o = cells(circ_cells);
    if (c.size() != 36 || d.size() != 36 || n.size() != 6 || o.size() != 6)
        throw std::logic_error("table transcription has the wrong size");
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            t.conj[i][j] = c[i * 6 + j];
            t.disj[i][j] = d[i * 6 + j];
        }
        t.neg[i] = n[i];
        t.circ[i] = o[i];
    }
    return t;
}

using letf::Kind;

struct FoEval {
    const letf::Structure &s;
    std::map<std::string, std::size_t> env;
    const Tables &t = tables();

    std::size_t element(const letf::Term &term) const {
        switch (term.kind) {
        case letf::Term::Kind::Variable:
            return env.at(term.name);
        case letf::Term::Kind::Constant:
            return s.constants.at(term.name);
        case letf::Term::Kind::Element:
            return s.element_index(term.name);
        }
        return 0;
    }

    int operator()(const letf::Formula &f) {
        switch (f.kind()) {
        case Kind::PropAtom:
        case Kind::Atom: {
            if (f.name() == letf::reserved_atom)
                return 3;
            const auto &interp = s.predicates.at(f.name());
            std::size_t index = 0;
            for (const auto &a : f.args())
                index = index * s.domain.size() + element(a);
            return value_of(interp.table.at(index));
        }
        case Kind::Not:
            return t.neg[(*this)(f.operand())];
        case Kind::Circ:
            return t.circ[(*this)(f.operand())];
        case Kind::And:
            return t.conj[(*this)(f.lhs())][(*this)(f.rhs())];
        case Kind::Or:
            return t.disj[(*this)(f.lhs())][(*this)(f.rhs())];
        case Kind::Forall:
        case Kind::Exists: {
            const bool all = f.kind() == Kind::Forall;
            const auto saved = env.find(f.variable()) == env.end()
                                   ? std::nullopt
                                   : std::optional<std::size_t>(env[f.variable()]);
            int acc = -1;
            for (std::size_t e = 0; e < s.domain.size(); ++e) {
                env[f.variable()] = e;
                const int v = (*this)(f.body());
                acc = acc < 0 ? v : (all ? t.conj[acc][v] : t.disj[acc][v]);
            }
            if (saved)
                env[f.variable()] = *saved;
            else
                env.erase(f.variable());
            return acc;
        }
        }
        return 3;
    }
};

} // namespace

const Tables &tables() {
    static const Tables t = build();
    return t;
}

int from_triple(bool z1, bool z2, bool z3) {
    for (std::size_t i = 0; i < triples.size(); ++i)
        if (triples[i] == std::array<bool, 3>{z1, z2, z3})
            return static_cast<int>(i);
    return -1;
}

int value_of(letf::Snapshot s) { return from_triple(s.z1(), s.z2(), s.z3()); }

letf::Snapshot snapshot_of(int v) {
    const auto &z = triples.at(static_cast<std::size_t>(v));
    return *letf::Snapshot::try_make(z[0], z[1], z[2]);
}

int eval(const letf::Formula &f, const Valuation &v) {
    const auto &t = tables();
    switch (f.kind()) {
    case Kind::PropAtom: {
        const auto it = v.find(f.name());
        if (it != v.end())
            return it->second;
        if (f.name() == letf::reserved_atom)
            return 3;
        throw std::logic_error("unassigned atom " + f.name());
    }
    case Kind::Not:
        return t.neg[eval(f.operand(), v)];
    case Kind::Circ:
        return t.circ[eval(f.operand(), v)];
    case Kind::And:
        return t.conj[eval(f.lhs(), v)][eval(f.rhs(), v)];
    case Kind::Or:
        return t.disj[eval(f.lhs(), v)][eval(f.rhs(), v)];
    default:
        throw std::logic_error("oracle: not propositional");
    }
}

int eval(const letf::Structure &s, const letf::Formula &f) { return FoEval{s, {}}(f); }

std::vector<Valuation> all_valuations(const std::vector<std::string> &atoms) {
    std::vector<Valuation> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        total *= 6;
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        Valuation v;
        std::size_t rest = code;
        for (std::size_t i = atoms.size(); i-- > 0;) {
            v[atoms[i]] = static_cast<int>(rest % 6);
            rest /= 6;
        }
        out.push_back(std::move(v));
    }
    return out;
}

letf::Formula random_qf(std::mt19937 &rng, const std::vector<std::string> &atoms,
                        int max_depth) {
    std::uniform_int_distribution<std::size_t> pick_atom(0, atoms.size() - 1);
    std::uniform_int_distribution<int> pick(0, 9);
    if (max_depth == 0 || pick(rng) < 2)
        return letf::prop(atoms[pick_atom(rng)]);
    switch (pick(rng) % 4) {
    case 0:
        return letf::neg(random_qf(rng, atoms, max_depth - 1));
    case 1:
        return letf::circ(random_qf(rng, atoms, max_depth - 1));
    case 2: {
        auto l = random_qf(rng, atoms, max_depth - 1);
        return letf::conj(std::move(l), random_qf(rng, atoms, max_depth - 1));
    }
    default: {
        auto l = random_qf(rng, atoms, max_depth - 1);
        return letf::disj(std::move(l), random_qf(rng, atoms, max_depth - 1));
    }
    }
}

namespace {

letf::Formula random_open(std::mt19937 &rng, std::vector<std::string> &scope, int depth) {
    std::uniform_int_distribution<int> pick(0, 11);
    const int roll = pick(rng);
    if (depth == 0 || roll < 3) {
        std::uniform_int_distribution<std::size_t> leaf(0, scope.size() + 1);
        const auto k = leaf(rng);
        if (k >= scope.size())
            return letf::prop(k == scope.size() ? "p" : "q");
        return letf::atom(roll % 2 ? "P" : "Q", {letf::Term::variable(scope[k])});
    }
    switch (roll % 6) {
    case 0:
        return letf::neg(random_open(rng, scope, depth - 1));
    case 1:
        return letf::circ(random_open(rng, scope, depth - 1));
    case 2: {
        auto l = random_open(rng, scope, depth - 1);
        return letf::conj(std::move(l), random_open(rng, scope, depth - 1));
    }
    case 3: {
        auto l = random_open(rng, scope, depth - 1);
        return letf::disj(std::move(l), random_open(rng, scope, depth - 1));
    }
    default: {
        static const std::array<std::string, 3> vars{"x", "y", "z"};
        std::uniform_int_distribution<std::size_t> v(0, vars.size() - 1);
        const auto var = vars[v(rng)];
        scope.push_back(var);
        // one level is kept in reserve for the conjunct that binds var if needed
        auto body = depth >= 2 ? random_open(rng, scope, depth - 2)
                               : letf::atom("P", {letf::Term::variable(var)});
        scope.pop_back();
        const auto fv = body.free_variables();
        if (std::find(fv.begin(), fv.end(), var) == fv.end())
            body = letf::conj(letf::atom("P", {letf::Term::variable(var)}), std::move(body));
        return roll % 2 ? letf::forall(var, std::move(body))
                        : letf::exists(var, std::move(body));
    }
    }
}

} // namespace

letf::Formula random_sentence(std::mt19937 &rng, int max_depth) {
    std::vector<std::string> scope;
    return random_open(rng, scope, max_depth);
}

} // namespace oracle
