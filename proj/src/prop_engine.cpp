#include "letf/prop_engine.hpp"

#include "letf/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace letf {

std::string atom_key(const Formula &atomic) {
    if (atomic.kind() == Kind::PropAtom)
        return atomic.name();
    return render(atomic);
}

namespace {

void collect_atoms(const Formula &f, std::set<std::string> &out) {
    switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::Atom:
        if (f.name() != reserved_atom)
            out.insert(atom_key(f));
        return;
    case Kind::Not:
    case Kind::Circ:
        collect_atoms(f.operand(), out);
        return;
    case Kind::And:
    case Kind::Or:
        collect_atoms(f.lhs(), out);
        collect_atoms(f.rhs(), out);
        return;
    case Kind::Forall:
    case Kind::Exists:
        throw Error(ErrorKind::InvalidArgument,
                    "propositional evaluation of a quantified formula: " + render(f));
    }
}

} // namespace

std::vector<std::string> atoms_of(std::span<const Formula> formulas) {
    std::set<std::string> out;
    for (const Formula &f : formulas)
        collect_atoms(f, out);
    return {out.begin(), out.end()};
}

Snapshot evaluate(const Formula &f, const Assignment &a) {
    switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::Atom: {
        auto it = a.find(atom_key(f));
        if (it != a.end())
            return it->second;
        if (f.name() == reserved_atom)
            return Snapshot(SixValue::N);
        throw Error(ErrorKind::UnassignedAtom, "no value for atom '" + atom_key(f) + "'");
    }
    case Kind::Not:
        return neg(evaluate(f.operand(), a));
    case Kind::Circ:
        return circ(evaluate(f.operand(), a));
    case Kind::And:
        return conj(evaluate(f.lhs(), a), evaluate(f.rhs(), a));
    case Kind::Or:
        return disj(evaluate(f.lhs(), a), evaluate(f.rhs(), a));
    case Kind::Forall:
    case Kind::Exists:
        break;
    }
    throw Error(ErrorKind::InvalidArgument,
                "propositional evaluation of a quantified formula: " + render(f));
}

Bivaluation bivaluation_of(Assignment a) { return Bivaluation(std::move(a)); }

void ClauseReport::append(const ClauseReport &other) {
    instances_checked += other.instances_checked;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

ClauseSuite::ClauseSuite(std::span<const Formula> pool, bool close_under_subformulas) {
    std::vector<Formula> closed;
    std::unordered_set<Formula, FormulaHash> seen;
    for (const Formula &f : pool) {
        if (!close_under_subformulas) {
            if (seen.insert(f).second)
                closed.push_back(f);
            continue;
        }
        for (const Formula &g : subformulas(f))
            if (seen.insert(g).second)
                closed.push_back(g);
    }
    std::unordered_map<Formula, std::uint32_t, FormulaHash> index;
    auto add = [&](const char *clause, std::initializer_list<Formula> parts,
                   bool (*holds)(const bool *)) {
        Instance inst{clause, {}, holds};
        for (const Formula &f : parts) {
            auto [it, fresh] = index.try_emplace(f, static_cast<std::uint32_t>(formulas_.size()));
            if (fresh)
                formulas_.push_back(f);
            inst.parts.push_back(it->second);
        }
        instances_.push_back(std::move(inst));
    };
    for (const Formula &a : closed) {
        add("(3)", {neg(neg(a)), a}, [](const bool *r) { return r[0] == r[1]; });
        add("(6)", {circ(a), neg(a), a}, [](const bool *r) { return !r[0] || (r[1] == !r[2]); });
        add("(7)", {circ(circ(a))}, [](const bool *r) { return r[0]; });
        add("(8)", {circ(neg(a)), circ(a)}, [](const bool *r) { return r[0] == r[1]; });
    }
    for (const Formula &a : closed) {
        for (const Formula &b : closed) {
            const Formula ab = conj(a, b), a_or_b = disj(a, b);
            add("(1)", {ab, a, b}, [](const bool *r) { return r[0] == (r[1] && r[2]); });
            add("(2)", {a_or_b, a, b}, [](const bool *r) { return r[0] == (r[1] || r[2]); });
            add("(4)", {neg(ab), neg(a), neg(b)},
                [](const bool *r) { return r[0] == (r[1] || r[2]); });
            add("(5)", {neg(a_or_b), neg(a), neg(b)},
                [](const bool *r) { return r[0] == (r[1] && r[2]); });
            add("(9)", {circ(a), a, circ(b), b, circ(ab)},
                [](const bool *r) { return !(r[0] && r[1] && r[2] && r[3]) || r[4]; });
            add("(10)", {circ(a), neg(a), circ(ab)},
                [](const bool *r) { return !(r[0] && r[1]) || r[2]; });
            add("(11)", {circ(b), neg(b), circ(ab)},
                [](const bool *r) { return !(r[0] && r[1]) || r[2]; });
            add("(12)", {circ(ab), a, b, circ(a), circ(b)},
                [](const bool *r) { return !(r[0] && r[1] && r[2]) || (r[3] && r[4]); });
            add("(13)", {circ(ab), neg(a), neg(b), circ(a), circ(b)}, [](const bool *r) {
                return !(r[0] && (r[1] || r[2])) || (r[3] && r[1]) || (r[4] && r[2]);
            });
            add("(14)", {circ(a), a, circ(a_or_b)},
                [](const bool *r) { return !(r[0] && r[1]) || r[2]; });
            add("(15)", {circ(b), b, circ(a_or_b)},
                [](const bool *r) { return !(r[0] && r[1]) || r[2]; });
            add("(16)", {circ(a), neg(a), circ(b), neg(b), circ(a_or_b)},
                [](const bool *r) { return !(r[0] && r[1] && r[2] && r[3]) || r[4]; });
            add("(17)", {circ(a_or_b), a, b, circ(a), circ(b)}, [](const bool *r) {
                return !(r[0] && (r[1] || r[2])) || (r[3] && r[1]) || (r[4] && r[2]);
            });
            add("(18)", {circ(a_or_b), a, b, circ(a), circ(b)},
                [](const bool *r) { return !(r[0] && !r[1] && !r[2]) || (r[3] && r[4]); });
            add("(4')", {t_sup(ab), t_sup(a), t_sup(b)},
                [](const bool *r) { return r[0] == (r[1] && r[2]); });
            add("(5')", {t_sup(a_or_b), t_sup(a), t_sup(b)},
                [](const bool *r) { return r[0] == (r[1] || r[2]); });
            add("(6')", {f_sup(ab), f_sup(a), f_sup(b)},
                [](const bool *r) { return r[0] == (r[1] || r[2]); });
            add("(7')", {f_sup(a_or_b), f_sup(a), f_sup(b)},
                [](const bool *r) { return r[0] == (r[1] && r[2]); });
        }
    }
}

ClauseReport ClauseSuite::check(const Rho &rho) const {
    ClauseReport report;
    std::vector<char> value(formulas_.size());
    for (std::size_t i = 0; i < formulas_.size(); ++i)
        value[i] = rho(formulas_[i]);
    bool r[8];
    for (const Instance &inst : instances_) {
        for (std::size_t i = 0; i < inst.parts.size(); ++i)
            r[i] = value[inst.parts[i]];
        ++report.instances_checked;
        if (!inst.holds(r)) {
            std::string text;
            for (const auto i : inst.parts)
                text += (text.empty() ? "" : ", ") + render(formulas_[i]) + "=" +
                        (value[i] ? "1" : "0");
            report.violations.push_back({inst.clause, text});
        }
    }
    return report;
}

ClauseReport check_bivaluation_clauses(const Assignment &a, std::span<const Formula> pool) {
    const Bivaluation rho = bivaluation_of(a);
    return ClauseSuite(pool).check([&](const Formula &f) { return rho(f); });
}

Evaluator::Evaluator(std::span<const Formula> formulas, std::vector<std::string> atoms)
    : atoms_(std::move(atoms)) {
    for (const Formula &f : formulas)
        roots_.push_back(compile(f));
    memo_.clear();
    scratch_.resize(program_.size());
}

std::uint32_t Evaluator::compile(const Formula &f) {
    if (auto it = memo_.find(f); it != memo_.end())
        return it->second;
    Instr instr{Op::Const};
    switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::Atom: {
        const std::string key = atom_key(f);
        auto it = std::find(atoms_.begin(), atoms_.end(), key);
        if (it != atoms_.end()) {
            instr = {Op::Load, static_cast<std::uint32_t>(it - atoms_.begin())};
        } else if (f.name() == reserved_atom) {
            instr = {Op::Const, Snapshot(SixValue::N).bits()};
        } else {
            throw Error(ErrorKind::UnassignedAtom, "no value for atom '" + key + "'");
        }
        break;
    }
    case Kind::Not:
        instr = {Op::Not, compile(f.operand())};
        break;
    case Kind::Circ:
        instr = {Op::Circ, compile(f.operand())};
        break;
    case Kind::And:
        instr = {Op::And, compile(f.lhs()), compile(f.rhs())};
        break;
    case Kind::Or:
        instr = {Op::Or, compile(f.lhs()), compile(f.rhs())};
        break;
    case Kind::Forall:
    case Kind::Exists:
        throw Error(ErrorKind::InvalidArgument,
                    "propositional evaluation of a quantified formula: " + render(f));
    }
    program_.push_back(instr);
    const auto index = static_cast<std::uint32_t>(program_.size() - 1);
    memo_.emplace(f, index);
    return index;
}

void Evaluator::run(std::span<const Snapshot> atom_values, std::span<Snapshot> out) const {
    for (std::size_t i = 0; i < program_.size(); ++i) {
        const Instr &in = program_[i];
        switch (in.op) {
        case Op::Load: scratch_[i] = atom_values[in.a]; break;
        case Op::Const: scratch_[i] = Snapshot::from_bits_unchecked(static_cast<std::uint8_t>(in.a)); break;
        case Op::Not: scratch_[i] = neg(scratch_[in.a]); break;
        case Op::Circ: scratch_[i] = circ(scratch_[in.a]); break;
        case Op::And: scratch_[i] = conj(scratch_[in.a], scratch_[in.b]); break;
        case Op::Or: scratch_[i] = disj(scratch_[in.a], scratch_[in.b]); break;
        }
    }
    for (std::size_t i = 0; i < roots_.size(); ++i)
        out[i] = scratch_[roots_[i]];
}

namespace {

void decode(std::uint64_t index, std::span<Snapshot> values) {
    for (std::size_t i = values.size(); i-- > 0;) {
        values[i] = Snapshot(all_values[index % 6]);
        index /= 6;
    }
}

// First countermodel index in [begin, end), or end.
std::uint64_t scan(Evaluator ev, std::size_t premise_count, std::uint64_t begin,
                   std::uint64_t end) {
    std::vector<Snapshot> values(ev.atoms().size());
    std::vector<Snapshot> out(premise_count + 1);
    for (std::uint64_t i = begin; i < end; ++i) {
        decode(i, values);
        ev.run(values, out);
        if (is_designated(out.back()))
            continue;
        bool all = true;
        for (std::size_t p = 0; p < premise_count && all; ++p)
            all = is_designated(out[p]);
        if (all)
            return i;
    }
    return end;
}

} // namespace

Verdict entails(const Sequent &s, const EntailOptions &options) {
    std::vector<Formula> all = s.premises;
    all.push_back(s.conclusion);
    std::vector<std::string> atoms = atoms_of(all);
    if (atoms.size() > options.max_atoms)
        throw Error(ErrorKind::BoundExceeded, std::to_string(atoms.size()) +
                                                  " atoms exceed the bound of " +
                                                  std::to_string(options.max_atoms));
    const Evaluator ev(all, atoms);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        total *= 6;

    std::uint64_t found = total;
    const unsigned jobs = std::max(1u, options.jobs);
    if (jobs == 1 || total < 6 * 6 * 6) {
        found = scan(ev, s.premises.size(), 0, total);
    } else {
        std::vector<std::uint64_t> firsts(jobs, total);
        std::vector<std::thread> workers;
        const std::uint64_t chunk = (total + jobs - 1) / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            const std::uint64_t begin = std::min(total, j * chunk);
            const std::uint64_t end = std::min(total, begin + chunk);
            workers.emplace_back([&, j, begin, end] {
                const std::uint64_t hit = scan(ev, s.premises.size(), begin, end);
                firsts[j] = hit == end ? total : hit;
            });
        }
        for (auto &w : workers)
            w.join();
        found = *std::min_element(firsts.begin(), firsts.end());
    }
    if (found == total)
        return {};
    std::vector<Snapshot> values(atoms.size());
    decode(found, values);
    Assignment a;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        a.emplace(atoms[i], values[i]);
    return {false, std::move(a)};
}

Verdict equivalent(const Formula &f, const Formula &g, const EntailOptions &options) {
    Verdict forward = entails({{f}, g}, options);
    if (!forward.valid)
        return forward;
    return entails({{g}, f}, options);
}

std::string format_assignment(const Assignment &a) {
    std::string out;
    for (const auto &[atom, value] : a) {
        if (!out.empty())
            out += ' ';
        out += atom;
        out += '=';
        out += to_string(value.value());
    }
    return out;
}

Assignment parse_assignment(std::string_view text) {
    // Items are separated by commas or spaces outside parentheses, so ground
    // atoms such as R(c,d)=T are allowed.
    std::vector<std::string> items(1);
    int depth = 0;
    for (char c : text) {
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        if (depth == 0 && (c == ',' || c == ' ' || c == '\t')) {
            items.emplace_back();
            continue;
        }
        if (c != ' ' && c != '\t')
            items.back() += c;
    }
    Assignment a;
    for (const std::string &item : items) {
        if (item.empty())
            continue;
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(ErrorKind::Format, "expected atom=value, got '" + item + "'");
        auto value = parse_value(std::string_view(item).substr(eq + 1));
        if (!value)
            throw Error(ErrorKind::Format, "unknown value '" + item.substr(eq + 1) +
                                               "' (expected one of T T0 b n F0 F)");
        a[item.substr(0, eq)] = Snapshot(*value);
    }
    return a;
}

} // namespace letf
