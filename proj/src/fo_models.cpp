#include "letf/fo_models.hpp"

#include "letf/error.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <unordered_set>

namespace letf {

std::size_t power(std::size_t base, std::size_t exponent) {
    std::size_t r = 1;
    while (exponent-- > 0)
        r *= base;
    return r;
}

std::size_t tuple_index(std::span<const std::size_t> tuple, std::size_t domain_size) {
    std::size_t index = 0;
    for (std::size_t e : tuple)
        index = index * domain_size + e;
    return index;
}

Tuple tuple_at(std::size_t index, std::size_t arity, std::size_t domain_size) {
    Tuple t(arity);
    for (std::size_t i = arity; i-- > 0;) {
        t[i] = index % domain_size;
        index /= domain_size;
    }
    return t;
}

ExtensionTriple extensions_of(const Interpretation &interp, std::size_t domain_size) {
    ExtensionTriple t;
    for (std::size_t i = 0; i < interp.table.size(); ++i) {
        const Snapshot v = interp.table[i];
        Tuple tuple = tuple_at(i, interp.arity, domain_size);
        if (v.z1())
            t.plus.insert(tuple);
        if (v.z2())
            t.minus.insert(tuple);
        if (v.z3())
            t.circ.insert(tuple);
    }
    return t;
}

Interpretation from_extensions(const ExtensionTriple &t, std::size_t arity,
                               std::size_t domain_size) {
    Interpretation interp{arity, std::vector<Snapshot>(power(domain_size, arity))};
    auto check_tuples = [&](const std::set<Tuple> &tuples) {
        for (const Tuple &tuple : tuples) {
            if (tuple.size() != arity ||
                std::any_of(tuple.begin(), tuple.end(),
                            [&](std::size_t e) { return e >= domain_size; }))
                throw Error(ErrorKind::InvalidArgument, "tuple outside the domain");
        }
    };
    check_tuples(t.plus);
    check_tuples(t.minus);
    check_tuples(t.circ);
    for (std::size_t i = 0; i < interp.table.size(); ++i) {
        const Tuple tuple = tuple_at(i, arity, domain_size);
        const bool p = t.plus.count(tuple), m = t.minus.count(tuple), c = t.circ.count(tuple);
        auto v = Snapshot::try_make(p, m, c);
        if (!v)
            throw Error(ErrorKind::ConstraintViolation,
                        "tuple in the classicality extension must be in exactly one of the "
                        "extension and the anti-extension");
        interp.table[i] = *v;
    }
    return interp;
}

std::size_t Structure::element_index(const std::string &name) const {
    auto it = std::find(domain.begin(), domain.end(), name);
    if (it == domain.end())
        throw Error(ErrorKind::UnknownName, "unknown element '" + name + "'");
    return static_cast<std::size_t>(it - domain.begin());
}

const Interpretation &Structure::interpretation(const std::string &predicate) const {
    auto it = predicates.find(predicate);
    if (it == predicates.end())
        throw Error(ErrorKind::UnknownName, "predicate '" + predicate + "' is not interpreted");
    return it->second;
}

Signature Structure::signature() const {
    Signature sig;
    for (const auto &[name, interp] : predicates)
        sig.declare_predicate(name, interp.arity);
    for (const auto &[name, element] : constants)
        sig.declare_constant(name);
    return sig;
}

void Structure::validate() const {
    if (domain.empty())
        throw Error(ErrorKind::InvalidArgument, "the domain must be nonempty");
    for (std::size_t i = 0; i < domain.size(); ++i)
        for (std::size_t j = i + 1; j < domain.size(); ++j)
            if (domain[i] == domain[j])
                throw Error(ErrorKind::InvalidArgument, "duplicate element '" + domain[i] + "'");
    for (const auto &[name, element] : constants)
        if (element >= domain.size())
            throw Error(ErrorKind::InvalidArgument, "constant '" + name + "' outside the domain");
    for (const auto &[name, interp] : predicates)
        if (interp.table.size() != power(domain.size(), interp.arity))
            throw Error(ErrorKind::InvalidArgument,
                        "interpretation of '" + name + "' is not total on the domain");
}

Term diagram_name(const Structure &s, std::size_t element) {
    return Term::element(s.domain.at(element));
}

Grounding::Grounding(std::span<const Formula> sentences, std::vector<std::string> domain)
    : domain_(std::move(domain)) {
    for (const Formula &f : sentences) {
        if (!f.is_sentence())
            throw Error(ErrorKind::NotSentence, render(f) + " has free variables");
        roots_.push_back(ground(f));
    }
    memo_.clear();
    scratch_.resize(nodes_.size());
}

std::uint32_t Grounding::push(Node n) {
    nodes_.push_back(n);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::uint32_t Grounding::ground(const Formula &f) {
    if (auto it = memo_.find(f); it != memo_.end())
        return it->second;
    std::uint32_t id = 0;
    switch (f.kind()) {
    case Kind::PropAtom:
    case Kind::Atom: {
        if (f.name() == reserved_atom) {
            id = push({Op::Const, Snapshot(SixValue::N).bits()});
            break;
        }
        AtomRef ref;
        auto pit = std::find(predicate_names_.begin(), predicate_names_.end(), f.name());
        ref.predicate = static_cast<std::size_t>(pit - predicate_names_.begin());
        if (pit == predicate_names_.end())
            predicate_names_.push_back(f.name());
        for (const Term &t : f.args()) {
            if (t.kind == Term::Kind::Element) {
                auto eit = std::find(domain_.begin(), domain_.end(), t.name);
                if (eit == domain_.end())
                    throw Error(ErrorKind::UnknownName, "unknown element '" + t.name + "'");
                ref.args.push_back({false, static_cast<std::size_t>(eit - domain_.begin())});
            } else {
                auto cit = std::find(constant_names_.begin(), constant_names_.end(), t.name);
                ref.args.push_back(
                    {true, static_cast<std::size_t>(cit - constant_names_.begin())});
                if (cit == constant_names_.end())
                    constant_names_.push_back(t.name);
            }
        }
        atoms_.push_back(std::move(ref));
        Node n{Op::Atom};
        n.atom = static_cast<std::uint32_t>(atoms_.size() - 1);
        id = push(n);
        break;
    }
    case Kind::Not:
        id = push({Op::Not, ground(f.operand())});
        break;
    case Kind::Circ:
        id = push({Op::Circ, ground(f.operand())});
        break;
    case Kind::And: {
        const std::uint32_t a = ground(f.lhs());
        id = push({Op::And, a, ground(f.rhs())});
        break;
    }
    case Kind::Or: {
        const std::uint32_t a = ground(f.lhs());
        id = push({Op::Or, a, ground(f.rhs())});
        break;
    }
    case Kind::Forall:
    case Kind::Exists: {
        std::vector<std::uint32_t> instances;
        for (const std::string &element : domain_)
            instances.push_back(ground(substitute(f.body(), f.variable(), Term::element(element))));
        const auto begin = static_cast<std::uint32_t>(kids_.size());
        kids_.insert(kids_.end(), instances.begin(), instances.end());
        id = push({f.kind() == Kind::Forall ? Op::Forall : Op::Exists, begin,
                   static_cast<std::uint32_t>(kids_.size())});
        break;
    }
    }
    memo_.emplace(f, id);
    return id;
}

void Grounding::evaluate(const Structure &s, std::span<Snapshot> out) const {
    if (s.domain != domain_)
        throw Error(ErrorKind::InvalidArgument, "structure domain differs from the grounding");
    std::vector<const Interpretation *> preds;
    for (const std::string &p : predicate_names_)
        preds.push_back(&s.interpretation(p));
    std::vector<std::size_t> consts;
    for (const std::string &c : constant_names_) {
        auto it = s.constants.find(c);
        if (it == s.constants.end())
            throw Error(ErrorKind::UnknownName, "constant '" + c + "' is not interpreted");
        consts.push_back(it->second);
    }
    const std::size_t k = domain_.size();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node &n = nodes_[i];
        switch (n.op) {
        case Op::Atom: {
            const AtomRef &ref = atoms_[n.atom];
            const Interpretation &interp = *preds[ref.predicate];
            if (interp.arity != ref.args.size())
                throw Error(ErrorKind::Arity, "predicate '" + predicate_names_[ref.predicate] +
                                                  "' interpreted with a different arity");
            std::size_t index = 0;
            for (const Arg &arg : ref.args)
                index = index * k + (arg.constant ? consts[arg.index] : arg.index);
            scratch_[i] = interp.table[index];
            break;
        }
        case Op::Const:
            scratch_[i] = Snapshot::from_bits_unchecked(static_cast<std::uint8_t>(n.a));
            break;
        case Op::Not: scratch_[i] = neg(scratch_[n.a]); break;
        case Op::Circ: scratch_[i] = circ(scratch_[n.a]); break;
        case Op::And: scratch_[i] = conj(scratch_[n.a], scratch_[n.b]); break;
        case Op::Or: scratch_[i] = disj(scratch_[n.a], scratch_[n.b]); break;
        case Op::Forall:
        case Op::Exists:
            fold_.clear();
            for (std::uint32_t j = n.a; j < n.b; ++j)
                fold_.push_back(scratch_[kids_[j]]);
            scratch_[i] = n.op == Op::Forall ? forall_value(fold_) : exists_value(fold_);
            break;
        }
    }
    for (std::size_t i = 0; i < roots_.size(); ++i)
        out[i] = scratch_[roots_[i]];
}

Snapshot eval_sentence(const Structure &s, const Formula &f) {
    const Formula one[] = {f};
    Grounding g(one, s.domain);
    Snapshot out;
    g.evaluate(s, std::span<Snapshot>(&out, 1));
    return out;
}

bool holds(const Structure &s, const Formula &f) { return is_designated(eval_sentence(s, f)); }

namespace {

std::vector<Formula> instances_of(const Structure &s, const Formula &quantified) {
    std::vector<Formula> out;
    for (std::size_t e = 0; e < s.domain.size(); ++e)
        out.push_back(substitute(quantified.body(), quantified.variable(), diagram_name(s, e)));
    return out;
}

} // namespace

V3Lemma v3_lemma(const Structure &s, const Formula &quantified) {
    if (!quantified.is_quantifier())
        throw Error(ErrorKind::InvalidArgument, "expected a quantified sentence");
    std::vector<Snapshot> values;
    for (const Formula &inst : instances_of(s, quantified))
        values.push_back(eval_sentence(s, inst));
    auto reliable_true = [](Snapshot v) { return v.z3() && v.z1(); };
    auto reliable_false = [](Snapshot v) { return v.z3() && v.z2(); };
    V3Lemma r;
    if (quantified.kind() == Kind::Forall) {
        r.every_branch = std::all_of(values.begin(), values.end(), reliable_true);
        r.some_branch = std::any_of(values.begin(), values.end(), reliable_false);
    } else {
        r.every_branch = std::all_of(values.begin(), values.end(), reliable_false);
        r.some_branch = std::any_of(values.begin(), values.end(), reliable_true);
    }
    r.v3 = eval_sentence(s, quantified).z3();
    return r;
}

bool check_v3_lemma(const Structure &s, const Formula &quantified) {
    return v3_lemma(s, quantified).holds();
}

namespace {

void close_under_instances(const Structure &s, const Formula &f,
                           std::unordered_set<Formula, FormulaHash> &seen,
                           std::vector<Formula> &out) {
    if (seen.count(f))
        return;
    switch (f.kind()) {
    case Kind::Not:
    case Kind::Circ:
        close_under_instances(s, f.operand(), seen, out);
        break;
    case Kind::And:
    case Kind::Or:
        close_under_instances(s, f.lhs(), seen, out);
        close_under_instances(s, f.rhs(), seen, out);
        break;
    case Kind::Forall:
    case Kind::Exists:
        for (const Formula &inst : instances_of(s, f))
            close_under_instances(s, inst, seen, out);
        break;
    default:
        break;
    }
    seen.insert(f);
    out.push_back(f);
}

} // namespace

ClauseReport check_fo_bivaluation(const Structure &s, std::span<const Formula> pool) {
    std::unordered_set<Formula, FormulaHash> seen;
    std::vector<Formula> closed;
    for (const Formula &f : pool)
        close_under_instances(s, f, seen, closed);

    std::unordered_map<Formula, bool, FormulaHash> cache;
    const Rho rho = [&](const Formula &f) {
        auto it = cache.find(f);
        if (it != cache.end())
            return it->second;
        const bool v = holds(s, f);
        cache.emplace(f, v);
        return v;
    };

    // The pool is already closed under instances; closing it under subformulas
    // as well would reach open quantifier bodies.
    ClauseReport report = ClauseSuite(closed, false).check(rho);

    auto violation = [&](const char *clause, const Formula &f) {
        report.violations.push_back({clause, render(f)});
    };
    for (const Formula &f : closed) {
        if (f.is_atomic()) {
            if (f.name() == reserved_atom)
                continue;
            const Interpretation &interp = s.interpretation(f.name());
            Tuple tuple;
            for (const Term &t : f.args())
                tuple.push_back(t.kind == Term::Kind::Element ? s.element_index(t.name)
                                                              : s.constants.at(t.name));
            const ExtensionTriple ext = extensions_of(interp, s.domain.size());
            report.instances_checked += 3;
            if (rho(f) != static_cast<bool>(ext.plus.count(tuple)))
                violation("(1')", f);
            if (rho(neg(f)) != static_cast<bool>(ext.minus.count(tuple)))
                violation("(2')", f);
            if (rho(circ(f)) != static_cast<bool>(ext.circ.count(tuple)))
                violation("(3')", f);
            continue;
        }
        if (!f.is_quantifier())
            continue;
        const std::vector<Formula> inst = instances_of(s, f);
        auto all = [&](auto pred) { return std::all_of(inst.begin(), inst.end(), pred); };
        auto some = [&](auto pred) { return std::any_of(inst.begin(), inst.end(), pred); };
        auto pos = [&](const Formula &b) { return rho(b); };
        auto negd = [&](const Formula &b) { return rho(neg(b)); };
        auto rel_true = [&](const Formula &b) { return rho(b) && rho(circ(b)); };
        auto rel_false = [&](const Formula &b) { return rho(neg(b)) && rho(circ(b)); };
        report.instances_checked += 3;
        if (f.kind() == Kind::Forall) {
            if (rho(f) != all(pos))
                violation("(8')", f);
            if (rho(neg(f)) != some(negd))
                violation("(10')", f);
            if (rho(circ(f)) != (all(rel_true) || some(rel_false)))
                violation("(12')", f);
        } else {
            if (rho(f) != some(pos))
                violation("(9')", f);
            if (rho(neg(f)) != all(negd))
                violation("(11')", f);
            if (rho(circ(f)) != (some(rel_true) || all(rel_false)))
                violation("(13')", f);
        }
    }
    return report;
}

// Enumeration.

StructureSpace::StructureSpace(const Signature &sig, std::size_t domain_size)
    : domain_size_(domain_size), constants_(sig.constants.begin(), sig.constants.end()),
      predicates_(sig.predicates.begin(), sig.predicates.end()) {
    if (domain_size == 0)
        throw Error(ErrorKind::InvalidArgument, "domains are nonempty");
    constexpr std::uint64_t limit = std::uint64_t(1) << 62;
    auto times = [&](std::uint64_t factor) {
        if (size_ > limit / factor)
            throw Error(ErrorKind::BoundExceeded, "structure space too large");
        size_ *= factor;
    };
    for (std::size_t i = 0; i < constants_.size(); ++i)
        times(domain_size);
    for (const auto &[name, arity] : predicates_)
        for (std::size_t i = 0; i < power(domain_size, arity); ++i)
            times(6);
    if (domain_size <= 6) {
        std::vector<std::size_t> perm(domain_size);
        std::iota(perm.begin(), perm.end(), 0);
        while (std::next_permutation(perm.begin(), perm.end()))
            permutations_.push_back(perm);
    }
}

Structure StructureSpace::at(std::uint64_t index) const {
    Structure s;
    for (std::size_t i = 0; i < domain_size_; ++i)
        s.domain.push_back("e" + std::to_string(i + 1));
    // Decode from the least significant end: last predicate's last cell first.
    std::vector<std::pair<std::string, Interpretation>> preds;
    for (const auto &[name, arity] : predicates_)
        preds.push_back({name, Interpretation{arity, std::vector<Snapshot>(power(domain_size_, arity))}});
    for (auto p = preds.rbegin(); p != preds.rend(); ++p) {
        for (std::size_t c = p->second.table.size(); c-- > 0;) {
            p->second.table[c] = Snapshot(all_values[index % 6]);
            index /= 6;
        }
    }
    std::vector<std::size_t> consts(constants_.size());
    for (std::size_t c = constants_.size(); c-- > 0;) {
        consts[c] = index % domain_size_;
        index /= domain_size_;
    }
    for (std::size_t c = 0; c < constants_.size(); ++c)
        s.constants.emplace(constants_[c], consts[c]);
    for (auto &[name, interp] : preds)
        s.predicates.emplace(name, std::move(interp));
    return s;
}

namespace {

std::size_t value_rank(Snapshot v) { return static_cast<std::size_t>(v.value()); }

} // namespace

void StructureSpace::advance(Structure &s) const {
    for (auto p = predicates_.rbegin(); p != predicates_.rend(); ++p) {
        std::vector<Snapshot> &table = s.predicates.find(p->first)->second.table;
        for (std::size_t c = table.size(); c-- > 0;) {
            const std::size_t r = value_rank(table[c]);
            if (r + 1 < 6) {
                table[c] = Snapshot(all_values[r + 1]);
                return;
            }
            table[c] = Snapshot(all_values[0]);
        }
    }
    for (auto c = constants_.rbegin(); c != constants_.rend(); ++c) {
        std::size_t &e = s.constants.find(*c)->second;
        if (e + 1 < domain_size_) {
            ++e;
            return;
        }
        e = 0;
    }
}

std::vector<std::size_t> StructureSpace::digits_of(const Structure &s) const {
    std::vector<std::size_t> d;
    for (const std::string &c : constants_)
        d.push_back(s.constants.at(c));
    for (const auto &[name, arity] : predicates_)
        for (Snapshot v : s.predicates.at(name).table)
            d.push_back(value_rank(v));
    return d;
}

bool StructureSpace::is_canonical(const Structure &s) const {
    const std::vector<std::size_t> original = digits_of(s);
    std::vector<std::size_t> permuted;
    for (const std::vector<std::size_t> &perm : permutations_) {
        permuted.clear();
        for (const std::string &c : constants_)
            permuted.push_back(perm[s.constants.at(c)]);
        for (const auto &[name, arity] : predicates_) {
            const std::vector<Snapshot> &table = s.predicates.at(name).table;
            std::vector<std::size_t> cells(table.size());
            for (std::size_t i = 0; i < table.size(); ++i) {
                Tuple t = tuple_at(i, arity, domain_size_);
                for (std::size_t &e : t)
                    e = perm[e];
                cells[tuple_index(t, domain_size_)] = value_rank(table[i]);
            }
            permuted.insert(permuted.end(), cells.begin(), cells.end());
        }
        if (permuted < original)
            return false;
    }
    return true;
}

namespace {

void require_predicates(const Signature &sig) {
    if (sig.predicates.empty())
        throw Error(ErrorKind::InvalidArgument,
                    "degenerate signature: structures need at least one predicate");
}

} // namespace

std::uint64_t count_structures(const Signature &sig, std::size_t max_size) {
    require_predicates(sig);
    std::uint64_t total = 0;
    for (std::size_t k = 1; k <= max_size; ++k) {
        const std::uint64_t n = StructureSpace(sig, k).size();
        if (total > (std::uint64_t(1) << 62) - n)
            throw Error(ErrorKind::BoundExceeded, "structure space too large");
        total += n;
    }
    return total;
}

namespace {

void check_cap(const Signature &sig, std::size_t max_size, std::uint64_t cap) {
    const std::uint64_t total = count_structures(sig, max_size);
    if (total > cap)
        throw Error(ErrorKind::BoundExceeded, std::to_string(total) +
                                                  " structures exceed the cap of " +
                                                  std::to_string(cap));
}

} // namespace

void for_each_structure(const Signature &sig, const EnumerationOptions &options,
                        const std::function<bool(const Structure &)> &visit) {
    check_cap(sig, options.max_size, options.cap);
    for (std::size_t k = 1; k <= options.max_size; ++k) {
        const StructureSpace space(sig, k);
        Structure s = space.at(0);
        for (std::uint64_t i = 0; i < space.size(); ++i, space.advance(s)) {
            if (options.symmetry_reduction && !space.is_canonical(s))
                continue;
            if (!visit(s))
                return;
        }
    }
}

std::vector<Structure> enumerate_structures(const Signature &sig,
                                            const EnumerationOptions &options) {
    std::vector<Structure> out;
    for_each_structure(sig, options, [&](const Structure &s) {
        out.push_back(s);
        return true;
    });
    return out;
}

namespace {

struct ScanResult {
    std::uint64_t first_counter;
    std::uint64_t checked = 0;
};

ScanResult scan(const StructureSpace &space, Grounding grounding, std::size_t premise_count,
                bool symmetry, std::uint64_t begin, std::uint64_t end) {
    ScanResult r{end};
    if (begin >= end)
        return r;
    std::vector<Snapshot> values(premise_count + 1);
    Structure s = space.at(begin);
    for (std::uint64_t i = begin; i < end; ++i, space.advance(s)) {
        if (symmetry && !space.is_canonical(s))
            continue;
        ++r.checked;
        grounding.evaluate(s, values);
        if (is_designated(values.back()))
            continue;
        bool all = true;
        for (std::size_t p = 0; p < premise_count && all; ++p)
            all = is_designated(values[p]);
        if (all) {
            r.first_counter = i;
            return r;
        }
    }
    return r;
}

} // namespace

FoVerdict fo_entails(std::span<const Formula> premises, const Formula &conclusion,
                     const Signature &sig, const FoOptions &options) {
    std::vector<Formula> all(premises.begin(), premises.end());
    all.push_back(conclusion);
    for (const Formula &f : all)
        if (!f.is_sentence())
            throw Error(ErrorKind::NotSentence, render(f) + " has free variables");
    Signature full = sig;
    full.merge(signature_of(all));
    if (full.predicates.empty())
        full.declare_predicate(std::string(reserved_atom), 0);
    check_cap(full, options.max_size, options.cap);

    FoVerdict verdict;
    verdict.max_size = options.max_size;
    const unsigned jobs = std::max(1u, options.jobs);
    for (std::size_t k = 1; k <= options.max_size; ++k) {
        const StructureSpace space(full, k);
        std::vector<std::string> domain = space.at(0).domain;
        const Grounding grounding(all, domain);
        const std::uint64_t total = space.size();
        std::uint64_t first = total;
        if (jobs == 1 || total < 1000) {
            const ScanResult r =
                scan(space, grounding, premises.size(), options.symmetry_reduction, 0, total);
            first = r.first_counter;
            verdict.structures_checked += r.checked;
        } else {
            std::vector<ScanResult> results(jobs, ScanResult{total});
            std::vector<std::thread> workers;
            const std::uint64_t chunk = (total + jobs - 1) / jobs;
            for (unsigned j = 0; j < jobs; ++j) {
                const std::uint64_t begin = std::min(total, j * chunk);
                const std::uint64_t end = std::min(total, begin + chunk);
                workers.emplace_back([&, j, begin, end] {
                    results[j] = scan(space, grounding, premises.size(),
                                      options.symmetry_reduction, begin, end);
                    if (results[j].first_counter == end)
                        results[j].first_counter = total;
                });
            }
            for (auto &w : workers)
                w.join();
            for (const ScanResult &r : results) {
                first = std::min(first, r.first_counter);
                verdict.structures_checked += r.checked;
            }
        }
        if (first < total) {
            verdict.valid = false;
            Structure counter = space.at(first);
            counter.predicates.erase(std::string(reserved_atom));
            verdict.counter = std::move(counter);
            return verdict;
        }
    }
    return verdict;
}

FoVerdict fo_equivalent(const Formula &f, const Formula &g, const Signature &sig,
                        const FoOptions &options) {
    const Formula one[] = {f};
    FoVerdict forward = fo_entails(one, g, sig, options);
    if (!forward.valid)
        return forward;
    const Formula other[] = {g};
    FoVerdict backward = fo_entails(other, f, sig, options);
    backward.structures_checked += forward.structures_checked;
    return backward;
}

} // namespace letf
