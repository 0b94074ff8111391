#include "letf/audit.hpp"
#include "letf/error.hpp"
#include "letf/fo_models.hpp"
#include "letf/prop_engine.hpp"

#include <algorithm>
#include <optional>
#include <atomic>
#include <functional>
#include <thread>

namespace letf {

namespace {

constexpr std::size_t max_findings = 5;

std::vector<Formula> one_level(const std::vector<Formula> &below) {
    std::vector<Formula> out{prop("p"), prop("q")};
    for (const auto &f : below) {
        out.push_back(neg(f));
        out.push_back(circ(f));
    }
    for (const auto &f : below)
        for (const auto &g : below) {
            out.push_back(conj(f, g));
            out.push_back(disj(f, g));
        }
    return out;
}

Snapshot eval_pattern(const Pattern &p, const std::array<Snapshot, 3> &metas) {
    using K = Pattern::Kind;
    switch (p.kind) {
    case K::Meta: return metas[static_cast<std::size_t>(p.meta)];
    case K::Not: return neg(eval_pattern(p.kids[0], metas));
    case K::Circ: return circ(eval_pattern(p.kids[0], metas));
    case K::And: return conj(eval_pattern(p.kids[0], metas), eval_pattern(p.kids[1], metas));
    case K::Or: return disj(eval_pattern(p.kids[0], metas), eval_pattern(p.kids[1], metas));
    default: throw Error(ErrorKind::InvalidArgument, "quantifier pattern in a propositional rule");
    }
}

// The rule's soundness condition at one point, given the values of A, B, C.
bool pointwise(const Schema &s, const std::array<Snapshot, 3> &metas) {
    for (const auto &slot : s.premises) {
        const bool minor = is_designated(eval_pattern(slot.formula, metas));
        if (slot.discharges) {
            if (is_designated(eval_pattern(*slot.discharges, metas)) && !minor)
                return true;
        } else if (!minor) {
            return true;
        }
    }
    return is_designated(eval_pattern(s.conclusion, metas));
}

bool schema_uses(const Schema &s, int meta) {
    if (uses_meta(s.conclusion, meta))
        return true;
    return std::any_of(s.premises.begin(), s.premises.end(), [meta](const PremiseSlot &slot) {
        return uses_meta(slot.formula, meta) || (slot.discharges && uses_meta(*slot.discharges, meta));
    });
}

// Value of every pool formula under each of the 36 assignments to p, q
// (p most significant, values in table order).
struct PoolTable {
    std::vector<Formula> pool;
    std::vector<std::array<std::uint8_t, 36>> values; // SixValue index

    explicit PoolTable(std::span<const Formula> formulas) : pool(formulas.begin(), formulas.end()) {
        for (const auto &f : pool)
            for (const auto &a : atoms_of(std::span(&f, 1)))
                if (a != "p" && a != "q")
                    throw Error(ErrorKind::InvalidArgument, "audit pool atoms must be p and q");
        Evaluator ev(pool, {"p", "q"});
        values.resize(pool.size());
        std::vector<Snapshot> out(pool.size());
        for (std::size_t k = 0; k < 36; ++k) {
            const std::array<Snapshot, 2> in{all_values[k / 6], all_values[k % 6]};
            ev.run(in, out);
            for (std::size_t i = 0; i < pool.size(); ++i)
                values[i][k] = static_cast<std::uint8_t>(out[i].value());
        }
    }
};

std::string point(std::size_t k, std::optional<std::size_t> r) {
    std::string out = "p=" + std::string(to_string(all_values[k / 6])) + " q=" +
                      std::string(to_string(all_values[k % 6]));
    if (r)
        out += " r=" + std::string(to_string(all_values[*r]));
    return out;
}

RuleAudit audit_table(const std::string &name, const std::vector<Schema> &schemas,
                      const PoolTable &table) {
    RuleAudit out{name, "table", 0, 0, {}};
    const Formula r = prop("r");
    const std::size_t n = table.pool.size();
    for (const auto &s : schemas) {
        // bad[a][b]: the fresh C value that breaks the rule when A, B take values a, b.
        std::array<std::array<int, 6>, 6> bad{};
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = 0; b < 6; ++b) {
                bad[a][b] = -1;
                for (std::size_t c = 0; c < 6 && bad[a][b] < 0; ++c)
                    if (!pointwise(s, {all_values[a], all_values[b], all_values[c]}))
                        bad[a][b] = static_cast<int>(c);
            }
        const bool uses_b = schema_uses(s, 1);
        const std::size_t n_b = uses_b ? n : 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n_b; ++j) {
                ++out.instances;
                for (std::size_t k = 0; k < 36; ++k) {
                    const auto a = table.values[i][k];
                    const auto b = uses_b ? table.values[j][k] : 0;
                    const int c = bad[a][b];
                    if (c < 0)
                        continue;
                    ++out.invalid;
                    if (out.findings.size() < max_findings) {
                        std::string inst = "A = " + render(table.pool[i]);
                        if (uses_b)
                            inst += ", B = " + render(table.pool[j]);
                        std::optional<std::size_t> at_r;
                        if (schema_uses(s, 2)) {
                            inst += ", C = " + render(r);
                            at_r = static_cast<std::size_t>(c);
                        }
                        out.findings.push_back({inst, point(k, at_r)});
                    }
                    break;
                }
            }
    }
    return out;
}

std::string one_line(std::string text) {
    while (!text.empty() && text.back() == '\n')
        text.pop_back();
    std::replace(text.begin(), text.end(), '\n', ';');
    return text;
}

std::string describe(const Bindings &b) {
    std::string out = "A = " + render(*b.metas[0]);
    if (b.metas[1])
        out += ", B = " + render(*b.metas[1]);
    return out;
}

RuleAudit audit_sequents(const RuleInfo &info, const AuditOptions &options) {
    RuleAudit out{std::string(info.name), "fo-entails", 0, 0, {}};
    FoOptions fo;
    fo.max_size = options.fo_bound;
    for (const auto &s : info.schemas) {
        const bool uses_b = schema_uses(s, 1);
        const std::size_t n_b = uses_b ? options.side.size() : 1;
        for (const auto &body : options.bodies)
            for (std::size_t j = 0; j < n_b; ++j) {
                Bindings b;
                b.metas[0] = body;
                if (uses_b)
                    b.metas[1] = options.side[j];
                b.variable = "x";
                b.constant = Term::constant("c");
                std::vector<Formula> premises;
                for (const auto &slot : s.premises)
                    premises.push_back(instantiate(slot.formula, b));
                const auto conclusion = instantiate(s.conclusion, b);
                auto all = premises;
                all.push_back(conclusion);
                const auto verdict = fo_entails(premises, conclusion, signature_of(all), fo);
                ++out.instances;
                if (!verdict.valid) {
                    ++out.invalid;
                    if (out.findings.size() < max_findings)
                        out.findings.push_back({describe(b), one_line(format_structure(*verdict.counter))});
                }
            }
    }
    return out;
}

// Premise A(c/x) with c fresh means: the premise holds for every diagram name.
RuleAudit audit_generic(const RuleInfo &info, const AuditOptions &options) {
    RuleAudit out{std::string(info.name), "generic-instance", 0, 0, {}};
    const bool intro = info.side == SideCondition::EigenIntro;
    const Schema &s = info.schemas.front();
    const Formula r = prop("r");
    for (const auto &body : options.bodies) {
        ++out.instances;
        Bindings b;
        b.metas[0] = body;
        b.metas[2] = r;
        b.variable = "x";
        Signature sig;
        collect_signature(body, sig);
        if (!intro)
            sig.declare_predicate("r", 0);
        bool failed = false;
        for (std::size_t k = 1; k <= options.fo_bound && !failed; ++k) {
            const StructureSpace space(sig, k);
            std::vector<std::string> domain;
            for (std::size_t e = 0; e < k; ++e)
                domain.push_back("e" + std::to_string(e + 1));
            // sentences: conclusion, [major], then one generic instance per element
            std::vector<Formula> sentences{instantiate(s.conclusion, b)};
            const Pattern &generic = intro ? s.premises[0].formula : *s.premises[1].discharges;
            if (!intro) {
                Bindings closed = b;
                sentences.push_back(instantiate(s.premises[0].formula, closed));
            }
            const std::size_t first = sentences.size();
            for (const auto &e : domain) {
                Bindings at = b;
                at.constant = Term::element(e);
                sentences.push_back(instantiate(generic, at));
            }
            const Grounding grounding(sentences, domain);
            std::vector<Snapshot> vals(sentences.size());
            Structure st = space.at(0);
            for (std::uint64_t i = 0; i < space.size(); ++i) {
                if (i > 0)
                    space.advance(st);
                grounding.evaluate(st, vals);
                const bool conclusion = is_designated(vals[0]);
                bool sound = true;
                if (intro) {
                    bool every = true;
                    for (std::size_t e = first; e < vals.size(); ++e)
                        every = every && is_designated(vals[e]);
                    sound = !every || conclusion;
                } else {
                    bool minor = true; // every instance that holds yields C
                    for (std::size_t e = first; e < vals.size(); ++e)
                        minor = minor && (!is_designated(vals[e]) || conclusion);
                    sound = !(is_designated(vals[1]) && minor) || conclusion;
                }
                if (!sound) {
                    ++out.invalid;
                    if (out.findings.size() < max_findings)
                        out.findings.push_back({describe(b), one_line(format_structure(st))});
                    failed = true;
                    break;
                }
            }
        }
    }
    return out;
}

std::vector<RuleAudit> run_all(std::vector<std::function<RuleAudit()>> tasks, unsigned jobs) {
    std::vector<RuleAudit> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < tasks.size();)
            results[i] = tasks[i]();
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
    std::vector<std::jthread> threads;
    for (unsigned t = 1; t < n; ++t)
        threads.emplace_back(worker);
    worker();
    return results;
}

} // namespace

std::uint64_t AuditReport::invalid_count() const {
    std::uint64_t n = 0;
    for (const auto &r : rules)
        n += r.invalid;
    return n;
}

bool AuditReport::ok() const { return invalid_count() == 0 && !control.ok(); }

std::vector<Formula> default_audit_pool() { return one_level(one_level({prop("p"), prop("q")})); }

std::vector<Formula> default_quantifier_bodies() {
    std::vector<Formula> out;
    for (auto text : {"P(x)", "~P(x)", "@P(x)", "#P(x)", "P(x) & Q(x)", "@P(x) | ~Q(x)"})
        out.push_back(parse(text, Signature{{{"P", 1}, {"Q", 1}}, {}}, {"x"}));
    return out;
}

std::vector<Formula> default_side_formulas() {
    std::vector<Formula> out;
    for (auto text : {"q", "~q", "@q", "Q(c)"})
        out.push_back(parse(text, Signature{{{"q", 0}, {"Q", 1}}, {"c"}}));
    return out;
}

namespace {

RuleAudit audit_one(const RuleInfo &info, const AuditOptions &options, const PoolTable &table) {
    if (!info.quantifier)
        return audit_table(std::string(info.name), info.schemas, table);
    if (info.side == SideCondition::EigenIntro || info.side == SideCondition::EigenElim)
        return audit_generic(info, options);
    return audit_sequents(info, options);
}

} // namespace

RuleAudit audit_rule(const RuleInfo &info, const AuditOptions &options) {
    return audit_one(info, options, PoolTable(info.quantifier ? std::vector<Formula>{} : options.pool));
}

AuditReport audit_rules(const AuditOptions &options) {
    const PoolTable table(options.pool);
    std::vector<std::function<RuleAudit()>> tasks;
    for (const auto &info : rule_catalog())
        tasks.emplace_back([&info, &options, &table] { return audit_one(info, options, table); });
    AuditReport report;
    report.rules = run_all(std::move(tasks), options.jobs);

    const Pattern a{Pattern::Kind::Meta, 0, {}};
    const Schema control{{{a, std::nullopt}}, Pattern{Pattern::Kind::Circ, 0, {a}}};
    report.control = audit_table("{A}/@A", {control}, table);
    return report;
}

AuditReport audit_rules(std::span<const Formula> pool, std::size_t fo_bound, unsigned jobs) {
    AuditOptions options;
    options.pool.assign(pool.begin(), pool.end());
    options.fo_bound = fo_bound;
    options.jobs = jobs;
    return audit_rules(options);
}

} // namespace letf
