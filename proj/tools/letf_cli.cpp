#include "letf_cli.hpp"

#include "letf/algebra.hpp"
#include "letf/audit.hpp"
#include "letf/error.hpp"
#include "letf/fo_models.hpp"
#include "letf/normal_forms.hpp"
#include "letf/prenex.hpp"
#include "letf/proof.hpp"
#include "letf/prop_engine.hpp"
#include "letf/syntax.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace letf {

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// `pred P/2` and `const c` lines; '#' starts a comment.
Signature parse_signature(const std::string &text) {
    Signature sig;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = line.substr(0, line.find('#'));
        std::istringstream words(line);
        std::string kind, item, extra;
        if (!(words >> kind))
            continue;
        auto bad = [&] {
            return Error(ErrorKind::Format, "signature line " + std::to_string(lineno) +
                                                ": expected 'pred NAME/ARITY' or 'const NAME'");
        };
        if (!(words >> item) || (words >> extra))
            throw bad();
        if (kind == "const") {
            sig.declare_constant(item);
        } else if (kind == "pred") {
            const auto slash = item.find('/');
            if (slash == std::string::npos || slash == 0 || slash + 1 == item.size())
                throw bad();
            std::size_t arity = 0;
            try {
                std::size_t used = 0;
                arity = std::stoul(item.substr(slash + 1), &used);
                if (used != item.size() - slash - 1)
                    throw bad();
            } catch (const std::logic_error &) {
                throw bad();
            }
            sig.declare_predicate(item.substr(0, slash), arity);
        } else {
            throw bad();
        }
    }
    return sig;
}

// Strict against --sig when given; otherwise the signature grows with use.
class Reader {
public:
    explicit Reader(const std::string &sig_file) {
        if (!sig_file.empty())
            fixed_ = parse_signature(read_file(sig_file));
    }

    Formula formula(const std::string &text) {
        return fixed_ ? parse(text, *fixed_) : parse_extending(text, inferred_);
    }
    std::vector<Formula> formulas(const std::vector<std::string> &texts) {
        std::vector<Formula> out;
        for (const auto &t : texts)
            out.push_back(formula(t));
        return out;
    }
    Signature signature() const { return fixed_ ? *fixed_ : inferred_; }
    Signature &extensible() { return fixed_ ? *fixed_ : inferred_; }

private:
    std::optional<Signature> fixed_;
    Signature inferred_;
};

// First cell 6 wide, the rest 4, no trailing blanks.
void print_row(std::ostream &out, const std::vector<std::string> &cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        line += cells[i];
        if (i + 1 < cells.size())
            line.append((i == 0 ? 6 : 4) - cells[i].size(), ' ');
    }
    out << line << '\n';
}

void print_binary(std::ostream &out, const std::string &name, Snapshot (*op)(Snapshot, Snapshot),
                  bool csv) {
    if (csv) {
        out << "x,y," << name << '\n';
        for (auto x : all_values)
            for (auto y : all_values)
                out << to_string(x) << ',' << to_string(y) << ',' << to_string(op(x, y).value())
                    << '\n';
        return;
    }
    std::vector<std::string> header{name};
    for (auto y : all_values)
        header.emplace_back(to_string(y));
    print_row(out, header);
    for (auto x : all_values) {
        std::vector<std::string> row{std::string(to_string(x))};
        for (auto y : all_values)
            row.emplace_back(to_string(op(x, y).value()));
        print_row(out, row);
    }
}

void print_unary(std::ostream &out, const std::string &name, Snapshot (*op)(Snapshot), bool csv) {
    if (csv) {
        out << "x," << name << '\n';
        for (auto x : all_values)
            out << to_string(x) << ',' << to_string(op(x).value()) << '\n';
        return;
    }
    std::vector<std::string> header{""}, row{name};
    for (auto x : all_values) {
        header.emplace_back(to_string(x));
        row.emplace_back(to_string(op(x).value()));
    }
    print_row(out, header);
    print_row(out, row);
}

Snapshot conj_op(Snapshot a, Snapshot b) { return conj(a, b); }
Snapshot disj_op(Snapshot a, Snapshot b) { return disj(a, b); }
Snapshot neg_op(Snapshot a) { return neg(a); }
Snapshot circ_op(Snapshot a) { return circ(a); }

struct Options {
    std::string sig_file;
    unsigned jobs = 1;

    std::string op = "all", format = "text";
    std::string formula, assignment, conclusion, other, model_file, proof_file, premises_file;
    std::vector<std::string> premises;
    bool dnf = false, cnf = false, verify = false, symmetry = false, verbose = false;
    std::size_t max_atoms = 8, max_domain = 0, fo_bound = 3;
    std::uint64_t cap = 20'000'000;
};

int cmd_table(const Options &o, std::ostream &out) {
    const bool csv = o.format == "csv";
    bool first = true;
    auto want = [&](const char *name) {
        if (o.op != "all" && o.op != name)
            return false;
        if (!first)
            out << '\n';
        first = false;
        return true;
    };
    if (want("conj"))
        print_binary(out, "conj", conj_op, csv);
    if (want("disj"))
        print_binary(out, "disj", disj_op, csv);
    if (want("neg"))
        print_unary(out, "neg", neg_op, csv);
    if (want("circ"))
        print_unary(out, "circ", circ_op, csv);
    return 0;
}

int cmd_eval(const Options &o, std::ostream &out) {
    Reader r(o.sig_file);
    const auto f = r.formula(o.formula);
    if (!is_quantifier_free(f))
        throw Error(ErrorKind::InvalidArgument, "eval takes quantifier-free formulas; see model-check");
    out << to_string(evaluate(f, parse_assignment(o.assignment)).value()) << '\n';
    return 0;
}

int report(const Verdict &v, const char *positive, std::ostream &out) {
    if (v.valid) {
        out << positive << '\n';
        return 0;
    }
    out << format_assignment(*v.countermodel) << '\n';
    return 1;
}

int cmd_entails(const Options &o, std::ostream &out) {
    Reader r(o.sig_file);
    const auto premises = r.formulas(o.premises);
    const auto conclusion = r.formula(o.conclusion);
    return report(entails({premises, conclusion}, {o.max_atoms, o.jobs}), "valid", out);
}

int cmd_equiv(const Options &o, std::ostream &out) {
    Reader r(o.sig_file);
    const auto f = r.formula(o.formula);
    const auto g = r.formula(o.other);
    return report(equivalent(f, g, {o.max_atoms, o.jobs}), "equivalent", out);
}

int cmd_nf(const Options &o, std::ostream &out, std::ostream &err) {
    if (o.dnf == o.cnf)
        throw Error(ErrorKind::InvalidArgument, "nf needs exactly one of --dnf, --cnf");
    Reader r(o.sig_file);
    const auto f = r.formula(o.formula);
    const auto kind = o.dnf ? NormalFormKind::DNF : NormalFormKind::CNF;
    const auto g = to_normal_form(f, kind);
    out << render(g) << '\n';
    if (!o.verify)
        return 0;
    if (!is_normal_form(g, kind)) {
        err << "verification failed: output is not in normal form\n";
        return 1;
    }
    const auto v = equivalent(f, g, {o.max_atoms, o.jobs});
    if (!v.valid) {
        err << "verification failed: differs at " << format_assignment(*v.countermodel) << '\n';
        return 1;
    }
    out << "verified\n";
    return 0;
}

int cmd_prenex(const Options &o, std::ostream &out, std::ostream &err) {
    Reader r(o.sig_file);
    const auto f = r.formula(o.formula);
    const auto g = to_pnf(f);
    out << render(g) << '\n';
    if (!o.verify)
        return 0;
    const std::size_t k = o.max_domain ? o.max_domain : 2;
    const auto v = verify_pnf(f, g, k, r.signature(), o.jobs);
    if (!v.valid) {
        err << "verification failed; counter-structure:\n" << format_structure(*v.counter);
        return 1;
    }
    out << "verified up to |D| <= " << k << " (bounded)\n";
    return 0;
}

int cmd_model_check(const Options &o, std::ostream &out) {
    const auto s = parse_structure(read_file(o.model_file));
    Signature sig = s.signature();
    if (!o.sig_file.empty())
        sig.merge(parse_signature(read_file(o.sig_file)));
    const auto v = eval_sentence(s, parse(o.formula, sig));
    out << to_string(v.value()) << '\n';
    return is_designated(v) ? 0 : 1;
}

int cmd_fo_entails(const Options &o, std::ostream &out) {
    Reader r(o.sig_file);
    const auto premises = r.formulas(o.premises);
    const auto conclusion = r.formula(o.conclusion);
    FoOptions fo;
    fo.max_size = o.max_domain ? o.max_domain : 3;
    fo.cap = o.cap;
    fo.jobs = o.jobs;
    fo.symmetry_reduction = o.symmetry;
    auto sig = r.signature();
    const auto v = fo_entails(premises, conclusion, sig, fo);
    if (!v.valid) {
        out << "counter-structure:\n" << format_structure(*v.counter);
        return 1;
    }
    out << "valid up to |D| <= " << v.max_size << " (bounded, " << v.structures_checked
        << " structures)\n";
    return 0;
}

int cmd_proof_check(const Options &o, std::ostream &out) {
    Reader r(o.sig_file);
    std::vector<Formula> premises;
    if (!o.premises_file.empty())
        premises = parse_premises(read_file(o.premises_file), r.extensible());
    const auto proof = parse_proof(read_file(o.proof_file), r.extensible());
    const auto result = check_proof(proof, premises);
    if (result.ok()) {
        out << "ok: " << render(proof.conclusion) << " (" << proof.size() << " nodes)\n";
        return 0;
    }
    out << "rejected at " << result.error->locus << ": " << to_string(result.error->kind) << ": "
        << result.error->reason << '\n';
    return 1;
}

void print_audit(std::ostream &out, const RuleAudit &r, bool verbose) {
    out << std::left << std::setw(12) << r.rule << std::setw(18) << r.method << std::right
        << std::setw(8) << r.instances << " instances " << std::setw(6) << r.invalid
        << " invalid\n";
    if (verbose || !r.ok())
        for (const auto &f : r.findings)
            out << "    " << f.instance << "  at  " << f.counter << '\n';
}

int cmd_rules_audit(const Options &o, std::ostream &out) {
    AuditOptions options;
    options.fo_bound = o.fo_bound;
    options.jobs = o.jobs;
    const auto rep = audit_rules(options);
    for (const auto &r : rep.rules)
        print_audit(out, r, o.verbose);
    out << "negative control:\n";
    print_audit(out, rep.control, true);
    if (rep.control.ok())
        out << "negative control was NOT flagged\n";
    out << (rep.ok() ? "all rules sound" : "unsound instances found") << " (" << rep.rules.size()
        << " rules, |D| <= " << o.fo_bound << ")\n";
    return rep.ok() ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Six-valued LET_F+ / QLET_F+ toolkit", "letf"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--sig", o.sig_file, "signature file: 'pred P/2' and 'const c' lines");
    app.add_option("--jobs", o.jobs, "worker threads for searches")->check(CLI::Range(1u, 256u));

    auto *table = app.add_subcommand("table", "print the operation tables");
    table->add_option("--op", o.op)->check(CLI::IsMember({"all", "conj", "disj", "neg", "circ"}));
    table->add_option("--format", o.format)->check(CLI::IsMember({"text", "csv"}));

    auto *eval = app.add_subcommand("eval", "value of a formula under an assignment");
    eval->add_option("-f,--formula", o.formula)->required();
    eval->add_option("-a,--assign", o.assignment, "e.g. \"p=b,q=n\"")->required();

    auto *ent = app.add_subcommand("entails", "exhaustive entailment check");
    ent->add_option("-p,--premise", o.premises);
    ent->add_option("-c,--conclusion", o.conclusion)->required();
    ent->add_option("--max-atoms", o.max_atoms);

    auto *eq = app.add_subcommand("equiv", "mutual entailment check");
    eq->add_option("F", o.formula)->required();
    eq->add_option("G", o.other)->required();
    eq->add_option("--max-atoms", o.max_atoms);

    auto *nf = app.add_subcommand("nf", "disjunctive or conjunctive normal form");
    nf->add_option("FORMULA", o.formula)->required();
    nf->add_flag("--dnf", o.dnf);
    nf->add_flag("--cnf", o.cnf);
    nf->add_flag("--verify", o.verify, "check the result exhaustively");
    nf->add_option("--max-atoms", o.max_atoms);

    auto *pnf = app.add_subcommand("prenex", "prenex normal form");
    pnf->add_option("SENTENCE", o.formula)->required();
    pnf->add_flag("--verify", o.verify, "bounded equivalence check");
    pnf->add_option("--max-domain", o.max_domain, "default 2");

    auto *mc = app.add_subcommand("model-check", "value of a sentence in a finite structure");
    mc->add_option("-m,--model", o.model_file)->required();
    mc->add_option("-f,--formula", o.formula)->required();

    auto *foe = app.add_subcommand("fo-entails", "bounded first-order entailment");
    foe->add_option("-p,--premise", o.premises);
    foe->add_option("-c,--conclusion", o.conclusion)->required();
    foe->add_option("--max-domain", o.max_domain, "default 3");
    foe->add_option("--cap", o.cap, "maximum number of structures");
    foe->add_flag("--symmetry", o.symmetry, "skip structures isomorphic to earlier ones");

    auto *pc = app.add_subcommand("proof-check", "check a natural deduction proof");
    pc->add_option("FILE", o.proof_file)->required();
    pc->add_option("--premises", o.premises_file);

    auto *audit = app.add_subcommand("rules-audit", "semantic audit of every inference rule");
    audit->add_option("--fo-bound", o.fo_bound)->check(CLI::Range(1, 4));
    audit->add_flag("-v,--verbose", o.verbose);

    std::vector<std::string> storage{"letf"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &s : storage)
        argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (table->parsed())
            return cmd_table(o, out);
        if (eval->parsed())
            return cmd_eval(o, out);
        if (ent->parsed())
            return cmd_entails(o, out);
        if (eq->parsed())
            return cmd_equiv(o, out);
        if (nf->parsed())
            return cmd_nf(o, out, err);
        if (pnf->parsed())
            return cmd_prenex(o, out, err);
        if (mc->parsed())
            return cmd_model_check(o, out);
        if (foe->parsed())
            return cmd_fo_entails(o, out);
        if (pc->parsed())
            return cmd_proof_check(o, out);
        if (audit->parsed())
            return cmd_rules_audit(o, out);
    } catch (const Error &e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace letf
