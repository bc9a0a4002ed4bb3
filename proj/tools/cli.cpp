#include "cli.hpp"

#include <CLI11.hpp>

#include <ostream>

#include "dalg/smoothness.hpp"

namespace dalg::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Presentation load(const std::string& path) {
    try {
        return load_presentation(path);
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    } catch (const std::runtime_error& e) {
        throw InputError(e.what());
    }
}

WordPoly parse_input(const std::string& text, int n) {
    try {
        return parse_expression(text, n);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("expression: ") + e.what());
    }
}

const char* pass(bool ok) { return ok ? "PASS" : "FAIL"; }

void print_decomposition(std::ostream& out, const Decomposition& dec) {
    out << "I: " << render_set(dec.I) << '\n';
    out << "S: " << render_set(dec.S) << '\n';
    out << "Tcirc: " << render_sets(dec.T_circ) << '\n';
    out << "Tbullet: " << render_sets(dec.T_bullet) << '\n';
    out << "R: " << render_sets(dec.R_components) << '\n';
}

void print_checks(std::ostream& out, const WitnessReport& r) {
    for (const auto& [name, ok] : r.checks) out << "check:" << name << ": " << pass(ok) << '\n';
}

int cmd_check_pbw(const std::string& file, std::ostream& out) {
    Presentation p = load(file);
    auto r = is_pbw(p);
    out << "n: " << p.n() << '\n';
    out << "pbw: " << (r.pbw ? "true" : "false") << '\n';
    if (r.first_failure) {
        const auto& t = *r.first_failure;
        out << "triple: " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
    return r.pbw ? kOk : kNegative;
}

int cmd_classify(const std::string& file, std::ostream& out) {
    Presentation p = load(file);
    Decomposition dec = decompose(p);
    FamilyIdentification fam = identify_family(p, dec);
    out << "family: " << to_string(fam.family) << '\n';
    if (p.n() == 3)
        if (auto c = three_generator_case(dec, fam.family)) out << "case: " << *c << '\n';
    print_decomposition(out, dec);
    for (const auto& [name, value] : fam.params) out << "param:" << name << ": " << value << '\n';
    for (const auto& v : fam.violations) out << "violation: " << v << '\n';
    out << "pbw: " << (is_pbw(p).pbw ? "true" : "false") << '\n';
    return fam.family == Family::Inconsistent ? kNegative : kOk;
}

int report_not_pbw(std::ostream& out, const NotPbwError& e) {
    out << "pbw: false\n";
    out << "error: " << e.what() << '\n';
    return kNegative;
}

void print_verdict(std::ostream& out, const Presentation& p, const SmoothnessVerdict& v) {
    out << "verdict: " << to_string(v.verdict) << '\n';
    out << "case: " << (v.theorem_case ? to_string(*v.theorem_case) : "-") << '\n';
    out << "family: " << to_string(v.fam.family) << '\n';
    out << "I: " << render_set(v.dec.I) << '\n';
    out << "S: " << render_set(v.dec.S) << '\n';
    out << "T: " << render_set(v.dec.T()) << '\n';
    out << "gkdim: " << p.n() << '\n';
    if (v.obstruction) {
        out << "obstruction: " << v.obstruction->i << ' ' << v.obstruction->t << '\n';
        out << "residual: " << render(v.obstruction->residual) << '\n';
    }
    for (const auto& n : v.notes) out << "note: " << n << '\n';
}

int cmd_smooth(const std::string& file, int bound, std::ostream& out) {
    Presentation p = load(file);
    SmoothnessVerdict v;
    try {
        v = decide_smoothness(p);
    } catch (const NotPbwError& e) {
        return report_not_pbw(out, e);
    }
    print_verdict(out, p, v);
    if (v.verdict != Verdict::Smooth) return kNegative;
    auto r = verify_witness(p, v, VerificationBounds::uniform(bound));
    print_checks(out, r);
    out << "certified_degree: " << bound << '\n';
    return r.ok() ? kOk : kNegative;
}

int cmd_reduce(const std::string& file, const std::string& expr, std::ostream& out) {
    Presentation p = load(file);
    out << render(normal_form(parse_input(expr, p.n()), p)) << '\n';
    return kOk;
}

int cmd_d(const std::string& file, const std::string& expr, std::ostream& out) {
    Presentation p = load(file);
    WordPoly w = parse_input(expr, p.n());
    SmoothnessVerdict v;
    try {
        v = decide_smoothness(p);
    } catch (const NotPbwError& e) {
        return report_not_pbw(out, e);
    }
    if (!v.witness) {
        out << "verdict: " << to_string(v.verdict) << '\n';
        out << "error: no calculus is available for this presentation\n";
        return kNegative;
    }
    Calculus c(p, *v.witness);
    Poly f = c.algebra().evaluate(w);
    GradedForm df = c.d(f);
    out << "input: " << render(f) << '\n';
    for (int a = 1; a <= p.n(); ++a) out << "partial_" << a << ": " << render(df.coefficient(1u << (a - 1))) << '\n';
    out << "d: " << render(df) << '\n';
    return kOk;
}

int cmd_tables(int n, const std::string& mode, std::ostream& out) {
    if (n < 3 || n > 8) throw InputError("tables: n must lie in 3..8");
    TableMode m = mode == "full" ? TableMode::full : TableMode::paper;
    out << render_templates(generate_templates(n, m));
    return kOk;
}

int cmd_verify(const std::string& file, const VerificationBounds& b, std::ostream& out) {
    Presentation p = load(file);
    SmoothnessVerdict v;
    try {
        v = decide_smoothness(p);
    } catch (const NotPbwError& e) {
        return report_not_pbw(out, e);
    }
    print_verdict(out, p, v);
    if (!v.witness) return kNegative;
    std::string fam = render_family(*v.witness);
    std::size_t start = 0;
    while (start < fam.size()) {
        auto end = fam.find('\n', start);
        out << "nu: " << fam.substr(start, end - start) << '\n';
        start = end + 1;
    }
    auto r = verify_witness(p, v, b);
    print_checks(out, r);
    for (const auto& d : r.details) out << "detail: " << d << '\n';
    out << "bounds: dd " << b.dd << " connected " << b.connected << " form " << b.form_bound(p.n()) << '\n';
    return r.ok() ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Diffusion algebra PBW checks, classification and differential smoothness", "dalg"};
    app.require_subcommand(1);

    std::string file, expr, mode = "paper";
    int n = 0, bound = 3;
    VerificationBounds vb;

    auto* check = app.add_subcommand("check-pbw", "diamond-lemma confluence of all triples");
    check->add_option("file", file)->required();
    auto* classify = app.add_subcommand("classify", "decomposition, family and parameters");
    classify->add_option("file", file)->required();
    auto* smooth = app.add_subcommand("smooth", "smoothness verdict with witness verification");
    smooth->add_option("file", file)->required();
    smooth->add_option("--degree-bound", bound)->check(CLI::Range(0, 12));
    auto* reduce = app.add_subcommand("reduce", "normal form in the PBW basis");
    reduce->add_option("file", file)->required();
    reduce->add_option("expr", expr)->required();
    auto* diff = app.add_subcommand("d", "differential and partial derivatives");
    diff->add_option("file", file)->required();
    diff->add_option("expr", expr)->required();
    auto* tables = app.add_subcommand("tables", "relation templates on n generators");
    tables->add_option("n", n)->required();
    tables->add_option("--mode", mode)->check(CLI::IsMember({"paper", "full"}));
    auto* verify = app.add_subcommand("verify-calculus", "all calculus checks for the witness");
    verify->add_option("file", file)->required();
    verify->add_option("--dd-bound", vb.dd)->check(CLI::Range(0, 12));
    verify->add_option("--connected-bound", vb.connected)->check(CLI::Range(0, 12));
    verify->add_option("--form-bound", vb.form)->check(CLI::Range(0, 12));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*check) return cmd_check_pbw(file, out);
        if (*classify) return cmd_classify(file, out);
        if (*smooth) return cmd_smooth(file, bound, out);
        if (*reduce) return cmd_reduce(file, expr, out);
        if (*diff) return cmd_d(file, expr, out);
        if (*tables) return cmd_tables(n, mode, out);
        if (*verify) return cmd_verify(file, vb, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace dalg::cli
