#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "oracle.hpp"

using namespace dalg;
using namespace dalg::test;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::vector<std::string> reasons;

    void require(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (reasons.size() < 5) reasons.push_back(what);
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream o, e;
    int code = cli::run(args, o, e);
    if (out) *out = o.str();
    return code;
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);)
        if (l == line) return true;
    return false;
}

using Params = std::map<std::string, Scalar>;
using Mutation = std::function<void(Presentation&)>;

void bump(Presentation& p, int a, int b) { p.set_g(a, b, p.g(a, b) + Scalar(1)); }

// One restriction-violating change per three-generator case.
std::map<std::string, Mutation> mutations() {
    return {
        {"A_I", [](Presentation& p) { bump(p, 3, 2); }},
        {"A_II", [](Presentation& p) { p.set_g(2, 1, Scalar(1)); }},
        {"B(1)", [](Presentation& p) { bump(p, 3, 2); }},
        {"B(2)", [](Presentation& p) { p.set_g(2, 1, Scalar(1)); }},
        {"B(3)", [](Presentation& p) { p.set_g(3, 1, Scalar(1)); }},
        {"B(4)", [](Presentation& p) { p.set_g(2, 1, Scalar(1)); }},
        {"C(1)", [](Presentation& p) { bump(p, 2, 1); }},
        {"C(2)", [](Presentation& p) {
             p.set_g(2, 3, Scalar(1));
             p.set_g(3, 2, Scalar(1));
         }},
        {"D", [](Presentation& p) { p.set_x(1, Scalar(1)); }},
    };
}

Outcome criterion_1() {
    Outcome o;
    auto t0 = Clock::now();
    std::mt19937 rng(101);
    auto muts = mutations();
    auto templates = generate_templates(3, TableMode::paper);
    o.require(templates.size() == 9, "expected nine templates");
    std::set<std::string> seen;
    for (const auto& t : templates) {
        auto name = three_generator_case(t.dec, t.family);
        o.require(name.has_value(), "unnamed template " + t.label);
        if (!name) continue;
        seen.insert(*name);
        int instances = 0;
        while (instances < 20) {
            auto [p, params] = random_instance(t, rng);
            // joining the two C(2) components only breaks PBW when their Lambdas differ
            if (*name == "C(2)" && params.at("L_1") == params.at("L_2")) continue;
            ++instances;
            auto dec = decompose(p);
            o.require(is_pbw(p).pbw, *name + ": admissible instance is not PBW");
            o.require(three_generator_case(dec, identify_family(p, dec).family) == name, *name + ": instance changes case");
            Presentation bad = p;
            muts.at(*name)(bad);
            auto r = is_pbw(bad);
            o.require(!r.pbw && r.first_failure.has_value(), *name + ": mutation still passes the diamond checks");
        }
    }
    o.require(seen.size() == 9, "cases are not distinct");
    double s = seconds_since(t0);
    o.require(s < 10.0, "runtime " + std::to_string(s) + "s");
    return o;
}

Outcome criterion_2() {
    Outcome o;
    std::string out;
    o.require(cli({"tables", "3"}, &out) == 0, "tables 3 failed");
    o.require(has_line(out, "templates: 9"), "tables 3 count");
    o.require(out == strip_commentary(read_file(test_path("golden/tables_3.txt"))), "tables 3 differs from golden");
    o.require(cli({"tables", "4", "--mode", "paper"}, &out) == 0, "tables 4 failed");
    o.require(has_line(out, "templates: 38"), "tables 4 count");
    o.require(out == strip_commentary(read_file(test_path("golden/tables_4_paper.txt"))), "tables 4 differs from golden");
    std::multiset<TableRow> generated;
    for (const auto& t : generate_templates(4, TableMode::paper)) generated.insert(row_of(t));
    auto reference = reference_rows_4();
    o.require(reference.size() == 38 && generated == reference, "four-generator rows differ from the reference tables");
    auto five = generate_templates(5, TableMode::paper);
    auto records = spot_records_5();
    o.require(records.size() == 10, "expected ten spot rows");
    for (const auto& rec : records) {
        int matches = 0;
        for (const auto& t : five) matches += render_template(t) == rec;
        o.require(matches == 1, "spot row not matched exactly once:\n" + rec);
    }
    return o;
}

Outcome criterion_3() {
    Outcome o;
    auto t0 = Clock::now();
    for (const auto& name : {"p1.dalg", "p3.dalg", "b3.dalg", "p4.dalg"}) {
        std::string out;
        int code = cli({"verify-calculus", test_path(std::string("data/") + name)}, &out);
        o.require(code == 0, std::string(name) + ": verify-calculus exit " + std::to_string(code));
        o.require(out.find(": FAIL") == std::string::npos, std::string(name) + ": a check failed");
        int n = load_presentation(test_path(std::string("data/") + name)).n();
        std::string bounds = "bounds: dd 4 connected 5 form " + std::to_string(n <= 3 ? 3 : 2);
        o.require(has_line(out, bounds), std::string(name) + ": unexpected bounds");
        for (const auto& check : {"relations_preserved", "pairwise_commute", "leibniz_compatibility", "dd_zero", "connectedness"})
            o.require(has_line(out, std::string("check:") + check + ": PASS"), std::string(name) + ": missing " + check);
        for (int k = 0; k < n; ++k)
            for (const auto& kind : {"dual", "twisted"})
                o.require(has_line(out, "check:integrating_form_" + std::string(kind) + "_k" + std::to_string(k) + ": PASS"),
                          std::string(name) + ": integrating form k=" + std::to_string(k));
    }
    double s = seconds_since(t0);
    o.require(s < 60.0, "runtime " + std::to_string(s) + "s");
    return o;
}

Presentation sample_case(int n, TheoremCase c, std::mt19937& rng) {
    for (const auto& t : generate_templates(n, TableMode::paper)) {
        if (!t.dec.T().empty()) continue;
        for (int k = 0; k < 20; ++k) {
            auto [p, params] = random_instance(t, rng);
            // cases ii and iii need g(i,s) uniform over S
            Scalar g = random_nonzero(rng), L = random_nonzero(rng);
            for (auto& [name, value] : params) {
                if (name.rfind("g_", 0) == 0) value = g;
                if (name.rfind("L_", 0) == 0) value = L;
            }
            std::vector<Presentation> candidates{p};
            try {
                candidates.push_back(instantiate_template(t, params));
            } catch (const RestrictionError&) {
            }
            for (const auto& q : candidates) {
                auto v = decide_smoothness(q);
                if (v.verdict == Verdict::Smooth && v.theorem_case == c) return q;
            }
        }
    }
    throw std::runtime_error("no instance for case " + to_string(c));
}

Outcome criterion_4() {
    Outcome o;
    std::mt19937 rng(103);
    std::vector<std::pair<std::string, Presentation>> inputs = {
        {"n=3 case i", sample_case(3, TheoremCase::i, rng)},   {"P1", data("p1.dalg")},
        {"P3", data("p3.dalg")},                               {"n=4 case ii", sample_case(4, TheoremCase::ii, rng)},
        {"n=3 case iii", sample_case(3, TheoremCase::iii, rng)}, {"n=4 case iii", data("b3.dalg")},
        {"P4", data("p4.dalg")},                               {"n=4 case iv", sample_case(4, TheoremCase::iv, rng)},
    };
    for (const auto& [label, p] : inputs) {
        auto v = decide_smoothness(p);
        o.require(v.witness.has_value(), label + ": no witness");
        if (!v.witness) continue;
        Calculus c(p, *v.witness);
        for (const auto& m : monomials_up_to(p.n(), 4)) {
            Poly f = c.algebra().evaluate(oracle::increasing_word(m.exps));
            for (int a = 1; a <= p.n(); ++a)
                o.require(c.partial(a, f) == oracle::closed_partial(c.algebra(), c.family(), a, m.exps),
                          label + ": partial_" + std::to_string(a) + " differs on " + render(Poly::monomial(m)));
        }
    }
    return o;
}

Outcome criterion_5() {
    Outcome o;
    std::mt19937 rng(107);
    int rows = 0;
    for (const auto& t : generate_templates(4, TableMode::paper)) {
        if (t.dec.T().empty()) continue;
        ++rows;
        auto [p, params] = random_instance(t, rng);
        auto v = decide_smoothness(p);
        o.require(v.verdict == Verdict::NotSmooth && v.obstruction.has_value(), t.label + ": not rejected");
        if (!v.obstruction) continue;
        const auto& ob = *v.obstruction;
        Scalar G = p.g(std::min(ob.i, ob.t), std::max(ob.i, ob.t));
        Poly expected = Poly::generator(4, ob.t) * G;
        o.require(!ob.residual.is_zero(), t.label + ": zero residual");
        o.require(ob.residual == expected || ob.residual == -expected, t.label + ": residual " + render(ob.residual));
        o.require(!verify_automorphisms(case_i_ansatz(p, decompose(p)), p).relations_preserved,
                  t.label + ": ansatz preserves the relations");
    }
    o.require(rows >= 10, "only " + std::to_string(rows) + " rows with T nonempty");
    return o;
}

Outcome criterion_6() {
    Outcome o;
    std::mt19937 rng(109);
    auto p = data("comm.dalg");
    Algebra A(p);
    for (int k = 0; k < 100; ++k) {
        Poly u = random_poly(3, rng, 3, 4), v = random_poly(3, rng, 3, 4);
        o.require(A.multiply(u, v) == A.multiply(v, u), "multiplication is not commutative");
    }
    auto v = decide_smoothness(p);
    o.require(v.verdict == Verdict::Smooth && v.theorem_case == TheoremCase::iv, "verdict is not Smooth (iv)");
    if (!v.witness) return o;
    Calculus c(p, *v.witness);
    for (const auto& m : monomials_up_to(3, 5))
        for (int a = 1; a <= 3; ++a)
            o.require(c.partial(a, Poly::monomial(m)) == oracle::classical_partial(a, m),
                      "partial_" + std::to_string(a) + " of " + render(Poly::monomial(m)));
    return o;
}

Outcome criterion_7() {
    Outcome o;
    auto v = decide_smoothness(data("c_nonuniform.dalg"));
    o.require(v.verdict == Verdict::Undetermined, "c_nonuniform: " + to_string(v.verdict));
    o.require(v.fam.family == Family::C, "c_nonuniform is not of family C");
    std::string out;
    o.require(cli({"smooth", test_path("data/c_nonuniform.dalg")}, &out) == 1 && has_line(out, "verdict: UNDETERMINED"),
              "CLI verdict");

    // C(1) at n = 3 with g_2 != g_3 breaks uniformity
    std::mt19937 rng(113);
    const Template* c1 = nullptr;
    auto templates = generate_templates(3, TableMode::paper);
    for (const auto& t : templates)
        if (three_generator_case(t.dec, t.family) == "C(1)") c1 = &t;
    o.require(c1 != nullptr, "no C(1) template");
    if (!c1) return o;
    int tried = 0;
    while (tried < 20) {
        auto [p, params] = random_instance(*c1, rng);
        if (params.at("g_2") == params.at("g_3")) continue;
        ++tried;
        o.require(decide_smoothness(p).verdict == Verdict::Undetermined, "random non-uniform C instance decided");
    }
    return o;
}

}  // namespace

int main() {
    std::vector<std::function<Outcome()>> criteria = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                      criterion_5, criterion_6, criterion_7};
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k]();
        } catch (const std::exception& e) {
            o.ok = false;
            o.reasons.push_back(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << k + 1 << ": " << (o.ok ? "PASS" : "FAIL") << '\n';
        for (const auto& r : o.reasons) std::cout << "  " << r << '\n';
        failures += !o.ok;
    }
    return failures == 0 ? 0 : 1;
}
