#include "dalg/smoothness.hpp"

#include <algorithm>

namespace dalg {

int gk_dimension(const Presentation& p) {
    auto r = is_pbw(p);
    if (!r.pbw) {
        const auto& f = *r.first_failure;
        throw NotPbwError("not PBW: triple " + std::to_string(f[0]) + " " + std::to_string(f[1]) + " " + std::to_string(f[2]) +
                          " is not confluent");
    }
    return p.n();
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Smooth: return "SMOOTH";
        case Verdict::NotSmooth: return "NOT_SMOOTH";
        case Verdict::Undetermined: return "UNDETERMINED";
    }
    return "?";
}

namespace {

bool uniform_over(const Presentation& p, int i, const IndexSet& S, std::vector<std::string>& notes) {
    for (int s : S)
        if (p.g(i, s) != p.g(i, S.front()) || p.g(s, i) != p.g(S.front(), i)) {
            notes.push_back("g(" + std::to_string(i) + ",s) is not uniform over S");
            return false;
        }
    return true;
}

// G = g(i,s), Lambda = g(i,s) - g(s,i); need G != 0 and G != Lambda
bool G_admissible(const Presentation& p, int i, const IndexSet& S, std::vector<std::string>& notes) {
    if (S.empty()) return true;
    int s = S.front();
    if (p.g(i, s).is_zero()) notes.push_back("G = 0");
    if (p.g(s, i).is_zero()) notes.push_back("G = Lambda");
    return !p.g(i, s).is_zero() && !p.g(s, i).is_zero();
}

std::optional<TheoremCase> match_case(const Presentation& p, const Decomposition& dec, const FamilyIdentification& fam,
                                      std::vector<std::string>& notes) {
    std::size_t k = dec.I.size();
    bool single = dec.R_components.size() <= 1;
    if (k >= 3) {
        if (fam.family == Family::A_II) {
            notes.push_back("A_II without T: no uniform g, outside the smooth cases");
            return std::nullopt;
        }
        if (!single) {
            notes.push_back("S splits into several components");
            return std::nullopt;
        }
        return TheoremCase::i;
    }
    if (k == 2) {
        if (!single) {
            notes.push_back("S splits into several components");
            return std::nullopt;
        }
        int i = dec.I[0], j = dec.I[1];
        bool ok = uniform_over(p, i, dec.S, notes) && G_admissible(p, i, dec.S, notes);
        if (p.g(j, i).is_zero()) {
            notes.push_back("g = Lambda");
            ok = false;
        }
        return ok ? std::optional(TheoremCase::iii) : std::nullopt;
    }
    if (k == 1) {
        if (!single) {
            notes.push_back("R splits into several components");
            return std::nullopt;
        }
        int i = dec.I[0];
        if (dec.S.empty()) {
            notes.push_back("single generator without S");
            return std::nullopt;
        }
        bool ok = uniform_over(p, i, dec.S, notes) && G_admissible(p, i, dec.S, notes);
        return ok ? std::optional(TheoremCase::ii) : std::nullopt;
    }
    for (int a = 1; a <= p.n(); ++a)
        for (int b = 1; b <= p.n(); ++b)
            if (a != b && p.g(a, b).is_zero()) {
                notes.push_back("some q vanishes; the q-twist is singular");
                return std::nullopt;
            }
    return TheoremCase::iv;
}

}  // namespace

SmoothnessVerdict decide_smoothness(const Presentation& p) {
    gk_dimension(p);
    SmoothnessVerdict v;
    v.dec = decompose(p);
    v.fam = identify_family(p, v.dec);
    if (v.fam.family == Family::Inconsistent) {
        v.notes = v.fam.violations;
        v.notes.insert(v.notes.begin(), "no family template matches");
        return v;
    }

    IndexSet T = v.dec.T();
    if (!T.empty()) {
        int t = *std::min_element(T.begin(), T.end());
        int i = v.dec.I.front();
        for (int c : v.dec.I)
            if (c < t) {
                i = c;
                break;
            }
        Poly res = no_go_residual(p, i, t, case_i_ansatz(p, v.dec));
        v.obstruction = Obstruction{i, t, res};
        if (res.is_zero()) {
            v.notes.push_back("T is nonempty but the residual vanishes");
            return v;
        }
        v.verdict = Verdict::NotSmooth;
        return v;
    }

    auto c = match_case(p, v.dec, v.fam, v.notes);
    if (!c) return v;
    try {
        AutomorphismFamily nu = build_automorphisms(p, v.dec, v.fam);
        auto rep = verify_automorphisms(nu, p);
        if (!rep.ok()) {
            v.notes.push_back("witness maps fail verification");
            for (const auto& d : rep.details) v.notes.push_back(d);
            return v;
        }
        v.verdict = Verdict::Smooth;
        v.theorem_case = c;
        v.witness = std::move(nu);
    } catch (const HypothesisError& e) {
        v.notes.push_back(e.what());
    }
    return v;
}

bool WitnessReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

WitnessReport verify_witness(const Presentation& p, const AutomorphismFamily& nu, const VerificationBounds& bounds) {
    WitnessReport r;
    auto rep = verify_automorphisms(nu, p);
    r.checks.emplace_back("relations_preserved", rep.relations_preserved);
    r.checks.emplace_back("pairwise_commute", rep.pairwise_commute);
    r.checks.emplace_back("invertible", rep.invertible);
    r.details = rep.details;

    bool recip = true;
    for (int a = 1; a <= p.n(); ++a)
        for (int b = a + 1; b <= p.n(); ++b)
            if (!(nu.at(a, b).lambda * nu.at(b, a).lambda).is_one()) recip = false;
    r.checks.emplace_back("twist_reciprocity", recip);

    Calculus c(p, nu);
    r.checks.emplace_back("leibniz_compatibility", check_leibniz_compatibility(c, &r.details));
    r.checks.emplace_back("dd_zero", check_dd_zero(c, bounds.dd));
    r.checks.emplace_back("connectedness", check_connectedness(c, bounds.connected));
    bool volume = c.nu_omega_map().invertible();
    r.checks.emplace_back("volume_form", volume);
    int fb = bounds.form_bound(p.n());
    for (int k = 0; k < p.n(); ++k) {
        IntegratingFormReport f;
        if (volume && recip) f = check_integrating_form(c, k, fb);
        else f.dual_basis = f.twisted_basis = false;
        r.checks.emplace_back("integrating_form_dual_k" + std::to_string(k), f.dual_basis);
        r.checks.emplace_back("integrating_form_twisted_k" + std::to_string(k), f.twisted_basis);
    }
    return r;
}

WitnessReport verify_witness(const Presentation& p, const SmoothnessVerdict& v, const VerificationBounds& bounds) {
    if (!v.witness) throw std::invalid_argument("verify_witness: verdict carries no witness");
    return verify_witness(p, *v.witness, bounds);
}

}  // namespace dalg
