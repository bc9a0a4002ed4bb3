#include "dalg/classifier.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace dalg {

std::string to_string(Family f) {
    switch (f) {
        case Family::A_I: return "A_I";
        case Family::A_II: return "A_II";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
        case Family::Inconsistent: return "Inconsistent";
    }
    return "?";
}

IndexSet Decomposition::T() const {
    IndexSet t;
    for (const auto& c : T_circ) t.insert(t.end(), c.begin(), c.end());
    for (const auto& c : T_bullet) t.insert(t.end(), c.begin(), c.end());
    std::sort(t.begin(), t.end());
    return t;
}

namespace {

std::string idx(int a) { return std::to_string(a); }
std::string pair_name(int a, int b) { return "(" + idx(a) + "," + idx(b) + ")"; }

bool contains(const IndexSet& s, int a) { return std::find(s.begin(), s.end(), a) != s.end(); }

// true when every element of c sits strictly between two consecutive elements of I
bool inside_gap(const IndexSet& c, const IndexSet& I) {
    for (std::size_t k = 0; k + 1 < I.size(); ++k) {
        int lo = I[k], hi = I[k + 1];
        if (std::all_of(c.begin(), c.end(), [&](int t) { return lo < t && t < hi; })) return true;
    }
    return false;
}

std::string q_name(int hi, int lo) { return "q_" + idx(hi) + "_" + idx(lo); }

}  // namespace

Decomposition decompose(const Presentation& p) {
    Decomposition d;
    for (int a = 1; a <= p.n(); ++a) (p.x(a).is_zero() ? d.R : d.I).push_back(a);

    std::set<int> seen;
    for (int r : d.R) {
        if (seen.count(r)) continue;
        IndexSet comp;
        std::vector<int> stack{r};
        seen.insert(r);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int v : d.R)
                if (!seen.count(v) && !(p.g(u, v) * p.g(v, u)).is_zero()) {
                    seen.insert(v);
                    stack.push_back(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        d.R_components.push_back(comp);
    }

    if (d.I.size() >= 2) {
        for (const auto& c : d.R_components) {
            bool linked = false;
            for (int r : c)
                for (int i : d.I)
                    if (!(p.g(i, r) * p.g(r, i)).is_zero()) linked = true;
            if (linked) d.S.insert(d.S.end(), c.begin(), c.end());
            else (inside_gap(c, d.I) ? d.T_bullet : d.T_circ).push_back(c);
        }
        std::sort(d.S.begin(), d.S.end());
    } else if (d.I.size() == 1) {
        d.S = d.R;
    }
    return d;
}

namespace {

struct Matcher {
    const Presentation& p;
    FamilyIdentification& out;

    void expect(const Scalar& actual, const Scalar& want, const std::string& what) {
        if (actual != want) out.violations.push_back(what + ": found " + actual.str() + ", expected " + want.str());
    }
    // pair (i,t) with i in I and t in a T component carrying the constant G
    void expect_one_sided(int i, int t, const Scalar& G, const std::string& what) {
        if (i < t) {
            expect(p.g(i, t), G, what + " g" + pair_name(i, t));
            expect(p.g(t, i), Scalar(0), what + " g" + pair_name(t, i));
        } else {
            expect(p.g(t, i), -G, what + " g" + pair_name(t, i));
            expect(p.g(i, t), Scalar(0), what + " g" + pair_name(i, t));
        }
    }
};

int below(const IndexSet& I, int t) {
    int r = 0;
    for (int i : I)
        if (i < t) r = i;
    return r;
}

int above(const IndexSet& I, int t) {
    for (int i : I)
        if (i > t) return i;
    return 0;
}

}  // namespace

FamilyIdentification identify_family(const Presentation& p, const Decomposition& dec) {
    FamilyIdentification f;
    Matcher m{p, f};
    const IndexSet& I = dec.I;

    for (int i : I) f.params["x_" + idx(i)] = p.x(i);
    for (const auto& c : dec.R_components)
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b) f.params[q_name(c[b], c[a])] = p.q(c[b], c[a]);

    if (I.size() >= 3) {
        if (!p.g(I[1], I[0]).is_zero()) {
            f.family = Family::A_I;
            Scalar g = p.g(I[0], I[1]);
            f.params["g"] = g;
            for (int i : I)
                for (int j : I)
                    if (i != j) m.expect(p.g(i, j), g, "uniform coefficient on I at g" + pair_name(i, j));
            for (int s : dec.S) {
                Scalar gs = p.g(I[0], s);
                f.params["g_" + idx(s)] = gs;
                for (int i : I) {
                    m.expect(p.g(i, s), gs, "S coefficient g" + pair_name(i, s));
                    m.expect(p.g(s, i), gs, "S coefficient g" + pair_name(s, i));
                }
            }
            for (std::size_t a = 0; a < dec.T_circ.size(); ++a) {
                const auto& c = dec.T_circ[a];
                int i0 = I[0], t0 = c[0];
                Scalar go = i0 < t0 ? p.g(i0, t0) : -p.g(t0, i0);
                f.params["go_" + idx(static_cast<int>(a + 1))] = go;
                for (int t : c)
                    for (int i : I) m.expect_one_sided(i, t, go, "T° coefficient");
            }
            for (std::size_t b = 0; b < dec.T_bullet.size(); ++b) {
                const auto& c = dec.T_bullet[b];
                int t0 = c[0];
                Scalar gp = p.g(below(I, t0), t0), gm = p.g(t0, above(I, t0));
                f.params["gp_" + idx(static_cast<int>(b + 1))] = gp;
                f.params["gm_" + idx(static_cast<int>(b + 1))] = gm;
                for (int t : c)
                    for (int i : I) m.expect_one_sided(i, t, i < t ? gp : -gm, "T• coefficient");
            }
        } else {
            f.family = Family::A_II;
            std::map<int, Scalar> gi;
            gi[I[0]] = Scalar(0);
            for (std::size_t k = 1; k < I.size(); ++k) gi[I[k]] = -p.g(I[0], I[k]);
            for (int i : I) f.params["g_" + idx(i)] = gi[i];
            for (int i : I)
                for (int j : I)
                    if (i < j) {
                        m.expect(p.g(i, j), gi[i] - gi[j], "difference coefficient g" + pair_name(i, j));
                        m.expect(p.g(j, i), Scalar(0), "vanishing coefficient g" + pair_name(j, i));
                    }
            std::set<Scalar> distinct;
            for (auto& [i, v] : gi) distinct.insert(v);
            if (distinct.size() != gi.size()) f.violations.push_back("the g_i on I are not pairwise distinct");
            if (!dec.S.empty()) f.violations.push_back("no R component may link to I in this family, found S = " + render_set(dec.S));
            for (std::size_t a = 0; a < dec.T_circ.size(); ++a) {
                const auto& c = dec.T_circ[a];
                int i0 = I[0], t0 = c[0];
                Scalar go = (i0 < t0 ? p.g(i0, t0) : -p.g(t0, i0)) - gi[i0];
                f.params["go_" + idx(static_cast<int>(a + 1))] = go;
                for (int t : c)
                    for (int i : I) m.expect_one_sided(i, t, gi[i] + go, "T° coefficient");
            }
            for (std::size_t b = 0; b < dec.T_bullet.size(); ++b) {
                const auto& c = dec.T_bullet[b];
                int t0 = c[0], ip = below(I, t0), im = above(I, t0);
                Scalar gp = p.g(ip, t0) - gi[ip], gm = p.g(t0, im) + gi[im];
                f.params["gp_" + idx(static_cast<int>(b + 1))] = gp;
                f.params["gm_" + idx(static_cast<int>(b + 1))] = gm;
                for (int t : c)
                    for (int i : I) m.expect_one_sided(i, t, i < t ? gi[i] + gp : gi[i] - gm, "T• coefficient");
            }
        }
    } else if (I.size() == 2) {
        f.family = Family::B;
        int i = I[0], j = I[1];
        Scalar g = p.g(i, j), L = p.g(i, j) - p.g(j, i);
        f.params["g"] = g;
        f.params["L"] = L;
        for (int s : dec.S) {
            Scalar gs = p.g(i, s);
            f.params["g_" + idx(s)] = gs;
            m.expect(p.g(s, i), gs - L, "S coefficient g" + pair_name(s, i));
            m.expect(p.g(s, j), gs, "S coefficient g" + pair_name(s, j));
            m.expect(p.g(j, s), gs - L, "S coefficient g" + pair_name(j, s));
        }
        for (std::size_t a = 0; a < dec.T_circ.size(); ++a) {
            const auto& c = dec.T_circ[a];
            int t0 = c[0];
            Scalar go = i < t0 ? p.g(i, t0) : -p.g(t0, i);
            f.params["go_" + idx(static_cast<int>(a + 1))] = go;
            for (int t : c) {
                m.expect_one_sided(i, t, go, "T° coefficient");
                m.expect_one_sided(j, t, go - L, "T° coefficient");
            }
        }
        for (std::size_t b = 0; b < dec.T_bullet.size(); ++b) {
            const auto& c = dec.T_bullet[b];
            Scalar gp = p.g(i, c[0]), gm = p.g(c[0], j);
            f.params["gp_" + idx(static_cast<int>(b + 1))] = gp;
            f.params["gm_" + idx(static_cast<int>(b + 1))] = gm;
            for (int t : c) {
                m.expect_one_sided(i, t, gp, "T• coefficient");
                m.expect_one_sided(j, t, -gm, "T• coefficient");
            }
        }
    } else if (I.size() == 1) {
        f.family = Family::C;
        int i = I[0];
        for (std::size_t a = 0; a < dec.R_components.size(); ++a) {
            const auto& c = dec.R_components[a];
            Scalar L = p.g(i, c[0]) - p.g(c[0], i);
            f.params["L_" + idx(static_cast<int>(a + 1))] = L;
            for (int r : c) {
                f.params["g_" + idx(r)] = p.g(i, r);
                m.expect(p.g(i, r) - p.g(r, i), L, "component difference g" + pair_name(i, r) + " - g" + pair_name(r, i));
            }
        }
    } else {
        f.family = Family::D;
    }

    if (!f.violations.empty()) f.family = Family::Inconsistent;
    return f;
}

std::optional<std::string> three_generator_case(const Decomposition& dec, Family f) {
    if (dec.I.size() + dec.R.size() != 3) return std::nullopt;
    switch (f) {
        case Family::A_I: return "A_I";
        case Family::A_II: return "A_II";
        case Family::B:
            if (!dec.S.empty()) return "B(1)";
            if (!dec.T_bullet.empty()) return "B(2)";
            return dec.R[0] == 3 ? "B(3)" : "B(4)";
        case Family::C: return dec.R_components.size() == 1 ? "C(1)" : "C(2)";
        case Family::D: return "D";
        case Family::Inconsistent: break;
    }
    return std::nullopt;
}

// ---- linear expressions ----------------------------------------------------

LinExpr LinExpr::param(const std::string& name) {
    LinExpr e;
    e.terms_.emplace_back(name, Scalar(1));
    return e;
}

void LinExpr::add(const std::string& name, const Scalar& c) {
    for (auto it = terms_.begin(); it != terms_.end(); ++it)
        if (it->first == name) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
            return;
        }
    if (!c.is_zero()) terms_.emplace_back(name, c);
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    for (const auto& [nm, c] : o.terms_) add(nm, c);
    constant_ += o.constant_;
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
    for (const auto& [nm, c] : o.terms_) add(nm, -c);
    constant_ -= o.constant_;
    return *this;
}

LinExpr LinExpr::operator-() const {
    LinExpr e;
    e -= *this;
    return e;
}

Scalar LinExpr::evaluate(const std::map<std::string, Scalar>& values) const {
    Scalar v = constant_;
    for (const auto& [nm, c] : terms_) {
        auto it = values.find(nm);
        if (it == values.end()) throw std::invalid_argument("missing parameter '" + nm + "'");
        v += c * it->second;
    }
    return v;
}

bool LinExpr::is_atom() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && constant_.is_zero() && (terms_[0].second == 1 || terms_[0].second == -1);
}

int LinExpr::leading_sign() const {
    if (terms_.empty()) return constant_.sign();
    return terms_[0].second.sign();
}

std::string LinExpr::str() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Scalar& c, const std::string& name) {
        Scalar mag = c.sign() < 0 ? -c : c;
        if (first) os << (c.sign() < 0 ? "-" : "");
        else os << (c.sign() < 0 ? " - " : " + ");
        first = false;
        if (name.empty()) os << mag;
        else if (mag.is_one()) os << name;
        else os << mag << '*' << name;
    };
    for (const auto& [nm, c] : terms_) emit(c, nm);
    if (!constant_.is_zero() || first) {
        if (first && constant_.is_zero()) return "0";
        emit(constant_, "");
    }
    return os.str();
}

// ---- templates --------------------------------------------------------------

namespace {

struct Builder {
    Template t;

    Builder(int n, Family f) {
        t.n = n;
        t.family = f;
        t.g.assign(static_cast<std::size_t>(n * n), LinExpr());
        t.x.assign(static_cast<std::size_t>(n), LinExpr());
    }
    LinExpr& G(int a, int b) { return t.g[static_cast<std::size_t>((a - 1) * t.n + (b - 1))]; }
    LinExpr P(const std::string& name) {
        if (std::find(t.params.begin(), t.params.end(), name) == t.params.end()) t.params.push_back(name);
        return LinExpr::param(name);
    }
    void nonzero(const LinExpr& e, const std::string& text) { t.restrictions.push_back({e, text}); }
    void one_sided(int i, int tt, const LinExpr& G0) {
        if (i < tt) G(i, tt) = G0;
        else G(tt, i) = -G0;
    }
};

std::string comp_tag(std::size_t a) { return std::to_string(a + 1); }

Template make_template(int n, Family fam, const IndexSet& I, const std::vector<IndexSet>& s_comps,
                       const std::vector<IndexSet>& t_circ, const std::vector<IndexSet>& t_bullet,
                       const std::vector<IndexSet>& r_comps) {
    Builder b(n, fam);
    Decomposition& d = b.t.dec;
    d.I = I;
    for (int a = 1; a <= n; ++a)
        if (!contains(I, a)) d.R.push_back(a);

    std::vector<IndexSet> comps;
    if (fam == Family::C || fam == Family::D) {
        comps = r_comps;
        if (fam == Family::C) d.S = d.R;
    } else {
        for (const auto& c : s_comps) {
            comps.push_back(c);
            d.S.insert(d.S.end(), c.begin(), c.end());
        }
        std::sort(d.S.begin(), d.S.end());
        comps.insert(comps.end(), t_circ.begin(), t_circ.end());
        comps.insert(comps.end(), t_bullet.begin(), t_bullet.end());
        d.T_circ = t_circ;
        d.T_bullet = t_bullet;
    }
    std::sort(comps.begin(), comps.end());
    d.R_components = comps;

    // family constants
    switch (fam) {
        case Family::A_I: {
            LinExpr g = b.P("g");
            b.nonzero(g, "g != 0");
            for (int i : I)
                for (int j : I)
                    if (i != j) b.G(i, j) = g;
            for (int s : d.S) {
                LinExpr gs = b.P("g_" + idx(s));
                b.nonzero(gs, "g_" + idx(s) + " != 0");
                for (int i : I) b.G(i, s) = b.G(s, i) = gs;
            }
            for (std::size_t a = 0; a < t_circ.size(); ++a) {
                std::string nm = "go_" + comp_tag(a);
                LinExpr go = b.P(nm);
                b.nonzero(go, nm + " != 0");
                for (int t : t_circ[a])
                    for (int i : I) b.one_sided(i, t, go);
            }
            for (std::size_t a = 0; a < t_bullet.size(); ++a) {
                std::string p = "gp_" + comp_tag(a), m = "gm_" + comp_tag(a);
                LinExpr gp = b.P(p), gm = b.P(m);
                b.nonzero(gp, p + " != 0");
                b.nonzero(gm, m + " != 0");
                for (int t : t_bullet[a])
                    for (int i : I) b.one_sided(i, t, i < t ? gp : -gm);
            }
            break;
        }
        case Family::A_II: {
            for (int i : I) b.P("g_" + idx(i));
            for (int i : I)
                for (int j : I)
                    if (i < j) {
                        LinExpr diff = LinExpr::param("g_" + idx(i)) - LinExpr::param("g_" + idx(j));
                        b.G(i, j) = diff;
                        b.nonzero(diff, "g_" + idx(i) + " != g_" + idx(j));
                    }
            for (std::size_t a = 0; a < t_circ.size(); ++a) {
                std::string nm = "go_" + comp_tag(a);
                LinExpr go = b.P(nm);
                for (int i : I) {
                    LinExpr gi = LinExpr::param("g_" + idx(i));
                    b.nonzero(gi + go, "g_" + idx(i) + " != -" + nm);
                    for (int t : t_circ[a]) b.one_sided(i, t, gi + go);
                }
            }
            for (std::size_t a = 0; a < t_bullet.size(); ++a) {
                std::string p = "gp_" + comp_tag(a), m = "gm_" + comp_tag(a);
                LinExpr gp = b.P(p), gm = b.P(m);
                int t0 = t_bullet[a][0];
                for (int i : I) {
                    LinExpr gi = LinExpr::param("g_" + idx(i));
                    if (i < t0) b.nonzero(gi + gp, "g_" + idx(i) + " != -" + p);
                    else b.nonzero(gm - gi, "g_" + idx(i) + " != " + m);
                    for (int t : t_bullet[a]) b.one_sided(i, t, i < t ? gi + gp : gi - gm);
                }
            }
            break;
        }
        case Family::B: {
            int i = I[0], j = I[1];
            LinExpr g = b.P("g"), L = b.P("L");
            b.nonzero(g, "g != 0");
            b.G(i, j) = g;
            b.G(j, i) = g - L;
            for (int s : d.S) {
                std::string nm = "g_" + idx(s);
                LinExpr gs = b.P(nm);
                b.nonzero(gs, nm + " != 0");
                b.nonzero(gs - L, nm + " != L");
                b.G(i, s) = gs;
                b.G(s, i) = gs - L;
                b.G(s, j) = gs;
                b.G(j, s) = gs - L;
            }
            for (std::size_t a = 0; a < t_circ.size(); ++a) {
                std::string nm = "go_" + comp_tag(a);
                LinExpr go = b.P(nm);
                b.nonzero(go, nm + " != 0");
                b.nonzero(go - L, nm + " != L");
                for (int t : t_circ[a]) {
                    b.one_sided(i, t, go);
                    b.one_sided(j, t, go - L);
                }
            }
            for (std::size_t a = 0; a < t_bullet.size(); ++a) {
                std::string p = "gp_" + comp_tag(a), m = "gm_" + comp_tag(a);
                LinExpr gp = b.P(p), gm = b.P(m);
                b.nonzero(gp, p + " != 0");
                b.nonzero(gm, m + " != 0");
                for (int t : t_bullet[a]) {
                    b.G(i, t) = gp;
                    b.G(t, j) = gm;
                }
            }
            break;
        }
        case Family::C: {
            int i = I[0];
            for (std::size_t a = 0; a < comps.size(); ++a) {
                std::string ln = "L_" + comp_tag(a);
                LinExpr L = b.P(ln);
                for (int r : comps[a]) {
                    std::string nm = "g_" + idx(r);
                    LinExpr gr = b.P(nm);
                    if (r > i) b.nonzero(gr, nm + " != 0");
                    else b.nonzero(gr - L, nm + " != " + ln);
                    b.G(i, r) = gr;
                    b.G(r, i) = gr - L;
                }
            }
            break;
        }
        case Family::D:
        case Family::Inconsistent: break;
    }

    for (int i : I) {
        std::string nm = "x_" + idx(i);
        b.t.x[static_cast<std::size_t>(i - 1)] = b.P(nm);
        b.nonzero(LinExpr::param(nm), nm + " != 0");
    }

    // relations among R
    std::map<int, std::size_t> comp_of;
    for (std::size_t a = 0; a < comps.size(); ++a)
        for (int r : comps[a]) comp_of[r] = a;
    for (int r1 : d.R)
        for (int r2 : d.R) {
            if (r1 >= r2) continue;
            b.G(r1, r2) = LinExpr(1);
            if (comp_of[r1] == comp_of[r2]) {
                std::string nm = q_name(r2, r1);
                b.G(r2, r1) = b.P(nm);
                b.nonzero(LinExpr::param(nm), nm + " != 0");
            }
        }
    return b.t;
}

void set_partitions(const IndexSet& items, const std::function<void(const std::vector<IndexSet>&)>& emit) {
    std::vector<IndexSet> blocks;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == items.size()) {
            emit(blocks);
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(items[k]);
            rec(k + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({items[k]});
        rec(k + 1);
        blocks.pop_back();
    };
    rec(0);
}

void subsets_of_size(int n, int k, const std::function<void(const IndexSet&)>& emit) {
    IndexSet cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            emit(cur);
            return;
        }
        for (int a = start; a <= n; ++a) {
            cur.push_back(a);
            rec(a + 1);
            cur.pop_back();
        }
    };
    rec(1);
}

// splits T into T° and T• blocks
std::pair<std::vector<IndexSet>, std::vector<IndexSet>> tag_blocks(const std::vector<IndexSet>& blocks, const IndexSet& I) {
    std::vector<IndexSet> circ, bullet;
    for (const auto& blk : blocks) (inside_gap(blk, I) ? bullet : circ).push_back(blk);
    std::sort(circ.begin(), circ.end());
    std::sort(bullet.begin(), bullet.end());
    return {circ, bullet};
}

// one T° block with everything outside the gaps, one T• block per gap
std::vector<IndexSet> paper_blocks(const IndexSet& T, const IndexSet& I) {
    std::vector<IndexSet> blocks;
    IndexSet outside;
    std::map<int, IndexSet> per_gap;
    for (int t : T) {
        int lo = below(I, t), hi = above(I, t);
        if (lo && hi) per_gap[lo].push_back(t);
        else outside.push_back(t);
    }
    if (!outside.empty()) blocks.push_back(outside);
    for (auto& [lo, blk] : per_gap) blocks.push_back(blk);
    return blocks;
}

int family_rank(Family f) { return static_cast<int>(f); }

auto sort_key(const Template& t) {
    return std::make_tuple(family_rank(t.family), -static_cast<int>(t.dec.I.size()), t.dec.I, t.dec.S, t.dec.T_circ,
                           t.dec.T_bullet, t.dec.R_components);
}

std::vector<Template> three_generator_cases() {
    std::vector<Template> out;
    auto add = [&](Template t, const std::string& label) {
        t.label = label;
        out.push_back(std::move(t));
    };
    add(make_template(3, Family::A_I, {1, 2, 3}, {}, {}, {}, {}), "A_I");
    add(make_template(3, Family::A_II, {1, 2, 3}, {}, {}, {}, {}), "A_II");
    add(make_template(3, Family::B, {1, 3}, {{2}}, {}, {}, {}), "B(1)");
    add(make_template(3, Family::B, {1, 3}, {}, {}, {{2}}, {}), "B(2)");
    add(make_template(3, Family::B, {1, 2}, {}, {{3}}, {}, {}), "B(3)");
    add(make_template(3, Family::B, {2, 3}, {}, {{1}}, {}, {}), "B(4)");
    add(make_template(3, Family::C, {1}, {}, {}, {}, {{2, 3}}), "C(1)");
    add(make_template(3, Family::C, {1}, {}, {}, {}, {{2}, {3}}), "C(2)");
    add(make_template(3, Family::D, {}, {}, {}, {}, {{1, 2, 3}}), "D");
    return out;
}

}  // namespace

std::vector<Template> generate_templates(int n, TableMode mode) {
    if (n < 3) throw std::invalid_argument("template enumeration needs n >= 3");
    if (n > 8) throw std::invalid_argument("template enumeration is limited to n <= 8");
    if (mode == TableMode::paper && n == 3) return three_generator_cases();

    std::vector<Template> out;
    IndexSet all;
    for (int a = 1; a <= n; ++a) all.push_back(a);

    for (int k = n; k >= 2; --k) {
        subsets_of_size(n, k, [&](const IndexSet& I) {
            IndexSet R;
            for (int a : all)
                if (!contains(I, a)) R.push_back(a);
            Family fam = k >= 3 ? Family::A_I : Family::B;
            std::size_t masks = std::size_t{1} << R.size();
            for (std::size_t mask = 0; mask < masks; ++mask) {
                IndexSet S, T;
                for (std::size_t e = 0; e < R.size(); ++e) (mask >> e & 1 ? T : S).push_back(R[e]);
                if (mode == TableMode::paper) {
                    if (fam == Family::A_I && S.empty()) continue;
                    auto [circ, bullet] = tag_blocks(paper_blocks(T, I), I);
                    std::vector<IndexSet> scomps;
                    if (!S.empty()) scomps.push_back(S);
                    out.push_back(make_template(n, fam, I, scomps, circ, bullet, {}));
                } else {
                    set_partitions(S, [&](const std::vector<IndexSet>& sblocks) {
                        set_partitions(T, [&](const std::vector<IndexSet>& tblocks) {
                            auto [circ, bullet] = tag_blocks(tblocks, I);
                            out.push_back(make_template(n, fam, I, sblocks, circ, bullet, {}));
                        });
                    });
                }
            }
            if (k >= 3) {
                if (mode == TableMode::paper) {
                    auto [circ, bullet] = tag_blocks(paper_blocks(R, I), I);
                    out.push_back(make_template(n, Family::A_II, I, {}, circ, bullet, {}));
                } else {
                    set_partitions(R, [&](const std::vector<IndexSet>& tblocks) {
                        auto [circ, bullet] = tag_blocks(tblocks, I);
                        out.push_back(make_template(n, Family::A_II, I, {}, circ, bullet, {}));
                    });
                }
            }
        });
    }
    for (int i = 1; i <= n; ++i) {
        IndexSet R;
        for (int a : all)
            if (a != i) R.push_back(a);
        if (mode == TableMode::paper) out.push_back(make_template(n, Family::C, {i}, {}, {}, {}, {R}));
        else
            set_partitions(R, [&](const std::vector<IndexSet>& blocks) {
                out.push_back(make_template(n, Family::C, {i}, {}, {}, {}, blocks));
            });
    }
    if (mode == TableMode::paper) out.push_back(make_template(n, Family::D, {}, {}, {}, {}, {all}));
    else
        set_partitions(all, [&](const std::vector<IndexSet>& blocks) {
            out.push_back(make_template(n, Family::D, {}, {}, {}, {}, blocks));
        });

    std::stable_sort(out.begin(), out.end(), [](const Template& a, const Template& b) { return sort_key(a) < sort_key(b); });
    if (n == 3)
        for (auto& t : out) t.label = three_generator_case(t.dec, t.family).value_or("");
    return out;
}

Presentation instantiate_template(const Template& t, const std::map<std::string, Scalar>& params) {
    for (const auto& [nm, v] : params)
        if (std::find(t.params.begin(), t.params.end(), nm) == t.params.end())
            throw std::invalid_argument("unknown parameter '" + nm + "'");
    for (const auto& nm : t.params)
        if (!params.count(nm)) throw std::invalid_argument("missing parameter '" + nm + "'");
    for (const auto& r : t.restrictions)
        if (r.expr.evaluate(params).is_zero()) throw RestrictionError("restriction violated: " + r.text);

    Presentation p(t.n);
    for (int a = 1; a <= t.n; ++a) {
        p.set_x(a, t.x[static_cast<std::size_t>(a - 1)].evaluate(params));
        for (int b = 1; b <= t.n; ++b)
            if (a != b) p.set_g(a, b, t.g_at(a, b).evaluate(params));
    }
    for (int a = 1; a <= t.n; ++a)
        for (int b = a + 1; b <= t.n; ++b)
            if (p.g(a, b).is_zero()) throw RestrictionError("restriction violated: leading coefficient g" + pair_name(a, b) + " vanishes");
    return p;
}

// ---- rendering --------------------------------------------------------------

std::string render_set(const IndexSet& s) {
    if (s.empty()) return "-";
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + idx(s[k]);
    return out + "}";
}

std::string render_sets(const std::vector<IndexSet>& ss) {
    if (ss.empty()) return "-";
    std::string out;
    for (std::size_t k = 0; k < ss.size(); ++k) out += (k ? " " : "") + render_set(ss[k]);
    return out;
}

namespace {

// sign * e * mono, formatted as the next term of a sum
std::string sym_term(const LinExpr& e, const std::string& mono, bool first, int sign) {
    LinExpr v = sign < 0 ? -e : e;
    bool neg = false;
    std::string body;
    if (v.is_atom()) {
        neg = v.leading_sign() < 0;
        LinExpr mag = neg ? -v : v;
        body = mag.str() == "1" ? "" : mag.str();
    } else {
        body = "(" + v.str() + ")";
    }
    std::string out = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    return out + (body.empty() ? mono : body + " * " + mono);
}

std::string sym_sum(const std::vector<std::pair<LinExpr, std::string>>& terms) {
    std::string out;
    bool first = true;
    for (const auto& [e, mono] : terms) {
        if (e.is_zero()) continue;
        out += sym_term(e, mono, first, 1);
        first = false;
    }
    return first ? "0" : out;
}

}  // namespace

std::string render_relation(const Template& t, int p, int q) {
    std::string dp = "D" + idx(p), dq = "D" + idx(q);
    std::string lhs = sym_sum({{t.g_at(p, q), dp + " " + dq}, {-t.g_at(q, p), dq + " " + dp}});
    std::string rhs = sym_sum({{t.x[static_cast<std::size_t>(q - 1)], dp}, {-t.x[static_cast<std::size_t>(p - 1)], dq}});
    return lhs + " = " + rhs;
}

std::string render_template(const Template& t) {
    std::ostringstream os;
    os << "family: " << to_string(t.family) << '\n';
    if (!t.label.empty()) os << "case: " << t.label << '\n';
    os << "I: " << render_set(t.dec.I) << '\n';
    os << "S: " << render_set(t.dec.S) << '\n';
    os << "Tcirc: " << render_sets(t.dec.T_circ) << '\n';
    os << "Tbullet: " << render_sets(t.dec.T_bullet) << '\n';
    os << "R: " << render_sets(t.dec.R_components) << '\n';
    os << "params:";
    for (const auto& nm : t.params) os << ' ' << nm;
    os << '\n' << "restrictions:";
    for (std::size_t k = 0; k < t.restrictions.size(); ++k) os << (k ? "; " : " ") << t.restrictions[k].text;
    os << '\n';
    for (int p = 1; p <= t.n; ++p)
        for (int q = p + 1; q <= t.n; ++q) os << "relation: " << render_relation(t, p, q) << '\n';
    return os.str();
}

std::string render_templates(const std::vector<Template>& ts) {
    std::ostringstream os;
    os << "templates: " << ts.size() << '\n';
    for (std::size_t k = 0; k < ts.size(); ++k) os << "\n# " << (k + 1) << '\n' << render_template(ts[k]);
    return os.str();
}

}  // namespace dalg
