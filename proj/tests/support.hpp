#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dalg/smoothness.hpp"

#ifndef DALG_TEST_DIR
#error "DALG_TEST_DIR must point at the tests directory"
#endif

namespace dalg::test {

inline std::string test_path(const std::string& rel) { return std::string(DALG_TEST_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Presentation data(const std::string& name) { return load_presentation(test_path("data/" + name)); }

inline Scalar random_scalar(std::mt19937& rng, int range = 5) {
    std::uniform_int_distribution<int> num(-range, range), den(1, 3);
    return Scalar(num(rng), den(rng));
}

inline Scalar random_nonzero(std::mt19937& rng, int range = 5) {
    Scalar s;
    do s = random_scalar(rng, range);
    while (s.is_zero());
    return s;
}

// Admissible instantiation by rejection; throws after too many attempts.
inline std::pair<Presentation, std::map<std::string, Scalar>> random_instance(const Template& t, std::mt19937& rng) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::map<std::string, Scalar> params;
        for (const auto& name : t.params) params[name] = random_scalar(rng);
        try {
            return {instantiate_template(t, params), params};
        } catch (const RestrictionError&) {
        }
    }
    throw std::runtime_error("no admissible instantiation for " + t.label);
}

inline Poly P(const Presentation& p, const std::string& expr) { return Algebra(p).evaluate(parse_expression(expr, p.n())); }

inline Monomial mono(std::initializer_list<int> exps) {
    Monomial m(static_cast<int>(exps.size()));
    int a = 1;
    for (int e : exps) m[a++] = e;
    return m;
}

inline Poly random_poly(int n, std::mt19937& rng, int max_degree, int terms) {
    Poly p(n);
    auto monos = monomials_up_to(n, max_degree);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    for (int k = 0; k < terms; ++k) p.add(monos[pick(rng)], random_nonzero(rng));
    return p;
}

// golden files carry "## " commentary lines
inline std::string strip_commentary(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.rfind("## ", 0) != 0) out += line + "\n";
    return out;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(' '), e = s.find_last_not_of(' ');
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// family, I, S, Tcirc, Tbullet, R
using TableRow = std::tuple<std::string, std::string, std::string, std::string, std::string, std::string>;

inline TableRow row_of(const Template& t) {
    return {to_string(t.family), render_set(t.dec.I), render_set(t.dec.S), render_sets(t.dec.T_circ), render_sets(t.dec.T_bullet),
            render_set(t.dec.R)};
}

inline std::multiset<TableRow> reference_rows_4() {
    std::multiset<TableRow> rows;
    std::istringstream in(read_file(test_path("data/paper_rows_4.txt")));
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, '|');) cols.push_back(trim(c));
        if (cols.size() != 6) throw std::runtime_error("malformed row: " + line);
        rows.insert({cols[0], cols[1], cols[2], cols[3], cols[4], cols[5]});
    }
    return rows;
}

// blank-line separated template records
inline std::vector<std::string> spot_records_5() {
    std::string golden = strip_commentary(read_file(test_path("golden/tables_5_spot.txt")));
    std::vector<std::string> records;
    std::size_t start = 0;
    while (start < golden.size()) {
        auto end = golden.find("\n\n", start);
        if (end == std::string::npos) end = golden.size() - 1;
        records.push_back(golden.substr(start, end - start + 1));
        start = end + 2;
    }
    return records;
}

}  // namespace dalg::test
