#include "dalg/presentation.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

namespace dalg {

Presentation::Presentation(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("generator count must be positive");
    g_.assign(static_cast<std::size_t>(n * n), Scalar(0));
    x_.assign(static_cast<std::size_t>(n), Scalar(0));
}

ParseError::ParseError(int line, int column, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;
    int line = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    int col() const { return static_cast<int>(pos) + 1; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col(), msg); }

    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    long integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected integer");
        if (pos - start > 9) {
            pos = start;
            fail("integer too large");
        }
        return std::stol(std::string(s.substr(start, pos - start)));
    }
    Scalar rational() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && s[pos] == '-') ++pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
        try {
            return Scalar::parse(s.substr(start, pos - start));
        } catch (const std::exception& e) {
            pos = start;
            fail(e.what());
        }
    }
};

struct Assignment {
    int line, col;
    long i, j;
    Scalar value;
};

}  // namespace

Presentation parse_presentation(std::string_view text) {
    std::optional<long> n;
    int n_line = 0;
    std::vector<Assignment> gs, xs;

    std::size_t start = 0;
    int lineno = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        Cursor c{line, 0, lineno};
        if (!c.done()) {
            char head = line[c.pos];
            int col = c.col();
            ++c.pos;
            if (head == 'n') {
                c.expect('=');
                long v = c.integer();
                if (n) throw ParseError(lineno, col, "duplicate assignment of n");
                n = v;
                n_line = lineno;
            } else if (head == 'g') {
                long i = c.integer(), j = c.integer();
                c.expect('=');
                gs.push_back({lineno, col, i, j, c.rational()});
            } else if (head == 'x') {
                long i = c.integer();
                c.expect('=');
                xs.push_back({lineno, col, i, 0, c.rational()});
            } else {
                c.pos = static_cast<std::size_t>(col - 1);
                c.fail(std::string("unknown statement '") + head + "'");
            }
            if (!c.done()) c.fail("trailing characters");
        }
        if (end == text.size()) break;
        start = end + 1;
    }

    if (!n) throw ParseError(lineno, 1, "missing generator count 'n = ...'");
    if (*n < 1 || *n > 64) throw ParseError(n_line, 1, "generator count out of range");
    Presentation p(static_cast<int>(*n));

    std::map<std::pair<long, long>, int> seen;
    auto in_range = [&](long k) { return k >= 1 && k <= *n; };
    for (const auto& a : gs) {
        if (!in_range(a.i) || !in_range(a.j) || a.i == a.j)
            throw ParseError(a.line, a.col, "index out of range in g " + std::to_string(a.i) + " " + std::to_string(a.j));
        if (!seen.emplace(std::pair{a.i, a.j}, a.line).second)
            throw ParseError(a.line, a.col, "duplicate assignment of g " + std::to_string(a.i) + " " + std::to_string(a.j));
        if (a.i < a.j && a.value.is_zero())
            throw ParseError(a.line, a.col, "zero leading coefficient g " + std::to_string(a.i) + " " + std::to_string(a.j));
        p.set_g(static_cast<int>(a.i), static_cast<int>(a.j), a.value);
    }
    for (const auto& a : xs) {
        if (!in_range(a.i)) throw ParseError(a.line, a.col, "index out of range in x " + std::to_string(a.i));
        if (!seen.emplace(std::pair{a.i, 0L}, a.line).second)
            throw ParseError(a.line, a.col, "duplicate assignment of x " + std::to_string(a.i));
        p.set_x(static_cast<int>(a.i), a.value);
    }
    return p;
}

Presentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

std::string render_presentation(const Presentation& p) {
    std::ostringstream os;
    os << "n = " << p.n() << '\n';
    for (int j = 2; j <= p.n(); ++j)
        for (int i = 1; i < j; ++i) {
            os << "g " << i << ' ' << j << " = " << p.g(i, j) << '\n';
            if (!p.g(j, i).is_zero()) os << "g " << j << ' ' << i << " = " << p.g(j, i) << '\n';
        }
    for (int i = 1; i <= p.n(); ++i)
        if (!p.x(i).is_zero()) os << "x " << i << " = " << p.x(i) << '\n';
    return os.str();
}

std::vector<std::string> validate_presentation(const Presentation& p) {
    std::vector<std::string> out;
    if (p.n() < 2) out.push_back("degenerate generator count n = " + std::to_string(p.n()));
    for (int i = 1; i <= p.n(); ++i)
        for (int j = i + 1; j <= p.n(); ++j)
            if (p.g(i, j).is_zero())
                out.push_back("zero leading coefficient for pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return out;
}

}  // namespace dalg
