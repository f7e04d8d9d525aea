#include "matchdist/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace matchdist::io {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

/// Non-empty lines with comments removed; ';' becomes a standalone token.
std::vector<Line> tokenize(std::istream& in)
{
    std::vector<Line> lines;
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
        std::string spaced;
        spaced.reserve(text.size() + 4);
        for (char c : text) {
            if (c == ';') {
                spaced += " ; ";
            } else {
                spaced += c;
            }
        }
        std::istringstream ls(spaced);
        Line line{number, {}};
        for (std::string tok; ls >> tok;) line.tokens.push_back(std::move(tok));
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what)
{
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_count(const std::string& tok, std::size_t line)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        parse_fail(line, "expected a non-negative integer, got '" + tok + "'");
    return v;
}

VertexId parse_vertex(const std::string& tok, std::size_t line)
{
    std::uint64_t v = parse_count(tok, line);
    if (v > std::numeric_limits<VertexId>::max()) parse_fail(line, "vertex id out of range: " + tok);
    return static_cast<VertexId>(v);
}

double parse_real(const std::string& tok, std::size_t line)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        parse_fail(line, "expected a real number, got '" + tok + "'");
    return v;
}

BiFiltration parse_bifiltration_body(const std::vector<Line>& lines)
{
    if (lines.size() < 2 || lines[1].tokens.size() != 1) parse_fail(lines[0].number, "missing simplex count");
    std::uint64_t n = parse_count(lines[1].tokens[0], lines[1].number);
    if (lines.size() - 2 != n)
        parse_fail(lines[1].number, "declared " + std::to_string(n) + " simplices, found " +
                                        std::to_string(lines.size() - 2));
    std::vector<RawSimplex> raw;
    raw.reserve(n);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const Line& l = lines[i];
        RawSimplex r;
        std::size_t k = 0;
        for (; k < l.tokens.size() && l.tokens[k] != ";"; ++k) r.vertices.push_back(parse_vertex(l.tokens[k], l.number));
        if (k == l.tokens.size()) parse_fail(l.number, "missing ';' between vertices and critical values");
        if (r.vertices.empty()) parse_fail(l.number, "simplex without vertices");
        std::size_t coords = l.tokens.size() - k - 1;
        if (coords == 0 || coords % 2 != 0) parse_fail(l.number, "critical values must be (x, y) pairs");
        for (std::size_t j = k + 1; j < l.tokens.size(); j += 2)
            r.critical.push_back({parse_real(l.tokens[j], l.number), parse_real(l.tokens[j + 1], l.number)});
        raw.push_back(std::move(r));
    }
    return validate_bifiltration(std::move(raw));
}

BiFiltration parse_lowerstar_body(const std::vector<Line>& lines)
{
    if (lines.size() < 2 || lines[1].tokens.size() != 2) parse_fail(lines[0].number, "missing '<n_vertices> <n_simplices>'");
    std::uint64_t nv = parse_count(lines[1].tokens[0], lines[1].number);
    std::uint64_t ns = parse_count(lines[1].tokens[1], lines[1].number);
    if (lines.size() - 2 != nv + ns)
        parse_fail(lines[1].number, "declared " + std::to_string(nv + ns) + " data lines, found " +
                                        std::to_string(lines.size() - 2));
    std::vector<Point2> values;
    values.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        const Line& l = lines[2 + i];
        if (l.tokens.size() != 2) parse_fail(l.number, "vertex value must be 'x y'");
        values.push_back({parse_real(l.tokens[0], l.number), parse_real(l.tokens[1], l.number)});
    }
    std::vector<std::vector<VertexId>> simplices;
    simplices.reserve(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        const Line& l = lines[2 + nv + i];
        std::vector<VertexId> verts;
        for (const std::string& tok : l.tokens) verts.push_back(parse_vertex(tok, l.number));
        simplices.push_back(std::move(verts));
    }
    return lower_star(simplices, values);
}

}  // namespace

BiFiltration read_bifiltration(std::istream& in)
{
    std::vector<Line> lines = tokenize(in);
    if (lines.empty()) fail(ErrorCode::ParseError, "empty input");
    const Line& head = lines.front();
    if (head.tokens.size() != 1) parse_fail(head.number, "expected a format keyword");
    if (head.tokens[0] == "bifiltration") return parse_bifiltration_body(lines);
    if (head.tokens[0] == "lowerstar") return parse_lowerstar_body(lines);
    parse_fail(head.number, "unknown format '" + head.tokens[0] + "'");
}

BiFiltration read_bifiltration_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
    try {
        return read_bifiltration(in);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + std::string(e.what()));
    }
}

BiFiltration parse_bifiltration(const std::string& text)
{
    std::istringstream in(text);
    return read_bifiltration(in);
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_bifiltration(std::ostream& out, const BiFiltration& f)
{
    out << "bifiltration\n" << f.size() << '\n';
    const SimplicialComplex& k = f.complex();
    for (std::size_t i = 0; i < f.size(); ++i) {
        bool first = true;
        for (VertexId v : k.simplex(i).vertices()) {
            if (!first) out << ' ';
            out << v;
            first = false;
        }
        out << " ;";
        for (const Point2& p : f.critical(i).points()) out << ' ' << format_double(p.x) << ' ' << format_double(p.y);
        out << '\n';
    }
}

void write_bifiltration_file(const std::filesystem::path& path, const BiFiltration& f)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
    write_bifiltration(out, f);
    if (!out) fail(ErrorCode::IoError, "write failed: " + path.string());
}

}  // namespace matchdist::io
