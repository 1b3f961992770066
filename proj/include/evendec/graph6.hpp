#pragma once

// graph6 words and a small edge-list text format.
//
// graph6 is the standard 6-bit printable encoding: a size header (one byte
// n+63 for n <= 62, or '~' followed by three bytes carrying 18 bits for
// 63 <= n <= 64 here), then the upper triangle of the adjacency matrix in
// column order, packed six bits per byte, MSB first, zero padded. Parsing is
// strict: padding bits must be zero and trailing bytes are rejected, so
// emit(parse(w)) == w for every accepted word.

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include "evendec/graph.hpp"

namespace evendec {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void parse_fail(std::string_view what, std::size_t offset) {
    throw ParseError("graph parse error at byte " + std::to_string(offset) + ": " + std::string(what));
}

inline int g6_byte(std::string_view text, std::size_t offset) {
    if (offset >= text.size()) parse_fail("unexpected end of input", offset);
    unsigned char c = static_cast<unsigned char>(text[offset]);
    if (c < 63 || c > 126) parse_fail("byte out of graph6 range 63..126", offset);
    return c - 63;
}

} // namespace detail

inline Graph parse_graph6(std::string_view text) {
    std::size_t pos = 0;
    long n;
    if (!text.empty() && text[0] == '~') {
        if (text.size() >= 2 && text[1] == '~')
            detail::parse_fail("8-byte size header exceeds the 64-vertex cap", 1);
        long hi = detail::g6_byte(text, 1);
        long mid = detail::g6_byte(text, 2);
        long lo = detail::g6_byte(text, 3);
        n = (hi << 12) | (mid << 6) | lo;
        pos = 4;
    } else {
        n = detail::g6_byte(text, 0);
        pos = 1;
    }
    if (n > kMaxVertices) detail::parse_fail("vertex count exceeds 64", 0);
    Graph g(static_cast<int>(n));
    long nbits = n * (n - 1) / 2;
    int acc = 0, have = 0;
    long k = 0;
    for (int col = 1; col < n; ++col) {
        for (int row = 0; row < col; ++row, ++k) {
            if (have == 0) {
                acc = detail::g6_byte(text, pos);
                ++pos;
                have = 6;
            }
            if ((acc >> (have - 1)) & 1) g.add_edge(row, col);
            --have;
        }
    }
    (void)nbits;
    if (have > 0 && (acc & ((1 << have) - 1)) != 0)
        detail::parse_fail("nonzero padding bits", pos - 1);
    if (pos != text.size()) detail::parse_fail("trailing garbage", pos);
    return g;
}

inline std::string emit_graph6(const Graph& g) {
    int n = g.vertex_count();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0, have = 0;
    for (int col = 1; col < n; ++col) {
        for (int row = 0; row < col; ++row) {
            acc = (acc << 1) | (g.has_edge(row, col) ? 1 : 0);
            if (++have == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                have = 0;
            }
        }
    }
    if (have > 0) out.push_back(static_cast<char>((acc << (6 - have)) + 63));
    return out;
}

// Edge-list text: first line the vertex count, then one "u v" pair per line.
// Duplicate edges are idempotent; blank lines are skipped.
inline Graph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    long lineno = 0;
    long n = -1;
    Graph g;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string tok;
        if (!(fields >> tok)) continue; // blank line
        auto parse_int = [&](const std::string& t) -> long {
            std::size_t used = 0;
            long value = 0;
            try {
                value = std::stol(t, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != t.size())
                throw ParseError("edge list line " + std::to_string(lineno) + ": non-numeric token '" + t + "'");
            return value;
        };
        if (n < 0) {
            n = parse_int(tok);
            if (n < 0 || n > kMaxVertices)
                throw ParseError("edge list line 1: vertex count out of range [0, 64]");
            g = Graph(static_cast<int>(n));
            if (fields >> tok)
                throw ParseError("edge list line 1: expected a single vertex count");
            continue;
        }
        long u = parse_int(tok);
        if (!(fields >> tok))
            throw ParseError("edge list line " + std::to_string(lineno) + ": missing second endpoint");
        long v = parse_int(tok);
        if (fields >> tok)
            throw ParseError("edge list line " + std::to_string(lineno) + ": extra token '" + tok + "'");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("edge list line " + std::to_string(lineno) + ": vertex out of range");
        if (u == v)
            throw ParseError("edge list line " + std::to_string(lineno) + ": self-loop");
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    if (n < 0) throw ParseError("edge list: missing vertex count line");
    return g;
}

inline std::string emit_edge_list(const Graph& g) {
    std::string out = std::to_string(g.vertex_count());
    out.push_back('\n');
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v : g.neighbors(u))
            if (u < v) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

} // namespace evendec
