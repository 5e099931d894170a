#pragma once

// PACE 2020 treedepth formats: `p tdp n m` graphs with 1-based edges, and
// solutions given as the depth followed by one parent per line (0 = root).

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "forest.hpp"
#include "graph.hpp"

namespace treedepth {

class PaceFormatError : public std::runtime_error {
public:
    PaceFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what) {}
};

namespace detail {

/// Non-empty, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(const std::string& text) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::istringstream in(text);
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == 'c') continue;
        out.emplace_back(no, line);
    }
    return out;
}

/// Parses exactly `count` integers from the line and nothing else.
inline std::vector<long long> integers(const std::pair<std::size_t, std::string>& line, std::size_t count) {
    std::istringstream in(line.second);
    std::vector<long long> out;
    long long x;
    while (in >> x) out.push_back(x);
    if (!in.eof() || out.size() != count)
        throw PaceFormatError(line.first, "expected " + std::to_string(count) + " integer(s)");
    return out;
}

}  // namespace detail

inline Graph parse_pace_graph(const std::string& text) {
    auto lines = detail::content_lines(text);
    if (lines.empty()) throw PaceFormatError(0, "missing header `p tdp <n> <m>`");
    std::istringstream header(lines[0].second);
    std::string p, tdp, extra;
    long long n = -1, m = -1;
    if (!(header >> p >> tdp >> n >> m) || p != "p" || tdp != "tdp" || (header >> extra) || n < 0 || m < 0)
        throw PaceFormatError(lines[0].first, "malformed header, expected `p tdp <n> <m>`");
    if (n > (1LL << 30)) throw PaceFormatError(lines[0].first, "vertex count too large");
    if (static_cast<long long>(lines.size()) - 1 != m)
        throw PaceFormatError(lines.back().first, "header announces " + std::to_string(m) + " edges, found " +
                                                      std::to_string(lines.size() - 1));
    std::vector<edge_t> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto e = detail::integers(lines[i], 2);
        if (e[0] < 1 || e[0] > n || e[1] < 1 || e[1] > n)
            throw PaceFormatError(lines[i].first, "vertex index out of range 1.." + std::to_string(n));
        edges.emplace_back(static_cast<vertex_t>(e[0] - 1), static_cast<vertex_t>(e[1] - 1));
    }
    try {
        return Graph(static_cast<int>(n), edges);
    } catch (const std::invalid_argument& err) {
        throw PaceFormatError(0, err.what());
    }
}

inline std::string emit_pace_forest(const RootedForest& f) {
    std::string out = std::to_string(f.max_depth()) + "\n";
    for (vertex_t v = 0; v < f.size(); ++v) out += std::to_string(f.parent(v) + 1) + "\n";
    return out;
}

/// Reads a solution for an n-vertex graph. The announced depth is checked
/// against the forest.
inline RootedForest parse_pace_forest(const std::string& text, int n) {
    auto lines = detail::content_lines(text);
    if (lines.empty()) throw PaceFormatError(0, "missing depth line");
    long long depth = detail::integers(lines[0], 1)[0];
    if (static_cast<long long>(lines.size()) - 1 != n)
        throw PaceFormatError(lines.back().first, "expected " + std::to_string(n) + " parent lines");
    std::vector<vertex_t> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        long long p = detail::integers(lines[i + 1], 1)[0];
        if (p < 0 || p > n) throw PaceFormatError(lines[i + 1].first, "parent index out of range");
        parent[i] = static_cast<vertex_t>(p - 1);
    }
    RootedForest f;
    try {
        f = RootedForest(std::move(parent));
    } catch (const std::invalid_argument& err) {
        throw PaceFormatError(0, err.what());
    }
    if (f.max_depth() != depth)
        throw PaceFormatError(lines[0].first, "announced depth " + std::to_string(depth) + " but the forest has depth " +
                                                  std::to_string(f.max_depth()));
    return f;
}

}  // namespace treedepth
