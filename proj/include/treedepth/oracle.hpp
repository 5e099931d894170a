#pragma once

// Test-side ground truth: exponential brute force and instance generators.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "forest.hpp"
#include "graph.hpp"

namespace treedepth::oracle {

/// Treedepth by recursion over vertex subsets, memoised in a 2^n table.
inline int brute_td(const Graph& g) {
    const int n = g.n();
    if (n > 20) throw std::invalid_argument("brute_td supports at most 20 vertices");
    std::vector<std::uint32_t> nb(static_cast<std::size_t>(n), 0);
    for (vertex_t v = 0; v < n; ++v)
        for (vertex_t w : g.neighbors(v)) nb[v] |= 1u << w;
    std::vector<std::int8_t> memo(std::size_t{1} << n, -1);
    memo[0] = 0;

    auto component_of = [&](std::uint32_t set, int start) {
        std::uint32_t comp = 1u << start, frontier = comp;
        while (frontier) {
            int v = __builtin_ctz(frontier);
            frontier &= frontier - 1;
            std::uint32_t add = nb[v] & set & ~comp;
            comp |= add;
            frontier |= add;
        }
        return comp;
    };

    auto solve = [&](auto&& self, std::uint32_t set) -> int {
        if (memo[set] >= 0) return memo[set];
        std::uint32_t comp = component_of(set, __builtin_ctz(set));
        int best;
        if (comp != set) {
            best = 0;
            for (std::uint32_t rest = set; rest;) {
                std::uint32_t c = component_of(rest, __builtin_ctz(rest));
                best = std::max(best, self(self, c));
                rest &= ~c;
            }
        } else {
            best = n + 1;
            for (std::uint32_t s = set; s; s &= s - 1) {
                int v = __builtin_ctz(s);
                best = std::min(best, 1 + self(self, set & ~(1u << v)));
            }
        }
        memo[set] = static_cast<std::int8_t>(best);
        return best;
    };
    return n == 0 ? 0 : solve(solve, (n == 32 ? 0u : (1u << n)) - 1u);
}

/// Calls fn(parent_array) for every rooted forest on n labelled vertices.
template <class Fn>
void for_each_parent_array(int n, Fn&& fn) {
    std::vector<vertex_t> parent(static_cast<std::size_t>(n), -1);
    auto acyclic = [&]() {
        for (vertex_t v = 0; v < n; ++v) {
            int steps = 0;
            for (vertex_t x = v; x != -1; x = parent[x])
                if (++steps > n) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            if (acyclic()) fn(parent);
            return;
        }
        for (vertex_t p = -1; p < n; ++p) {
            if (p == v) continue;
            parent[v] = p;
            self(self, v + 1);
        }
    };
    rec(rec, 0);
}

/// Number of elimination trees of a connected graph (labelled by their parent
/// function) of depth <= d that are sensible with respect to t.
inline std::uint64_t brute_count_sensible(const Graph& g, const RootedForest& t, int d) {
    const int n = g.n();
    if (n > 7) throw std::invalid_argument("brute_count_sensible supports at most 7 vertices");
    std::uint64_t count = 0;
    for_each_parent_array(n, [&](const std::vector<vertex_t>& parent) {
        if (std::count(parent.begin(), parent.end(), -1) != 1) return;
        RootedForest r(parent);
        if (validate_elimination_forest(g, r, d) && check_sensible(g, t, r)) ++count;
    });
    return count;
}

/// Per-vertex count of sensible elimination trees rooted at that vertex.
inline std::vector<std::uint64_t> brute_count_sensible_by_root(const Graph& g, const RootedForest& t, int d) {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(g.n()), 0);
    for_each_parent_array(g.n(), [&](const std::vector<vertex_t>& parent) {
        if (std::count(parent.begin(), parent.end(), -1) != 1) return;
        RootedForest r(parent);
        if (validate_elimination_forest(g, r, d) && check_sensible(g, t, r))
            ++out[static_cast<std::size_t>(std::find(parent.begin(), parent.end(), -1) - parent.begin())];
    });
    return out;
}

// ---------------------------------------------------------------------------
// Generators.

inline Graph path(int n) {
    std::vector<edge_t> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

inline Graph cycle(int n) {
    std::vector<edge_t> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    if (n >= 3) e.emplace_back(0, n - 1);
    return Graph(n, e);
}

inline Graph clique(int n) {
    std::vector<edge_t> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, e);
}

inline Graph star(int leaves) {
    std::vector<edge_t> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph(leaves + 1, e);
}

/// K_{a,b}: vertices 0..a-1 on one side, a..a+b-1 on the other.
inline Graph complete_bipartite(int a, int b) {
    std::vector<edge_t> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return Graph(a + b, e);
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    auto e = a.edges();
    for (auto [u, v] : b.edges()) e.emplace_back(u + a.n(), v + a.n());
    return Graph(a.n() + b.n(), e);
}

/// Uniform graph with n vertices and m distinct edges (m is clamped to the
/// number of available pairs).
inline Graph random_gnm(int n, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2;
    m = std::min(m, pairs);
    std::set<edge_t> chosen;
    std::uniform_int_distribution<int> pick(0, std::max(n - 1, 0));
    while (chosen.size() < m) {
        int u = pick(rng), v = pick(rng);
        if (u == v) continue;
        chosen.emplace(std::min(u, v), std::max(u, v));
    }
    return Graph(n, std::vector<edge_t>(chosen.begin(), chosen.end()));
}

/// Random labelled tree: vertex i > 0 attaches to a uniform earlier vertex,
/// then labels are shuffled.
inline Graph random_tree(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> label(static_cast<std::size_t>(n));
    std::iota(label.begin(), label.end(), 0);
    std::shuffle(label.begin(), label.end(), rng);
    std::vector<edge_t> e;
    for (int i = 1; i < n; ++i) {
        int p = std::uniform_int_distribution<int>(0, i - 1)(rng);
        e.emplace_back(label[i], label[p]);
    }
    return Graph(n, e);
}

/// Random connected graph: a random tree plus extra random edges, at most
/// m edges in total.
inline Graph random_connected(int n, std::size_t m, std::uint64_t seed) {
    Graph tree = random_tree(n, seed);
    auto e = tree.edges();
    std::set<edge_t> chosen(e.begin(), e.end());
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2;
    m = std::min(std::max(m, chosen.size()), pairs);
    std::uniform_int_distribution<int> pick(0, std::max(n - 1, 0));
    while (chosen.size() < m) {
        int u = pick(rng), v = pick(rng);
        if (u != v) chosen.emplace(std::min(u, v), std::max(u, v));
    }
    return Graph(n, std::vector<edge_t>(chosen.begin(), chosen.end()));
}

inline Graph relabel(const Graph& g, const std::vector<int>& perm) {
    std::vector<edge_t> e;
    for (auto [u, v] : g.edges()) e.emplace_back(perm[u], perm[v]);
    return Graph(g.n(), e);
}

/// One representative per isomorphism class of connected graphs on exactly
/// n vertices (n <= 7), by minimising the edge bitmask over all relabellings.
inline std::vector<Graph> connected_graph_catalog(int n) {
    if (n < 1 || n > 7) throw std::invalid_argument("catalog supports 1 <= n <= 7");
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<std::vector<int>> slot_of(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (std::size_t s = 0; s < slots.size(); ++s) {
        slot_of[slots[s].first][slots[s].second] = static_cast<int>(s);
        slot_of[slots[s].second][slots[s].first] = static_cast<int>(s);
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    const std::uint32_t total = 1u << slots.size();
    std::vector<char> seen(total, 0);
    std::vector<Graph> out;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (seen[mask]) continue;
        for (const auto& p : perms) {
            std::uint32_t image = 0;
            for (std::size_t s = 0; s < slots.size(); ++s)
                if (mask >> s & 1u) image |= 1u << slot_of[p[slots[s].first]][p[slots[s].second]];
            seen[image] = 1;
        }
        std::vector<edge_t> e;
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (mask >> s & 1u) e.push_back(slots[s]);
        Graph g(n, e);
        if (is_connected(g)) out.push_back(std::move(g));
    }
    return out;
}

/// All graphs on exactly n labelled vertices (n <= 6).
inline std::vector<Graph> labelled_graphs(int n) {
    if (n < 0 || n > 6) throw std::invalid_argument("labelled_graphs supports n <= 6");
    std::vector<edge_t> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<Graph> out;
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
        std::vector<edge_t> e;
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (mask >> s & 1u) e.push_back(slots[s]);
        out.emplace_back(n, e);
    }
    return out;
}

}  // namespace treedepth::oracle
