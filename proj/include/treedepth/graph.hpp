#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace treedepth {

using vertex_t = int;
using edge_t = std::pair<vertex_t, vertex_t>;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

    /// Throws std::invalid_argument on loops, duplicates or out-of-range endpoints.
    Graph(int n, const std::vector<edge_t>& edges) : adj_(static_cast<std::size_t>(n)) {
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::invalid_argument("edge endpoint out of range");
            if (u == v)
                throw std::invalid_argument("self-loop " + std::to_string(u));
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& a : adj_) {
            std::sort(a.begin(), a.end());
            if (std::adjacent_find(a.begin(), a.end()) != a.end())
                throw std::invalid_argument("duplicate edge");
        }
        m_ = edges.size();
    }

    /// Builds from possibly redundant edge lists; loops and repeats are dropped.
    static Graph from_multi_edges(int n, std::vector<edge_t> edges) {
        for (auto& e : edges)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        std::erase_if(edges, [](const edge_t& e) { return e.first == e.second; });
        return Graph(n, edges);
    }

    int n() const { return static_cast<int>(adj_.size()); }
    std::size_t m() const { return m_; }

    const std::vector<vertex_t>& neighbors(vertex_t v) const { return adj_[v]; }
    int degree(vertex_t v) const { return static_cast<int>(adj_[v].size()); }

    bool adjacent(vertex_t u, vertex_t v) const {
        const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        vertex_t w = &a == &adj_[u] ? v : u;
        return std::binary_search(a.begin(), a.end(), w);
    }

    /// Edges (u, v) with u < v in ascending lexicographic order.
    std::vector<edge_t> edges() const {
        std::vector<edge_t> out;
        out.reserve(m_);
        for (vertex_t u = 0; u < n(); ++u)
            for (vertex_t v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    std::vector<std::vector<vertex_t>> adj_;
    std::size_t m_ = 0;
};

/// Subgraph induced by `vertices` (ascending); local vertex i is vertices[i].
inline Graph induced_subgraph(const Graph& g, const std::vector<vertex_t>& vertices) {
    std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
    std::vector<edge_t> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (vertex_t w : g.neighbors(vertices[i]))
            if (local[w] > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), local[w]);
    return Graph(static_cast<int>(vertices.size()), edges);
}

/// G - v with the remaining vertices renumbered in ascending order.
inline Graph remove_vertex(const Graph& g, vertex_t v) {
    std::vector<vertex_t> keep;
    keep.reserve(static_cast<std::size_t>(g.n() > 0 ? g.n() - 1 : 0));
    for (vertex_t u = 0; u < g.n(); ++u)
        if (u != v) keep.push_back(u);
    return induced_subgraph(g, keep);
}

struct Component {
    std::vector<vertex_t> vertices;  // ascending, original indices
    Graph graph;                     // induced, local indices
};

/// Components ordered by their smallest vertex.
inline std::vector<Component> connected_components(const Graph& g) {
    std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
    std::vector<Component> out;
    std::vector<vertex_t> stack;
    for (vertex_t s = 0; s < g.n(); ++s) {
        if (comp[s] != -1) continue;
        int id = static_cast<int>(out.size());
        Component c;
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            vertex_t v = stack.back();
            stack.pop_back();
            c.vertices.push_back(v);
            for (vertex_t w : g.neighbors(v))
                if (comp[w] == -1) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(c.vertices.begin(), c.vertices.end());
        out.push_back(std::move(c));
    }
    for (auto& c : out) c.graph = induced_subgraph(g, c.vertices);
    return out;
}

inline bool is_connected(const Graph& g) { return g.n() <= 1 || connected_components(g).size() == 1; }

/// Adds an edge between every non-adjacent pair with at least d + 1 common
/// neighbours of degree at most d. Pair multiplicities are bucketed with two
/// counting-sort passes, so the cost is O(d^2 n) once m <= dn.
inline Graph improved_graph(const Graph& g, int d) {
    const int n = g.n();
    std::vector<edge_t> pairs;
    for (vertex_t w = 0; w < n; ++w) {
        if (g.degree(w) > d) continue;
        const auto& nb = g.neighbors(w);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!g.adjacent(nb[i], nb[j])) pairs.emplace_back(nb[i], nb[j]);
    }
    auto counting_pass = [n](std::vector<edge_t>& v, auto key) {
        std::vector<std::size_t> start(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& e : v) ++start[key(e) + 1];
        for (int i = 0; i < n; ++i) start[i + 1] += start[i];
        std::vector<edge_t> out(v.size());
        for (const auto& e : v) out[start[key(e)]++] = e;
        v.swap(out);
    };
    counting_pass(pairs, [](const edge_t& e) { return e.second; });
    counting_pass(pairs, [](const edge_t& e) { return e.first; });

    std::vector<edge_t> edges = g.edges();
    for (std::size_t i = 0; i < pairs.size();) {
        std::size_t j = i;
        while (j < pairs.size() && pairs[j] == pairs[i]) ++j;
        if (static_cast<int>(j - i) >= d + 1) edges.push_back(pairs[i]);
        i = j;
    }
    return Graph(n, edges);
}

/// True iff N[v] is a clique in g.
inline bool is_simplicial(const Graph& g, vertex_t v) {
    const auto& nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            if (!g.adjacent(nb[i], nb[j])) return false;
    return true;
}

/// Vertices whose closed neighbourhood in the d-improved graph is a clique there.
inline std::vector<vertex_t> improved_simplicial_vertices(const Graph& g, int d) {
    Graph imp = improved_graph(g, d);
    std::vector<vertex_t> out;
    for (vertex_t v = 0; v < g.n(); ++v)
        if (is_simplicial(imp, v)) out.push_back(v);
    return out;
}

/// Looks for a clique on d + 1 vertices made of some v and its d smallest
/// neighbours; finding one certifies treedepth > d. Every simplicial vertex of
/// degree >= d is caught, at O(d^2 log n) per vertex.
inline bool has_large_clique(const Graph& g_imp, int d) {
    for (vertex_t v = 0; v < g_imp.n(); ++v) {
        if (g_imp.degree(v) < d) continue;
        const auto& nb = g_imp.neighbors(v);
        bool clique = true;
        for (int i = 0; i < d && clique; ++i)
            for (int j = i + 1; j < d && clique; ++j) clique = g_imp.adjacent(nb[i], nb[j]);
        if (clique) return true;
    }
    return false;
}

struct Matching {
    std::vector<edge_t> edges;  // (u, v) with u < v

    std::size_t size() const { return edges.size(); }
};

/// Greedy maximal matching: scans edges in ascending (min, max) endpoint order
/// and keeps every edge whose endpoints are both still free.
inline Matching greedy_maximal_matching(const Graph& g) {
    std::vector<char> used(static_cast<std::size_t>(g.n()), 0);
    Matching m;
    for (vertex_t u = 0; u < g.n(); ++u) {
        if (used[u]) continue;
        for (vertex_t v : g.neighbors(u)) {
            if (v > u && !used[v]) {
                used[u] = used[v] = 1;
                m.edges.emplace_back(u, v);
                break;
            }
        }
    }
    return m;
}

/// Pre-images of each vertex of a contracted graph: `second` is -1 for
/// vertices that were not matched.
using ContractionMap = std::vector<std::pair<vertex_t, vertex_t>>;

struct Contraction {
    Graph graph;
    ContractionMap preimages;
};

/// Merges each matched pair into one vertex. New vertices are numbered by
/// the smallest original vertex they contain.
inline Contraction contract_matching(const Graph& g, const Matching& matching) {
    const int n = g.n();
    std::vector<vertex_t> partner(static_cast<std::size_t>(n), -1);
    for (auto [u, v] : matching.edges) {
        if (!g.adjacent(u, v)) throw std::invalid_argument("matching edge not in graph");
        if (partner[u] != -1 || partner[v] != -1)
            throw std::invalid_argument("matching is not vertex-disjoint");
        partner[u] = v;
        partner[v] = u;
    }
    std::vector<vertex_t> image(static_cast<std::size_t>(n), -1);
    Contraction out;
    for (vertex_t v = 0; v < n; ++v) {
        if (image[v] != -1) continue;
        vertex_t id = static_cast<vertex_t>(out.preimages.size());
        image[v] = id;
        if (partner[v] != -1) image[partner[v]] = id;
        out.preimages.emplace_back(v, partner[v]);
    }
    std::vector<edge_t> edges;
    edges.reserve(g.m());
    for (auto [u, v] : g.edges()) edges.emplace_back(image[u], image[v]);
    out.graph = Graph::from_multi_edges(static_cast<int>(out.preimages.size()), std::move(edges));
    return out;
}

struct BodlaenderConfig {
    /// c(d) in the n / c(d) size guarantee; non-positive selects 72 (d+1)^6.
    double fraction_constant = 0.0;

    double constant(int d) const {
        if (fraction_constant > 0.0) return fraction_constant;
        double b = d + 1;
        return 72.0 * b * b * b * b * b * b;
    }
};

struct LargeMatching {
    Matching matching;
};
struct SimplicialSet {
    std::vector<vertex_t> vertices;
};
struct TooDeep {};

using BodlaenderOutcome = std::variant<LargeMatching, SimplicialSet, TooDeep>;

/// One reduction step of the linear-time scheme. Expects m <= d n.
/// A clique on d+1 vertices in the improved graph yields TooDeep. Otherwise
/// the greedy maximal matching is returned if it has at least n / c(d) edges,
/// else the unmatched low-degree improved-simplicial vertices if there are
/// at least n / c(d) of them, else TooDeep.
inline BodlaenderOutcome bodlaender_step(const Graph& g, int d, const BodlaenderConfig& cfg = {}) {
    const int n = g.n();
    const double threshold = n / cfg.constant(d);
    Matching m = greedy_maximal_matching(g);

    Graph imp = improved_graph(g, d);
    if (has_large_clique(imp, d)) return TooDeep{};

    std::vector<char> matched(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : m.edges) matched[u] = matched[v] = 1;
    std::vector<vertex_t> simplicial;
    for (vertex_t v = 0; v < n; ++v)
        if (!matched[v] && g.degree(v) <= d && imp.degree(v) < d && is_simplicial(imp, v))
            simplicial.push_back(v);

    const bool matching_ok = static_cast<double>(m.size()) >= threshold && m.size() > 0;
    const bool simplicial_ok = static_cast<double>(simplicial.size()) >= threshold && !simplicial.empty();
    if (matching_ok) return LargeMatching{std::move(m)};
    if (simplicial_ok) return SimplicialSet{std::move(simplicial)};
    return TooDeep{};
}

}  // namespace treedepth
