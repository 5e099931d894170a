#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graph.hpp"

namespace treedepth {

/// Rooted forest stored as a parent array (-1 marks a root). Roots have depth 1.
class RootedForest {
public:
    RootedForest() = default;

    /// Throws std::invalid_argument if the parent array contains a cycle or a
    /// parent index out of range.
    explicit RootedForest(std::vector<vertex_t> parent) : parent_(std::move(parent)) {
        const int n = size();
        depth_.assign(static_cast<std::size_t>(n), 0);
        std::vector<vertex_t> path;
        for (vertex_t v = 0; v < n; ++v) {
            if (depth_[v] != 0) continue;
            vertex_t x = v;
            while (x != -1 && depth_[x] == 0) {
                if (x < -1 || x >= n) throw std::invalid_argument("parent index out of range");
                depth_[x] = -1;  // on the current path
                path.push_back(x);
                x = parent_[x];
                if (x < -1 || x >= n) throw std::invalid_argument("parent index out of range");
                if (x != -1 && depth_[x] == -1) throw std::invalid_argument("parent array has a cycle");
            }
            int base = x == -1 ? 0 : depth_[x];
            for (auto it = path.rbegin(); it != path.rend(); ++it) depth_[*it] = ++base;
            path.clear();
        }
    }

    int size() const { return static_cast<int>(parent_.size()); }
    vertex_t parent(vertex_t v) const { return parent_[v]; }
    int depth(vertex_t v) const { return depth_[v]; }
    const std::vector<vertex_t>& parents() const { return parent_; }

    int max_depth() const {
        int d = 0;
        for (int x : depth_) d = std::max(d, x);
        return d;
    }

    std::vector<vertex_t> roots() const {
        std::vector<vertex_t> out;
        for (vertex_t v = 0; v < size(); ++v)
            if (parent_[v] == -1) out.push_back(v);
        return out;
    }

    /// Children lists, each ascending.
    std::vector<std::vector<vertex_t>> children() const {
        std::vector<std::vector<vertex_t>> ch(parent_.size());
        for (vertex_t v = 0; v < size(); ++v)
            if (parent_[v] != -1) ch[parent_[v]].push_back(v);
        return ch;
    }

    /// True iff a is an ancestor of b (every vertex is its own ancestor).
    bool is_ancestor(vertex_t a, vertex_t b) const {
        while (depth_[b] > depth_[a]) b = parent_[b];
        return a == b;
    }

    bool related(vertex_t u, vertex_t v) const { return is_ancestor(u, v) || is_ancestor(v, u); }

    /// Ancestors of u including u, ordered from u upwards.
    std::vector<vertex_t> tail(vertex_t u) const {
        std::vector<vertex_t> out;
        for (vertex_t x = u; x != -1; x = parent_[x]) out.push_back(x);
        return out;
    }

    /// Descendants of u including u, ascending.
    std::vector<vertex_t> tree(vertex_t u) const {
        std::vector<vertex_t> out;
        for (vertex_t v = 0; v < size(); ++v)
            if (is_ancestor(u, v)) out.push_back(v);
        return out;
    }

    /// tail[u] united with tree[u], ascending.
    std::vector<vertex_t> comp(vertex_t u) const {
        std::vector<vertex_t> out;
        for (vertex_t v = 0; v < size(); ++v)
            if (related(u, v)) out.push_back(v);
        return out;
    }

    /// Ancestor closure of a vertex set, as a membership mask.
    std::vector<char> closure(const std::vector<vertex_t>& set) const {
        std::vector<char> in(parent_.size(), 0);
        for (vertex_t v : set)
            for (vertex_t x = v; x != -1 && !in[x]; x = parent_[x]) in[x] = 1;
        return in;
    }

    /// Vertices in an order where every parent precedes its children
    /// (depth-first from the roots, children ascending).
    std::vector<vertex_t> preorder() const {
        auto ch = children();
        std::vector<vertex_t> order, stack;
        order.reserve(parent_.size());
        auto r = roots();
        for (auto it = r.rbegin(); it != r.rend(); ++it) stack.push_back(*it);
        while (!stack.empty()) {
            vertex_t v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (auto it = ch[v].rbegin(); it != ch[v].rend(); ++it) stack.push_back(*it);
        }
        return order;
    }

    friend bool operator==(const RootedForest& a, const RootedForest& b) { return a.parent_ == b.parent_; }

private:
    std::vector<vertex_t> parent_;
    std::vector<int> depth_;
};

/// Every edge of g joins an ancestor/descendant pair of f and depth(f) <= d.
inline bool validate_elimination_forest(const Graph& g, const RootedForest& f, int d) {
    if (f.size() != g.n()) return false;
    if (f.max_depth() > d) return false;
    for (auto [u, v] : g.edges())
        if (!f.related(u, v)) return false;
    return true;
}

/// Forest of depth-first search calls; roots are taken in ascending order and
/// neighbours are visited ascending.
inline RootedForest dfs_elimination_forest(const Graph& g) {
    const int n = g.n();
    std::vector<vertex_t> parent(static_cast<std::size_t>(n), -1);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<vertex_t, std::size_t>> stack;
    for (vertex_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        stack.emplace_back(s, 0);
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const auto& nb = g.neighbors(v);
            while (next < nb.size() && seen[nb[next]]) ++next;
            if (next == nb.size()) {
                stack.pop_back();
                continue;
            }
            vertex_t w = nb[next++];
            seen[w] = 1;
            parent[w] = v;
            stack.emplace_back(w, 0);
        }
    }
    return RootedForest(std::move(parent));
}

/// Forest on `subset` (ascending; local index i is subset[i]) whose ancestor
/// relation is the one inherited from f.
inline RootedForest inherit_forest(const RootedForest& f, const std::vector<vertex_t>& subset) {
    std::vector<int> local(static_cast<std::size_t>(f.size()), -1);
    for (std::size_t i = 0; i < subset.size(); ++i) local[subset[i]] = static_cast<int>(i);
    std::vector<vertex_t> parent(subset.size(), -1);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        vertex_t x = f.parent(subset[i]);
        while (x != -1 && local[x] == -1) x = f.parent(x);
        parent[i] = x == -1 ? -1 : local[x];
    }
    return RootedForest(std::move(parent));
}

/// Splits f so that every tree lies inside one connected component of g,
/// keeping the ancestor relation within each component. Linear time: one
/// depth-first pass over f with a stack of open ancestors per component.
inline RootedForest restrict_to_components(const Graph& g, const RootedForest& f) {
    const int n = g.n();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    auto comps = connected_components(g);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (vertex_t v : comps[c].vertices) comp[v] = static_cast<int>(c);

    std::vector<vertex_t> parent(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<vertex_t>> open(comps.size());
    auto ch = f.children();
    // (vertex, entering?) pairs
    std::vector<std::pair<vertex_t, bool>> stack;
    for (vertex_t r : f.roots()) stack.emplace_back(r, true);
    while (!stack.empty()) {
        auto [v, entering] = stack.back();
        stack.pop_back();
        auto& st = open[comp[v]];
        if (!entering) {
            st.pop_back();
            continue;
        }
        parent[v] = st.empty() ? -1 : st.back();
        st.push_back(v);
        stack.emplace_back(v, false);
        for (vertex_t c : ch[v]) stack.emplace_back(c, true);
    }
    return RootedForest(std::move(parent));
}

/// Deletes v; its children are re-hung under v's parent (or become roots).
/// Vertices above v are renumbered down by one.
inline RootedForest remove_vertex(const RootedForest& f, vertex_t v) {
    std::vector<vertex_t> parent;
    parent.reserve(static_cast<std::size_t>(f.size() - 1));
    auto shift = [v](vertex_t x) { return x == -1 ? -1 : (x > v ? x - 1 : x); };
    for (vertex_t u = 0; u < f.size(); ++u) {
        if (u == v) continue;
        vertex_t p = f.parent(u);
        if (p == v) p = f.parent(v);
        parent.push_back(shift(p));
    }
    return RootedForest(std::move(parent));
}

/// Inserts a new vertex at index v (later indices shift up by one) and makes
/// it the parent of every former root.
inline RootedForest attach_root(const RootedForest& f, vertex_t v) {
    std::vector<vertex_t> parent;
    parent.reserve(static_cast<std::size_t>(f.size() + 1));
    auto shift = [v](vertex_t x) { return x >= v ? x + 1 : x; };
    for (vertex_t u = 0; u < f.size(); ++u) {
        if (u == v) parent.push_back(-1);
        vertex_t p = f.parent(u);
        parent.push_back(p == -1 ? v : shift(p));
    }
    if (v == f.size()) parent.push_back(-1);
    return RootedForest(std::move(parent));
}

/// Replaces each contracted vertex by its two pre-images, the first as the
/// parent of the second. Depth at most doubles.
inline RootedForest expand_contracted_forest(const RootedForest& f, const ContractionMap& preimages) {
    int n = 0;
    for (auto [a, b] : preimages) n = std::max({n, a + 1, b + 1});
    std::vector<vertex_t> parent(static_cast<std::size_t>(n), -1);
    auto lower = [&](vertex_t x) { return preimages[x].second == -1 ? preimages[x].first : preimages[x].second; };
    for (vertex_t x = 0; x < f.size(); ++x) {
        auto [a, b] = preimages[x];
        parent[a] = f.parent(x) == -1 ? -1 : lower(f.parent(x));
        if (b != -1) parent[b] = a;
    }
    return RootedForest(std::move(parent));
}

/// Re-inserts the improved-simplicial vertices `ordered` (in that order) into
/// `rest`, an elimination forest of g_imp minus those vertices indexed in
/// ascending order of the remaining vertices. Each vertex goes under its
/// deepest already-placed neighbour. Returns nullopt when some neighbourhood
/// has d or more vertices or the result is deeper than 2d; both certify
/// treedepth > d.
inline std::optional<RootedForest> lift_simplicial(const RootedForest& rest, const Graph& g_imp,
                                                   const std::vector<vertex_t>& ordered, int d) {
    const int n = g_imp.n();
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    for (vertex_t v : ordered) removed[v] = 1;
    std::vector<vertex_t> global_of;
    for (vertex_t v = 0; v < n; ++v)
        if (!removed[v]) global_of.push_back(v);
    if (static_cast<int>(global_of.size()) != rest.size())
        throw std::invalid_argument("lift_simplicial: forest size mismatch");

    std::vector<vertex_t> parent(static_cast<std::size_t>(n), -1);
    std::vector<int> depth(static_cast<std::size_t>(n), 0);
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < global_of.size(); ++i) {
        vertex_t v = global_of[i];
        vertex_t p = rest.parent(static_cast<vertex_t>(i));
        parent[v] = p == -1 ? -1 : global_of[p];
        depth[v] = rest.depth(static_cast<vertex_t>(i));
        placed[v] = 1;
    }
    int max_depth = rest.max_depth();
    for (vertex_t v : ordered) {
        int count = 0;
        vertex_t lowest = -1;
        for (vertex_t w : g_imp.neighbors(v)) {
            if (!placed[w]) continue;
            ++count;
            if (lowest == -1 || depth[w] > depth[lowest]) lowest = w;
        }
        if (count >= d) return std::nullopt;
        parent[v] = lowest;
        depth[v] = lowest == -1 ? 1 : depth[lowest] + 1;
        placed[v] = 1;
        max_depth = std::max(max_depth, depth[v]);
    }
    if (max_depth > 2 * d) return std::nullopt;
    return RootedForest(std::move(parent));
}

/// For every u and distinct children v1, v2 of u in t:
/// cl_r(comp_t[v1]) and cl_r(comp_t[v2]) intersect exactly in cl_r(tail_t[u]).
inline bool check_sensible(const Graph& g, const RootedForest& t, const RootedForest& r) {
    (void)g;
    auto ch = t.children();
    for (vertex_t u = 0; u < t.size(); ++u) {
        if (ch[u].size() < 2) continue;
        auto base = r.closure(t.tail(u));
        std::vector<std::vector<char>> cls;
        cls.reserve(ch[u].size());
        for (vertex_t v : ch[u]) cls.push_back(r.closure(t.comp(v)));
        for (std::size_t i = 0; i < cls.size(); ++i)
            for (std::size_t j = i + 1; j < cls.size(); ++j)
                for (vertex_t x = 0; x < r.size(); ++x)
                    if ((cls[i][x] && cls[j][x]) != static_cast<bool>(base[x])) return false;
    }
    return true;
}

}  // namespace treedepth
