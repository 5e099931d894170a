#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "counting.hpp"
#include "forest.hpp"
#include "graph.hpp"
#include "polyring.hpp"

namespace treedepth {

/// Result of a solver run. When `forest` is empty the instance was rejected;
/// `certified` tells whether the rejection proves treedepth > d (it may not
/// when modular arithmetic or a work budget was involved).
struct SolveOutcome {
    std::optional<RootedForest> forest;
    bool certified = false;
    std::string reason;

    bool feasible() const { return forest.has_value(); }

    static SolveOutcome accept(RootedForest f) { return {std::move(f), true, "feasible"}; }
    static SolveOutcome reject(bool certified, std::string reason) { return {std::nullopt, certified, std::move(reason)}; }
};

/// Thrown if a solver is about to return a forest that does not validate.
/// Never expected; it guards the no-false-positive contract.
class InvalidSolverOutput : public std::logic_error {
public:
    InvalidSolverOutput() : std::logic_error("solver produced an invalid elimination forest") {}
};

inline RootedForest checked_output(const Graph& g, RootedForest f, int d) {
    if (!validate_elimination_forest(g, f, d)) throw InvalidSolverOutput();
    return f;
}

/// Places per-component forests (local indices) into one forest on g.
inline RootedForest merge_component_forests(int n, const std::vector<Component>& comps,
                                            const std::vector<RootedForest>& parts) {
    std::vector<vertex_t> parent(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto& vs = comps[c].vertices;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            vertex_t p = parts[c].parent(static_cast<vertex_t>(i));
            parent[vs[i]] = p == -1 ? -1 : vs[p];
        }
    }
    return RootedForest(std::move(parent));
}

namespace detail {

template <class Ring>
std::optional<RootedForest> construct_forest(const Graph& g, const RootedForest& t, int d, const Ring& ring,
                                             const CountOptions& opts, bool known_positive);

/// Elimination tree of a connected graph: the first vertex v (ascending)
/// with a non-zero count for G - v at depth d - 1 becomes the root.
template <class Ring>
std::optional<RootedForest> construct_tree(const Graph& g, const RootedForest& t, int d, const Ring& ring,
                                           const CountOptions& opts, bool known_positive) {
    if (d < 1) return std::nullopt;
    if (!known_positive && ring.is_zero(count_elim_trees(g, t, d, ring, {}, opts))) return std::nullopt;
    if (g.n() == 1) return RootedForest({-1});
    for (vertex_t v = 0; v < g.n(); ++v) {
        Graph rest = remove_vertex(g, v);
        RootedForest t_rest = remove_vertex(t, v);
        if (ring.is_zero(count_elim_forests(rest, t_rest, d - 1, ring, {}, opts))) continue;
        // a non-zero product has non-zero factors, so every component is positive
        auto sub = construct_forest(rest, t_rest, d - 1, ring, opts, true);
        if (!sub) return std::nullopt;
        return attach_root(*sub, v);
    }
    return std::nullopt;
}

template <class Ring>
std::optional<RootedForest> construct_forest(const Graph& g, const RootedForest& t, int d, const Ring& ring,
                                             const CountOptions& opts, bool known_positive) {
    if (g.n() == 0) return RootedForest();
    RootedForest split = restrict_to_components(g, t);
    auto comps = connected_components(g);
    std::vector<RootedForest> parts;
    parts.reserve(comps.size());
    for (const auto& comp : comps) {
        auto part = construct_tree(comp.graph, inherit_forest(split, comp.vertices), d, ring, opts, known_positive);
        if (!part) return std::nullopt;
        parts.push_back(std::move(*part));
    }
    return merge_component_forests(g.n(), comps, parts);
}

}  // namespace detail

/// Elimination forest of g of depth <= d found by root-by-root self-reduction
/// on the counts, given an elimination forest t of g. nullopt means the count
/// vanished: td(g) > d in the exact ring, possibly a false negative modulo m.
template <class Ring>
std::optional<RootedForest> construct_elim_forest(const Graph& g, const RootedForest& t, int d, const Ring& ring,
                                                  const CountOptions& opts = {}) {
    if (t.size() != g.n() || !validate_elimination_forest(g, t, t.max_depth()))
        throw std::invalid_argument("T must be an elimination forest of G");
    auto f = detail::construct_forest(g, t, d, ring, opts, false);
    if (f) return checked_output(g, std::move(*f), d);
    return f;
}

/// Exact decision and construction by iterative compression: vertices of
/// each component are added in ascending order, and the depth-(d+1) forest
/// obtained by putting the new vertex on top of the previous solution is
/// compressed back to depth d. Uses exact integers, so rejections are
/// certified. A work limit in `opts` turns into an uncertified rejection.
inline SolveOutcome solve_deterministic(const Graph& g, int d, const CountOptions& opts = {}) {
    if (d < 0) throw std::invalid_argument("depth budget must be non-negative");
    if (g.n() == 0) return SolveOutcome::accept(RootedForest());
    if (d == 0) return SolveOutcome::reject(true, "non-empty graph needs depth >= 1");
    ExactRing ring;
    auto comps = connected_components(g);
    std::vector<RootedForest> parts;
    try {
        for (const auto& comp : comps) {
            const Graph& h = comp.graph;
            RootedForest f;
            for (vertex_t i = 0; i < h.n(); ++i) {
                std::vector<vertex_t> prefix(static_cast<std::size_t>(i + 1));
                for (vertex_t v = 0; v <= i; ++v) prefix[v] = v;
                Graph gi = induced_subgraph(h, prefix);
                RootedForest ti = attach_root(f, i);
                auto next = construct_elim_forest(gi, ti, d, ring, opts);
                if (!next) return SolveOutcome::reject(true, "td > d");
                f = std::move(*next);
            }
            parts.push_back(std::move(f));
        }
    } catch (const WorkBudgetExceeded&) {
        return SolveOutcome::reject(false, "work budget exceeded");
    }
    return SolveOutcome::accept(checked_output(g, merge_component_forests(g.n(), comps, parts), d));
}

}  // namespace treedepth
