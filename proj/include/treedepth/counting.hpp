#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "forest.hpp"
#include "graph.hpp"
#include "polyring.hpp"

namespace treedepth {

/// Thrown when a counting call exceeds its configured work limit.
class WorkBudgetExceeded : public std::runtime_error {
public:
    WorkBudgetExceeded() : std::runtime_error("work budget exceeded") {}
};

/// Small rooted tree K with its own index space; vertex 0 is the root once
/// the tree is non-empty.
struct PrefixTree {
    std::vector<int> parent;
    std::vector<int> depth;

    int size() const { return static_cast<int>(parent.size()); }

    int add_child(int p) {
        parent.push_back(p);
        depth.push_back(p == -1 ? 1 : depth[p] + 1);
        return size() - 1;
    }

    bool is_ancestor(int a, int b) const {
        while (depth[b] > depth[a]) b = parent[b];
        return a == b;
    }

    /// True iff a and b lie on one root-to-leaf path.
    bool related(int a, int b) const {
        if (depth[a] < depth[b]) std::swap(a, b);
        while (depth[a] > depth[b]) a = parent[a];
        return a == b;
    }

    /// A single path [w_1, ..., w_p] rooted at w_1.
    static PrefixTree path(int p) {
        PrefixTree k;
        for (int i = 0; i < p; ++i) k.add_child(i - 1);
        return k;
    }
};

enum class FrameKind { F, G };

struct CountOptions {
    /// Number of retained coefficients (degrees 0..cap-1); 0 selects d * depth(T).
    int cap = 0;
    /// Keep only the degrees that can still reach the free term of h, given
    /// the divisions pending on the current recursion path. Exact for the
    /// free term; intermediate polynomials are then clipped lower than `cap`.
    bool prune_by_budget = true;
    /// Optional shared counter of g-evaluations and its limit (0 = unlimited).
    std::atomic<std::uint64_t>* work_counter = nullptr;
    std::uint64_t work_limit = 0;
    /// Optional wall-clock deadline, polled every few thousand g-evaluations.
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Counts elimination trees of a connected graph of depth at most d that are
/// sensible with respect to a fixed elimination tree T, by evaluating the
/// mutually recursive polynomials f and g over T.
///
/// The recursion keeps one frame per level of T (the prefix tree K, the
/// images of the current tail and the allowed set A) and nothing else, so
/// memory stays polynomial; there is no memoisation.
template <class Ring>
class EliminationCounter {
public:
    using value_type = typename Ring::value_type;
    using Poly = TruncatedPolynomial<Ring>;
    using Observer = std::function<void(FrameKind, vertex_t, const Poly&)>;

    /// t must be an elimination tree of g (a single root). `weights` is
    /// indexed by vertex of g; an empty span means all weights are one.
    EliminationCounter(const Graph& g, const RootedForest& t, int d, const Ring& ring,
                       std::span<const value_type> weights = {}, CountOptions opts = {})
        : g_(g), t_(t), d_(d), ring_(ring), weights_(weights), opts_(std::move(opts)) {
        if (t.size() != g.n()) throw std::invalid_argument("T must span the vertices of G");
        if (!weights_.empty() && static_cast<int>(weights_.size()) != g.n())
            throw std::invalid_argument("weight vector length must equal |V(G)|");
        auto roots = t.roots();
        if (g.n() > 0 && roots.size() != 1) throw std::invalid_argument("T must be a tree");
        root_ = roots.empty() ? -1 : roots.front();
        children_ = t.children();
        ancestor_nb_.resize(static_cast<std::size_t>(g.n()));
        for (vertex_t v = 0; v < g.n(); ++v)
            for (vertex_t w : g.neighbors(v)) {
                if (!t.related(v, w)) throw std::invalid_argument("T is not an elimination tree of G");
                if (t.depth(w) < t.depth(v)) ancestor_nb_[v].push_back(t.depth(w) - 1);
            }
        k_ = t.max_depth();
        cap_ = opts_.cap > 0 ? opts_.cap : std::max(1, d_ * k_);
        image_.assign(static_cast<std::size_t>(k_), -1);
    }

    void set_observer(Observer obs) { observer_ = std::move(obs); }

    int cap() const { return cap_; }

    /// h; with budget pruning only its free term is retained.
    Poly eval_h() {
        const int out_cap = opts_.prune_by_budget ? 1 : cap_;
        Poly h(ring_, out_cap);
        if (root_ == -1 || d_ < 1) return h;
        for (int p = 1; p <= d_; ++p) {
            const int sub = child_cap(out_cap, p);
            if (p == 1 && weight_is_zero(root_)) continue;
            k_tree_ = PrefixTree::path(p);
            allowed_.assign(static_cast<std::size_t>(p), 0);
            allowed_[p - 1] = 1;
            image_[0] = p - 1;
            Poly sum(ring_, sub);
            for_each_subset(p, [&](bool negative) {
                Poly gp = eval_g(root_, sub);
                if (p == 1) gp = apply_weight(gp, root_);
                if (negative) sum -= gp;
                else sum += gp;
            });
            h += sum.div_by_x_power(p - 1).with_cap(out_cap);
        }
        return h;
    }

    /// The number of sensible elimination trees of depth <= d, each weighted
    /// by the weight of its root.
    value_type count() { return g_.n() == 0 ? ring_.one() : eval_h().free_term(); }

    /// g(u, K, phi, A) for an explicit frame; phi maps each vertex of
    /// tail_T[u] (by T-depth, root first) to a vertex of K.
    Poly eval_g(vertex_t u, const PrefixTree& k, const std::vector<int>& phi_by_depth,
                const std::vector<char>& allowed) {
        load_frame(k, phi_by_depth, allowed);
        // the recursion only checks edges at u; here the whole tail is checked
        for (vertex_t x : t_.tail(u))
            for (int j : ancestor_nb_[x])
                if (!k_tree_.related(image_[j], image_[t_.depth(x) - 1])) return Poly(ring_, cap_);
        return eval_g(u, cap_);
    }

    /// f(u, K, phi, A) for an explicit frame; phi covers tail_T(u).
    Poly eval_f(vertex_t u, const PrefixTree& k, const std::vector<int>& phi_by_depth,
                const std::vector<char>& allowed) {
        load_frame(k, phi_by_depth, allowed);
        return eval_f(u, cap_);
    }

private:
    void load_frame(const PrefixTree& k, const std::vector<int>& phi, const std::vector<char>& allowed) {
        if (allowed.size() != static_cast<std::size_t>(k.size())) throw std::invalid_argument("A must be a mask over V(K)");
        k_tree_ = k;
        allowed_ = allowed;
        std::fill(image_.begin(), image_.end(), -1);
        for (std::size_t i = 0; i < phi.size(); ++i) image_[i] = phi[i];
    }

    int child_cap(int cap, int p) const {
        return opts_.prune_by_budget ? std::min(cap_, cap + p - 1) : cap_;
    }

    bool weight_is_zero(vertex_t u) const { return !weights_.empty() && ring_.is_zero(weights_[u]); }

    Poly apply_weight(const Poly& p, vertex_t u) const { return weights_.empty() ? p : p.scaled(weights_[u]); }

    /// Calls fn(negative) once per subset B of {w_1..w_{p-1}} (the first p-1
    /// vertices appended to K), with allowed_ updated for B. The sign is
    /// (-1)^(p-1-|B|).
    template <class Fn>
    void for_each_subset(int p, Fn&& fn) {
        const int base = k_tree_.size() - p;
        const std::uint32_t subsets = std::uint32_t{1} << (p - 1);
        for (std::uint32_t mask = 0; mask < subsets; ++mask) {
            int size = 0;
            for (int i = 0; i < p - 1; ++i) {
                bool in = (mask >> i) & 1u;
                allowed_[static_cast<std::size_t>(base + i)] = in;
                size += in;
            }
            fn(((p - 1 - size) & 1) != 0);
        }
    }

    void charge() {
        if (opts_.deadline && (++ticks_ & 0xfffu) == 0 && std::chrono::steady_clock::now() > *opts_.deadline)
            throw WorkBudgetExceeded();
        if (!opts_.work_counter) return;
        auto done = opts_.work_counter->fetch_add(1, std::memory_order_relaxed) + 1;
        if (opts_.work_limit != 0 && done > opts_.work_limit) throw WorkBudgetExceeded();
    }

    /// Tail images of u are in image_[0 .. depth_T(u) - 1]; edges between u
    /// and its T-ancestors are checked here, the rest by the callers.
    Poly eval_g(vertex_t u, int cap) {
        charge();
        Poly out = eval_g_body(u, cap);
        if (observer_) observer_(FrameKind::G, u, out);
        return out;
    }

    Poly eval_g_body(vertex_t u, int cap) {
        const int x = image_[t_.depth(u) - 1];
        for (int j : ancestor_nb_[u])
            if (!k_tree_.related(image_[j], x)) return Poly(ring_, cap);
        Poly prod = Poly::constant(ring_, cap, ring_.one());
        for (vertex_t c : children_[u]) {
            Poly fc = eval_f(c, cap);
            if (fc.is_zero()) return Poly(ring_, cap);
            prod = prod * fc;
        }
        return prod;
    }

    Poly eval_f(vertex_t u, int cap) {
        const int level = t_.depth(u) - 1;
        Poly out(ring_, cap);
        const int k_size = k_tree_.size();

        // K-vertices whose ancestors include the images of all G-neighbours of
        // u above it; only there (or on a path hung below them) can u's edges
        // be respected, every other choice gives g = 0
        boost::container::small_vector<char, 64> below_all(static_cast<std::size_t>(k_size), 1);
        for (int v = 0; v < k_size; ++v)
            for (int j : ancestor_nb_[u])
                if (!k_tree_.is_ancestor(image_[j], v)) {
                    below_all[v] = 0;
                    break;
                }

        // u mapped onto an allowed vertex of K: one more surplus image
        if (cap >= 2) {
            for (int v = 0; v < k_size; ++v) {
                if (!allowed_[v]) continue;
                bool related_to_all = true;
                for (int j : ancestor_nb_[u])
                    if (!k_tree_.related(image_[j], v)) related_to_all = false;
                if (!related_to_all) continue;
                const bool at_root = k_tree_.parent[v] == -1;
                if (at_root && weight_is_zero(u)) continue;
                image_[level] = v;
                Poly gv = eval_g(u, cap - 1);
                if (at_root) gv = apply_weight(gv, u);
                out += gv.with_cap(cap).shifted_up(1);
            }
        }

        // u mapped onto the end of a fresh path [w, w_1, ..., w_p] below w
        for (int w = 0; w < k_size; ++w) {
            if (!below_all[w]) continue;
            for (int p = 1; p <= d_ - k_tree_.depth[w]; ++p) {
                int prev = w;
                for (int i = 0; i < p; ++i) prev = k_tree_.add_child(prev);
                allowed_.resize(static_cast<std::size_t>(k_tree_.size()), 0);
                allowed_.back() = 1;
                image_[level] = prev;
                const int sub = child_cap(cap, p);
                Poly sum(ring_, sub);
                for_each_subset(p, [&](bool negative) {
                    Poly gp = eval_g(u, sub);
                    if (negative) sum -= gp;
                    else sum += gp;
                });
                out += sum.div_by_x_power(p - 1).with_cap(cap);
                k_tree_.parent.resize(static_cast<std::size_t>(k_size));
                k_tree_.depth.resize(static_cast<std::size_t>(k_size));
                allowed_.resize(static_cast<std::size_t>(k_size));
            }
        }
        image_[level] = -1;
        if (observer_) observer_(FrameKind::F, u, out);
        return out;
    }

    const Graph& g_;
    const RootedForest& t_;
    int d_;
    const Ring& ring_;
    std::span<const value_type> weights_;
    CountOptions opts_;
    Observer observer_;

    vertex_t root_ = -1;
    int k_ = 0;
    int cap_ = 1;
    std::vector<std::vector<vertex_t>> children_;
    std::vector<std::vector<int>> ancestor_nb_;  // T-levels of adjacent ancestors

    std::uint64_t ticks_ = 0;
    PrefixTree k_tree_;
    std::vector<char> allowed_;
    std::vector<int> image_;  // image of the tail vertex at each T-level
};

/// Weighted count for a connected graph and an elimination tree of it.
template <class Ring>
typename Ring::value_type count_elim_trees(const Graph& g, const RootedForest& t, int d, const Ring& ring,
                                           std::span<const typename Ring::value_type> weights = {},
                                           const CountOptions& opts = {}) {
    EliminationCounter<Ring> counter(g, t, d, ring, weights, opts);
    return counter.count();
}

/// Product of the per-component counts; t may be any elimination forest of g.
template <class Ring>
typename Ring::value_type count_elim_forests(const Graph& g, const RootedForest& t, int d, const Ring& ring,
                                             std::span<const typename Ring::value_type> weights = {},
                                             const CountOptions& opts = {}) {
    RootedForest split = restrict_to_components(g, t);
    typename Ring::value_type total = ring.one();
    for (const auto& comp : connected_components(g)) {
        RootedForest tc = inherit_forest(split, comp.vertices);
        std::vector<typename Ring::value_type> wc;
        if (!weights.empty())
            for (vertex_t v : comp.vertices) wc.push_back(weights[v]);
        total = ring.mul(total, count_elim_trees(comp.graph, tc, d, ring,
                                                 std::span<const typename Ring::value_type>(wc), opts));
        if (ring.is_zero(total)) break;
    }
    return total;
}

}  // namespace treedepth
