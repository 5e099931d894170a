#pragma once

#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

#include "construct.hpp"
#include "counting.hpp"
#include "forest.hpp"
#include "graph.hpp"
#include "polyring.hpp"

namespace treedepth {

struct LinearConfig {
    /// Constant C in A = max(L, n^5 2^(5 C d^2)).
    double error_exponent = 1.0;
    /// L, the lower end of the prime interval.
    std::uint64_t prime_lower = 21;
    /// Number of colours B; 0 selects min(r, (d+1)^(2(d+1))).
    std::uint64_t colors = 0;
    /// c(d) for the Bodlaender step; non-positive selects 72 (d+1)^6.
    double bodlaender_constant = 0.0;
    /// Colourings tried before B is doubled.
    int max_coloring_retries = 16;
    std::uint64_t seed = 1;
    /// Limit on g-evaluations over the whole run, 0 = unlimited.
    std::uint64_t work_limit = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    /// Worker threads for the per-colour counting calls.
    int threads = 1;

    std::uint64_t color_count(std::uint64_t r, int d) const {
        if (colors > 0) return std::min(colors, r);
        double b = std::pow(static_cast<double>(d + 1), 2.0 * (d + 1));
        return b >= static_cast<double>(r) ? r : static_cast<std::uint64_t>(b);
    }
};

struct LinearStats {
    std::uint64_t colorings = 0;
    std::uint64_t roots_found = 0;
    std::uint64_t counting_calls = 0;
    std::uint64_t bodlaender_levels = 0;
    std::atomic<std::uint64_t> work{0};

    double colorings_per_root() const {
        return roots_found == 0 ? 0.0 : static_cast<double>(colorings) / static_cast<double>(roots_found);
    }
};

/// Ring for a counting call on an r-vertex subproblem of an n-vertex input:
/// the global prime when r >= log2 n, otherwise the integer
/// m = r (d k 2^d)^r + 1, which exceeds every weighted count the call can
/// return, so residues are the true values.
inline CoefficientRing choose_modulus(std::uint64_t r, std::uint64_t n, int d, int k, std::uint64_t sampled_prime) {
    if (static_cast<double>(r) >= std::log2(static_cast<double>(std::max<std::uint64_t>(n, 1))))
        return CoefficientRing::modular(mpz_class(static_cast<unsigned long>(sampled_prime)), true);
    mpz_class base = mpz_class(d) * k;
    base <<= static_cast<mp_bitcnt_t>(d);
    mpz_class m;
    mpz_pow_ui(m.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(r));
    m = m * static_cast<unsigned long>(r) + 1;
    return CoefficientRing::modular(m, false);
}

/// Smallest d' <= d with a non-zero count of depth-d' trees, or nullopt.
/// Over a prime modulus a true positive may read as zero.
template <class Ring>
std::optional<int> determine_exact_depth(const Graph& g, const RootedForest& t, int d, const Ring& ring,
                                         const CountOptions& opts = {}, LinearStats* stats = nullptr) {
    if (g.n() == 0) return 0;
    for (int dp = 1; dp <= d; ++dp) {
        if (stats) ++stats->counting_calls;
        if (!ring.is_zero(count_elim_trees(g, t, dp, ring, {}, opts))) return dp;
    }
    return std::nullopt;
}

namespace detail {

/// num / den as a vertex index in 1..r: modular inverse over a prime,
/// exact integer division otherwise (rejecting non-integral quotients).
template <class Ring>
std::optional<std::uint64_t> recover_index(const Ring& ring, const typename Ring::value_type& num,
                                           const typename Ring::value_type& den, bool prime, std::uint64_t r) {
    mpz_class q;
    if constexpr (std::is_same_v<Ring, ExactRing>) {
        (void)prime;
        if (num % den != 0) return std::nullopt;
        q = num / den;
    } else {
        if (prime) {
            q = ring.to_mpz(ring.mul(num, mod_inverse(den, ring)));
        } else {
            mpz_class a = ring.to_mpz(num), b = ring.to_mpz(den);
            if (a % b != 0) return std::nullopt;
            q = a / b;
        }
    }
    if (q < 1 || q > mpz_class(static_cast<unsigned long>(r))) return std::nullopt;
    return q.get_ui();
}

}  // namespace detail

/// A vertex v of the connected graph g with td(g - v) = d - 1, where d is
/// td(g). Colourings with B colours are sampled until some colour class holds
/// a unique such vertex; its index is read off the ratio of two weighted
/// counts and certified by one more count. nullopt after every retry
/// (with B doubled up to r) has failed, which points to a false negative
/// upstream.
template <class Ring, class Rng>
std::optional<vertex_t> find_root_colorcoding(const Graph& g, const RootedForest& t, int d, const Ring& ring,
                                              bool prime, const LinearConfig& cfg, Rng& rng,
                                              const CountOptions& opts = {}, LinearStats* stats = nullptr) {
    using V = typename Ring::value_type;
    const std::uint64_t r = static_cast<std::uint64_t>(g.n());
    if (r == 0) return std::nullopt;
    if (r == 1) return 0;

    // Per-colour work: returns the certified root or nullopt.
    std::atomic<std::uint64_t> calls{0};
    auto try_color = [&](const std::vector<std::uint64_t>& coloring, std::uint64_t c) -> std::optional<vertex_t> {
        std::vector<V> x(r, ring.zero()), y(r, ring.zero());
        for (std::uint64_t i = 0; i < r; ++i)
            if (coloring[i] == c) {
                x[i] = ring.one();
                y[i] = ring.from_int(static_cast<long long>(i + 1));
            }
        ++calls;
        V den = count_elim_trees(g, t, d, ring, std::span<const V>(x), opts);
        if (ring.is_zero(den)) return std::nullopt;
        ++calls;
        V num = count_elim_trees(g, t, d, ring, std::span<const V>(y), opts);
        auto idx = detail::recover_index(ring, num, den, prime, r);
        if (!idx || coloring[*idx - 1] != c) return std::nullopt;
        vertex_t v = static_cast<vertex_t>(*idx - 1);
        ++calls;
        if (ring.is_zero(count_elim_forests(remove_vertex(g, v), remove_vertex(t, v), d - 1, ring, {}, opts)))
            return std::nullopt;
        return v;
    };

    std::uint64_t colors = cfg.color_count(r, d);
    const int threads = std::max(1, cfg.threads);
    for (;;) {
        for (int attempt = 0; attempt < std::max(1, cfg.max_coloring_retries); ++attempt) {
            std::uniform_int_distribution<std::uint64_t> pick(0, colors - 1);
            std::vector<std::uint64_t> coloring(r);
            std::vector<char> used(colors, 0);
            for (auto& c : coloring) used[c = pick(rng)] = 1;
            if (stats) ++stats->colorings;
            std::vector<std::uint64_t> classes;
            for (std::uint64_t c = 0; c < colors; ++c)
                if (used[c]) classes.push_back(c);
            // classes are handled in batches; the first success in colour
            // order wins, so the result does not depend on the thread count
            for (std::size_t b = 0; b < classes.size(); b += static_cast<std::size_t>(threads)) {
                std::size_t e = std::min(classes.size(), b + static_cast<std::size_t>(threads));
                std::vector<std::optional<vertex_t>> found(e - b);
                if (threads == 1) {
                    found[0] = try_color(coloring, classes[b]);
                } else {
                    std::vector<std::future<std::optional<vertex_t>>> jobs;
                    for (std::size_t i = b; i < e; ++i)
                        jobs.push_back(std::async(std::launch::async, try_color, std::cref(coloring), classes[i]));
                    for (std::size_t i = 0; i < jobs.size(); ++i) found[i] = jobs[i].get();
                }
                if (stats) stats->counting_calls += calls.exchange(0);
                for (auto& f : found)
                    if (f) {
                        if (stats) ++stats->roots_found;
                        return f;
                    }
            }
        }
        if (colors >= r) return std::nullopt;
        colors = std::min(r, colors * 2);
    }
}

namespace detail {

struct LinearContext {
    const LinearConfig& cfg;
    std::uint64_t n;  // size of the original input
    std::uint64_t prime;
    std::mt19937_64& rng;
    CountOptions opts;
    LinearStats* stats;
    std::atomic<std::uint64_t> work{0};

    void arm() {
        opts.work_counter = stats ? &stats->work : &work;
        opts.work_limit = cfg.work_limit;
        opts.deadline = cfg.deadline;
    }
};

inline SolveOutcome construct_linear_forest(const Graph& g, const RootedForest& t, int d, LinearContext& ctx);

inline SolveOutcome construct_linear_tree(const Graph& g, const RootedForest& t, int d, LinearContext& ctx) {
    if (g.n() == 1) return SolveOutcome::accept(RootedForest({-1}));
    const std::uint64_t r = static_cast<std::uint64_t>(g.n());
    CoefficientRing desc = choose_modulus(r, ctx.n, d, std::max(t.max_depth(), 2 * d), ctx.prime);
    std::optional<vertex_t> root;
    int depth = 0;
    bool failed_exact_depth = false;
    visit_ring(desc, [&](const auto& ring) {
        auto dstar = determine_exact_depth(g, t, d, ring, ctx.opts, ctx.stats);
        if (!dstar) {
            failed_exact_depth = true;
            return;
        }
        depth = *dstar;
        root = find_root_colorcoding(g, t, depth, ring, desc.prime, ctx.cfg, ctx.rng, ctx.opts, ctx.stats);
    });
    // without the prime a zero count is the true value
    if (failed_exact_depth) return SolveOutcome::reject(!desc.prime, "td > d");
    if (!root) return SolveOutcome::reject(false, "no root found by colour coding");
    SolveOutcome rest = construct_linear_forest(remove_vertex(g, *root), remove_vertex(t, *root), depth - 1, ctx);
    if (!rest.feasible()) return rest;
    return SolveOutcome::accept(attach_root(*rest.forest, *root));
}

inline SolveOutcome construct_linear_forest(const Graph& g, const RootedForest& t, int d, LinearContext& ctx) {
    if (g.n() == 0) return SolveOutcome::accept(RootedForest());
    if (d < 1) return SolveOutcome::reject(true, "td > d");
    RootedForest split = restrict_to_components(g, t);
    auto comps = connected_components(g);
    std::vector<RootedForest> parts;
    for (const auto& comp : comps) {
        SolveOutcome part = construct_linear_tree(comp.graph, inherit_forest(split, comp.vertices), d, ctx);
        if (!part.feasible()) return part;
        parts.push_back(std::move(*part.forest));
    }
    return SolveOutcome::accept(merge_component_forests(g.n(), comps, parts));
}

inline SolveOutcome solve_linear(const Graph& g, int d, LinearContext& ctx) {
    const int n = g.n();
    if (n == 0) return SolveOutcome::accept(RootedForest());
    if (d < 1) return SolveOutcome::reject(true, "td > d");
    if (n == 1) return SolveOutcome::accept(RootedForest({-1}));
    if (static_cast<std::uint64_t>(g.m()) > static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(n))
        return SolveOutcome::reject(true, "more than d n edges");
    if (ctx.stats) ++ctx.stats->bodlaender_levels;

    BodlaenderConfig bcfg{ctx.cfg.bodlaender_constant};
    BodlaenderOutcome step = bodlaender_step(g, d, bcfg);
    if (std::holds_alternative<TooDeep>(step)) return SolveOutcome::reject(true, "treewidth or clique bound exceeded");

    RootedForest start;
    if (auto* lm = std::get_if<LargeMatching>(&step)) {
        Contraction c = contract_matching(g, lm->matching);
        SolveOutcome sub = solve_linear(c.graph, d, ctx);
        if (!sub.feasible()) return sub;
        start = expand_contracted_forest(*sub.forest, c.preimages);
    } else {
        const auto& a = std::get<SimplicialSet>(step).vertices;
        Graph imp = improved_graph(g, d);
        std::vector<char> in_a(static_cast<std::size_t>(n), 0);
        for (vertex_t v : a) in_a[v] = 1;
        std::vector<vertex_t> keep;
        for (vertex_t v = 0; v < n; ++v)
            if (!in_a[v]) keep.push_back(v);
        SolveOutcome sub = solve_linear(induced_subgraph(imp, keep), d, ctx);
        if (!sub.feasible()) return sub;
        auto lifted = lift_simplicial(*sub.forest, imp, a, d);
        if (!lifted) return SolveOutcome::reject(true, "improved-simplicial clique too large");
        start = std::move(*lifted);
    }
    return construct_linear_forest(g, start, d, ctx);
}

}  // namespace detail

/// Finishes a depth-<=2d elimination forest t of g into one of depth <= d
/// (or rejects), using colour coding for root recovery. `prime` is the
/// modulus drawn once per run.
inline SolveOutcome construct_linear(const Graph& g, const RootedForest& t, int d, const LinearConfig& cfg,
                                     std::uint64_t prime, std::mt19937_64& rng, LinearStats* stats = nullptr) {
    detail::LinearContext ctx{cfg, static_cast<std::uint64_t>(g.n()), prime, rng, {}, stats};
    ctx.arm();
    try {
        SolveOutcome out = detail::construct_linear_forest(g, t, d, ctx);
        if (out.feasible()) out.forest = checked_output(g, std::move(*out.forest), d);
        return out;
    } catch (const WorkBudgetExceeded&) {
        return SolveOutcome::reject(false, "work budget exceeded");
    }
}

inline std::uint64_t draw_global_prime(std::uint64_t n, int d, const LinearConfig& cfg, std::mt19937_64& rng) {
    PrimeSamplerConfig pc;
    pc.lower = cfg.prime_lower;
    pc.error_exponent = cfg.error_exponent;
    return sample_prime(pc.interval_bound(n, d), rng);
}

/// Randomized solver: reduce by matching contraction or by removing
/// improved-simplicial vertices, solve the smaller graph recursively, lift
/// the solution to a depth-<=2d forest and finish with construct_linear.
/// Accepted forests are always valid; a rejection may be a false negative
/// unless `certified` is set.
inline SolveOutcome solve_randomized(const Graph& g, int d, const LinearConfig& cfg = {}, LinearStats* stats = nullptr) {
    if (d < 0) throw std::invalid_argument("depth budget must be non-negative");
    std::mt19937_64 rng(cfg.seed);
    const std::uint64_t prime = draw_global_prime(static_cast<std::uint64_t>(g.n()), std::max(d, 1), cfg, rng);
    detail::LinearContext ctx{cfg, static_cast<std::uint64_t>(g.n()), prime, rng, {}, stats};
    ctx.arm();
    try {
        SolveOutcome out = detail::solve_linear(g, d, ctx);
        if (out.feasible()) out.forest = checked_output(g, std::move(*out.forest), d);
        return out;
    } catch (const WorkBudgetExceeded&) {
        return SolveOutcome::reject(false, "work budget exceeded");
    }
}

}  // namespace treedepth
