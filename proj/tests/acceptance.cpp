// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass criterion numbers as arguments to run a subset.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <treedepth/oracle.hpp>
#include <treedepth/treedepth.hpp>

using namespace treedepth;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances and budgets.
constexpr double kOracleDecisionMinutes = 10.0;
constexpr int kValidationInstances = 1000;
constexpr double kValidationDeadlineSeconds = 0.5;
constexpr int kRandomSmallInstances = 200;
constexpr int kRandomPrimes = 20;
constexpr int kColorCodingInstances = 500;
constexpr double kMaxColoringsPerRoot = 4.0;
constexpr int kFalseNegativeInstances = 200;
constexpr int kFalseNegativeSeeds = 50;
constexpr double kMaxInfeasibleFraction = 0.01;
constexpr double kFalseNegativeDeadlineSeconds = 5.0;
constexpr double kScalingRatioLow = 1.2;
constexpr double kScalingRatioHigh = 3.0;
constexpr double kScalingTotalSeconds = 300.0;
constexpr int kScalingDepth = 8;

struct Verdict {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Clock::time_point after(double seconds) {
    return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

std::string fmt(double x, int prec = 3) {
    std::ostringstream ss;
    ss.precision(prec);
    ss << std::fixed << x;
    return ss.str();
}

/// Random graph on 1..5 vertices, connected or not, with a depth budget.
struct SmallInstance {
    Graph g;
    int d;
};

SmallInstance small_instance(std::mt19937_64& rng) {
    int n = 1 + static_cast<int>(rng() % 5);
    std::size_t max_m = static_cast<std::size_t>(n * (n - 1) / 2);
    Graph g = oracle::random_gnm(n, max_m == 0 ? 0 : rng() % (max_m + 1), rng());
    return {g, 1 + static_cast<int>(rng() % 5)};
}

Verdict oracle_decision() {
    auto t0 = Clock::now();
    int runs = 0, wrong = 0;
    for (int n = 1; n <= 6; ++n)
        for (const Graph& g : oracle::connected_graph_catalog(n)) {
            const int td = oracle::brute_td(g);
            for (int d = 1; d <= 5; ++d) {
                ++runs;
                if (solve_deterministic(g, d).feasible() != (td <= d)) ++wrong;
            }
        }
    double s = seconds_since(t0);
    return {wrong == 0 && s < kOracleDecisionMinutes * 60,
            std::to_string(runs) + " runs, " + std::to_string(wrong) + " discrepancies, " + fmt(s, 1) + " s"};
}

Verdict oracle_counting() {
    int runs = 0, wrong = 0;
    ExactRing z;
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : oracle::connected_graph_catalog(n)) {
            RootedForest t = dfs_elimination_forest(g);
            for (int d = 1; d <= 5; ++d) {
                ++runs;
                if (count_elim_trees(g, t, d, z) != oracle::brute_count_sensible(g, t, d)) ++wrong;
            }
        }
    return {wrong == 0, std::to_string(runs) + " counts, " + std::to_string(wrong) + " discrepancies"};
}

Verdict validation_universality() {
    std::mt19937_64 rng(2024);
    int emitted = 0, invalid = 0, rejected = 0, timeouts = 0, contradicted = 0;
    for (int i = 0; i < kValidationInstances; ++i) {
        const int n = 1 + static_cast<int>(rng() % 50);
        const int d = 1 + static_cast<int>(rng() % 6);
        const std::size_t max_m = std::min<std::size_t>(static_cast<std::size_t>(d) * n, static_cast<std::size_t>(n) * (n - 1) / 2);
        const std::size_t m = rng() % (max_m + 1);
        Graph g = oracle::random_gnm(n, m, rng());
        const int td = n <= 20 ? oracle::brute_td(g) : -1;

        CountOptions opts;
        opts.deadline = after(kValidationDeadlineSeconds);
        LinearConfig cfg;
        cfg.seed = rng();
        cfg.deadline = after(kValidationDeadlineSeconds);
        for (const SolveOutcome& out : {solve_deterministic(g, d, opts), solve_randomized(g, d, cfg)}) {
            if (out.feasible()) {
                ++emitted;
                if (!validate_elimination_forest(g, *out.forest, d)) ++invalid;
            } else if (out.certified) {
                ++rejected;
                if (td >= 0 && td <= d) ++contradicted;
            } else {
                ++timeouts;
            }
        }
    }
    return {invalid == 0 && contradicted == 0,
            std::to_string(emitted) + " forests emitted, " + std::to_string(invalid) + " invalid; " +
                std::to_string(rejected) + " certified rejections (" + std::to_string(contradicted) +
                " contradicted by the oracle); " + std::to_string(timeouts) + " runs out of time"};
}

Verdict truncation_invariance() {
    std::mt19937_64 rng(7);
    int wrong = 0;
    for (int i = 0; i < kRandomSmallInstances; ++i) {
        auto [g, d] = small_instance(rng);
        RootedForest t = dfs_elimination_forest(g);
        ExactRing z;
        CountOptions full;  // cap d k
        full.prune_by_budget = false;
        CountOptions clipped;
        clipped.cap = g.n() + 1;
        clipped.prune_by_budget = false;
        mpz_class a = count_elim_forests(g, t, d, z, {}, full);
        mpz_class b = count_elim_forests(g, t, d, z, {}, clipped);
        mpz_class c = count_elim_forests(g, t, d, z);
        if (a != b || a != c) ++wrong;
    }
    return {wrong == 0, std::to_string(kRandomSmallInstances) + " instances, " + std::to_string(wrong) + " mismatches"};
}

Verdict modular_consistency() {
    std::mt19937_64 rng(11);
    std::vector<std::uint64_t> primes;
    for (int i = 0; i < kRandomPrimes; ++i) primes.push_back(sample_prime(std::uint64_t{1} << (2 + rng() % 60), rng));
    int wrong = 0, checks = 0;
    for (int i = 0; i < kRandomSmallInstances; ++i) {
        auto [g, d] = small_instance(rng);
        RootedForest t = dfs_elimination_forest(g);
        std::vector<mpz_class> wz;
        for (int v = 0; v < g.n(); ++v) wz.push_back(static_cast<long>(rng() % 1000));
        ExactRing z;
        mpz_class plain = count_elim_forests(g, t, d, z);
        mpz_class weighted = count_elim_forests(g, t, d, z, std::span<const mpz_class>(wz));
        for (std::uint64_t p : primes) {
            ModRing64 ring(p);
            std::vector<std::uint64_t> wp;
            for (const auto& w : wz) wp.push_back(ring.from_mpz(w));
            checks += 2;
            if (count_elim_forests(g, t, d, ring) != ring.from_mpz(plain)) ++wrong;
            if (count_elim_forests(g, t, d, ring, std::span<const std::uint64_t>(wp)) != ring.from_mpz(weighted)) ++wrong;
        }
    }
    return {wrong == 0, std::to_string(checks) + " comparisons, " + std::to_string(wrong) + " mismatches"};
}

Verdict coefficient_bound() {
    std::uint64_t frames = 0, violations = 0;
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : oracle::connected_graph_catalog(n)) {
            RootedForest t = dfs_elimination_forest(g);
            const int k = t.max_depth();
            for (int d = 1; d <= 5; ++d)
                for (bool prune : {true, false}) {
                    CountOptions opts;
                    opts.prune_by_budget = prune;
                    ExactRing z;
                    EliminationCounter<ExactRing> counter(g, t, d, z, {}, opts);
                    mpz_class base = mpz_class(d * k) << d;
                    counter.set_observer([&](FrameKind kind, vertex_t u, const TruncatedPolynomial<ExactRing>& p) {
                        if (kind != FrameKind::F) return;
                        ++frames;
                        mpz_class bound;
                        mpz_pow_ui(bound.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(t.tree(u).size()));
                        for (int i = 0; i < p.cap(); ++i)
                            if (p.coeff(i) < 0 || p.coeff(i) > bound) {
                                ++violations;
                                break;
                            }
                    });
                    counter.count();
                }
        }
    return {violations == 0, std::to_string(frames) + " f-frames, " + std::to_string(violations) + " violations"};
}

/// Connected graph on 4..12 vertices with at most n/2 edges beyond a
/// spanning tree and treedepth at most 4, with its treedepth as the budget.
struct PositiveInstance {
    Graph g;
    int d;
};

constexpr int kPositiveMaxDepth = 4;

PositiveInstance positive_instance(std::mt19937_64& rng) {
    for (;;) {
        const int n = 4 + static_cast<int>(rng() % 9);
        const std::size_t extra = rng() % static_cast<std::size_t>(n / 2 + 1);
        Graph g = oracle::random_connected(n, static_cast<std::size_t>(n - 1) + extra, rng());
        const int td = oracle::brute_td(g);
        if (td <= kPositiveMaxDepth) return {g, td};
    }
}

Verdict color_coding_rate() {
    std::mt19937_64 rng(13);
    std::uint64_t colorings = 0, roots = 0;
    int failures = 0;
    for (int i = 0; i < kColorCodingInstances; ++i) {
        auto [g, d] = positive_instance(rng);
        LinearConfig cfg;
        cfg.seed = rng();
        LinearStats stats;
        if (!solve_randomized(g, d, cfg, &stats).feasible()) ++failures;
        colorings += stats.colorings;
        roots += stats.roots_found;
    }
    double rate = roots == 0 ? 0.0 : static_cast<double>(colorings) / static_cast<double>(roots);
    return {roots > 0 && rate <= kMaxColoringsPerRoot,
            fmt(rate) + " colorings per root (" + std::to_string(colorings) + "/" + std::to_string(roots) + "), " +
                std::to_string(failures) + " runs rejected"};
}

Verdict false_negatives() {
    std::mt19937_64 rng(17);
    std::vector<PositiveInstance> corpus;
    for (int i = 0; i < kFalseNegativeInstances; ++i) corpus.push_back(positive_instance(rng));
    int runs = 0, infeasible = 0, timeouts = 0;
    for (const auto& [g, d] : corpus)
        for (int s = 0; s < kFalseNegativeSeeds; ++s) {
            LinearConfig cfg;
            cfg.seed = static_cast<std::uint64_t>(s) * 7919 + 1;
            cfg.deadline = after(kFalseNegativeDeadlineSeconds);
            SolveOutcome out = solve_randomized(g, d, cfg);
            ++runs;
            if (!out.feasible()) {
                ++infeasible;
                if (out.reason == "work budget exceeded") ++timeouts;
            }
        }
    double frac = static_cast<double>(infeasible) / runs;
    return {frac <= kMaxInfeasibleFraction, std::to_string(infeasible) + "/" + std::to_string(runs) +
                                                " infeasible verdicts (" + fmt(100 * frac, 2) + "%, " +
                                                std::to_string(timeouts) + " out of time)"};
}

Verdict linear_scaling() {
    const auto start = Clock::now();
    std::vector<double> times;
    std::string detail;
    for (int e = 10; e <= 13; ++e) {
        const int n = 1 << e;
        const double left = kScalingTotalSeconds - seconds_since(start);
        if (left <= 0) {
            detail += "n=" + std::to_string(n) + " not started; ";
            break;
        }
        LinearConfig cfg;
        cfg.deadline = after(left);
        auto t0 = Clock::now();
        SolveOutcome out = solve_randomized(oracle::path(n), kScalingDepth, cfg);
        double s = seconds_since(t0);
        if (!out.feasible() && !out.certified) {
            detail += "n=" + std::to_string(n) + " out of time after " + fmt(s, 1) + " s; ";
            break;
        }
        times.push_back(s);
        detail += "n=" + std::to_string(n) + " " + (out.feasible() ? "feasible" : out.reason) + " in " + fmt(s) + " s; ";
    }
    bool pass = times.size() == 4 && seconds_since(start) < kScalingTotalSeconds;
    for (std::size_t i = 1; i < times.size(); ++i) {
        double ratio = times[i] / std::max(times[i - 1], 1e-9);
        detail += "ratio " + fmt(ratio, 2) + "; ";
        if (ratio < kScalingRatioLow || ratio > kScalingRatioHigh) pass = false;
    }
    if (detail.size() >= 2) detail.resize(detail.size() - 2);
    return {pass, detail};
}

Verdict improvement_soundness() {
    int checks = 0, wrong = 0;
    for (int n = 1; n <= 6; ++n)
        for (const Graph& g : oracle::labelled_graphs(n)) {
            const int td = oracle::brute_td(g);
            for (int d = 1; d <= 4; ++d) {
                ++checks;
                if ((td <= d) != (oracle::brute_td(improved_graph(g, d)) <= d)) ++wrong;
            }
        }
    return {wrong == 0, std::to_string(checks) + " graph/budget pairs, " + std::to_string(wrong) + " discrepancies"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"oracle equivalence, decision", oracle_decision},
        {"oracle equivalence, counting", oracle_counting},
        {"validation universality", validation_universality},
        {"truncation invariance", truncation_invariance},
        {"modular consistency", modular_consistency},
        {"coefficient bound", coefficient_bound},
        {"color-coding success rate", color_coding_rate},
        {"false negatives", false_negatives},
        {"linear scaling", linear_scaling},
        {"improvement soundness", improvement_soundness},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        auto t0 = Clock::now();
        Verdict v = criteria[i].second();
        if (!v.pass) ++failed;
        std::cout << (v.pass ? "PASS" : "FAIL") << " " << id << " " << criteria[i].first << ": " << v.detail << " ["
                  << fmt(seconds_since(t0), 1) << " s]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
