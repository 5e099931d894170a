// tdsolve: exact treedepth for PACE `tdp` graphs.
//
// Exit status: 0 feasible (or valid), 1 infeasible (or invalid), 2 on I/O,
// format or usage errors.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <treedepth/oracle.hpp>
#include <treedepth/treedepth.hpp>

using namespace treedepth;

namespace {

constexpr int kFeasible = 0;
constexpr int kInfeasible = 1;
constexpr int kIoError = 2;

std::string read_all(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_all(in);
}

struct Options {
    std::string input;
    int max_depth = -1;
    bool optimize = false;
    std::string mode = "deterministic";
    std::uint64_t seed = 1;
    bool count_only = false;
    std::string validate;
    bool oracle = false;
    std::string bench;
    std::vector<int> bench_sizes;
    double const_c = 1.0;
    std::uint64_t const_b = 0;
    double const_bod = 0.0;
    bool trunc_check = false;
    int threads = 1;
    double time_limit = 0.0;
};

LinearConfig linear_config(const Options& o) {
    LinearConfig cfg;
    cfg.error_exponent = o.const_c;
    cfg.colors = o.const_b;
    cfg.bodlaender_constant = o.const_bod;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    if (o.time_limit > 0)
        cfg.deadline = std::chrono::steady_clock::now() +
                       std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(o.time_limit));
    return cfg;
}

SolveOutcome run_solver(const Graph& g, int d, const Options& o) {
    if (o.mode == "randomized") return solve_randomized(g, d, linear_config(o));
    CountOptions opts;
    if (o.time_limit > 0)
        opts.deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(o.time_limit));
    return solve_deterministic(g, d, opts);
}

void report_infeasible(const SolveOutcome& out, int d) {
    std::cout << "td > " << d << "\n";
    if (!out.certified)
        std::cerr << "note: " << out.reason
                  << "; the randomized solver can report false negatives, rerun with another --seed or "
                     "--mode deterministic\n";
}

int cmd_count(const Graph& g, const Options& o) {
    if (o.max_depth < 0) throw CLI::ValidationError("--count-only needs --max-depth");
    RootedForest t = dfs_elimination_forest(g);
    ExactRing ring;
    mpz_class c = count_elim_forests(g, t, o.max_depth, ring);
    std::cout << c.get_str() << "\n";
    if (o.trunc_check) {
        CountOptions wide;
        wide.cap = g.n() + 1;
        wide.prune_by_budget = false;
        mpz_class w = count_elim_forests(g, t, o.max_depth, ring, {}, wide);
        bool same = w == c;
        std::cerr << "truncation check: cap " << g.n() + 1 << " gives " << w.get_str() << (same ? " (equal)" : " (DIFFERENT)")
                  << "\n";
        if (!same) return kInfeasible;
    }
    return c != 0 ? kFeasible : kInfeasible;
}

int cmd_validate(const Graph& g, const Options& o) {
    RootedForest f = parse_pace_forest(read_file(o.validate), g.n());
    int d = o.max_depth >= 0 ? o.max_depth : f.max_depth();
    bool ok = validate_elimination_forest(g, f, d);
    std::cout << (ok ? "valid" : "invalid") << " elimination forest of depth " << f.max_depth() << "\n";
    return ok ? kFeasible : kInfeasible;
}

int cmd_oracle(const Graph& g, const Options& o) {
    int td = oracle::brute_td(g);
    std::cout << "td = " << td << "\n";
    if (o.max_depth >= 0) return td <= o.max_depth ? kFeasible : kInfeasible;
    return kFeasible;
}

int cmd_solve(const Graph& g, const Options& o) {
    if (o.optimize) {
        int cap = std::max(g.n(), 1);
        if (o.max_depth >= 0) cap = std::min(cap, o.max_depth);
        SolveOutcome last;
        for (int d = g.n() == 0 ? 0 : 1; d <= cap; ++d) {
            last = run_solver(g, d, o);
            if (last.feasible()) {
                std::cout << emit_pace_forest(*last.forest);
                return kFeasible;
            }
            if (last.reason == "work budget exceeded") break;
        }
        report_infeasible(last, cap);
        return kInfeasible;
    }
    if (o.max_depth < 0) throw CLI::ValidationError("one of --max-depth or --optimize is required");
    SolveOutcome out = run_solver(g, o.max_depth, o);
    if (out.feasible()) {
        std::cout << emit_pace_forest(*out.forest);
        return kFeasible;
    }
    report_infeasible(out, o.max_depth);
    return kInfeasible;
}

Graph bench_instance(const std::string& family, int n, std::uint64_t seed, int d) {
    if (family == "path") return oracle::path(n);
    if (family == "cycle") return oracle::cycle(n);
    if (family == "star") return oracle::star(n - 1);
    if (family == "clique") return oracle::clique(n);
    if (family == "tree") return oracle::random_tree(n, seed);
    if (family == "gnm") return oracle::random_gnm(n, static_cast<std::size_t>(d) * static_cast<std::size_t>(n) / 2, seed);
    throw CLI::ValidationError("unknown bench family " + family);
}

int cmd_bench(const Options& o) {
    if (o.max_depth < 0) throw CLI::ValidationError("--bench needs --max-depth");
    std::vector<int> sizes = o.bench_sizes;
    if (sizes.empty()) sizes = {64, 128, 256, 512};
    std::cout << "family,n,m,d,mode,verdict,seconds\n";
    for (int n : sizes) {
        Graph g = bench_instance(o.bench, n, o.seed, o.max_depth);
        auto t0 = std::chrono::steady_clock::now();
        SolveOutcome out = run_solver(g, o.max_depth, o);
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << o.bench << "," << n << "," << g.m() << "," << o.max_depth << "," << o.mode << ","
                  << (out.feasible() ? "feasible" : out.reason) << "," << s << "\n";
    }
    return kFeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact treedepth solver for PACE tdp graphs"};
    Options o;
    app.add_option("input", o.input, "graph in PACE tdp format (default: stdin)");
    app.add_option("-d,--max-depth", o.max_depth, "depth budget d")->check(CLI::NonNegativeNumber);
    app.add_flag("--optimize", o.optimize, "search d = 1, 2, ... for the smallest feasible depth");
    app.add_option("--mode", o.mode, "solver")->check(CLI::IsMember({"deterministic", "randomized"}));
    app.add_option("--seed", o.seed, "seed of the randomized solver");
    app.add_flag("--count-only", o.count_only, "print the number of sensible elimination trees w.r.t. a DFS forest");
    app.add_option("--validate", o.validate, "check a PACE forest file against the graph");
    app.add_flag("--oracle", o.oracle, "brute-force treedepth (at most 20 vertices)");
    app.add_option("--bench", o.bench, "time the solver on a generated family: path, cycle, star, clique, tree, gnm");
    app.add_option("--bench-sizes", o.bench_sizes, "vertex counts for --bench")->delimiter(',');
    app.add_option("--const-C", o.const_c, "error exponent C of the prime interval")->check(CLI::PositiveNumber);
    app.add_option("--const-B", o.const_b, "number of colours (0 = default bound)");
    app.add_option("--const-bod", o.const_bod, "fraction constant c(d) of the reduction step (0 = default)");
    app.add_flag("--trunc-check", o.trunc_check, "with --count-only, recount without truncation and compare");
    app.add_option("--threads", o.threads, "worker threads for colour classes")->check(CLI::PositiveNumber);
    app.add_option("--time-limit", o.time_limit, "give up after this many seconds (reported as infeasible, uncertified)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kIoError;
    }

    try {
        if (!o.bench.empty()) return cmd_bench(o);
        std::string text;
        if (o.input.empty() || o.input == "-") text = read_all(std::cin);
        else text = read_file(o.input);
        Graph g = parse_pace_graph(text);
        if (!o.validate.empty()) return cmd_validate(g, o);
        if (o.oracle) return cmd_oracle(g, o);
        if (o.count_only) return cmd_count(g, o);
        return cmd_solve(g, o);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const PaceFormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
}
