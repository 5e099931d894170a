#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <treedepth/oracle.hpp>
#include <treedepth/treedepth.hpp>

using namespace treedepth;

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run_tool(const std::string& args) {
    std::string cmd = std::string(TDSOLVE_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string graph_text(const Graph& g) {
    std::string s = "p tdp " + std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
    for (auto [u, v] : g.edges()) s += std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
    return s;
}

class TempDir {
public:
    TempDir() : path_(std::filesystem::temp_directory_path() / ("tdsolve-test-" + std::to_string(::getpid()))) {
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string write(const std::string& name, const std::string& text) const {
        auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

private:
    std::filesystem::path path_;
};

}  // namespace

TEST(ParseGraph, Examples) {
    EXPECT_EQ(parse_pace_graph("p tdp 2 1\n1 2"), oracle::clique(2));
    EXPECT_EQ(parse_pace_graph("c comment\np tdp 1 0"), Graph(1));
    EXPECT_EQ(parse_pace_graph("p tdp 3 2\r\nc mid\r\n1 2\r\n2 3\r\n"), oracle::path(3));
}

TEST(ParseGraph, Errors) {
    EXPECT_THROW(parse_pace_graph("p tdp 2 1\n1 3"), PaceFormatError);
    EXPECT_THROW(parse_pace_graph(""), PaceFormatError);
    EXPECT_THROW(parse_pace_graph("p td 2 1\n1 2"), PaceFormatError);
    EXPECT_THROW(parse_pace_graph("p tdp 2 2\n1 2"), PaceFormatError);
    EXPECT_THROW(parse_pace_graph("p tdp 2 2\n1 2\n2 1"), PaceFormatError);
    EXPECT_THROW(parse_pace_graph("p tdp 2 1\n1 1"), PaceFormatError);
    EXPECT_THROW(parse_pace_graph("p tdp 2 1\n1 2 3"), PaceFormatError);
    EXPECT_THROW(parse_pace_graph("p tdp 2 1\n1 x"), PaceFormatError);
}

TEST(EmitForest, Examples) {
    EXPECT_EQ(emit_pace_forest(RootedForest({-1})), "1\n0\n");
    EXPECT_EQ(emit_pace_forest(RootedForest({-1, 0})), "2\n0\n1\n");
    EXPECT_EQ(emit_pace_forest(RootedForest({1, -1, 1})), "2\n2\n0\n2\n");
}

TEST(ParseForest, ChecksDepthAndShape) {
    EXPECT_EQ(parse_pace_forest("2\n2\n0\n2\n", 3), RootedForest({1, -1, 1}));
    EXPECT_THROW(parse_pace_forest("3\n2\n0\n2\n", 3), PaceFormatError);
    EXPECT_THROW(parse_pace_forest("2\n2\n0\n", 3), PaceFormatError);
    EXPECT_THROW(parse_pace_forest("2\n2\n1\n", 2), PaceFormatError);
    EXPECT_THROW(parse_pace_forest("1\n5\n", 1), PaceFormatError);
}

TEST(RoundTrip, SolverOutputsSurviveEmitAndParse) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = parse_pace_graph(graph_text(oracle::random_gnm(9, 5 + seed % 8, seed)));
        const int td = oracle::brute_td(g);
        for (const SolveOutcome& out : {solve_deterministic(g, td), solve_randomized(g, td)}) {
            ASSERT_TRUE(out.feasible());
            Graph again = parse_pace_graph(graph_text(g));
            RootedForest back = parse_pace_forest(emit_pace_forest(*out.forest), again.n());
            EXPECT_EQ(back, *out.forest);
            EXPECT_TRUE(validate_elimination_forest(again, back, td));
        }
    }
}

TEST(Tool, SolvesPathOfThree) {
    TempDir dir;
    auto p3 = dir.write("p3.gr", "p tdp 3 2\n1 2\n2 3\n");
    auto r = run_tool(p3 + " --max-depth 2 --mode deterministic");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "2\n2\n0\n2\n");
    r = run_tool(p3 + " --max-depth 2 --mode randomized");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.substr(0, 2), "2\n");
}

TEST(Tool, CliqueOfFourIsInfeasibleAtThree) {
    TempDir dir;
    auto k4 = dir.write("k4.gr", graph_text(oracle::clique(4)));
    auto r = run_tool(k4 + " --max-depth 3");
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(r.out, "td > 3\n");
    EXPECT_EQ(run_tool(k4 + " --max-depth 3 --mode randomized").status, 1);
}

TEST(Tool, CountOnlyOnTriangle) {
    TempDir dir;
    auto k3 = dir.write("k3.gr", graph_text(oracle::clique(3)));
    auto r = run_tool(k3 + " --count-only --max-depth 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "6\n");
    EXPECT_EQ(run_tool(k3 + " --count-only --max-depth 3 --trunc-check").status, 0);
}

TEST(Tool, OptimizeValidateAndOracle) {
    TempDir dir;
    auto c5 = dir.write("c5.gr", graph_text(oracle::cycle(5)));
    auto r = run_tool(c5 + " --optimize");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.substr(0, 2), "4\n");
    auto sol = dir.write("c5.td", r.out);
    EXPECT_EQ(run_tool(c5 + " --validate " + sol).status, 0);
    EXPECT_EQ(run_tool(c5 + " --validate " + sol + " --max-depth 3").status, 1);
    auto o = run_tool(c5 + " --oracle");
    EXPECT_EQ(o.status, 0);
    EXPECT_EQ(o.out, "td = 4\n");
}

TEST(Tool, ErrorsExitTwo) {
    TempDir dir;
    EXPECT_EQ(run_tool(dir.write("x", "") + "_missing --max-depth 2").status, 2);
    EXPECT_EQ(run_tool(dir.write("bad.gr", "p tdp 2 1\n1 3\n") + " --max-depth 2").status, 2);
    EXPECT_EQ(run_tool(dir.write("ok.gr", "p tdp 1 0\n") + " --mode fast --max-depth 1").status, 2);
    EXPECT_EQ(run_tool(dir.write("ok2.gr", "p tdp 1 0\n")).status, 2);
}

TEST(Tool, SameSeedSameBytes) {
    TempDir dir;
    auto g = dir.write("t.gr", graph_text(oracle::random_tree(18, 3)));
    auto a = run_tool(g + " --max-depth 4 --mode randomized --seed 9");
    auto b = run_tool(g + " --max-depth 4 --mode randomized --seed 9");
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
}
