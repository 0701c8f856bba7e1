#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "lqw/cli.hpp"
#include "lqw/runner.hpp"

using namespace lqw;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("lqw_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::size_t line_count(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

int run_cli(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
    args.insert(args.begin(), "lqw_search");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int rc = cli_main(static_cast<int>(argv.size()), argv.data(), o, e);
    if (out) *out = o.str();
    if (err) *err = e.str();
    return rc;
}

WalkParams small_params() {
    WalkParams p;
    p.side_x = 6;
    p.side_y = 5;
    p.loop_weight = {4.0, true};
    p.break_probability = 0.05;
    p.steps = 50;
    p.runs = 4;
    p.base_seed = 17;
    return p;
}

}  // namespace

TEST(Params, ParseHelpers) {
    EXPECT_EQ(parse_grid("16x16"), (std::pair{16, 16}));
    EXPECT_EQ(parse_grid("3x7"), (std::pair{3, 7}));
    EXPECT_THROW(parse_grid("16"), std::invalid_argument);
    EXPECT_THROW(parse_grid("ax3"), std::invalid_argument);
    EXPECT_EQ(parse_vertex("2,5"), (Vertex{2, 5}));
    EXPECT_THROW(parse_vertex("2;5"), std::invalid_argument);

    const LoopWeight rel = parse_loop_weight("4/N");
    EXPECT_TRUE(rel.per_vertex_count);
    EXPECT_EQ(rel.resolve(256), 4.0 / 256.0);
    EXPECT_EQ(format_loop_weight(rel), "4/N");
    const LoopWeight lit = parse_loop_weight("0.1");
    EXPECT_FALSE(lit.per_vertex_count);
    EXPECT_EQ(lit.resolve(256), 0.1);
    EXPECT_THROW(parse_loop_weight("-1"), std::invalid_argument);
    EXPECT_THROW(parse_loop_weight("abc"), std::invalid_argument);
}

TEST(Params, Validation) {
    WalkParams p;
    EXPECT_NO_THROW(p.validate());
    EXPECT_EQ(p.marked_vertex(), (Vertex{8, 8}));
    p.break_probability = 1.5;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.steps = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.runs = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.marked = Vertex{16, 0};
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.side_x = 2;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Trajectory, FreeWalkStaysUniform) {
    WalkParams p;
    p.side_x = p.side_y = 8;
    p.loop_weight = {0.0, false};
    p.oracle_enabled = false;
    p.steps = 300;
    const auto r = run_trajectory(p, 0);
    ASSERT_EQ(r.success_series.size(), 301u);
    for (const double s : r.success_series) EXPECT_NEAR(s, 1.0 / 64.0, 1e-12);
    for (const double q : r.averaged_distribution) EXPECT_NEAR(q, 1.0 / 64.0, 1e-12);
}

TEST(Trajectory, NoiselessLackadaisicalSearchFindsTheCenter) {
    WalkParams p;
    p.steps = 1000;
    const auto r = run_trajectory(p, 0);
    EXPECT_NEAR(r.success_series.front(), 1.0 / 256.0, 1e-15);
    EXPECT_GE(*std::max_element(r.success_series.begin(), r.success_series.end()), 0.75);
    EXPECT_NEAR(std::accumulate(r.averaged_distribution.begin(), r.averaged_distribution.end(), 0.0), 1.0, 1e-9);
}

TEST(Trajectory, DeterministicGivenRunIndex) {
    const WalkParams p = small_params();
    EXPECT_EQ(run_trajectory(p, 2), run_trajectory(p, 2));
    EXPECT_NE(run_trajectory(p, 2), run_trajectory(p, 3));
}

TEST(Trajectory, TimeAverageExcludesInitialState) {
    // With T = 1 the average is exactly the post-step distribution.
    WalkParams p = small_params();
    p.steps = 1;
    const auto r = run_trajectory(p, 0);
    const Lattice l = p.lattice();
    EXPECT_EQ(r.averaged_distribution[l.index(p.marked_vertex())], r.success_series[1]);
    EXPECT_NE(r.success_series[1], r.success_series[0]);
}

TEST(Ensemble, SingleRunHasZeroStd) {
    WalkParams p = small_params();
    p.runs = 1;
    const auto e = run_ensemble(p);
    for (const double s : e.std_success) EXPECT_EQ(s, 0.0);
    EXPECT_EQ(e.seeds, (std::vector<std::uint64_t>{17}));
}

TEST(Ensemble, NoiselessRunsAreIdentical) {
    WalkParams p;
    p.break_probability = 0.0;
    p.runs = 20;
    p.steps = 200;
    const auto e = run_ensemble(p, 4);
    for (const double s : e.std_success) EXPECT_EQ(s, 0.0);
    EXPECT_EQ(e.mean_success, run_trajectory(p, 0).success_series);
}

TEST(Ensemble, ThreadCountDoesNotChangeResults) {
    const WalkParams p = small_params();
    const auto serial = run_ensemble(p, 1);
    for (const unsigned threads : {2u, 3u, 8u, 0u}) {
        const auto parallel = run_ensemble(p, threads);
        EXPECT_EQ(parallel.mean_success, serial.mean_success);
        EXPECT_EQ(parallel.std_success, serial.std_success);
        EXPECT_EQ(parallel.mean_averaged_distribution, serial.mean_averaged_distribution);
    }
}

TEST(Ensemble, NoiseProducesSpread) {
    const auto e = run_ensemble(small_params());
    EXPECT_GT(*std::max_element(e.std_success.begin(), e.std_success.end()), 0.0);
    EXPECT_EQ(e.std_success.front(), 0.0);
    EXPECT_EQ(e.seeds, (std::vector<std::uint64_t>{17, 18, 19, 20}));
}

TEST(Output, RowCountsAndHeaders) {
    WalkParams p;
    p.side_x = p.side_y = 3;
    p.steps = 10;
    p.runs = 2;
    p.break_probability = 0.1;
    const auto e = run_ensemble(p);
    const fs::path dir = scratch_dir("rows");
    const auto files = write_output(e, dir);
    const std::string success = slurp(files.success_csv);
    const std::string dist = slurp(files.distribution_csv);
    EXPECT_EQ(line_count(success), 12u);
    EXPECT_EQ(line_count(dist), 10u);
    EXPECT_EQ(success.substr(0, success.find('\n')), "step,mean_success,std_success,uniform_baseline");
    EXPECT_EQ(dist.substr(0, dist.find('\n')), "x,y,mean_time_averaged_probability");
    EXPECT_EQ(success.back(), '\n');
    EXPECT_FALSE(fs::exists(dir / "success.csv.tmp"));
}

TEST(Output, ValuesRoundTripExactly) {
    const auto e = run_ensemble(small_params());
    const fs::path dir = scratch_dir("values");
    write_output(e, dir);
    std::ifstream in(dir / "success.csv");
    std::string line;
    std::getline(in, line);
    std::size_t t = 0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string step, mean, sd, base;
        std::getline(row, step, ',');
        std::getline(row, mean, ',');
        std::getline(row, sd, ',');
        std::getline(row, base, ',');
        EXPECT_EQ(std::stoul(step), t);
        EXPECT_EQ(detail::parse_double(mean, "mean"), e.mean_success[t]);
        EXPECT_EQ(detail::parse_double(sd, "std"), e.std_success[t]);
        EXPECT_EQ(detail::parse_double(base, "baseline"), 1.0 / 30.0);
        ++t;
    }
    EXPECT_EQ(t, e.mean_success.size());
}

TEST(Output, RewriteIsByteIdentical) {
    const auto e = run_ensemble(small_params());
    const fs::path dir = scratch_dir("rewrite");
    write_output(e, dir);
    const auto a = slurp(dir / "success.csv") + slurp(dir / "distribution.csv") + slurp(dir / "meta.json");
    write_output(e, dir);
    const auto b = slurp(dir / "success.csv") + slurp(dir / "distribution.csv") + slurp(dir / "meta.json");
    EXPECT_EQ(a, b);
}

TEST(Output, MetadataRoundTrips) {
    for (WalkParams p : {small_params(), WalkParams{}}) {
        p.runs = 2;
        p.steps = 5;
        if (p.side_x == 6) {
            p.marked = Vertex{1, 4};
            p.oracle_enabled = false;
            p.base_seed = ~0ull - 1;
            p.loop_weight = {0.1, false};
        }
        const auto e = run_ensemble(p);
        const fs::path dir = scratch_dir("meta");
        write_output(e, dir);
        EXPECT_EQ(read_metadata(dir / "meta.json"), p);
        const auto j = nlohmann::json::parse(slurp(dir / "meta.json"));
        EXPECT_EQ(j.at("seeds").get<std::vector<std::uint64_t>>(), e.seeds);
        EXPECT_EQ(j.at("version").get<std::string>(), kVersion);
    }
}

TEST(Output, UnwritableDirectoryReportsPath) {
    const fs::path blocker = scratch_dir("blocker");
    std::ofstream(blocker) << "file, not a directory";
    WalkParams p = small_params();
    p.steps = 2;
    try {
        write_output(run_ensemble(p), blocker / "sub");
        FAIL() << "expected an I/O error";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("lqw_test_blocker"), std::string::npos) << e.what();
    }
}

TEST(Cli, RunsAndSummarizes) {
    const fs::path dir = scratch_dir("cli");
    std::string out;
    const int rc = run_cli({"--grid", "5x5", "--loop-weight", "4/N", "--break-prob", "0.02", "--steps", "30",
                            "--runs", "3", "--seed", "7", "--out", dir.string()},
                           &out);
    EXPECT_EQ(rc, 0);
    EXPECT_NE(out.find("peak mean success"), std::string::npos);
    EXPECT_NE(out.find("uniform 1/N = 0.04"), std::string::npos);
    const WalkParams meta = read_metadata(dir / "meta.json");
    EXPECT_EQ(meta.side_x, 5);
    EXPECT_EQ(meta.runs, 3u);
    EXPECT_EQ(meta.base_seed, 7u);
    EXPECT_EQ(meta.loop_weight, (LoopWeight{4.0, true}));
}

TEST(Cli, MarkedAndNoOracle) {
    const fs::path dir = scratch_dir("cli_marked");
    EXPECT_EQ(run_cli({"--grid", "4x4", "--marked", "1,2", "--no-oracle", "--steps", "3", "--out", dir.string()}),
              0);
    const WalkParams meta = read_metadata(dir / "meta.json");
    EXPECT_EQ(meta.marked, (Vertex{1, 2}));
    EXPECT_FALSE(meta.oracle_enabled);
}

TEST(Cli, RejectsBadInput) {
    const fs::path dir = scratch_dir("cli_bad");
    std::string err;
    EXPECT_NE(run_cli({"--break-prob", "1.5", "--out", dir.string()}, nullptr, &err), 0);
    EXPECT_NE(err.find("break probability"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir));
    EXPECT_NE(run_cli({"--bogus"}, nullptr, &err), 0);
    EXPECT_NE(run_cli({"--grid", "2x2", "--out", dir.string()}), 0);
    EXPECT_NE(run_cli({"--loop-weight", "-3", "--out", dir.string()}), 0);
    EXPECT_NE(run_cli({"--marked", "99,0", "--out", dir.string()}), 0);
    EXPECT_NE(run_cli({"--threads", "zero", "--out", dir.string()}), 0);
    EXPECT_NE(run_cli({"--steps", "0", "--out", dir.string()}), 0);
}
