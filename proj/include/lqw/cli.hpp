#pragma once

#include <cstdint>
#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lqw/params.hpp"
#include "lqw/runner.hpp"

namespace lqw {

/// Entry point of the lqw_search tool; returns the process exit code.
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lackadaisical quantum-walk search on a torus under dynamic broken-link noise"};
    app.set_version_flag("--version", kVersion);

    std::string grid = "16x16";
    std::string loop_weight = "4/N";
    double break_probability = 0.0;
    std::uint64_t steps = 1000;
    std::uint64_t runs = 1;
    std::uint64_t seed = 0;
    std::string marked;
    bool no_oracle = false;
    std::string out_dir = "results";
    std::string threads = "1";

    app.add_option("--grid", grid, "Torus size WxH (sides >= 3)")->capture_default_str();
    app.add_option("--loop-weight", loop_weight, "Self-loop weight: a real >= 0, or c/N (e.g. 4/N)")
        ->capture_default_str();
    app.add_option("--break-prob", break_probability, "Per-edge, per-step break probability in [0, 1]")
        ->capture_default_str();
    app.add_option("--steps", steps, "Number of search steps T")->capture_default_str();
    app.add_option("--runs", runs, "Number of independent noisy trajectories")->capture_default_str();
    app.add_option("--seed", seed, "Base seed; run r uses seed + r")->capture_default_str();
    app.add_option("--marked", marked, "Marked vertex x,y (default: grid center)");
    app.add_flag("--no-oracle", no_oracle, "Disable the oracle (free walk)");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads, or 'auto'")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        WalkParams params;
        const auto [sx, sy] = parse_grid(grid);
        params.side_x = sx;
        params.side_y = sy;
        params.loop_weight = parse_loop_weight(loop_weight);
        params.break_probability = break_probability;
        params.steps = steps;
        params.runs = runs;
        params.base_seed = seed;
        if (!marked.empty()) params.marked = parse_vertex(marked);
        params.oracle_enabled = !no_oracle;
        params.validate();

        unsigned thread_count = 0;
        if (threads != "auto") {
            thread_count = detail::parse_int<unsigned>(threads, "threads");
            if (thread_count == 0) throw std::invalid_argument("threads must be >= 1 or 'auto'");
        }

        const EnsembleResult result = run_ensemble(params, thread_count);
        write_output(result, out_dir);

        const RunSummary s = summarize(result);
        out << "peak mean success " << format_double(s.peak_mean_success) << " at step " << s.peak_step
            << "; time-averaged marked probability " << format_double(s.marked_time_average)
            << " (uniform 1/N = " << format_double(s.uniform_baseline) << ", ratio "
            << format_double(s.marked_time_average / s.uniform_baseline) << ")\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n" << "Run with --help for usage.\n";
        return 2;
    }
}

}  // namespace lqw
