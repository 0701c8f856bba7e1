#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include <json.hpp>

#include "lqw/evolution.hpp"
#include "lqw/lattice.hpp"
#include "lqw/observables.hpp"
#include "lqw/params.hpp"
#include "lqw/percolation.hpp"
#include "lqw/qstate.hpp"
#include "lqw/version.hpp"

namespace lqw {

/// Simulates one noisy search trajectory. The mask stream is seeded with
/// run_seed(base_seed, run_index), so the record depends only on the arguments.
inline TrajectoryRecord run_trajectory(const WalkParams& params, std::uint64_t run_index) {
    params.validate();
    const Lattice lattice = params.lattice();
    const CoinSpec coin(params.resolved_loop_weight());
    std::optional<OracleSpec> oracle;
    if (params.oracle_enabled) {
        oracle.emplace(lattice, params.marked_vertex());
    }
    const std::size_t marked = lattice.index(params.marked_vertex());

    PercolationNoise noise(lattice, {params.break_probability, run_seed(params.base_seed, run_index)});
    WalkState state = uniform_initial_state(lattice, coin.loop_weight());

    TrajectoryRecord record;
    record.success_series.reserve(params.steps + 1);
    record.success_series.push_back(vertex_probability(state, marked));

    TimeAverage average(lattice.size());
    std::vector<double> distribution(lattice.size());
    for (std::uint64_t t = 1; t <= params.steps; ++t) {
        search_step(state, coin, oracle, noise.next());
        position_distribution(state, distribution);
        average.add(distribution);
        record.success_series.push_back(distribution[marked]);
    }
    record.averaged_distribution = average.result();
    return record;
}

inline unsigned resolve_thread_count(unsigned requested, std::uint64_t runs) {
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::uint64_t>(n, runs));
}

/// Runs params.runs trajectories on up to `threads` workers (0 = hardware
/// concurrency). Records are reduced in run order, so the result does not
/// depend on scheduling.
inline EnsembleResult run_ensemble(const WalkParams& params, unsigned threads = 1) {
    params.validate();
    std::vector<TrajectoryRecord> records(params.runs);
    const unsigned workers = resolve_thread_count(threads, params.runs);

    if (workers <= 1) {
        for (std::uint64_t r = 0; r < params.runs; ++r) {
            records[r] = run_trajectory(params, r);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (std::uint64_t r = next++; r < params.runs; r = next++) {
                            records[r] = run_trajectory(params, r);
                        }
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    EnsembleResult result = aggregate_ensemble(records);
    result.params = params;
    result.seeds.reserve(params.runs);
    for (std::uint64_t r = 0; r < params.runs; ++r) {
        result.seeds.push_back(run_seed(params.base_seed, r));
    }
    return result;
}

/// Headline numbers printed by the CLI.
struct RunSummary {
    double peak_mean_success = 0.0;
    std::size_t peak_step = 0;
    double marked_time_average = 0.0;
    double uniform_baseline = 0.0;
};

inline RunSummary summarize(const EnsembleResult& result) {
    RunSummary s;
    const auto peak = std::max_element(result.mean_success.begin(), result.mean_success.end());
    s.peak_mean_success = *peak;
    s.peak_step = static_cast<std::size_t>(peak - result.mean_success.begin());
    const Lattice lattice = result.params.lattice();
    s.marked_time_average = result.mean_averaged_distribution.at(lattice.index(result.params.marked_vertex()));
    s.uniform_baseline = result.uniform_baseline();
    return s;
}

// ---------------------------------------------------------------------------
// Output files
// ---------------------------------------------------------------------------

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

inline std::string success_csv(const EnsembleResult& result) {
    std::string out = "step,mean_success,std_success,uniform_baseline\n";
    const std::string baseline = format_double(result.uniform_baseline());
    for (std::size_t t = 0; t < result.mean_success.size(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += format_double(result.mean_success[t]);
        out += ',';
        out += format_double(result.std_success[t]);
        out += ',';
        out += baseline;
        out += '\n';
    }
    return out;
}

inline std::string distribution_csv(const EnsembleResult& result) {
    const Lattice lattice = result.params.lattice();
    if (result.mean_averaged_distribution.size() != lattice.size()) {
        throw std::invalid_argument("distribution_csv: result does not match its lattice");
    }
    std::string out = "x,y,mean_time_averaged_probability\n";
    for (std::size_t v = 0; v < lattice.size(); ++v) {
        const Vertex xy = lattice.vertex(v);
        out += std::to_string(xy.x);
        out += ',';
        out += std::to_string(xy.y);
        out += ',';
        out += format_double(result.mean_averaged_distribution[v]);
        out += '\n';
    }
    return out;
}

inline nlohmann::json params_to_json(const WalkParams& p) {
    nlohmann::json j;
    j["grid"] = {{"side_x", p.side_x}, {"side_y", p.side_y}};
    j["loop_weight"] = {{"token", format_loop_weight(p.loop_weight)},
                        {"value", p.loop_weight.value},
                        {"per_vertex_count", p.loop_weight.per_vertex_count},
                        {"resolved", p.resolved_loop_weight()}};
    j["break_probability"] = p.break_probability;
    j["steps"] = p.steps;
    j["runs"] = p.runs;
    j["base_seed"] = p.base_seed;
    if (p.marked) {
        j["marked"] = {p.marked->x, p.marked->y};
    } else {
        j["marked"] = nullptr;
    }
    j["marked_vertex"] = {p.marked_vertex().x, p.marked_vertex().y};
    j["oracle_enabled"] = p.oracle_enabled;
    return j;
}

inline WalkParams params_from_json(const nlohmann::json& j) {
    WalkParams p;
    p.side_x = j.at("grid").at("side_x").get<int>();
    p.side_y = j.at("grid").at("side_y").get<int>();
    p.loop_weight.value = j.at("loop_weight").at("value").get<double>();
    p.loop_weight.per_vertex_count = j.at("loop_weight").at("per_vertex_count").get<bool>();
    p.break_probability = j.at("break_probability").get<double>();
    p.steps = j.at("steps").get<std::uint64_t>();
    p.runs = j.at("runs").get<std::uint64_t>();
    p.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (const auto& m = j.at("marked"); !m.is_null()) {
        p.marked = Vertex{m.at(0).get<int>(), m.at(1).get<int>()};
    }
    p.oracle_enabled = j.at("oracle_enabled").get<bool>();
    return p;
}

inline std::string metadata_json(const EnsembleResult& result) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["params"] = params_to_json(result.params);
    j["run_count"] = result.run_count;
    j["seeds"] = result.seeds;
    j["rng"] = "mt19937_64, seed = base_seed + run_index, top 53 bits per edge draw";
    j["uniform_baseline"] = result.uniform_baseline();
    return j.dump(2) + "\n";
}

inline WalkParams read_metadata(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    try {
        return params_from_json(nlohmann::json::parse(in).at("params"));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

namespace detail {

/// Writes to a sibling temporary and renames over the target.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot move output into place at " + path.string());
    }
}

}  // namespace detail

struct ExperimentOutput {
    std::filesystem::path success_csv;
    std::filesystem::path distribution_csv;
    std::filesystem::path metadata_json;
};

inline ExperimentOutput write_output(const EnsembleResult& result, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " +
                                 ec.message());
    }
    ExperimentOutput files{out_dir / "success.csv", out_dir / "distribution.csv", out_dir / "meta.json"};
    detail::write_file_atomic(files.success_csv, success_csv(result));
    detail::write_file_atomic(files.distribution_csv, distribution_csv(result));
    detail::write_file_atomic(files.metadata_json, metadata_json(result));
    return files;
}

}  // namespace lqw
