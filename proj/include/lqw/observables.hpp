#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lqw/params.hpp"
#include "lqw/qstate.hpp"

namespace lqw {

/// One trajectory's measurements.
struct TrajectoryRecord {
    /// Marked-vertex probability at t = 0..T (T + 1 entries).
    std::vector<double> success_series;
    /// (1/T) sum_{t=1..T} P_t(x, y); the initial state is not included.
    std::vector<double> averaged_distribution;

    friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

struct EnsembleResult {
    std::vector<double> mean_success;
    std::vector<double> std_success;  ///< sample std (n - 1 divisor), 0 for a single run
    std::vector<double> mean_averaged_distribution;
    std::size_t run_count = 0;
    WalkParams params{};
    std::vector<std::uint64_t> seeds;

    double uniform_baseline() const noexcept {
        return mean_averaged_distribution.empty()
                   ? 0.0
                   : 1.0 / static_cast<double>(mean_averaged_distribution.size());
    }
};

inline double success_probability(const WalkState& state, Vertex marked) {
    return vertex_probability(state, marked);
}

/// Running sum for the time-averaged position distribution.
class TimeAverage {
  public:
    explicit TimeAverage(std::size_t vertex_count) : sum_(vertex_count, 0.0) {}

    void add(std::span<const double> distribution) {
        if (distribution.size() != sum_.size()) {
            throw std::invalid_argument("time average: distribution size mismatch");
        }
        for (std::size_t v = 0; v < sum_.size(); ++v) {
            sum_[v] += distribution[v];
        }
        ++count_;
    }

    std::size_t count() const noexcept { return count_; }

    std::vector<double> result() const {
        if (count_ == 0) {
            throw std::invalid_argument("time average: no distributions were added");
        }
        std::vector<double> out(sum_);
        const double inv = 1.0 / static_cast<double>(count_);
        for (double& p : out) p *= inv;
        return out;
    }

  private:
    std::vector<double> sum_;
    std::size_t count_ = 0;
};

/// Entrywise mean of P_1..P_T. The caller passes the distributions after each
/// step; P_0 does not belong in the sequence.
inline std::vector<double> time_averaged_distribution(std::span<const std::vector<double>> per_step) {
    if (per_step.empty()) {
        throw std::invalid_argument("time_averaged_distribution: empty sequence");
    }
    TimeAverage avg(per_step.front().size());
    for (const auto& dist : per_step) {
        avg.add(dist);
    }
    return avg.result();
}

inline EnsembleResult aggregate_ensemble(std::span<const TrajectoryRecord> records) {
    if (records.empty()) {
        throw std::invalid_argument("aggregate_ensemble: no records");
    }
    const std::size_t steps = records.front().success_series.size();
    const std::size_t vertices = records.front().averaged_distribution.size();
    for (const auto& r : records) {
        if (r.success_series.size() != steps || r.averaged_distribution.size() != vertices) {
            throw std::invalid_argument("aggregate_ensemble: records have mismatched shapes");
        }
    }

    EnsembleResult out;
    out.run_count = records.size();
    out.mean_success.assign(steps, 0.0);
    out.std_success.assign(steps, 0.0);
    out.mean_averaged_distribution.assign(vertices, 0.0);

    // Welford updates: identical inputs give an exact mean and exactly zero spread.
    std::vector<double> m2(steps, 0.0);
    std::size_t k = 0;
    for (const auto& r : records) {
        ++k;
        const double inv_k = 1.0 / static_cast<double>(k);
        for (std::size_t t = 0; t < steps; ++t) {
            const double delta = r.success_series[t] - out.mean_success[t];
            out.mean_success[t] += delta * inv_k;
            m2[t] += delta * (r.success_series[t] - out.mean_success[t]);
        }
        for (std::size_t v = 0; v < vertices; ++v) {
            out.mean_averaged_distribution[v] +=
                (r.averaged_distribution[v] - out.mean_averaged_distribution[v]) * inv_k;
        }
    }
    if (k > 1) {
        for (std::size_t t = 0; t < steps; ++t) {
            out.std_success[t] = std::sqrt(std::max(m2[t], 0.0) / static_cast<double>(k - 1));
        }
    }
    return out;
}

}  // namespace lqw
