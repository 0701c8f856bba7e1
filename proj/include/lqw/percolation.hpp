#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lqw/lattice.hpp"

namespace lqw {

/// Set of broken undirected grid edges, stored densely by edge index.
/// Self-loops are not edges and can never be broken.
class EdgeMask {
  public:
    explicit EdgeMask(const Lattice& lattice) : lattice_(lattice), broken_(lattice.edge_count(), 0) {}

    EdgeMask(const Lattice& lattice, std::span<const Edge> broken) : EdgeMask(lattice) {
        for (const Edge& e : broken) {
            break_edge(e);
        }
    }

    const Lattice& lattice() const noexcept { return lattice_; }

    /// Inserting an edge twice is a no-op (set semantics).
    void break_edge(Edge e) {
        const auto idx = lattice_.edge_index(e);
        if (!idx) {
            throw std::invalid_argument("edge mask: (" + std::to_string(e.u.x) + "," +
                                        std::to_string(e.u.y) + ")-(" + std::to_string(e.w.x) +
                                        "," + std::to_string(e.w.y) + ") is not a lattice edge");
        }
        broken_[*idx] = 1;
    }

    void set(std::size_t edge_index, bool broken) { broken_.at(edge_index) = broken ? 1 : 0; }
    void clear() noexcept { std::fill(broken_.begin(), broken_.end(), std::uint8_t{0}); }

    bool is_broken(std::size_t edge_index) const noexcept { return broken_[edge_index] != 0; }
    bool is_broken(Edge e) const {
        const auto idx = lattice_.edge_index(e);
        return idx && broken_[*idx] != 0;
    }

    bool empty() const noexcept { return broken_count() == 0; }

    std::size_t broken_count() const noexcept {
        std::size_t n = 0;
        for (const auto b : broken_) n += b;
        return n;
    }

    std::vector<Edge> broken_edges() const {
        std::vector<Edge> out;
        for (std::size_t e = 0; e < broken_.size(); ++e) {
            if (broken_[e]) out.push_back(lattice_.edge(e));
        }
        return out;
    }

    friend bool operator==(const EdgeMask&, const EdgeMask&) = default;

  private:
    Lattice lattice_;
    std::vector<std::uint8_t> broken_;
};

struct NoiseSpec {
    double break_probability = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(break_probability >= 0.0 && break_probability <= 1.0)) {
            throw std::invalid_argument("break probability must lie in [0, 1]");
        }
    }
};

/// The mask generator is std::mt19937_64, whose output sequence is fixed by
/// the standard. Uniform variates are formed from the top 53 bits by hand
/// because the std distributions are implementation-defined.
using MaskEngine = std::mt19937_64;

inline double unit_uniform(MaskEngine& engine) noexcept {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Re-samples every one of the 2N edges independently with probability p.
/// Always consumes exactly 2N draws so the stream position depends only on
/// the number of steps taken.
inline void sample_mask(double break_probability, MaskEngine& engine, EdgeMask& mask) {
    const std::size_t edges = mask.lattice().edge_count();
    for (std::size_t e = 0; e < edges; ++e) {
        mask.set(e, unit_uniform(engine) < break_probability);
    }
}

/// Dynamic percolation noise for one trajectory: owns its generator and a
/// reusable mask that is redrawn on every call to next().
class PercolationNoise {
  public:
    PercolationNoise(const Lattice& lattice, NoiseSpec spec)
        : spec_(spec), engine_(spec.seed), mask_(lattice) {
        spec_.validate();
    }

    const NoiseSpec& spec() const noexcept { return spec_; }

    const EdgeMask& next() {
        sample_mask(spec_.break_probability, engine_, mask_);
        return mask_;
    }

  private:
    NoiseSpec spec_;
    MaskEngine engine_;
    EdgeMask mask_;
};

/// Seed for trajectory run_index of an ensemble (wraps modulo 2^64).
constexpr std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t run_index) noexcept {
    return base_seed + run_index;
}

}  // namespace lqw
