#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lqw/lattice.hpp"

namespace lqw {

using Complex = std::complex<double>;

/*!
 * Amplitudes of the walker over coin (5 slots) x position (N vertices).
 *
 * Layout is coin-major: the amplitude for (dir, v) lives at
 * index_of(dir) * N + v. The loop slot is always present; for loop weight 0 it
 * simply carries zero amplitude.
 */
class WalkState {
  public:
    explicit WalkState(Lattice lattice)
        : lattice_(lattice), amplitudes_(kCoinDim * lattice.size(), Complex{0.0, 0.0}) {}

    const Lattice& lattice() const noexcept { return lattice_; }
    std::size_t vertex_count() const noexcept { return lattice_.size(); }

    std::span<Complex> amplitudes() noexcept { return amplitudes_; }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

    /// Contiguous block of N amplitudes for one coin slot.
    std::span<Complex> slot(Direction dir) noexcept {
        return std::span<Complex>(amplitudes_).subspan(index_of(dir) * vertex_count(), vertex_count());
    }
    std::span<const Complex> slot(Direction dir) const noexcept {
        return std::span<const Complex>(amplitudes_).subspan(index_of(dir) * vertex_count(),
                                                             vertex_count());
    }

    Complex& at(Direction dir, std::size_t v) noexcept {
        return amplitudes_[index_of(dir) * vertex_count() + v];
    }
    Complex at(Direction dir, std::size_t v) const noexcept {
        return amplitudes_[index_of(dir) * vertex_count() + v];
    }

    Complex& at(Direction dir, Vertex v) { return at(dir, lattice_.index(v)); }
    Complex at(Direction dir, Vertex v) const { return at(dir, lattice_.index(v)); }

    double norm_squared() const noexcept {
        double sum = 0.0;
        for (const Complex& a : amplitudes_) {
            sum += std::norm(a);
        }
        return sum;
    }

    friend bool operator==(const WalkState&, const WalkState&) = default;

  private:
    Lattice lattice_;
    std::vector<Complex> amplitudes_;
};

/// Normalized weighted coin state |s_c>: 1/sqrt(4+l) on each cardinal slot and
/// sqrt(l)/sqrt(4+l) on the loop slot.
inline std::array<double, kCoinDim> weighted_coin_state(double loop_weight) {
    if (!(loop_weight >= 0.0) || !std::isfinite(loop_weight)) {
        throw std::invalid_argument("loop weight must be a finite value >= 0");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(kDegree) + loop_weight);
    return {scale, scale, scale, scale, std::sqrt(loop_weight) * scale};
}

/// (1/sqrt(N)) sum_v |s_c> (x) |v>. With the flip-flop shift and no oracle this
/// state is stationary, which makes it the natural starting point for search.
inline WalkState uniform_initial_state(const Lattice& lattice, double loop_weight) {
    const auto coin = weighted_coin_state(loop_weight);
    WalkState state(lattice);
    const double position = 1.0 / std::sqrt(static_cast<double>(lattice.size()));
    for (const Direction dir : kAllDirections) {
        const Complex value{coin[index_of(dir)] * position, 0.0};
        for (Complex& a : state.slot(dir)) {
            a = value;
        }
    }
    return state;
}

inline WalkState basis_state(const Lattice& lattice, Direction dir, Vertex v) {
    WalkState state(lattice);
    state.at(dir, v) = Complex{1.0, 0.0};
    return state;
}

inline double vertex_probability(const WalkState& state, std::size_t v) {
    double p = 0.0;
    for (const Direction dir : kAllDirections) {
        p += std::norm(state.at(dir, v));
    }
    return p;
}

inline double vertex_probability(const WalkState& state, Vertex v) {
    return vertex_probability(state, state.lattice().index(v));
}

/// Writes the position marginal into out (size N), avoiding an allocation per step.
inline void position_distribution(const WalkState& state, std::span<double> out) {
    if (out.size() != state.vertex_count()) {
        throw std::invalid_argument("position_distribution: output size mismatch");
    }
    std::fill(out.begin(), out.end(), 0.0);
    for (const Direction dir : kAllDirections) {
        const auto block = state.slot(dir);
        for (std::size_t v = 0; v < block.size(); ++v) {
            out[v] += std::norm(block[v]);
        }
    }
}

inline std::vector<double> position_distribution(const WalkState& state) {
    std::vector<double> out(state.vertex_count());
    position_distribution(state, out);
    return out;
}

/*!
 * Debug dump, one line per basis state in storage order:
 *
 *     <dir> <x> <y> <re> <im>
 *
 * dir is the slot index 0..4 (+x, -x, +y, -y, loop). Values are printed with
 * 17 significant digits so a dump is lossless.
 */
inline void write_state(std::ostream& os, const WalkState& state) {
    const auto old_precision = os.precision(17);
    const Lattice& lattice = state.lattice();
    for (const Direction dir : kAllDirections) {
        for (std::size_t v = 0; v < state.vertex_count(); ++v) {
            const Vertex xy = lattice.vertex(v);
            const Complex a = state.at(dir, v);
            os << index_of(dir) << ' ' << xy.x << ' ' << xy.y << ' ' << a.real() << ' ' << a.imag()
               << '\n';
        }
    }
    os.precision(old_precision);
}

}  // namespace lqw
