#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>

#include "lqw/lattice.hpp"
#include "lqw/percolation.hpp"
#include "lqw/qstate.hpp"

namespace lqw {

/*!
 * Weighted Grover coin C = 2|s_c><s_c| - I on the five coin slots.
 *
 * Written with unnormalized weights w = (1, 1, 1, 1, sqrt(l)) this is
 * C = (2 / (4 + l)) w w^T - I. It is real, symmetric and an involution.
 */
class CoinSpec {
  public:
    explicit CoinSpec(double loop_weight)
        : loop_weight_(loop_weight), axis_(weighted_coin_state(loop_weight)) {}

    double loop_weight() const noexcept { return loop_weight_; }
    static constexpr std::size_t degree() noexcept { return kDegree; }

    /// Normalized reflection axis |s_c>.
    const std::array<double, kCoinDim>& axis() const noexcept { return axis_; }

    std::array<std::array<double, kCoinDim>, kCoinDim> matrix() const noexcept {
        std::array<std::array<double, kCoinDim>, kCoinDim> m{};
        for (std::size_t i = 0; i < kCoinDim; ++i) {
            for (std::size_t j = 0; j < kCoinDim; ++j) {
                m[i][j] = 2.0 * axis_[i] * axis_[j] - (i == j ? 1.0 : 0.0);
            }
        }
        return m;
    }

  private:
    double loop_weight_;
    std::array<double, kCoinDim> axis_;
};

/// Single marked vertex.
class OracleSpec {
  public:
    OracleSpec(const Lattice& lattice, Vertex marked) : marked_(marked), index_(lattice.index(marked)) {}

    Vertex marked() const noexcept { return marked_; }
    std::size_t marked_index() const noexcept { return index_; }

  private:
    Vertex marked_;
    std::size_t index_;
};

/// Per vertex, a -> 2 <s_c|a> s_c - a.
inline void apply_coin(WalkState& state, const CoinSpec& coin) noexcept {
    const auto& s = coin.axis();
    const std::size_t n = state.vertex_count();
    Complex* base = state.amplitudes().data();
    for (std::size_t v = 0; v < n; ++v) {
        Complex overlap{0.0, 0.0};
        for (std::size_t i = 0; i < kCoinDim; ++i) {
            overlap += s[i] * base[i * n + v];
        }
        overlap *= 2.0;
        for (std::size_t i = 0; i < kCoinDim; ++i) {
            Complex& a = base[i * n + v];
            a = s[i] * overlap - a;
        }
    }
}

/*!
 * Flip-flop shift with broken links.
 *
 * For an intact edge v -(dir)- w the arc amplitudes (dir, v) and
 * (reverse(dir), w) are exchanged. For a broken edge both arcs stay where they
 * are, so the map remains a permutation of basis states; the trapped amplitude
 * is spread over the other slots by the next coin. Loop amplitudes never move.
 */
inline void apply_shift(WalkState& state, const EdgeMask& mask) {
    const Lattice& lattice = state.lattice();
    if (!(mask.lattice() == lattice)) {
        throw std::invalid_argument("apply_shift: edge mask belongs to a different lattice");
    }
    const int sx = lattice.side_x();
    const int sy = lattice.side_y();
    auto plus_x = state.slot(Direction::PlusX);
    auto minus_x = state.slot(Direction::MinusX);
    auto plus_y = state.slot(Direction::PlusY);
    auto minus_y = state.slot(Direction::MinusY);
    for (int y = 0; y < sy; ++y) {
        const int y_next = y + 1 == sy ? 0 : y + 1;
        for (int x = 0; x < sx; ++x) {
            const int x_next = x + 1 == sx ? 0 : x + 1;
            const std::size_t v = static_cast<std::size_t>(y) * sx + x;
            if (!mask.is_broken(2 * v)) {
                std::swap(plus_x[v], minus_x[static_cast<std::size_t>(y) * sx + x_next]);
            }
            if (!mask.is_broken(2 * v + 1)) {
                std::swap(plus_y[v], minus_y[static_cast<std::size_t>(y_next) * sx + x]);
            }
        }
    }
}

/// Noiseless flip-flop shift.
inline void apply_shift(WalkState& state) { apply_shift(state, EdgeMask(state.lattice())); }

/// Negates every coin amplitude at the marked vertex.
inline void apply_oracle(WalkState& state, const OracleSpec& oracle) noexcept {
    for (const Direction dir : kAllDirections) {
        Complex& a = state.at(dir, oracle.marked_index());
        a = -a;
    }
}

/// One step of U' = R S (C (x) I): coin, masked shift, then oracle when one is
/// given. Passing nullopt runs the free walk.
inline void search_step(WalkState& state, const CoinSpec& coin, const std::optional<OracleSpec>& oracle,
                        const EdgeMask& mask) {
    apply_coin(state, coin);
    apply_shift(state, mask);
    if (oracle) {
        apply_oracle(state, *oracle);
    }
}

}  // namespace lqw
