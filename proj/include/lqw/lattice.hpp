#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lqw {

/// Coin basis slots. The four cardinal arcs come first; the self-loop is slot 4
/// (the extra coin state |d> with d = 4 on the square grid).
enum class Direction : std::uint8_t { PlusX = 0, MinusX = 1, PlusY = 2, MinusY = 3, Loop = 4 };

inline constexpr std::size_t kDegree = 4;
inline constexpr std::size_t kCoinDim = kDegree + 1;

inline constexpr std::array<Direction, kDegree> kCardinalDirections{
    Direction::PlusX, Direction::MinusX, Direction::PlusY, Direction::MinusY};

inline constexpr std::array<Direction, kCoinDim> kAllDirections{
    Direction::PlusX, Direction::MinusX, Direction::PlusY, Direction::MinusY, Direction::Loop};

constexpr std::size_t index_of(Direction dir) noexcept { return static_cast<std::size_t>(dir); }

constexpr Direction reverse(Direction dir) noexcept {
    switch (dir) {
        case Direction::PlusX: return Direction::MinusX;
        case Direction::MinusX: return Direction::PlusX;
        case Direction::PlusY: return Direction::MinusY;
        case Direction::MinusY: return Direction::PlusY;
        case Direction::Loop: return Direction::Loop;
    }
    return dir;
}

inline const char* to_string(Direction dir) noexcept {
    switch (dir) {
        case Direction::PlusX: return "+x";
        case Direction::MinusX: return "-x";
        case Direction::PlusY: return "+y";
        case Direction::MinusY: return "-y";
        case Direction::Loop: return "loop";
    }
    return "?";
}

struct Vertex {
    int x = 0;
    int y = 0;

    friend constexpr bool operator==(Vertex, Vertex) = default;
};

/// Undirected grid edge. Stored as written; Lattice::edge_index() resolves
/// either orientation to the same canonical index.
struct Edge {
    Vertex u;
    Vertex w;
};

/*!
 * Periodic side_x by side_y grid (a torus).
 *
 * Vertices are linearized row-major, index = y * side_x + x. Edges are indexed
 * as 2 * index(v) + axis, where axis 0 is the arc v -> v+x and axis 1 is the
 * arc v -> v+y, so every undirected edge has exactly one index in [0, 2N).
 *
 * Sides below 3 are rejected: with side 2 the +/- neighbors coincide and the
 * grid grows double edges.
 */
class Lattice {
  public:
    static constexpr int kMinSide = 3;

    Lattice(int side_x, int side_y) : side_x_(side_x), side_y_(side_y) {
        if (side_x < kMinSide || side_y < kMinSide) {
            throw std::invalid_argument("lattice sides must be >= 3, got " + std::to_string(side_x) +
                                        "x" + std::to_string(side_y));
        }
    }

    int side_x() const noexcept { return side_x_; }
    int side_y() const noexcept { return side_y_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(side_x_) * side_y_; }
    std::size_t edge_count() const noexcept { return 2 * size(); }

    bool contains(Vertex v) const noexcept {
        return v.x >= 0 && v.x < side_x_ && v.y >= 0 && v.y < side_y_;
    }

    /// Reduces arbitrary integer coordinates onto the torus.
    Vertex wrap(Vertex v) const noexcept {
        return {positive_mod(v.x, side_x_), positive_mod(v.y, side_y_)};
    }

    std::size_t index(Vertex v) const {
        if (!contains(v)) {
            throw std::out_of_range("vertex (" + std::to_string(v.x) + "," + std::to_string(v.y) +
                                    ") is not on the lattice");
        }
        return static_cast<std::size_t>(v.y) * side_x_ + v.x;
    }

    Vertex vertex(std::size_t index) const noexcept {
        return {static_cast<int>(index % side_x_), static_cast<int>(index / side_x_)};
    }

    Vertex neighbor(Vertex v, Direction dir) const {
        if (!contains(v)) {
            throw std::out_of_range("neighbor(): vertex is not on the lattice");
        }
        switch (dir) {
            case Direction::PlusX: return {v.x + 1 == side_x_ ? 0 : v.x + 1, v.y};
            case Direction::MinusX: return {v.x == 0 ? side_x_ - 1 : v.x - 1, v.y};
            case Direction::PlusY: return {v.x, v.y + 1 == side_y_ ? 0 : v.y + 1};
            case Direction::MinusY: return {v.x, v.y == 0 ? side_y_ - 1 : v.y - 1};
            case Direction::Loop: break;
        }
        throw std::invalid_argument("neighbor(): the self-loop is not a grid edge");
    }

    std::size_t neighbor_index(std::size_t v, Direction dir) const {
        return index(neighbor(vertex(v), dir));
    }

    /// Canonical edge with the given index (u -> w along +x or +y).
    Edge edge(std::size_t edge_index) const {
        if (edge_index >= edge_count()) {
            throw std::out_of_range("edge index " + std::to_string(edge_index) + " out of range");
        }
        const Vertex u = vertex(edge_index / 2);
        const Direction dir = edge_index % 2 == 0 ? Direction::PlusX : Direction::PlusY;
        return {u, neighbor(u, dir)};
    }

    /// Index of the undirected edge joining e.u and e.w, or nullopt when they are
    /// not adjacent (or off the lattice).
    std::optional<std::size_t> edge_index(Edge e) const noexcept {
        if (!contains(e.u) || !contains(e.w)) {
            return std::nullopt;
        }
        for (const Vertex from : {e.u, e.w}) {
            const Vertex to = from == e.u ? e.w : e.u;
            const std::size_t base = 2 * (static_cast<std::size_t>(from.y) * side_x_ + from.x);
            if (neighbor(from, Direction::PlusX) == to) return base;
            if (neighbor(from, Direction::PlusY) == to) return base + 1;
        }
        return std::nullopt;
    }

    /// Every undirected non-loop edge exactly once, ordered by edge index.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count());
        for (std::size_t e = 0; e < edge_count(); ++e) {
            out.push_back(edge(e));
        }
        return out;
    }

    friend bool operator==(const Lattice&, const Lattice&) = default;

  private:
    static int positive_mod(int a, int m) noexcept {
        const int r = a % m;
        return r < 0 ? r + m : r;
    }

    int side_x_;
    int side_y_;
};

}  // namespace lqw
