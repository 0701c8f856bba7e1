#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <string>
#include <string_view>

#include "lqw/lattice.hpp"

namespace lqw {

/// Self-loop weight, either a literal value or a multiple of 1/N ("4/N").
struct LoopWeight {
    double value = 0.0;
    bool per_vertex_count = false;

    double resolve(std::size_t vertex_count) const noexcept {
        return per_vertex_count ? value / static_cast<double>(vertex_count) : value;
    }

    friend bool operator==(const LoopWeight&, const LoopWeight&) = default;
};

namespace detail {

inline double parse_double(std::string_view text, std::string_view what) {
    double out = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw std::invalid_argument(std::string(what) + ": cannot parse '" + std::string(text) + "'");
    }
    return out;
}

template <typename Int>
Int parse_int(std::string_view text, std::string_view what) {
    Int out{};
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw std::invalid_argument(std::string(what) + ": cannot parse '" + std::string(text) + "'");
    }
    return out;
}

}  // namespace detail

/// Accepts "<real>" or "<real>/N".
inline LoopWeight parse_loop_weight(std::string_view text) {
    LoopWeight w;
    if (text.size() >= 2 && text.substr(text.size() - 2) == "/N") {
        w.per_vertex_count = true;
        text.remove_suffix(2);
    }
    w.value = detail::parse_double(text, "loop weight");
    if (!(w.value >= 0.0) || !std::isfinite(w.value)) {
        throw std::invalid_argument("loop weight must be a finite value >= 0");
    }
    return w;
}

inline std::string format_loop_weight(const LoopWeight& w) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w.value);
    std::string out(buf, ptr);
    if (w.per_vertex_count) out += "/N";
    return out;
}

/// "WxH", e.g. "16x16".
inline std::pair<int, int> parse_grid(std::string_view text) {
    const auto sep = text.find('x');
    if (sep == std::string_view::npos) {
        throw std::invalid_argument("grid: expected WxH, got '" + std::string(text) + "'");
    }
    return {detail::parse_int<int>(text.substr(0, sep), "grid width"),
            detail::parse_int<int>(text.substr(sep + 1), "grid height")};
}

/// "x,y".
inline Vertex parse_vertex(std::string_view text) {
    const auto sep = text.find(',');
    if (sep == std::string_view::npos) {
        throw std::invalid_argument("marked: expected x,y, got '" + std::string(text) + "'");
    }
    return {detail::parse_int<int>(text.substr(0, sep), "marked x"),
            detail::parse_int<int>(text.substr(sep + 1), "marked y")};
}

/// Everything that determines an experiment's output. Thread count is
/// deliberately absent: it never changes results.
struct WalkParams {
    int side_x = 16;
    int side_y = 16;
    LoopWeight loop_weight{4.0, true};
    double break_probability = 0.0;
    std::uint64_t steps = 1000;
    std::uint64_t runs = 1;
    std::uint64_t base_seed = 0;
    std::optional<Vertex> marked;  ///< nullopt: grid center
    bool oracle_enabled = true;

    Lattice lattice() const { return Lattice(side_x, side_y); }
    std::size_t vertex_count() const noexcept { return static_cast<std::size_t>(side_x) * side_y; }
    double resolved_loop_weight() const noexcept { return loop_weight.resolve(vertex_count()); }
    Vertex marked_vertex() const noexcept { return marked.value_or(Vertex{side_x / 2, side_y / 2}); }

    void validate() const {
        const Lattice lat = lattice();
        if (!(loop_weight.value >= 0.0) || !std::isfinite(loop_weight.value)) {
            throw std::invalid_argument("loop weight must be a finite value >= 0");
        }
        if (!(break_probability >= 0.0 && break_probability <= 1.0)) {
            throw std::invalid_argument("break probability must lie in [0, 1]");
        }
        if (steps < 1) throw std::invalid_argument("steps must be >= 1");
        if (runs < 1) throw std::invalid_argument("runs must be >= 1");
        if (!lat.contains(marked_vertex())) {
            throw std::invalid_argument("marked vertex is not on the lattice");
        }
    }

    friend bool operator==(const WalkParams&, const WalkParams&) = default;
};

}  // namespace lqw
