#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "lqw/qstate.hpp"
#include "oracles.hpp"

using namespace lqw;

TEST(QState, UniformInitialStateLooplessEntries) {
    const Lattice l(16, 16);
    const WalkState s = uniform_initial_state(l, 0.0);
    ASSERT_EQ(s.amplitudes().size(), 5u * 256u);
    const double expected = 1.0 / std::sqrt(1024.0);
    for (const Direction d : kCardinalDirections) {
        for (const Complex a : s.slot(d)) EXPECT_DOUBLE_EQ(a.real(), expected);
    }
    for (const Complex a : s.slot(Direction::Loop)) EXPECT_EQ(a, Complex(0.0, 0.0));
}

TEST(QState, UniformInitialStateIsNormalized) {
    for (const double ell : {0.0, 4.0 / 256.0, 0.1, 1.0, 7.5}) {
        for (const auto& [sx, sy] : {std::pair{3, 3}, std::pair{16, 16}, std::pair{5, 9}}) {
            EXPECT_NEAR(uniform_initial_state(Lattice(sx, sy), ell).norm_squared(), 1.0, 1e-12);
        }
    }
}

TEST(QState, LoopShareOfVertexMass) {
    // l / (4 + l) at l = 4/256 is 1/257.
    const Lattice l(16, 16);
    const WalkState s = uniform_initial_state(l, 4.0 / 256.0);
    for (std::size_t v = 0; v < l.size(); ++v) {
        const double loop = std::norm(s.at(Direction::Loop, v));
        EXPECT_NEAR(loop / vertex_probability(s, v), 0.0038910505836575876, 1e-15);
    }
}

TEST(QState, NegativeLoopWeightRejected) {
    EXPECT_THROW(uniform_initial_state(Lattice(4, 4), -0.5), std::invalid_argument);
    EXPECT_THROW(uniform_initial_state(Lattice(4, 4), std::nan("")), std::invalid_argument);
}

TEST(QState, VertexProbabilityUniform) {
    const Lattice l(16, 16);
    const WalkState s = uniform_initial_state(l, 4.0 / 256.0);
    for (std::size_t v = 0; v < l.size(); ++v) EXPECT_NEAR(vertex_probability(s, v), 0.00390625, 1e-15);
}

TEST(QState, VertexProbabilityBasisState) {
    const Lattice l(4, 4);
    const WalkState s = basis_state(l, Direction::PlusX, {1, 2});
    for (std::size_t v = 0; v < l.size(); ++v) {
        EXPECT_EQ(vertex_probability(s, v), (l.vertex(v) == Vertex{1, 2}) ? 1.0 : 0.0);
    }
}

TEST(QState, PositionDistributionMatchesVertexProbability) {
    std::mt19937_64 rng(11);
    const Lattice l(5, 4);
    for (int trial = 0; trial < 20; ++trial) {
        const WalkState s = reference::random_state(l, rng);
        const auto dist = position_distribution(s);
        ASSERT_EQ(dist.size(), l.size());
        for (std::size_t v = 0; v < l.size(); ++v) {
            EXPECT_GE(dist[v], 0.0);
            EXPECT_DOUBLE_EQ(dist[v], vertex_probability(s, v));
        }
        EXPECT_NEAR(std::accumulate(dist.begin(), dist.end(), 0.0), 1.0, 1e-12);
    }
    const auto uniform = position_distribution(uniform_initial_state(l, 0.3));
    for (const double p : uniform) EXPECT_NEAR(p, 1.0 / 20.0, 1e-15);
}

TEST(QState, CoinMajorLayout) {
    const Lattice l(3, 3);
    WalkState s(l);
    s.at(Direction::PlusY, Vertex{2, 1}) = {0.5, -0.25};
    EXPECT_EQ(s.amplitudes()[2 * 9 + 5], Complex(0.5, -0.25));
}

TEST(QState, DumpListsEveryBasisStateLosslessly) {
    const Lattice l(3, 3);
    WalkState s(l);
    s.at(Direction::Loop, Vertex{1, 2}) = {0.1, -1.0 / 3.0};
    std::ostringstream os;
    write_state(os, s);
    std::istringstream in(os.str());
    int lines = 0, dir = 0, x = 0, y = 0;
    double re = 0, im = 0;
    while (in >> dir >> x >> y >> re >> im) {
        ++lines;
        EXPECT_EQ(Complex(re, im), s.at(static_cast<Direction>(dir), Vertex{x, y}));
    }
    EXPECT_EQ(lines, 45);
}
