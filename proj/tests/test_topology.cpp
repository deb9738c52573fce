#include <catch2/catch_amalgamated.hpp>

#include "dlmp/topology.hpp"

using namespace dlmp;

namespace {

// column sums 1, support confined to closed neighborhoods, entries >= 0
void check_weight_invariants(const std::vector<std::vector<double>>& m,
                             const Network& net) {
    const std::size_t n = net.n_nodes;
    for (std::size_t k = 0; k < n; ++k) {
        double col = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            CHECK(m[l][k] >= 0.0);
            if (m[l][k] != 0.0)
                CHECK((l == k || net.adjacency[l][k]));
            col += m[l][k];
        }
        CHECK(col == Catch::Approx(1.0).epsilon(0).margin(1e-12));
    }
}

} // namespace

TEST_CASE("single node network is trivially connected") {
    Rng rng = make_rng(1);
    const Network net = generate_rgg(1, 0.5, rng);
    CHECK(net.n_nodes == 1);
    CHECK(net.neighborhoods[0] == std::vector<std::size_t>{0});
    CHECK(is_connected(net));
}

TEST_CASE("adjacency follows the distance threshold") {
    const Network near = build_network(2, 0.5, {{0.0, 0.0}, {0.3, 0.0}});
    CHECK(near.adjacency[0][1]);
    CHECK(is_connected(near));

    const Network far = build_network(2, 0.5, {{0.0, 0.0}, {0.9, 0.0}});
    CHECK_FALSE(far.adjacency[0][1]);
    CHECK_FALSE(is_connected(far));

    // tie at exactly r counts as adjacent
    const Network tie = build_network(2, 0.5, {{0.0, 0.0}, {0.5, 0.0}});
    CHECK(tie.adjacency[0][1]);
}

TEST_CASE("path graph is connected") {
    const Network path = build_network(3, 0.4, {{0.0, 0.0}, {0.35, 0.0}, {0.7, 0.0}});
    CHECK(path.adjacency[0][1]);
    CHECK(path.adjacency[1][2]);
    CHECK_FALSE(path.adjacency[0][2]);
    CHECK(is_connected(path));
}

TEST_CASE("generate_rgg yields a connected 20-node network") {
    Rng rng = make_rng(3);
    const Network net = generate_rgg(20, 0.5, rng);
    CHECK(net.n_nodes == 20);
    CHECK(is_connected(net));
    for (std::size_t k = 0; k < 20; ++k) {
        CHECK(net.positions[k].x >= 0.0);
        CHECK(net.positions[k].x <= 1.0);
        CHECK_FALSE(net.adjacency[k][k]);
        for (std::size_t l = 0; l < 20; ++l)
            CHECK(net.adjacency[k][l] == net.adjacency[l][k]);
    }
}

TEST_CASE("generate_rgg is reproducible and validates inputs") {
    Rng a = make_rng(5), b = make_rng(5);
    const Network na = generate_rgg(10, 0.5, a);
    const Network nb = generate_rgg(10, 0.5, b);
    for (std::size_t k = 0; k < 10; ++k) {
        CHECK(na.positions[k].x == nb.positions[k].x);
        CHECK(na.positions[k].y == nb.positions[k].y);
    }
    Rng rng = make_rng(6);
    CHECK_THROWS_AS(generate_rgg(0, 0.5, rng), domain_error);
    CHECK_THROWS_AS(generate_rgg(5, 0.0, rng), domain_error);
    CHECK_THROWS_AS(generate_rgg(5, 2.0, rng), domain_error);
}

TEST_CASE("connectivity retry budget exhausts on an infeasible radius") {
    Rng rng = make_rng(7);
    CHECK_THROWS_AS(generate_rgg(30, 0.005, rng), generation_error);
}

TEST_CASE("radius growth never removes an edge") {
    Rng rng = make_rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point2> pos(15);
    for (auto& pt : pos)
        pt = {unit(rng), unit(rng)};
    const Network small = build_network(15, 0.3, pos);
    const Network large = build_network(15, 0.6, pos);
    for (std::size_t k = 0; k < 15; ++k)
        for (std::size_t l = 0; l < 15; ++l)
            if (small.adjacency[k][l])
                CHECK(large.adjacency[k][l]);
}

TEST_CASE("uniform weights") {
    const Network solo = build_network(1, 0.5, {{0.5, 0.5}});
    const auto w = uniform_weights(solo);
    CHECK(w.a1[0][0] == 1.0);
    CHECK(w.a2[0][0] == 1.0);
    CHECK(w.c[0][0] == 1.0);

    // star center with 3 leaves: |N_center| = 4 -> entries 0.25
    const Network star =
        build_network(4, 0.3, {{0.5, 0.5}, {0.5, 0.75}, {0.5, 0.25}, {0.75, 0.5}});
    const auto m = uniform_matrix(star);
    for (std::size_t l = 0; l < 4; ++l)
        CHECK(m[l][0] == Catch::Approx(0.25));
    check_weight_invariants(m, star);
}

TEST_CASE("metropolis weights") {
    const Network solo = build_network(1, 0.5, {{0.5, 0.5}});
    CHECK(metropolis_matrix(solo)[0][0] == 1.0);

    // two adjacent nodes: closed degree 2 each -> off-diagonal 1/2, diagonal 1/2
    const Network pair = build_network(2, 0.5, {{0.0, 0.0}, {0.2, 0.0}});
    const auto m = metropolis_matrix(pair);
    CHECK(m[1][0] == Catch::Approx(0.5));
    CHECK(m[0][0] == Catch::Approx(0.5));
    check_weight_invariants(m, pair);
}

TEST_CASE("all weight rules satisfy the combination invariants on random graphs") {
    Rng rng = make_rng(9);
    for (int rep = 0; rep < 25; ++rep) {
        const Network net = generate_rgg(12, 0.5, rng);
        for (WeightRule rule :
             {WeightRule::identity, WeightRule::uniform, WeightRule::metropolis})
            check_weight_invariants(weight_matrix(net, rule), net);
    }
}
