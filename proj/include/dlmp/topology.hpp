#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "dlmp/errors.hpp"
#include "dlmp/rng.hpp"

namespace dlmp {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Random geometric graph on the unit square: nodes adjacent iff their
/// Euclidean distance is <= radius (inclusive tie convention).
/// Neighborhoods are closed: node k always belongs to its own neighborhood.
struct Network {
    std::size_t n_nodes = 0;
    double radius = 0.0;
    std::vector<Point2> positions;
    std::vector<std::vector<bool>> adjacency; ///< symmetric, irreflexive
    std::vector<std::vector<std::size_t>> neighborhoods; ///< closed, sorted

    std::size_t degree(std::size_t k) const { return neighborhoods[k].size(); }
};

inline Network build_network(std::size_t n_nodes, double radius,
                             std::vector<Point2> positions) {
    Network net;
    net.n_nodes = n_nodes;
    net.radius = radius;
    net.positions = std::move(positions);
    net.adjacency.assign(n_nodes, std::vector<bool>(n_nodes, false));
    net.neighborhoods.assign(n_nodes, {});
    for (std::size_t k = 0; k < n_nodes; ++k) {
        for (std::size_t l = k + 1; l < n_nodes; ++l) {
            const double dx = net.positions[k].x - net.positions[l].x;
            const double dy = net.positions[k].y - net.positions[l].y;
            if (std::sqrt(dx * dx + dy * dy) <= radius) {
                net.adjacency[k][l] = true;
                net.adjacency[l][k] = true;
            }
        }
    }
    for (std::size_t k = 0; k < n_nodes; ++k) {
        for (std::size_t l = 0; l < n_nodes; ++l)
            if (l == k || net.adjacency[k][l])
                net.neighborhoods[k].push_back(l);
    }
    return net;
}

inline bool is_connected(const Network& net) {
    if (net.n_nodes == 0)
        return false;
    std::vector<bool> seen(net.n_nodes, false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const std::size_t k = frontier.front();
        frontier.pop();
        for (std::size_t l : net.neighborhoods[k]) {
            if (!seen[l]) {
                seen[l] = true;
                ++reached;
                frontier.push(l);
            }
        }
    }
    return reached == net.n_nodes;
}

constexpr int kRggRetryBudget = 1000;

/// Draw node positions i.i.d. uniform on [0,1]^2 and resample until the
/// resulting graph is connected.
inline Network generate_rgg(std::size_t n_nodes, double radius, Rng& rng) {
    if (n_nodes < 1)
        throw domain_error("generate_rgg: need at least one node");
    if (!(radius > 0.0) || !(radius <= std::sqrt(2.0)))
        throw domain_error("generate_rgg: radius must be in (0, sqrt(2)]");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 1; attempt <= kRggRetryBudget; ++attempt) {
        std::vector<Point2> positions(n_nodes);
        for (auto& pt : positions) {
            pt.x = unit(rng);
            pt.y = unit(rng);
        }
        Network net = build_network(n_nodes, radius, std::move(positions));
        if (is_connected(net))
            return net;
    }
    throw generation_error("generate_rgg: no connected graph in "
                           + std::to_string(kRggRetryBudget) + " attempts");
}

/// Combination coefficients of one diffusion round, indexed [l][k]:
/// column k holds the weights node k applies to neighbor contributions, so
/// every column sums to 1 and is supported on the closed neighborhood of k.
struct CombinationWeights {
    std::vector<std::vector<double>> a1; ///< first estimate combination
    std::vector<std::vector<double>> a2; ///< second estimate combination
    std::vector<std::vector<double>> c;  ///< measurement sharing
};

enum class WeightRule { identity, uniform, metropolis };

inline std::vector<std::vector<double>> identity_matrix(std::size_t n) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k)
        m[k][k] = 1.0;
    return m;
}

inline std::vector<std::vector<double>> uniform_matrix(const Network& net) {
    const std::size_t n = net.n_nodes;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l : net.neighborhoods[k])
            m[l][k] = 1.0 / static_cast<double>(net.degree(k));
    return m;
}

/// Metropolis rule with deg = closed neighborhood size; the diagonal absorbs
/// whatever keeps the column sum at 1.
inline std::vector<std::vector<double>> metropolis_matrix(const Network& net) {
    const std::size_t n = net.n_nodes;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        double off_diagonal = 0.0;
        for (std::size_t l : net.neighborhoods[k]) {
            if (l == k)
                continue;
            m[l][k] = 1.0 / static_cast<double>(std::max(net.degree(k), net.degree(l)));
            off_diagonal += m[l][k];
        }
        m[k][k] = 1.0 - off_diagonal;
    }
    return m;
}

inline std::vector<std::vector<double>> weight_matrix(const Network& net, WeightRule rule) {
    switch (rule) {
    case WeightRule::identity: return identity_matrix(net.n_nodes);
    case WeightRule::uniform: return uniform_matrix(net);
    case WeightRule::metropolis: return metropolis_matrix(net);
    }
    throw domain_error("weight_matrix: unknown rule");
}

/// Default adapt-then-combine instantiation: a1 = c = identity, a2 uniform.
inline CombinationWeights uniform_weights(const Network& net) {
    return {identity_matrix(net.n_nodes), uniform_matrix(net), identity_matrix(net.n_nodes)};
}

inline CombinationWeights metropolis_weights(const Network& net) {
    return {identity_matrix(net.n_nodes), metropolis_matrix(net), identity_matrix(net.n_nodes)};
}

inline CombinationWeights make_weights(const Network& net, WeightRule rule_a1,
                                       WeightRule rule_a2, WeightRule rule_c) {
    return {weight_matrix(net, rule_a1), weight_matrix(net, rule_a2),
            weight_matrix(net, rule_c)};
}

} // namespace dlmp
