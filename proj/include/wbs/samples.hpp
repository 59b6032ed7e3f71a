#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wbs/errors.hpp"
#include "wbs/metric.hpp"

// Generators for the bundled sample spaces.
namespace wbs::samples {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// n points 0, h, 2h, ... on the real line.
inline FiniteMetricSpace line_grid(std::size_t n, double spacing = 1.0) {
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({static_cast<double>(i) * spacing});
    return FiniteMetricSpace::from_points(pts, PointMetric::euclidean);
}

/// {0} ∪ {1/k : k = 1..n} on the real line; labels "0" and "1/k".
inline FiniteMetricSpace zero_and_reciprocals(std::size_t n) {
    std::vector<std::vector<double>> pts{{0.0}};
    std::vector<std::string> labels{"0"};
    for (std::size_t k = 1; k <= n; ++k) {
        pts.push_back({1.0 / static_cast<double>(k)});
        labels.push_back("1/" + std::to_string(k));
    }
    return FiniteMetricSpace::from_points(pts, PointMetric::euclidean, std::move(labels));
}

/// n points uniform in [0, scale)^dim.
inline FiniteMetricSpace random_cloud(std::uint64_t seed, std::size_t n, std::size_t dim, double scale = 1.0,
                                      PointMetric metric = PointMetric::euclidean) {
    std::mt19937_64 rng{seed};
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (auto& p : pts)
        for (auto& c : p) c = scale * unit_uniform(rng);
    return FiniteMetricSpace::from_points(pts, metric);
}

struct WeightedEdge {
    std::size_t u, v;
    double w;
};

/// Shortest-path metric of a connected weighted graph (Floyd–Warshall).
inline FiniteMetricSpace graph_metric(std::size_t vertices, const std::vector<WeightedEdge>& edges) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(vertices, std::vector<double>(vertices, inf));
    for (std::size_t i = 0; i < vertices; ++i) d[i][i] = 0.0;
    for (const auto& e : edges) {
        if (e.u >= vertices || e.v >= vertices || !(e.w > 0.0)) throw invalid_input("bad graph edge");
        d[e.u][e.v] = std::min(d[e.u][e.v], e.w);
        d[e.v][e.u] = std::min(d[e.v][e.u], e.w);
    }
    for (std::size_t k = 0; k < vertices; ++k)
        for (std::size_t i = 0; i < vertices; ++i)
            for (std::size_t j = 0; j < vertices; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    for (const auto& row : d)
        for (double x : row)
            if (x == inf) throw invalid_input("graph is not connected");
    return FiniteMetricSpace::from_matrix({}, d);
}

/// Random connected graph: a random spanning path plus extra edges with probability p.
inline FiniteMetricSpace random_graph_metric(std::uint64_t seed, std::size_t vertices, double p) {
    std::mt19937_64 rng{seed};
    std::vector<std::size_t> order(vertices);
    for (std::size_t i = 0; i < vertices; ++i) order[i] = i;
    for (std::size_t i = vertices; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 1; i < vertices; ++i) edges.push_back({order[i - 1], order[i], 0.5 + unit_uniform(rng)});
    for (std::size_t u = 0; u < vertices; ++u)
        for (std::size_t v = u + 1; v < vertices; ++v)
            if (unit_uniform(rng) < p) edges.push_back({u, v, 0.5 + unit_uniform(rng)});
    return graph_metric(vertices, edges);
}

} // namespace wbs::samples
