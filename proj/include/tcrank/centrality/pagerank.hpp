#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tcrank/errors.hpp"
#include "tcrank/graph.hpp"
#include "tcrank/io.hpp"
#include "tcrank/parallel.hpp"
#include "tcrank/score_vector.hpp"

namespace tcrank {

struct PageRankParams {
    double damping = 0.8;
    double tolerance = 1e-10; // L1 change between iterates
    int max_iterations = 200;
};

/**
 * PageRank by power iteration on the random walk of the undirected graph.
 * Sinks (isolated nodes) spread their mass uniformly; every step teleports
 * with probability 1 - damping. Iteration stops once the L1 change drops
 * below the tolerance.
 */
inline ScoreVector pagerank(const Graph& g, const PageRankParams& params = {}) {
    const auto n = g.node_count();
    if (n == 0) throw ArgumentError("pagerank needs at least one node");
    if (!(params.damping > 0.0 && params.damping < 1.0)) throw ArgumentError("damping must lie in (0, 1)");
    if (!(params.tolerance > 0.0)) throw ArgumentError("tolerance must be positive");
    if (params.max_iterations < 1) throw ArgumentError("max_iterations must be positive");

    const double alpha = params.damping;
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> x(n, inv_n), next(n), share(n);
    double residual = 0.0;
    int it = 0;
    for (; it < params.max_iterations; ++it) {
        double sink_mass = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            const auto d = g.degree(u);
            if (d == 0) {
                sink_mass += x[u];
                share[u] = 0.0;
            } else {
                share[u] = x[u] / static_cast<double>(d);
            }
        }
        const double base = alpha * sink_mass * inv_n + (1.0 - alpha) * inv_n;
        parallel_for(n, [&](std::size_t v, int) {
            double s = 0.0;
            for (NodeId u : g.neighbors(static_cast<NodeId>(v))) s += share[u];
            next[v] = base + alpha * s;
        }, 1024);
        residual = 0.0;
        for (NodeId v = 0; v < n; ++v) residual += std::abs(next[v] - x[v]);
        x.swap(next);
        if (residual < params.tolerance) {
            ++it;
            break;
        }
    }
    if (!(residual < params.tolerance))
        throw ConvergenceError("pagerank did not converge within " + std::to_string(params.max_iterations) +
                                   " iterations (residual " + format_double(residual) + ")",
                               residual, it);

    ScoreVector sv;
    sv.measure = "pagerank";
    sv.score = std::move(x);
    sv.params["damping"] = format_double(alpha);
    sv.params["tolerance"] = format_double(params.tolerance);
    sv.params["iterations"] = std::to_string(it);
    return sv;
}

} // namespace tcrank
