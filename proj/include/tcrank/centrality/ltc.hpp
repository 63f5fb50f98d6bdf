#pragma once

#include <vector>

#include "tcrank/diffusion.hpp"
#include "tcrank/graph.hpp"
#include "tcrank/io.hpp"
#include "tcrank/parallel.hpp"
#include "tcrank/score_vector.hpp"

namespace tcrank {

/// Linear Threshold Centrality: fraction of the graph activated when u and
/// its neighbors seed an LT cascade with thresholds multiplier * degree.
/// The seeds are counted among the activated nodes.
inline ScoreVector ltc(const Graph& g, double theta_multiplier = 0.7) {
    const auto thresholds = thresholds_uniform_multiplier(g, theta_multiplier);
    const auto n = g.node_count();
    const auto workers = static_cast<std::size_t>(max_workers());
    std::vector<LtWorkspace> ws;
    ws.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) ws.emplace_back(n);
    std::vector<std::vector<NodeId>> seeds(workers);

    ScoreVector sv;
    sv.measure = "ltc";
    sv.score.assign(n, 0.0);
    parallel_for(n, [&](std::size_t u, int worker) {
        auto& s = seeds[static_cast<std::size_t>(worker)];
        const auto nb = g.neighbors(static_cast<NodeId>(u));
        s.assign(nb.begin(), nb.end());
        s.push_back(static_cast<NodeId>(u));
        std::size_t active = 0;
        ws[static_cast<std::size_t>(worker)].run(g, s, thresholds.theta, [&](NodeId, int) { ++active; });
        sv.score[u] = static_cast<double>(active) / static_cast<double>(n);
    }, 16);
    sv.params["theta_multiplier"] = format_double(theta_multiplier);
    return sv;
}

} // namespace tcrank
