#pragma once

#include "tcrank/graph.hpp"
#include "tcrank/score_vector.hpp"

namespace tcrank {

/// Shapley value of the game v(C) = |C ∪ N(C)|, in closed form:
/// each node of the closed neighborhood of u contributes 1 / (1 + deg).
inline ScoreVector shapley_g1(const Graph& g) {
    const auto n = g.node_count();
    std::vector<double> share(n);
    for (NodeId v = 0; v < n; ++v) share[v] = 1.0 / (1.0 + static_cast<double>(g.degree(v)));
    ScoreVector sv;
    sv.measure = "shapley";
    sv.score.resize(n);
    for (NodeId u = 0; u < n; ++u) {
        double s = share[u];
        for (NodeId v : g.neighbors(u)) s += share[v];
        sv.score[u] = s;
    }
    return sv;
}

} // namespace tcrank
