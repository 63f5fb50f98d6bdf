#pragma once

#include "tcrank/graph.hpp"
#include "tcrank/score_vector.hpp"

namespace tcrank {

inline ScoreVector degree(const Graph& g) {
    ScoreVector sv;
    sv.measure = "degree";
    sv.score.resize(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) sv.score[u] = static_cast<double>(g.degree(u));
    return sv;
}

} // namespace tcrank
