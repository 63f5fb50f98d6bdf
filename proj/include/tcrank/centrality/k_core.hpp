#pragma once

#include <algorithm>
#include <vector>

#include "tcrank/graph.hpp"
#include "tcrank/score_vector.hpp"

namespace tcrank {

/// Core number of every node by bucket peeling (Batagelj-Zaversnik), O(n + m).
inline std::vector<std::uint32_t> core_numbers(const Graph& g) {
    const auto n = g.node_count();
    std::vector<std::uint32_t> deg(n);
    std::uint32_t max_deg = 0;
    for (NodeId u = 0; u < n; ++u) {
        deg[u] = static_cast<std::uint32_t>(g.degree(u));
        max_deg = std::max(max_deg, deg[u]);
    }
    std::vector<std::size_t> bin(max_deg + 2, 0);
    for (NodeId u = 0; u < n; ++u) ++bin[deg[u]];
    std::size_t start = 0;
    for (auto& b : bin) {
        const auto count = b;
        b = start;
        start += count;
    }
    std::vector<NodeId> vert(n);
    std::vector<std::size_t> pos(n);
    for (NodeId u = 0; u < n; ++u) {
        pos[u] = bin[deg[u]]++;
        vert[pos[u]] = u;
    }
    for (std::size_t d = bin.size() - 1; d > 0; --d) bin[d] = bin[d - 1];
    bin[0] = 0;

    for (std::size_t i = 0; i < n; ++i) {
        const NodeId v = vert[i];
        for (NodeId u : g.neighbors(v)) {
            if (deg[u] > deg[v]) {
                const auto du = deg[u];
                const auto pu = pos[u];
                const auto pw = bin[du];
                const NodeId w = vert[pw];
                if (u != w) {
                    std::swap(vert[pu], vert[pw]);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                ++bin[du];
                --deg[u];
            }
        }
    }
    return deg;
}

inline ScoreVector k_core(const Graph& g) {
    const auto shells = core_numbers(g);
    ScoreVector sv;
    sv.measure = "kcore";
    sv.score.assign(shells.begin(), shells.end());
    return sv;
}

} // namespace tcrank
