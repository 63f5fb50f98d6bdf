#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tcrank/graph.hpp"
#include "tcrank/parallel.hpp"
#include "tcrank/random.hpp"
#include "tcrank/score_vector.hpp"

namespace tcrank {

struct HarmonicParams {
    /// Unset: exact all-sources computation. Set: BFS from this many random pivots.
    std::optional<std::size_t> pivots;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultHarmonicPivots = 2000;

namespace detail {

// Pivot accumulation is split into a fixed number of chunks, independent of
// the worker count, and the chunks are summed in order.
inline constexpr std::size_t kHarmonicChunks = 32;

} // namespace detail

/**
 * Harmonic centrality: sum over v != u of 1 / d(u, v), with unreachable
 * pairs contributing zero.
 *
 * In sampled mode each node's sum over the pivots other than itself is
 * rescaled by (n - 1) / (#pivots other than u). The pivot set restricted to
 * V \ {u} is a uniform subset, so the estimate is unbiased, and it reduces
 * to the exact value when every node is a pivot.
 */
inline ScoreVector harmonic(const Graph& g, const HarmonicParams& params = {}) {
    const auto n = g.node_count();
    ScoreVector sv;
    sv.measure = "harmonic";
    sv.score.assign(n, 0.0);

    if (!params.pivots) {
        sv.params["mode"] = "exact";
        std::vector<BfsWorkspace> ws(static_cast<std::size_t>(max_workers()));
        parallel_for(n, [&](std::size_t u, int worker) {
            auto& w = ws[static_cast<std::size_t>(worker)];
            bfs(g, static_cast<NodeId>(u), w);
            double sum = 0.0;
            for (std::size_t i = 1; i < w.order.size(); ++i) sum += 1.0 / w.distance[w.order[i]];
            sv.score[u] = sum;
        }, 16);
        return sv;
    }

    const auto k = *params.pivots;
    if (k == 0 || k > n) throw ArgumentError("harmonic pivot count must lie in [1, n]");
    sv.params["mode"] = "sampled";
    sv.params["pivots"] = std::to_string(k);
    sv.params["seed"] = std::to_string(params.seed);

    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    Rng rng(params.seed);
    partial_shuffle(std::span<NodeId>(ids), k, rng);
    ids.resize(k);
    std::vector<bool> is_pivot(n, false);
    for (NodeId s : ids) is_pivot[s] = true;

    const auto chunks = std::min(k, detail::kHarmonicChunks);
    std::vector<std::vector<double>> partial(chunks, std::vector<double>(n, 0.0));
    parallel_for(chunks, [&](std::size_t c, int) {
        auto& acc = partial[c];
        BfsWorkspace w(n);
        for (std::size_t i = c; i < k; i += chunks) {
            bfs(g, ids[i], w);
            for (std::size_t j = 1; j < w.order.size(); ++j) acc[w.order[j]] += 1.0 / w.distance[w.order[j]];
        }
    }, 1);

    const double scale_num = static_cast<double>(n - 1);
    for (NodeId u = 0; u < n; ++u) {
        double sum = 0.0;
        for (std::size_t c = 0; c < chunks; ++c) sum += partial[c][u];
        const auto others = k - (is_pivot[u] ? 1 : 0);
        sv.score[u] = others == 0 ? 0.0 : sum * scale_num / static_cast<double>(others);
    }
    return sv;
}

} // namespace tcrank
