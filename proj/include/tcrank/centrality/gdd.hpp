#pragma once

#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include "tcrank/errors.hpp"
#include "tcrank/graph.hpp"
#include "tcrank/io.hpp"
#include "tcrank/score_vector.hpp"

namespace tcrank {

enum class GddVariant {
    generalized,     // degree discount plus second-neighborhood spreader terms
    degree_discount, // d - 2t - (d - t) t p
    discount_only,   // d - 2t
};

struct GDDParams {
    double p = 0.05;
    std::size_t q = 1000;
    GddVariant variant = GddVariant::generalized;
};

/**
 * Greedy discount score of a candidate v.
 *
 * @param d       degree of v
 * @param t       neighbors of v already selected
 * @param t_out   sum of t(w) over the unselected neighbors w of v
 */
constexpr double gdd_score(double d, double t, double t_out, double p, GddVariant variant) noexcept {
    switch (variant) {
    case GddVariant::discount_only: return d - 2.0 * t;
    case GddVariant::degree_discount: return d - 2.0 * t - (d - t) * t * p;
    case GddVariant::generalized: break;
    }
    return d - 2.0 * t - (d - t) * t * p + 0.5 * t * (t - 1.0) * p - p * t_out;
}

/// Greedy seed selection; returns the q selected nodes in pick order.
/// Ties go to the smallest dense id.
inline std::vector<NodeId> gdd_rank(const Graph& g, const GDDParams& params = {}) {
    const auto n = g.node_count();
    if (!(params.p > 0.0 && params.p <= 1.0)) throw ArgumentError("GDD spreading probability must lie in (0, 1]");
    if (params.q < 1 || params.q > n) throw ArgumentError("GDD seed count must lie in [1, n]");

    std::vector<std::uint32_t> t(n, 0);
    std::vector<std::uint64_t> t_out(n, 0);
    std::vector<double> current(n);
    std::vector<bool> selected(n, false);

    struct Entry {
        double score;
        NodeId id;
        bool operator<(const Entry& o) const noexcept {
            return score < o.score || (score == o.score && id > o.id);
        }
    };
    std::priority_queue<Entry> heap;
    const auto rescore = [&](NodeId v) {
        current[v] = gdd_score(static_cast<double>(g.degree(v)), t[v], static_cast<double>(t_out[v]), params.p,
                               params.variant);
        heap.push({current[v], v});
    };
    for (NodeId v = 0; v < n; ++v) rescore(v);

    std::vector<NodeId> order;
    order.reserve(params.q);
    std::vector<std::uint64_t> stamp(n, 0);
    std::vector<NodeId> dirty;
    while (order.size() < params.q) {
        const Entry top = heap.top();
        heap.pop();
        if (selected[top.id] || top.score != current[top.id]) continue;
        const NodeId v = top.id;
        selected[v] = true;
        order.push_back(v);

        const auto epoch = order.size();
        dirty.clear();
        const auto mark = [&](NodeId x) {
            if (!selected[x] && stamp[x] != epoch) {
                stamp[x] = epoch;
                dirty.push_back(x);
            }
        };
        // v leaves N(x) \ S for each neighbor x.
        for (NodeId x : g.neighbors(v)) {
            t_out[x] -= t[v];
            mark(x);
        }
        for (NodeId w : g.neighbors(v)) {
            ++t[w];
            if (selected[w]) continue;
            for (NodeId x : g.neighbors(w)) {
                ++t_out[x];
                mark(x);
            }
        }
        for (NodeId x : dirty) rescore(x);
    }
    return order;
}

/// Selection order as a score: rank r of q maps to q - r + 1, unselected nodes to 0.
inline ScoreVector gdd_scores(const Graph& g, const std::vector<NodeId>& order, const GDDParams& params = {}) {
    ScoreVector sv;
    sv.measure = "gdd";
    sv.score.assign(g.node_count(), 0.0);
    for (std::size_t r = 0; r < order.size(); ++r) sv.score[order[r]] = static_cast<double>(order.size() - r);
    sv.params["p"] = format_double(params.p);
    sv.params["q"] = std::to_string(params.q);
    return sv;
}

} // namespace tcrank
