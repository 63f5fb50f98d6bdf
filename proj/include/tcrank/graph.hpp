#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tcrank/errors.hpp"
#include "tcrank/random.hpp"

namespace tcrank {

using NodeId = std::uint32_t;
using EdgeIndex = std::uint64_t;

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/**
 * Immutable undirected simple graph in compressed adjacency form.
 *
 * Nodes are dense ids 0..n-1; each keeps the external label it was loaded
 * with. Neighbor lists are sorted ascending, symmetric, free of self-loops
 * and duplicates.
 */
class Graph {
public:
    Graph() : offsets_(1, 0) {}

    /// Builds from arbitrary pairs: self-loops dropped, duplicates merged, pairs symmetrized.
    static Graph from_edges(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> edges,
                            std::vector<std::string> labels = {}) {
        Graph g;
        g.offsets_.assign(node_count + 1, 0);
        for (const auto& [u, v] : edges) {
            if (u >= node_count || v >= node_count)
                throw ArgumentError("edge endpoint out of range");
            if (u == v) continue;
            ++g.offsets_[u + 1];
            ++g.offsets_[v + 1];
        }
        std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
        g.neighbors_.resize(g.offsets_.back());
        std::vector<EdgeIndex> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        for (const auto& [u, v] : edges) {
            if (u == v) continue;
            g.neighbors_[fill[u]++] = v;
            g.neighbors_[fill[v]++] = u;
        }
        // Sort and dedupe each list, then compact.
        std::vector<EdgeIndex> compact(node_count + 1, 0);
        EdgeIndex out = 0;
        for (std::size_t u = 0; u < node_count; ++u) {
            auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
            auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
            std::sort(first, last);
            last = std::unique(first, last);
            for (auto it = first; it != last; ++it) g.neighbors_[out++] = *it;
            compact[u + 1] = out;
        }
        g.neighbors_.resize(out);
        g.neighbors_.shrink_to_fit();
        g.offsets_ = std::move(compact);

        if (labels.empty()) {
            labels.reserve(node_count);
            for (std::size_t i = 0; i < node_count; ++i) labels.push_back(std::to_string(i));
        } else if (labels.size() != node_count) {
            throw ArgumentError("label count does not match node count");
        }
        g.labels_ = std::move(labels);
        return g;
    }

    std::size_t node_count() const noexcept { return offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId u) const noexcept {
        return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
    }

    std::size_t degree(NodeId u) const noexcept {
        return static_cast<std::size_t>(offsets_[u + 1] - offsets_[u]);
    }

    bool has_edge(NodeId u, NodeId v) const noexcept {
        const auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    const std::string& label(NodeId u) const noexcept { return labels_[u]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    bool contains(NodeId u) const noexcept { return u < node_count(); }

    /// Each undirected edge once, as (u, v) with u < v, in ascending order.
    std::vector<std::pair<NodeId, NodeId>> edge_list() const {
        std::vector<std::pair<NodeId, NodeId>> out;
        out.reserve(edge_count());
        for (NodeId u = 0; u < node_count(); ++u)
            for (NodeId v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    std::size_t max_degree() const noexcept {
        std::size_t best = 0;
        for (NodeId u = 0; u < node_count(); ++u) best = std::max(best, degree(u));
        return best;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_ && a.labels_ == b.labels_;
    }

private:
    std::vector<EdgeIndex> offsets_;
    std::vector<NodeId> neighbors_;
    std::vector<std::string> labels_;
};

/// Full-scan check of the simple-graph invariants; returns an empty string when all hold.
inline std::string validate(const Graph& g) {
    EdgeIndex degree_sum = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto nb = g.neighbors(u);
        degree_sum += nb.size();
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] >= g.node_count()) return "neighbor out of range at node " + std::to_string(u);
            if (nb[i] == u) return "self-loop at node " + std::to_string(u);
            if (i > 0 && nb[i - 1] >= nb[i]) return "unsorted or duplicate neighbors at node " + std::to_string(u);
            if (!g.has_edge(nb[i], u)) return "asymmetric edge " + std::to_string(u) + "-" + std::to_string(nb[i]);
        }
    }
    if (degree_sum != 2 * g.edge_count()) return "degree sum differs from 2m";
    return {};
}

/// Reusable BFS state; one per worker.
struct BfsWorkspace {
    std::vector<std::uint32_t> distance;
    std::vector<NodeId> order;

    explicit BfsWorkspace(std::size_t n = 0) : distance(n, kUnreachable) { order.reserve(n); }
};

/// Runs BFS from `source`; on return ws.order holds reached nodes in visit order
/// and ws.distance their hop counts. Unvisited entries are kUnreachable.
inline void bfs(const Graph& g, NodeId source, BfsWorkspace& ws) {
    if (!g.contains(source)) throw ArgumentError("bfs source " + std::to_string(source) + " out of range");
    if (ws.distance.size() != g.node_count()) ws.distance.assign(g.node_count(), kUnreachable);
    for (NodeId v : ws.order) ws.distance[v] = kUnreachable;
    ws.order.clear();
    ws.distance[source] = 0;
    ws.order.push_back(source);
    for (std::size_t head = 0; head < ws.order.size(); ++head) {
        const NodeId u = ws.order[head];
        const auto next = ws.distance[u] + 1;
        for (NodeId v : g.neighbors(u)) {
            if (ws.distance[v] == kUnreachable) {
                ws.distance[v] = next;
                ws.order.push_back(v);
            }
        }
    }
}

inline std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
    BfsWorkspace ws(g.node_count());
    bfs(g, source, ws);
    return std::move(ws.distance);
}

/// Subgraph induced by `nodes` (must be distinct); new ids follow ascending old id.
inline Graph induced_subgraph(const Graph& g, std::vector<NodeId> nodes) {
    std::sort(nodes.begin(), nodes.end());
    std::vector<NodeId> remap(g.node_count(), kUnreachable);
    std::vector<std::string> labels;
    labels.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        remap[nodes[i]] = static_cast<NodeId>(i);
        labels.push_back(g.label(nodes[i]));
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u : nodes)
        for (NodeId v : g.neighbors(u))
            if (u < v && remap[v] != kUnreachable) edges.emplace_back(remap[u], remap[v]);
    return Graph::from_edges(nodes.size(), edges, std::move(labels));
}

/// Uniform node sample of size floor(fraction * n) and its induced subgraph.
inline Graph sample_nodes(const Graph& g, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw ArgumentError("sample fraction must lie in (0, 1]");
    const auto n = g.node_count();
    // Guard against 2/3 * 3 landing just below an integer.
    const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    Rng rng(seed);
    partial_shuffle(std::span<NodeId>(ids), count, rng);
    ids.resize(std::min(count, n));
    return induced_subgraph(g, std::move(ids));
}

} // namespace tcrank
