#pragma once

// Small fixture graphs and independent brute-force oracles. Nothing here
// calls the routine it is used to check.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tcrank/graph.hpp"
#include "tcrank/random.hpp"

namespace tcrank::testing {

inline Graph make_graph(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges) {
    return Graph::from_edges(n, edges);
}

inline Graph path(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return make_graph(n, e);
}

inline Graph cycle(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
    return make_graph(n, e);
}

/// Node 0 is the center.
inline Graph star(std::size_t leaves) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return make_graph(leaves + 1, e);
}

inline Graph complete(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return make_graph(n, e);
}

/// Random graph by independent coin flips per pair (plain loops, no skipping).
inline Graph coin_graph(std::size_t n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (uniform01(rng) < p) e.emplace_back(i, j);
    return make_graph(n, e);
}

/// Relabels node u as perm[u].
inline Graph permute(const Graph& g, const std::vector<NodeId>& perm) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (const auto& [u, v] : g.edge_list()) e.emplace_back(perm[u], perm[v]);
    return make_graph(g.node_count(), e);
}

inline std::vector<NodeId> random_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<NodeId> p(n);
    std::iota(p.begin(), p.end(), NodeId{0});
    Rng rng(seed);
    shuffle(std::span<NodeId>(p), rng);
    return p;
}

inline std::vector<std::vector<bool>> adjacency_matrix(const Graph& g) {
    std::vector<std::vector<bool>> a(g.node_count(), std::vector<bool>(g.node_count(), false));
    for (const auto& [u, v] : g.edge_list()) a[u][v] = a[v][u] = true;
    return a;
}

inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max() / 4;

/// All-pairs hop distances by Floyd-Warshall on the dense adjacency matrix.
inline std::vector<std::vector<std::uint32_t>> floyd_warshall(const Graph& g) {
    const auto n = g.node_count();
    const auto a = adjacency_matrix(g);
    std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (a[i][j]) d[i][j] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

/// Harmonic centrality from a plain queue BFS per source on the adjacency matrix.
inline std::vector<double> harmonic_oracle(const Graph& g) {
    const auto n = g.node_count();
    const auto a = adjacency_matrix(g);
    std::vector<double> h(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1);
        std::vector<std::size_t> queue{s};
        dist[s] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (std::size_t v = 0; v < n; ++v)
                if (a[queue[head]][v] && dist[v] < 0) {
                    dist[v] = dist[queue[head]] + 1;
                    queue.push_back(v);
                }
        for (std::size_t v = 0; v < n; ++v)
            if (v != s && dist[v] > 0) h[s] += 1.0 / dist[v];
    }
    return h;
}

/// PageRank by solving (I - alpha M) x = (1 - alpha) / n with a dense LU.
inline std::vector<double> pagerank_oracle(const Graph& g, double alpha) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index u = 0; u < n; ++u) {
        const auto d = g.degree(static_cast<NodeId>(u));
        if (d == 0) {
            m.col(u).setConstant(1.0 / static_cast<double>(n));
        } else {
            for (NodeId v : g.neighbors(static_cast<NodeId>(u))) m(v, u) = 1.0 / static_cast<double>(d);
        }
    }
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - alpha * m;
    const Eigen::VectorXd b = Eigen::VectorXd::Constant(n, (1.0 - alpha) / static_cast<double>(n));
    const Eigen::VectorXd x = a.partialPivLu().solve(b);
    return {x.data(), x.data() + n};
}

/// Core numbers by repeated naive peeling for every k.
inline std::vector<std::uint32_t> core_oracle(const Graph& g) {
    const auto n = g.node_count();
    std::vector<std::uint32_t> shell(n, 0);
    for (std::uint32_t k = 1;; ++k) {
        std::vector<bool> alive(n, true);
        bool changed = true;
        while (changed) {
            changed = false;
            for (NodeId u = 0; u < n; ++u) {
                if (!alive[u]) continue;
                std::uint32_t d = 0;
                for (NodeId v : g.neighbors(u)) d += alive[v];
                if (d < k) {
                    alive[u] = false;
                    changed = true;
                }
            }
        }
        bool any = false;
        for (NodeId u = 0; u < n; ++u)
            if (alive[u]) {
                shell[u] = k;
                any = true;
            }
        if (!any) break;
    }
    return shell;
}

/// Monte-Carlo Shapley value of v(C) = |C ∪ N(C)| by random permutations.
inline std::vector<double> shapley_g1_monte_carlo(const Graph& g, std::size_t permutations, std::uint64_t seed) {
    const auto n = g.node_count();
    std::vector<double> phi(n, 0.0);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    Rng rng(seed);
    std::vector<bool> covered(n);
    for (std::size_t p = 0; p < permutations; ++p) {
        shuffle(std::span<NodeId>(order), rng);
        std::fill(covered.begin(), covered.end(), false);
        for (NodeId u : order) {
            double gain = covered[u] ? 0.0 : 1.0;
            covered[u] = true;
            for (NodeId v : g.neighbors(u))
                if (!covered[v]) {
                    covered[v] = true;
                    gain += 1.0;
                }
            phi[u] += gain;
        }
    }
    for (auto& x : phi) x /= static_cast<double>(permutations);
    return phi;
}

/// Top Candidate nominations with the inclusive tie rule, straight from the definition.
inline std::vector<std::set<NodeId>> nominations_oracle(const Graph& g, double alpha) {
    std::vector<std::set<NodeId>> nom(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto nb = g.neighbors(u);
        if (nb.empty()) continue;
        std::vector<std::size_t> degs;
        for (NodeId v : nb) degs.push_back(g.degree(v));
        std::sort(degs.rbegin(), degs.rend());
        std::size_t c = 1;
        while (c < nb.size() && static_cast<double>(c) < alpha * static_cast<double>(nb.size()) - 1e-9) ++c;
        const auto cut = degs[c - 1];
        for (NodeId v : nb)
            if (g.degree(v) >= cut) nom[u].insert(v);
    }
    return nom;
}

/// Sequence E_0 = V, E_{k+1} = nominees(E_k) by whole-set recomputation, up to the fixed point.
inline std::vector<std::set<NodeId>> expert_sequence_oracle(const Graph& g, double alpha) {
    const auto nom = nominations_oracle(g, alpha);
    std::set<NodeId> e;
    for (NodeId v = 0; v < g.node_count(); ++v) e.insert(v);
    std::vector<std::set<NodeId>> seq{e};
    for (;;) {
        std::set<NodeId> next;
        for (NodeId u : e) next.insert(nom[u].begin(), nom[u].end());
        if (next == e) break;
        seq.push_back(next);
        e = std::move(next);
    }
    return seq;
}

/// Greedy discount selection recomputing every score from scratch each step.
template <class Score>
std::vector<NodeId> greedy_discount_oracle(const Graph& g, std::size_t q, Score&& score) {
    const auto n = g.node_count();
    std::vector<bool> in(n, false);
    std::vector<NodeId> order;
    while (order.size() < q) {
        std::vector<double> t(n, 0.0);
        for (NodeId v = 0; v < n; ++v)
            for (NodeId w : g.neighbors(v)) t[v] += in[w];
        NodeId best = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (NodeId v = 0; v < n; ++v) {
            if (in[v]) continue;
            double t_out = 0.0;
            for (NodeId w : g.neighbors(v))
                if (!in[w]) t_out += t[w];
            const double s = score(static_cast<double>(g.degree(v)), t[v], t_out);
            if (s > best_score) {
                best_score = s;
                best = v;
            }
        }
        in[best] = true;
        order.push_back(best);
    }
    return order;
}

/// Nodes reachable from `seeds` by plain BFS on the adjacency matrix.
inline std::set<NodeId> reachable_oracle(const Graph& g, const std::vector<NodeId>& seeds) {
    const auto a = adjacency_matrix(g);
    std::set<NodeId> seen(seeds.begin(), seeds.end());
    std::vector<NodeId> stack(seeds.begin(), seeds.end());
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (a[u][v] && seen.insert(v).second) stack.push_back(v);
    }
    return seen;
}

} // namespace tcrank::testing
