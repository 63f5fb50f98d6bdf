#pragma once

// Synthetic graph generators. All are deterministic for a fixed seed.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tcrank/adopter_class.hpp"
#include "tcrank/errors.hpp"
#include "tcrank/graph.hpp"
#include "tcrank/io.hpp"
#include "tcrank/random.hpp"

namespace tcrank {

namespace detail {

// Geometric skip: number of failed Bernoulli(p) trials before the next success.
inline std::uint64_t geometric_skip(Rng& rng, double log_q) {
    const double u = uniform01(rng);
    return static_cast<std::uint64_t>(std::floor(std::log1p(-u) / log_q));
}

// Calls add(i, j), i < j, for each pair of [0, size) kept with probability p.
template <class Add>
void sample_within(std::uint64_t size, double p, Rng& rng, Add&& add) {
    if (p <= 0.0 || size < 2) return;
    if (p >= 1.0) {
        for (std::uint64_t j = 1; j < size; ++j)
            for (std::uint64_t i = 0; i < j; ++i) add(i, j);
        return;
    }
    const double log_q = std::log1p(-p);
    std::uint64_t v = 1;
    std::int64_t w = -1;
    while (v < size) {
        w += 1 + static_cast<std::int64_t>(geometric_skip(rng, log_q));
        while (w >= static_cast<std::int64_t>(v) && v < size) {
            w -= static_cast<std::int64_t>(v);
            ++v;
        }
        if (v < size) add(static_cast<std::uint64_t>(w), v);
    }
}

// Calls add(i, j) for each pair of [0, rows) x [0, cols) kept with probability p.
template <class Add>
void sample_between(std::uint64_t rows, std::uint64_t cols, double p, Rng& rng, Add&& add) {
    if (p <= 0.0 || rows == 0 || cols == 0) return;
    const std::uint64_t total = rows * cols;
    if (p >= 1.0) {
        for (std::uint64_t idx = 0; idx < total; ++idx) add(idx / cols, idx % cols);
        return;
    }
    const double log_q = std::log1p(-p);
    std::uint64_t idx = geometric_skip(rng, log_q);
    while (idx < total) {
        add(idx / cols, idx % cols);
        idx += 1 + geometric_skip(rng, log_q);
    }
}

} // namespace detail

/// Erdos-Renyi G(n, p).
inline Graph gnp(std::size_t n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    detail::sample_within(n, p, rng, [&](std::uint64_t i, std::uint64_t j) {
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    });
    return Graph::from_edges(n, edges);
}

/// Barabasi-Albert growth: each new node links to `links` distinct earlier
/// nodes chosen proportionally to degree, starting from a clique of links + 1.
inline Graph preferential_attachment(std::size_t n, std::size_t links, std::uint64_t seed) {
    if (links == 0 || n <= links) throw ArgumentError("preferential attachment needs n > links >= 1");
    Rng rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(n * links);
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * n * links);
    for (NodeId j = 1; j <= links; ++j)
        for (NodeId i = 0; i < j; ++i) {
            edges.emplace_back(i, j);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    std::vector<NodeId> picks;
    for (auto v = static_cast<NodeId>(links + 1); v < n; ++v) {
        picks.clear();
        while (picks.size() < links) {
            const NodeId t = endpoints[uniform_index(rng, endpoints.size())];
            if (std::find(picks.begin(), picks.end(), t) == picks.end()) picks.push_back(t);
        }
        for (NodeId t : picks) {
            edges.emplace_back(t, v);
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return Graph::from_edges(n, edges);
}

struct BlockGraph {
    Graph graph;
    std::vector<std::uint32_t> block; // per node
};

/// Stochastic block model; nodes of block b are contiguous ids.
inline BlockGraph stochastic_block(std::span<const std::size_t> sizes, const std::vector<std::vector<double>>& prob,
                                   std::uint64_t seed) {
    const auto blocks = sizes.size();
    if (prob.size() != blocks) throw ArgumentError("block probability matrix has the wrong size");
    for (const auto& row : prob)
        if (row.size() != blocks) throw ArgumentError("block probability matrix has the wrong size");
    std::vector<std::size_t> start(blocks + 1, 0);
    for (std::size_t b = 0; b < blocks; ++b) start[b + 1] = start[b] + sizes[b];
    BlockGraph out;
    out.block.resize(start.back());
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t i = start[b]; i < start[b + 1]; ++i) out.block[i] = static_cast<std::uint32_t>(b);

    Rng rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t r = 0; r < blocks; ++r) {
        detail::sample_within(sizes[r], prob[r][r], rng, [&](std::uint64_t i, std::uint64_t j) {
            edges.emplace_back(static_cast<NodeId>(start[r] + i), static_cast<NodeId>(start[r] + j));
        });
        for (std::size_t c = r + 1; c < blocks; ++c) {
            if (prob[r][c] != prob[c][r]) throw ArgumentError("block probability matrix must be symmetric");
            detail::sample_between(sizes[r], sizes[c], prob[r][c], rng, [&](std::uint64_t i, std::uint64_t j) {
                edges.emplace_back(static_cast<NodeId>(start[r] + i), static_cast<NodeId>(start[c] + j));
            });
        }
    }
    out.graph = Graph::from_edges(start.back(), edges);
    return out;
}

/**
 * Network with adoption homophily: five planted adopter classes sized by
 * Rogers' shares, links concentrated within and between neighboring
 * classes, earlier classes more active, and adoption days drawn from
 * class-ordered, slightly overlapping windows.
 */
struct PlantedAdoption {
    Graph graph;
    std::vector<AdopterClass> planted;
    AdoptionTable days;
    std::array<std::size_t, kAdopterClassCount> sizes{};
    std::vector<std::vector<double>> block_prob;
};

struct PlantedAdoptionParams {
    std::size_t nodes = 10000;
    double mean_degree = 12.0;
    std::array<double, kAdopterClassCount> shares = {0.025, 0.135, 0.34, 0.34, 0.16};
    std::array<double, kAdopterClassCount> activity = {3.0, 2.2, 1.4, 1.0, 0.7};
    double same_class = 8.0;
    double adjacent_class = 2.5;
    double distant_class = 0.4;
    std::array<std::pair<std::int32_t, std::int32_t>, kAdopterClassCount> day_windows = {{
        {0, 150}, {100, 700}, {600, 1700}, {1600, 2700}, {2600, 3600}}};
};

inline PlantedAdoption planted_adoption(const PlantedAdoptionParams& params, std::uint64_t seed) {
    PlantedAdoption out;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < kAdopterClassCount; ++c) {
        out.sizes[c] = c + 1 == kAdopterClassCount
                           ? params.nodes - assigned
                           : static_cast<std::size_t>(std::llround(params.shares[c] * static_cast<double>(params.nodes)));
        assigned += out.sizes[c];
    }
    // Unnormalized affinities, scaled so the expected mean degree matches.
    std::vector<std::vector<double>> w(kAdopterClassCount, std::vector<double>(kAdopterClassCount));
    double expected_endpoints = 0.0;
    for (std::size_t r = 0; r < kAdopterClassCount; ++r) {
        for (std::size_t c = 0; c < kAdopterClassCount; ++c) {
            const auto gap = r > c ? r - c : c - r;
            const double aff = gap == 0 ? params.same_class : gap == 1 ? params.adjacent_class : params.distant_class;
            w[r][c] = params.activity[r] * params.activity[c] * aff;
            expected_endpoints += w[r][c] * static_cast<double>(out.sizes[r]) * static_cast<double>(out.sizes[c]);
        }
    }
    const double scale = params.mean_degree * static_cast<double>(params.nodes) / expected_endpoints;
    out.block_prob = w;
    for (auto& row : out.block_prob)
        for (auto& p : row) p = std::min(1.0, p * scale);

    Rng rng(derive_seed(seed, "planted-adoption/graph"));
    auto bg = stochastic_block(out.sizes, out.block_prob, rng());
    out.graph = std::move(bg.graph);
    out.planted.resize(out.graph.node_count());
    out.days.day.resize(out.graph.node_count());
    Rng day_rng(derive_seed(seed, "planted-adoption/days"));
    for (NodeId v = 0; v < out.graph.node_count(); ++v) {
        const auto c = bg.block[v];
        out.planted[v] = kAdopterClasses[c];
        const auto [lo, hi] = params.day_windows[c];
        out.days.day[v] = lo + static_cast<std::int32_t>(uniform_index(day_rng, static_cast<std::uint64_t>(hi - lo + 1)));
    }
    return out;
}

} // namespace tcrank
