#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tcrank/adopter_class.hpp"
#include "tcrank/errors.hpp"
#include "tcrank/graph.hpp"
#include "tcrank/random.hpp"

namespace tcrank {

/// Threshold comparisons tolerate this much rounding, so 0.7 * 10 still means 7.
inline constexpr double kThresholdSlack = 1e-9;

struct ThresholdAssignment {
    std::vector<double> theta;
    std::string provenance;

    double operator[](NodeId v) const noexcept { return theta[v]; }
};

struct CascadeResult {
    std::vector<NodeId> activated;   // activation order; seeds first, ascending
    std::vector<std::int32_t> round; // per node; -1 if never activated
    int rounds = 0;                  // rounds evaluated after seeding

    bool is_active(NodeId v) const noexcept { return round[v] >= 0; }
    std::size_t size() const noexcept { return activated.size(); }
};

namespace detail {

inline void check_seeds(const Graph& g, std::span<const NodeId> seeds) {
    for (NodeId s : seeds)
        if (!g.contains(s)) throw ArgumentError("seed " + std::to_string(s) + " is not a node");
}

} // namespace detail

/**
 * Scratch space for repeated LT cascades on the same graph. State is reset
 * lazily through epoch stamps, so a run costs time proportional to the part
 * of the graph it touches rather than n.
 */
class LtWorkspace {
public:
    explicit LtWorkspace(std::size_t n = 0) { resize(n); }

    void resize(std::size_t n) {
        if (active_.size() == n) return;
        active_.assign(n, 0);
        counted_.assign(n, 0);
        touched_.assign(n, 0);
        count_.assign(n, 0);
        epoch_ = 0;
        touch_epoch_ = 0;
    }

    /// Runs a synchronous LT cascade; `on_activate(v, round)` fires once per active node.
    template <class OnActivate>
    int run(const Graph& g, std::span<const NodeId> seeds, std::span<const double> theta, OnActivate&& on_activate) {
        resize(g.node_count());
        ++epoch_;
        frontier_.clear();
        for (NodeId s : seeds) {
            if (active_[s] != epoch_) {
                active_[s] = epoch_;
                frontier_.push_back(s);
            }
        }
        std::sort(frontier_.begin(), frontier_.end());
        for (NodeId s : frontier_) on_activate(s, 0);

        int rounds = 0;
        while (!frontier_.empty()) {
            ++rounds;
            ++touch_epoch_;
            candidates_.clear();
            for (NodeId u : frontier_) {
                for (NodeId v : g.neighbors(u)) {
                    if (active_[v] == epoch_) continue;
                    if (counted_[v] != epoch_) {
                        counted_[v] = epoch_;
                        count_[v] = 0;
                    }
                    ++count_[v];
                    if (touched_[v] != touch_epoch_) {
                        touched_[v] = touch_epoch_;
                        candidates_.push_back(v);
                    }
                }
            }
            frontier_.clear();
            for (NodeId v : candidates_) {
                if (static_cast<double>(count_[v]) + kThresholdSlack >= theta[v]) frontier_.push_back(v);
            }
            std::sort(frontier_.begin(), frontier_.end());
            for (NodeId v : frontier_) {
                active_[v] = epoch_;
                on_activate(v, rounds);
            }
        }
        return rounds;
    }

private:
    std::vector<std::uint64_t> active_, counted_, touched_;
    std::vector<std::uint32_t> count_;
    std::vector<NodeId> frontier_, candidates_;
    std::uint64_t epoch_ = 0;
    std::uint64_t touch_epoch_ = 0;
};

/**
 * Linear Threshold cascade with unit edge weights and synchronous rounds.
 * An inactive node activates once its active-neighbor count reaches its
 * threshold; a node with no active neighbor never activates, even when its
 * threshold is zero.
 */
inline CascadeResult lt_simulate(const Graph& g, std::span<const NodeId> seeds, const ThresholdAssignment& thresholds) {
    detail::check_seeds(g, seeds);
    if (thresholds.theta.size() != g.node_count()) throw ArgumentError("threshold count does not match node count");
    CascadeResult result;
    result.round.assign(g.node_count(), -1);
    LtWorkspace ws(g.node_count());
    result.rounds = ws.run(g, seeds, thresholds.theta, [&](NodeId v, int r) {
        result.activated.push_back(v);
        result.round[v] = r;
    });
    return result;
}

/// Activation probability of the arc source -> target.
using ArcProbability = std::function<double(NodeId source, NodeId target)>;

inline ArcProbability uniform_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("IC probability must lie in [0, 1]");
    return [p](NodeId, NodeId) { return p; };
}

/// Weighted cascade: the reciprocal of the source node's degree.
inline ArcProbability weighted_cascade_probability(const Graph& g) {
    return [&g](NodeId source, NodeId) { return 1.0 / static_cast<double>(g.degree(source)); };
}

/// Trivalency: each arc draws once from {0.1, 0.01, 0.001}, fixed by `seed`.
inline ArcProbability trivalency_probability(std::uint64_t seed) {
    return [seed](NodeId source, NodeId target) {
        static constexpr std::array<double, 3> levels{0.1, 0.01, 0.001};
        const auto key = (static_cast<std::uint64_t>(source) << 32) | target;
        return levels[splitmix64(seed ^ splitmix64(key)) % 3];
    };
}

/**
 * Independent Cascade: every node activated in round r tries each still
 * inactive neighbor once, in round r + 1. Draws happen in a fixed order
 * (frontier ascending, neighbors ascending) so a seed fixes the outcome.
 */
inline CascadeResult ic_simulate(const Graph& g, std::span<const NodeId> seeds, const ArcProbability& probability,
                                 std::uint64_t seed) {
    detail::check_seeds(g, seeds);
    CascadeResult result;
    result.round.assign(g.node_count(), -1);
    Rng rng(seed);
    std::vector<NodeId> frontier;
    for (NodeId s : seeds) {
        if (result.round[s] < 0) {
            result.round[s] = 0;
            frontier.push_back(s);
        }
    }
    std::sort(frontier.begin(), frontier.end());
    result.activated = frontier;
    std::vector<NodeId> next;
    while (!frontier.empty()) {
        ++result.rounds;
        next.clear();
        for (NodeId u : frontier) {
            for (NodeId v : g.neighbors(u)) {
                if (result.round[v] >= 0) continue;
                const double p = probability(u, v);
                if (p >= 1.0 || (p > 0.0 && uniform01(rng) < p)) {
                    result.round[v] = result.rounds;
                    next.push_back(v);
                }
            }
        }
        std::sort(next.begin(), next.end());
        result.activated.insert(result.activated.end(), next.begin(), next.end());
        frontier.swap(next);
    }
    return result;
}

inline ThresholdAssignment thresholds_uniform_multiplier(const Graph& g, double multiplier) {
    if (!(multiplier > 0.0 && multiplier <= 1.0)) throw ArgumentError("threshold multiplier must lie in (0, 1]");
    ThresholdAssignment t;
    t.provenance = "uniform-multiplier";
    t.theta.resize(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) t.theta[v] = multiplier * static_cast<double>(g.degree(v));
    return t;
}

/// theta(v) = U(0,1) * deg(v): fractional thresholds scaled to unit edge weights.
inline ThresholdAssignment thresholds_uniform_random(const Graph& g, std::uint64_t seed) {
    ThresholdAssignment t;
    t.provenance = "uniform-random";
    t.theta.resize(g.node_count());
    Rng rng(seed);
    for (NodeId v = 0; v < g.node_count(); ++v) t.theta[v] = uniform01(rng) * static_cast<double>(g.degree(v));
    return t;
}

struct FractionInterval {
    double lo = 0.0;
    double hi = 1.0;
};

using ClassIntervals = std::array<FractionInterval, kAdopterClassCount>;

inline constexpr ClassIntervals kDefaultClassIntervals = {{
    {0.0, 0.2},   // innovators
    {0.1, 0.35},  // early adopters
    {0.3, 0.6},   // early majority
    {0.5, 0.85},  // late majority
    {0.75, 1.0},  // laggards
}};

/// Homophily-aware thresholds: fractions drawn from a per-class interval, early classes lowest.
inline ThresholdAssignment thresholds_class_aware(const Graph& g, std::span<const AdopterClass> classes,
                                                 const ClassIntervals& intervals, std::uint64_t seed) {
    for (const auto& iv : intervals)
        if (!(0.0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= 1.0))
            throw ArgumentError("class threshold interval must satisfy 0 <= lo <= hi <= 1");
    if (classes.size() != g.node_count()) throw ArgumentError("class labels do not cover the graph");
    std::string unlabeled;
    std::size_t missing = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (classes[v] == AdopterClass::Unclassified) {
            if (missing < 20) unlabeled += (missing ? ", " : "") + g.label(v);
            ++missing;
        }
    }
    if (missing > 0)
        throw DataError(std::to_string(missing) + " nodes lack an adopter class: " + unlabeled + (missing > 20 ? ", ..." : ""));
    ThresholdAssignment t;
    t.provenance = "class-aware";
    t.theta.resize(g.node_count());
    Rng rng(seed);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto& iv = intervals[class_index(classes[v])];
        t.theta[v] = uniform_real(rng, iv.lo, iv.hi) * static_cast<double>(g.degree(v));
    }
    return t;
}

} // namespace tcrank
