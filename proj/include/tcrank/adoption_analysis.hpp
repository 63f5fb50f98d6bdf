#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "tcrank/adopter_class.hpp"
#include "tcrank/errors.hpp"
#include "tcrank/graph.hpp"
#include "tcrank/io.hpp"
#include "tcrank/random.hpp"
#include "tcrank/score_vector.hpp"

namespace tcrank {

using Cutoffs = std::array<double, kAdopterClassCount - 1>;

/// Rogers' adopter category boundaries, as cumulative percentiles.
inline constexpr Cutoffs kRogersCutoffs = {2.5, 16.0, 50.0, 84.0};

struct Classification {
    std::vector<AdopterClass> label; // per node; Unclassified when the day is missing
    Cutoffs cutoffs = kRogersCutoffs;
    std::array<std::size_t, kAdopterClassCount> sizes{};
    std::vector<NodeId> excluded;    // nodes without an adoption day

    AdopterClass operator[](NodeId v) const noexcept { return label[v]; }
};

/// Cumulative class boundaries ceil(cutoff% * count), clamped to count.
inline std::array<std::size_t, kAdopterClassCount - 1> class_boundaries(const Cutoffs& cutoffs, std::size_t count) {
    std::array<std::size_t, kAdopterClassCount - 1> b{};
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        const double raw = std::ceil(cutoffs[i] * static_cast<double>(count) / 100.0 - 1e-9);
        b[i] = std::min(count, static_cast<std::size_t>(std::max(raw, 0.0)));
    }
    return b;
}

/// Sorts dated nodes by (day, dense id) and cuts the order at the cutoff percentiles.
inline Classification classify_adopters(const AdoptionTable& days, const Cutoffs& cutoffs = kRogersCutoffs) {
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        if (!(cutoffs[i] > 0.0 && cutoffs[i] < 100.0)) throw ArgumentError("cutoffs must lie in (0, 100)");
        if (i > 0 && !(cutoffs[i - 1] < cutoffs[i])) throw ArgumentError("cutoffs must be strictly ascending");
    }
    Classification c;
    c.cutoffs = cutoffs;
    c.label.assign(days.size(), AdopterClass::Unclassified);
    std::vector<NodeId> dated;
    for (NodeId v = 0; v < days.size(); ++v) {
        if (days.has(v))
            dated.push_back(v);
        else
            c.excluded.push_back(v);
    }
    std::stable_sort(dated.begin(), dated.end(), [&](NodeId a, NodeId b) { return *days.day[a] < *days.day[b]; });
    const auto bounds = class_boundaries(cutoffs, dated.size());
    std::size_t cls = 0;
    for (std::size_t pos = 0; pos < dated.size(); ++pos) {
        while (cls < bounds.size() && pos >= bounds[cls]) ++cls;
        c.label[dated[pos]] = kAdopterClasses[cls];
        ++c.sizes[cls];
    }
    return c;
}

/// Class-by-class link shares with the raw endpoint counts behind them.
struct GroupMatrix {
    // percent[row][col]: share of the column group's link endpoints whose partner is in the row group.
    std::array<std::array<double, kAdopterClassCount>, kAdopterClassCount> percent{};
    std::array<std::array<std::uint64_t, kAdopterClassCount>, kAdopterClassCount> endpoints{};
    std::vector<std::string> warnings;

    double column_sum(std::size_t col) const noexcept {
        double s = 0;
        for (std::size_t r = 0; r < kAdopterClassCount; ++r) s += percent[r][col];
        return s;
    }
    std::uint64_t total_endpoints() const noexcept {
        std::uint64_t s = 0;
        for (const auto& row : endpoints)
            for (auto x : row) s += x;
        return s;
    }
};

inline GroupMatrix interconnectedness(const Graph& g, std::span<const AdopterClass> classes) {
    if (classes.size() != g.node_count()) throw ArgumentError("class labels do not cover the graph");
    GroupMatrix m;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (classes[u] == AdopterClass::Unclassified) continue;
        const auto col = class_index(classes[u]);
        for (NodeId v : g.neighbors(u)) {
            if (classes[v] == AdopterClass::Unclassified) continue;
            ++m.endpoints[class_index(classes[v])][col];
        }
    }
    for (std::size_t col = 0; col < kAdopterClassCount; ++col) {
        std::uint64_t total = 0;
        for (std::size_t r = 0; r < kAdopterClassCount; ++r) total += m.endpoints[r][col];
        if (total == 0) {
            m.warnings.push_back(std::string("class ") + std::string(class_name(kAdopterClasses[col])) +
                                 " has no link endpoints; column left at zero");
            continue;
        }
        for (std::size_t r = 0; r < kAdopterClassCount; ++r)
            m.percent[r][col] = 100.0 * static_cast<double>(m.endpoints[r][col]) / static_cast<double>(total);
    }
    return m;
}

struct Assortativity {
    double value = 0.0;
    bool degenerate = false; // endpoint scores have zero variance
};

/// Pearson correlation of endpoint scores over both orientations of every edge.
inline Assortativity numeric_assortativity(const Graph& g, std::span<const double> x) {
    if (g.edge_count() == 0) throw DataError("assortativity needs at least one edge");
    if (x.size() != g.node_count()) throw ArgumentError("score count does not match node count");
    // Both orientations: every node appears deg(u) times on each side.
    double mean = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) mean += x[u] * static_cast<double>(g.degree(u));
    mean /= static_cast<double>(2 * g.edge_count());
    double cov = 0.0, var = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const double du = x[u] - mean;
        var += du * du * static_cast<double>(g.degree(u));
        for (NodeId v : g.neighbors(u)) cov += du * (x[v] - mean);
    }
    const double scale = std::max(1.0, std::abs(mean));
    if (!(var > 1e-24 * scale * scale * static_cast<double>(2 * g.edge_count()))) return {0.0, true};
    return {std::clamp(cov / var, -1.0, 1.0), false};
}

inline Assortativity numeric_assortativity(const Graph& g, const ScoreVector& sv) {
    return numeric_assortativity(g, std::span<const double>(sv.score));
}

struct TopKSet {
    std::string measure;
    std::size_t k = 0;
    std::vector<NodeId> members; // ascending
    std::uint64_t seed = 0;

    bool contains(NodeId v) const { return std::binary_search(members.begin(), members.end(), v); }
};

/// The k highest scores; nodes tied at the k-th value are subsampled uniformly to fill exactly k.
inline TopKSet top_k(const ScoreVector& sv, std::size_t k, std::uint64_t seed) {
    const auto n = sv.size();
    if (k > n) throw ArgumentError("top-k size " + std::to_string(k) + " exceeds node count " + std::to_string(n));
    TopKSet set{sv.measure, k, {}, seed};
    if (k == 0) return set;
    std::vector<double> values(sv.score);
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k - 1), values.end(),
                     std::greater<>());
    const double cut = values[k - 1];
    std::vector<NodeId> tied;
    for (NodeId v = 0; v < n; ++v) {
        if (sv.score[v] > cut)
            set.members.push_back(v);
        else if (sv.score[v] == cut)
            tied.push_back(v);
    }
    const auto need = k - set.members.size();
    Rng rng(seed);
    partial_shuffle(std::span<NodeId>(tied), need, rng);
    set.members.insert(set.members.end(), tied.begin(), tied.begin() + static_cast<std::ptrdiff_t>(need));
    std::sort(set.members.begin(), set.members.end());
    return set;
}

/// First k entries of an explicit ranking order.
inline TopKSet top_k_prefix(std::string measure, std::span<const NodeId> order, std::size_t k) {
    if (k > order.size()) throw ArgumentError("top-k size exceeds ranking length");
    TopKSet set{std::move(measure), k, {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)}, 0};
    std::sort(set.members.begin(), set.members.end());
    return set;
}

using OverlapMatrix = std::vector<std::vector<std::size_t>>;

inline OverlapMatrix overlap_matrix(std::span<const TopKSet> sets) {
    if (sets.size() < 2) throw ArgumentError("overlap needs at least two sets");
    for (const auto& s : sets)
        if (s.k != sets.front().k) throw ArgumentError("overlap sets must share the same k");
    OverlapMatrix m(sets.size(), std::vector<std::size_t>(sets.size(), 0));
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i; j < sets.size(); ++j) {
            std::vector<NodeId> common;
            std::set_intersection(sets[i].members.begin(), sets[i].members.end(), sets[j].members.begin(),
                                  sets[j].members.end(), std::back_inserter(common));
            m[i][j] = m[j][i] = common.size();
        }
    }
    return m;
}

struct RegistrationStats {
    double average = 0.0;
    std::int32_t median = 0; // lower middle element for even counts
    std::size_t counted = 0;
    std::size_t missing = 0;
    std::array<std::size_t, kAdopterClassCount> per_class{};
};

inline RegistrationStats registration_stats(std::span<const NodeId> members, const AdoptionTable& days,
                                            const Classification* classes = nullptr) {
    RegistrationStats st;
    std::vector<std::int32_t> values;
    values.reserve(members.size());
    for (NodeId v : members) {
        if (!days.has(v)) {
            ++st.missing;
            continue;
        }
        values.push_back(*days.day[v]);
        if (classes && (*classes)[v] != AdopterClass::Unclassified) ++st.per_class[class_index((*classes)[v])];
    }
    if (values.empty()) throw DataError("no member has an adoption day");
    st.counted = values.size();
    double sum = 0.0;
    for (auto d : values) sum += d;
    st.average = sum / static_cast<double>(values.size());
    const auto mid = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    st.median = values[mid];
    return st;
}

inline RegistrationStats registration_stats(const TopKSet& set, const AdoptionTable& days,
                                            const Classification* classes = nullptr) {
    return registration_stats(std::span<const NodeId>(set.members), days, classes);
}

/// Histogram of adoption days in bins of `bin_width` days, keyed by bin start.
inline std::map<std::int32_t, std::size_t> day_histogram(std::span<const NodeId> members, const AdoptionTable& days,
                                                         std::int32_t bin_width) {
    if (bin_width <= 0) throw ArgumentError("histogram bin width must be positive");
    std::map<std::int32_t, std::size_t> h;
    for (NodeId v : members)
        if (days.has(v)) ++h[(*days.day[v] / bin_width) * bin_width];
    return h;
}

/// Reached classes, in order: innovators, early adopters, early majority.
inline constexpr std::array<AdopterClass, 3> kReachClasses = {AdopterClass::Innovator, AdopterClass::EarlyAdopter,
                                                              AdopterClass::EarlyMajority};

struct ReachReport {
    std::string measure;
    std::size_t reaching = 0; // members classified innovator or early adopter
    std::array<std::size_t, 3> counts{};
    std::array<double, 3> percent{};
    bool exclude_all_members = false;
};

/**
 * Net reach of the early-market members of a set: distinct innovator,
 * early adopter and early majority neighbors of those members, not counting
 * the reaching members themselves (or any set member, in strict mode).
 */
inline ReachReport reach_analysis(const TopKSet& set, std::span<const AdopterClass> classes, const Graph& g,
                                  bool exclude_all_members = false) {
    if (classes.size() != g.node_count()) throw ArgumentError("class labels do not cover the graph");
    ReachReport rep;
    rep.measure = set.measure;
    rep.exclude_all_members = exclude_all_members;
    std::vector<bool> excluded(g.node_count(), false), reached(g.node_count(), false);
    std::vector<NodeId> reaching;
    for (NodeId v : set.members) {
        const auto c = classes[v];
        if (c == AdopterClass::Innovator || c == AdopterClass::EarlyAdopter) {
            reaching.push_back(v);
            excluded[v] = true;
        } else if (exclude_all_members) {
            excluded[v] = true;
        }
    }
    rep.reaching = reaching.size();
    for (NodeId u : reaching) {
        for (NodeId w : g.neighbors(u)) {
            if (excluded[w] || reached[w]) continue;
            reached[w] = true;
            for (std::size_t i = 0; i < kReachClasses.size(); ++i)
                if (classes[w] == kReachClasses[i]) ++rep.counts[i];
        }
    }
    const auto total = rep.counts[0] + rep.counts[1] + rep.counts[2];
    if (total > 0)
        for (std::size_t i = 0; i < 3; ++i)
            rep.percent[i] = 100.0 * static_cast<double>(rep.counts[i]) / static_cast<double>(total);
    return rep;
}

} // namespace tcrank
