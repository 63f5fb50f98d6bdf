#pragma once

// Top Candidate expert selection. Every node nominates its most popular
// neighbors; the expert set is the largest set closed under nomination,
// reached by starting from all nodes and repeatedly keeping only the nodes
// nominated by the current set.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "tcrank/errors.hpp"
#include "tcrank/graph.hpp"
#include "tcrank/io.hpp"
#include "tcrank/parallel.hpp"
#include "tcrank/score_vector.hpp"

namespace tcrank {

enum class TieRule {
    inclusive, // everyone tied with the c-th most popular neighbor is nominated
    exclusive, // exactly c nominees; ties at the cut go to the smaller dense id
};

/// Nominee lists in compressed form: nominees(u) is a subset of N(u).
class NominationRelation {
public:
    NominationRelation() : offsets_(1, 0) {}
    NominationRelation(std::vector<EdgeIndex> offsets, std::vector<NodeId> nominees, double alpha, TieRule rule)
        : offsets_(std::move(offsets)), nominees_(std::move(nominees)), alpha_(alpha), rule_(rule) {}

    std::span<const NodeId> nominees(NodeId u) const noexcept {
        return {nominees_.data() + offsets_[u], nominees_.data() + offsets_[u + 1]};
    }
    std::size_t node_count() const noexcept { return offsets_.size() - 1; }
    double alpha() const noexcept { return alpha_; }
    TieRule tie_rule() const noexcept { return rule_; }

private:
    std::vector<EdgeIndex> offsets_;
    std::vector<NodeId> nominees_;
    double alpha_ = 0.0;
    TieRule rule_ = TieRule::inclusive;
};

/// Target nominee count max(1, ceil(alpha * d)); the slack keeps 0.7 * 10 at 7.
inline std::size_t nomination_count(double alpha, std::size_t degree) {
    const double raw = std::ceil(alpha * static_cast<double>(degree) - 1e-9);
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)), 1, std::max<std::size_t>(degree, 1));
}

inline NominationRelation build_nominations(const Graph& g, double alpha, TieRule rule = TieRule::inclusive) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in [0, 1]");
    const auto n = g.node_count();
    std::vector<EdgeIndex> offsets(n + 1, 0);
    std::vector<NodeId> nominees;
    std::vector<NodeId> sorted;
    for (NodeId u = 0; u < n; ++u) {
        const auto nb = g.neighbors(u);
        if (!nb.empty()) {
            const auto c = nomination_count(alpha, nb.size());
            sorted.assign(nb.begin(), nb.end());
            // Popularity descending, id ascending.
            std::stable_sort(sorted.begin(), sorted.end(),
                             [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
            if (rule == TieRule::exclusive) {
                sorted.resize(c);
            } else {
                const auto cut = g.degree(sorted[c - 1]);
                auto end = sorted.begin() + static_cast<std::ptrdiff_t>(c);
                while (end != sorted.end() && g.degree(*end) == cut) ++end;
                sorted.erase(end, sorted.end());
            }
            std::sort(sorted.begin(), sorted.end());
            nominees.insert(nominees.end(), sorted.begin(), sorted.end());
        }
        offsets[u + 1] = nominees.size();
    }
    return {std::move(offsets), std::move(nominees), alpha, rule};
}

struct ExpertSet {
    std::vector<NodeId> members; // ascending
    std::vector<bool> is_member;
    double alpha = 0.0;
    int iterations = 0;                  // rounds that removed at least one node
    std::vector<std::size_t> round_sizes; // |E_0| = n, |E_1|, ..., |E_final|

    std::size_t size() const noexcept { return members.size(); }
    bool contains(NodeId v) const noexcept { return v < is_member.size() && is_member[v]; }
};

/// Largest fixed point E = nominees(E), by synchronous rounds from E_0 = V.
inline ExpertSet stable_expert_set(const NominationRelation& nom) {
    const auto n = nom.node_count();
    std::vector<std::uint32_t> support(n, 0); // nominators still in the set
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : nom.nominees(u)) ++support[v];

    ExpertSet es;
    es.alpha = nom.alpha();
    es.is_member.assign(n, true);
    es.round_sizes.push_back(n);
    std::size_t size = n;

    std::vector<NodeId> removed;
    for (NodeId v = 0; v < n; ++v)
        if (support[v] == 0) removed.push_back(v);
    std::vector<NodeId> next;
    while (!removed.empty()) {
        ++es.iterations;
        for (NodeId v : removed) es.is_member[v] = false;
        size -= removed.size();
        es.round_sizes.push_back(size);
        next.clear();
        for (NodeId u : removed)
            for (NodeId v : nom.nominees(u))
                if (--support[v] == 0 && es.is_member[v]) next.push_back(v);
        removed.swap(next);
    }
    for (NodeId v = 0; v < n; ++v)
        if (es.is_member[v]) es.members.push_back(v);
    return es;
}

inline ExpertSet stable_expert_set(const Graph& g, double alpha, TieRule rule = TieRule::inclusive) {
    return stable_expert_set(build_nominations(g, alpha, rule));
}

/// Checks both stability clauses; returns an empty string if they hold.
inline std::string check_stability(const NominationRelation& nom, const ExpertSet& es) {
    const auto n = nom.node_count();
    std::vector<bool> nominated(n, false);
    for (NodeId u : es.members) {
        for (NodeId v : nom.nominees(u)) {
            if (!es.contains(v))
                return "nominee " + std::to_string(v) + " of expert " + std::to_string(u) + " is not an expert";
            nominated[v] = true;
        }
    }
    for (NodeId v : es.members)
        if (!nominated[v]) return "expert " + std::to_string(v) + " is nominated by no expert";
    return {};
}

inline std::vector<double> default_alpha_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    return grid;
}

struct TCRanking {
    std::vector<double> alpha_grid;
    std::vector<double> score;     // smallest grid alpha with membership; +inf if none
    std::vector<NodeId> order;     // best first
    std::vector<std::size_t> rank; // 1-based position in order, per node
    std::vector<ExpertSet> sets;   // one per grid value, in grid order
    TieRule tie_rule = TieRule::inclusive;
};

inline TCRanking tc_ranking(const Graph& g, std::vector<double> alpha_grid = default_alpha_grid(),
                            TieRule rule = TieRule::inclusive) {
    if (alpha_grid.empty()) throw ArgumentError("alpha grid is empty");
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        if (!(alpha_grid[i] >= 0.0 && alpha_grid[i] <= 1.0)) throw ArgumentError("alpha grid values must lie in [0, 1]");
        if (i > 0 && !(alpha_grid[i - 1] < alpha_grid[i])) throw ArgumentError("alpha grid must be strictly ascending");
    }
    const auto n = g.node_count();
    TCRanking r;
    r.tie_rule = rule;
    r.alpha_grid = std::move(alpha_grid);
    r.sets.resize(r.alpha_grid.size());
    parallel_for(r.alpha_grid.size(), [&](std::size_t i, int) {
        r.sets[i] = stable_expert_set(g, r.alpha_grid[i], rule);
    }, 1);

    r.score.assign(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = r.sets.size(); i-- > 0;)
        for (NodeId v : r.sets[i].members) r.score[v] = r.alpha_grid[i];

    r.order.resize(n);
    std::iota(r.order.begin(), r.order.end(), NodeId{0});
    std::sort(r.order.begin(), r.order.end(), [&](NodeId a, NodeId b) {
        if (r.score[a] != r.score[b]) return r.score[a] < r.score[b];
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });
    r.rank.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) r.rank[r.order[i]] = i + 1;
    return r;
}

/// Higher-is-better view of a ranking: 1 - alpha for members, -1 for nodes never selected.
inline ScoreVector tc_scores(const TCRanking& r) {
    ScoreVector sv;
    sv.measure = "tc";
    sv.score.resize(r.score.size());
    for (std::size_t v = 0; v < r.score.size(); ++v)
        sv.score[v] = std::isinf(r.score[v]) ? -1.0 : 1.0 - r.score[v];
    std::string grid;
    for (double a : r.alpha_grid) grid += (grid.empty() ? "" : ";") + format_double(a);
    sv.params["alpha_grid"] = grid;
    sv.params["tie_rule"] = r.tie_rule == TieRule::inclusive ? "inclusive" : "exclusive";
    return sv;
}

/// CSV `label,score_alpha,rank` in dense id order.
inline void write_tc_ranking(std::ostream& out, const Graph& g, const TCRanking& r) {
    out << "label,score_alpha,rank\n";
    for (NodeId v = 0; v < g.node_count(); ++v)
        out << detail::csv_field(g.label(v)) << ',' << format_double(r.score[v]) << ',' << r.rank[v] << '\n';
}

/// Membership audit: one 0/1 column per grid alpha.
inline void write_tc_membership(std::ostream& out, const Graph& g, const TCRanking& r) {
    out << "label";
    for (double a : r.alpha_grid) out << ",alpha_" << format_double(a);
    out << '\n';
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << detail::csv_field(g.label(v));
        for (const auto& s : r.sets) out << ',' << (s.contains(v) ? 1 : 0);
        out << '\n';
    }
}

} // namespace tcrank
