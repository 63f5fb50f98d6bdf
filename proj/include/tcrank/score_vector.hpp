#pragma once

#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tcrank/errors.hpp"
#include "tcrank/graph.hpp"
#include "tcrank/io.hpp"

namespace tcrank {

/// One centrality measure evaluated on every node, indexed by dense id.
struct ScoreVector {
    std::string measure;
    std::vector<double> score;
    std::map<std::string, std::string> params;
    double runtime_seconds = 0.0;

    std::size_t size() const noexcept { return score.size(); }
    double operator[](NodeId u) const noexcept { return score[u]; }

    bool all_finite() const {
        for (double x : score)
            if (!std::isfinite(x)) return false;
        return true;
    }
};

/// Measures the wall time of `fn()` into `sv.runtime_seconds`.
template <class Fn>
ScoreVector timed(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    ScoreVector sv = fn();
    sv.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sv;
}

/// CSV `label,score`, rows in dense id order.
inline void write_scores(std::ostream& out, const Graph& g, const ScoreVector& sv) {
    out << "label,score\n";
    for (NodeId u = 0; u < g.node_count(); ++u)
        out << detail::csv_field(g.label(u)) << ',' << format_double(sv.score[u]) << '\n';
}

/// Reads a `label,score` CSV back onto the ids of `g`; every node must appear.
inline ScoreVector read_scores(std::istream& in, const Graph& g, std::string measure) {
    ScoreVector sv;
    sv.measure = std::move(measure);
    sv.score.assign(g.node_count(), std::nan(""));
    std::vector<bool> seen(g.node_count(), false);
    const auto index = label_index(g);
    EdgeListFormat fmt;
    fmt.delimiter = ',';
    fmt.header = true;
    detail::for_each_record(in, fmt, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
        if (fields.size() < 2) throw ParseError(line_no, "expected label,score");
        const auto it = index.find(std::string(fields[0]));
        if (it == index.end()) throw ParseError(line_no, "unknown node '" + std::string(fields[0]) + "'");
        double value = 0.0;
        try {
            value = std::stod(std::string(fields[1]));
        } catch (const std::exception&) {
            throw ParseError(line_no, "bad score '" + std::string(fields[1]) + "'");
        }
        sv.score[it->second] = value;
        seen[it->second] = true;
    });
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (!seen[u]) throw DataError("score file for " + sv.measure + " lacks node '" + g.label(u) + "'");
    return sv;
}

} // namespace tcrank
