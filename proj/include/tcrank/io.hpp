#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tcrank/errors.hpp"
#include "tcrank/graph.hpp"

namespace tcrank {

struct EdgeListFormat {
    /// ' ' matches any run of blanks/tabs; any other character splits exactly once per occurrence.
    char delimiter = '\t';
    bool directed = false;
    std::string comment_prefix = "#";
    bool header = false;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    if (delimiter == ' ') {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            if (i == line.size()) break;
            const auto start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            fields.push_back(line.substr(start, i - start));
        }
        return fields;
    }
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(delimiter, start);
        fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

/// Iterates data lines, skipping blanks, comments and an optional header.
template <class OnLine>
void for_each_record(std::istream& in, const EdgeListFormat& fmt, OnLine&& on_line) {
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = fmt.header;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) continue;
        if (!fmt.comment_prefix.empty() && text.starts_with(fmt.comment_prefix)) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        on_line(line_no, split_fields(text, fmt.delimiter));
    }
}

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace detail

/// Shortest round-trip decimal representation; "inf" / "-inf" / "nan" otherwise.
inline std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// Reads `src<delim>dst` lines. Dense ids follow first appearance of each label.
inline Graph load_edge_list(std::istream& in, const EdgeListFormat& fmt = {}) {
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> labels;
    std::vector<std::pair<NodeId, NodeId>> edges;
    const auto intern = [&](std::string_view token) {
        auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(labels.size()));
        if (inserted) labels.emplace_back(token);
        return it->second;
    };
    detail::for_each_record(in, fmt, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
            throw ParseError(line_no, "expected 2 fields, found " + std::to_string(fields.size()));
        const NodeId u = intern(fields[0]);
        const NodeId v = intern(fields[1]);
        edges.emplace_back(u, v);
    });
    if (labels.empty()) throw DataError("edge list is empty");
    const auto n = labels.size();
    return Graph::from_edges(n, edges, std::move(labels));
}

inline void write_edge_list(std::ostream& out, const Graph& g, char delimiter = '\t') {
    for (const auto& [u, v] : g.edge_list()) out << g.label(u) << delimiter << g.label(v) << '\n';
}

inline void write_label_map(std::ostream& out, const Graph& g) {
    out << "dense_id,label\n";
    for (NodeId u = 0; u < g.node_count(); ++u) out << u << ',' << detail::csv_field(g.label(u)) << '\n';
}

inline std::unordered_map<std::string, NodeId> label_index(const Graph& g) {
    std::unordered_map<std::string, NodeId> index;
    index.reserve(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) index.emplace(g.label(u), u);
    return index;
}

/// Adoption day per dense node id; std::nullopt where no date is known.
struct AdoptionTable {
    std::vector<std::optional<std::int32_t>> day;
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return day.size(); }
    bool has(NodeId u) const noexcept { return u < day.size() && day[u].has_value(); }
    std::size_t missing_count() const noexcept {
        std::size_t c = 0;
        for (const auto& d : day) c += !d.has_value();
        return c;
    }
};

struct DateConfig {
    EdgeListFormat format{};
    /// Required when any row carries an ISO date.
    std::optional<std::chrono::sys_days> kickoff;
};

/// Parses YYYY-MM-DD; nullopt if malformed or not a real calendar date.
inline std::optional<std::chrono::sys_days> parse_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    int y = 0;
    unsigned m = 0, d = 0;
    const auto num = [](std::string_view part, auto& value) {
        const auto res = std::from_chars(part.data(), part.data() + part.size(), value);
        return res.ec == std::errc{} && res.ptr == part.data() + part.size();
    };
    if (!num(s.substr(0, 4), y) || !num(s.substr(5, 2), m) || !num(s.substr(8, 2), d)) return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return std::chrono::sys_days{ymd};
}

/// Reads `node<delim>date` rows into a table indexed like `g`.
inline AdoptionTable load_adoption(std::istream& in, const Graph& g, const DateConfig& config = {}) {
    AdoptionTable table;
    table.day.assign(g.node_count(), std::nullopt);
    const auto index = label_index(g);
    std::size_t unknown = 0;
    detail::for_each_record(in, config.format, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
        if (fields.size() != 2 || fields[0].empty())
            throw ParseError(line_no, "expected 2 fields, found " + std::to_string(fields.size()));
        const auto token = fields[1];
        std::int64_t offset = 0;
        if (auto date = parse_iso_date(token)) {
            if (!config.kickoff)
                throw ParseError(line_no, "calendar date '" + std::string(token) + "' needs a kickoff date");
            offset = (*date - *config.kickoff).count();
        } else {
            const auto res = std::from_chars(token.data(), token.data() + token.size(), offset);
            if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
                throw ParseError(line_no, "unparseable date '" + std::string(token) + "'");
        }
        if (offset < 0 || offset > std::numeric_limits<std::int32_t>::max())
            throw ParseError(line_no, "adoption day " + std::to_string(offset) + " is before kickoff or out of range");
        const auto it = index.find(std::string(fields[0]));
        if (it == index.end()) {
            ++unknown;
            return;
        }
        auto& slot = table.day[it->second];
        if (slot) {
            table.warnings.push_back("line " + std::to_string(line_no) + ": duplicate row for node '" +
                                     std::string(fields[0]) + "', keeping the first");
            return;
        }
        slot = static_cast<std::int32_t>(offset);
    });
    if (unknown > 0)
        table.warnings.push_back(std::to_string(unknown) + " rows name nodes absent from the graph and were skipped");
    return table;
}

inline void write_adoption(std::ostream& out, const Graph& g, const AdoptionTable& table, char delimiter = '\t') {
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (table.has(u)) out << g.label(u) << delimiter << *table.day[u] << '\n';
}

} // namespace tcrank
