#pragma once

// Run configuration for the tcrank command line tool.
//
// The file format is flat `key = value` lines. `[section]` headers prefix
// the keys that follow with `section.`, and `#` starts a comment. Lists are
// comma separated, optionally wrapped in brackets. Command line overrides use
// the same keys.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcrank/adoption_analysis.hpp"
#include "tcrank/centrality/gdd.hpp"
#include "tcrank/centrality/harmonic.hpp"
#include "tcrank/diffusion.hpp"
#include "tcrank/io.hpp"
#include "tcrank/random.hpp"
#include "tcrank/top_candidate.hpp"

namespace tcrank::cli {

/// Bad command line or configuration; maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configuration value that violates its constraint, with the key and where it was set.
class ConfigError : public UsageError {
public:
    ConfigError(const std::string& key, const std::string& origin, const std::string& what)
        : UsageError(key + (origin.empty() ? "" : " (" + origin + ")") + ": " + what), key_(key) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

inline const std::vector<std::string>& measure_names() {
    static const std::vector<std::string> names{"degree", "harmonic", "pagerank", "kcore",
                                                "shapley", "gdd", "ltc", "tc"};
    return names;
}

inline std::string join(const std::vector<std::string>& items, std::string_view sep = ", ") {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += sep;
        out += s;
    }
    return out;
}

struct RawEntry {
    std::string value;
    std::string origin; // file:line or --set
};

using RawConfig = std::map<std::string, RawEntry>;

inline void parse_config_text(std::istream& in, const std::string& name, RawConfig& raw) {
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto text = std::string(detail::trim(line));
        if (text.empty()) continue;
        const auto origin = name + ":" + std::to_string(line_no);
        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError(text, origin, "unterminated section header");
            section = std::string(detail::trim(std::string_view(text).substr(1, text.size() - 2)));
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError(text, origin, "expected key = value");
        auto key = std::string(detail::trim(std::string_view(text).substr(0, eq)));
        auto value = std::string(detail::trim(std::string_view(text).substr(eq + 1)));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (!section.empty()) key = section + "." + key;
        raw[key] = {value, origin};
    }
}

inline RawConfig read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    RawConfig raw;
    parse_config_text(in, path, raw);
    return raw;
}

/// Applies a `key=value` override.
inline void apply_override(RawConfig& raw, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw UsageError("override '" + std::string(assignment) + "' lacks '='");
    raw[std::string(detail::trim(assignment.substr(0, eq)))] = {std::string(detail::trim(assignment.substr(eq + 1))),
                                                                "--set"};
}

struct RunConfig {
    // inputs
    std::string graph;
    EdgeListFormat graph_format{};
    std::string adoption;
    EdgeListFormat adoption_format{};
    std::string kickoff; // YYYY-MM-DD, empty if days are integers

    // measures
    std::vector<std::string> measures{"degree"};
    std::optional<std::size_t> harmonic_pivots = kDefaultHarmonicPivots; // nullopt: exact
    double pagerank_damping = 0.8;
    double pagerank_tolerance = 1e-10;
    int pagerank_max_iterations = 200;
    double gdd_p = 0.05;
    std::size_t gdd_q = 1000;
    GddVariant gdd_variant = GddVariant::generalized;
    double ltc_theta = 0.7;
    std::vector<double> tc_alpha_grid = default_alpha_grid();
    TieRule tc_tie_rule = TieRule::inclusive;

    // analysis
    std::size_t k = 1000;
    Cutoffs cutoffs = kRogersCutoffs;
    bool reach_strict = false;
    std::int32_t histogram_bin_days = 30;

    // simulation
    std::string sim_model = "lt";
    std::string sim_thresholds = "multiplier";
    double sim_theta = 0.7;
    std::string sim_ic_preset = "uniform";
    double sim_probability = 0.1;
    std::string sim_seed_source; // measure:<m> | class:<name> | list:<a;b;...> | file:<path>
    std::size_t sim_seed_count = 100;
    std::size_t sim_runs = 1;
    ClassIntervals sim_class_intervals = kDefaultClassIntervals;

    // run
    std::uint64_t seed = 1;
    std::string output = "out";
    std::set<std::string> formats{"csv", "json"};
    bool plot_data = false;
    int workers = 0; // 0: library default

    bool has_measure(std::string_view m) const {
        return std::find(measures.begin(), measures.end(), m) != measures.end();
    }

    std::uint64_t stage_seed(std::string_view stage) const { return derive_seed(seed, stage); }
};

namespace detail {

inline std::vector<std::string> split_list(std::string value) {
    auto text = std::string(tcrank::detail::trim(value));
    if (text.size() >= 2 && text.front() == '[' && text.back() == ']') text = text.substr(1, text.size() - 2);
    std::vector<std::string> items;
    if (tcrank::detail::trim(text).empty()) return items;
    for (auto f : tcrank::detail::split_fields(text, ',')) {
        auto item = std::string(tcrank::detail::trim(f));
        if (item.size() >= 2 && item.front() == '"' && item.back() == '"') item = item.substr(1, item.size() - 2);
        items.push_back(item);
    }
    return items;
}

inline const char* gdd_variant_name(GddVariant v) {
    switch (v) {
    case GddVariant::generalized: return "generalized";
    case GddVariant::degree_discount: return "degree_discount";
    case GddVariant::discount_only: return "discount_only";
    }
    return "generalized";
}

inline std::string delimiter_name(char d) {
    switch (d) {
    case '\t': return "tab";
    case ' ': return "space";
    case ',': return "comma";
    default: return std::string(1, d);
    }
}

class Reader {
public:
    explicit Reader(const RawConfig& raw) : raw_(raw) {}

    const RawEntry* find(const std::string& key) {
        used_.insert(key);
        const auto it = raw_.find(key);
        return it == raw_.end() ? nullptr : &it->second;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) {
        const auto it = raw_.find(key);
        throw ConfigError(key, it == raw_.end() ? "" : it->second.origin, what);
    }

    void string(const std::string& key, std::string& out) {
        if (auto e = find(key)) out = e->value;
    }

    void boolean(const std::string& key, bool& out) {
        auto e = find(key);
        if (!e) return;
        if (e->value == "true" || e->value == "1" || e->value == "yes") out = true;
        else if (e->value == "false" || e->value == "0" || e->value == "no") out = false;
        else fail(key, "expected true or false, got '" + e->value + "'");
    }

    double parse_double(const std::string& key, const std::string& text) {
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used == text.size()) return v;
        } catch (const std::exception&) {
        }
        fail(key, "expected a number, got '" + text + "'");
    }

    void number(const std::string& key, double& out) {
        if (auto e = find(key)) out = parse_double(key, e->value);
    }

    template <class Int>
    void integer(const std::string& key, Int& out) {
        auto e = find(key);
        if (!e) return;
        try {
            std::size_t used = 0;
            const long long v = std::stoll(e->value, &used);
            if (used == e->value.size() && v >= 0) {
                out = static_cast<Int>(v);
                return;
            }
        } catch (const std::exception&) {
        }
        fail(key, "expected a non-negative integer, got '" + e->value + "'");
    }

    void delimiter(const std::string& key, char& out) {
        auto e = find(key);
        if (!e) return;
        if (e->value == "tab" || e->value == "\\t") out = '\t';
        else if (e->value == "space" || e->value == "whitespace") out = ' ';
        else if (e->value == "comma") out = ',';
        else if (e->value.size() == 1) out = e->value[0];
        else fail(key, "expected tab, space, comma or a single character");
    }

    std::vector<std::string> unused() const {
        std::vector<std::string> keys;
        for (const auto& [k, v] : raw_)
            if (!used_.count(k)) keys.push_back(k);
        return keys;
    }

private:
    const RawConfig& raw_;
    std::set<std::string> used_;
};

} // namespace detail

/// Builds and validates a RunConfig; throws ConfigError naming the first offending key.
inline RunConfig resolve_config(const RawConfig& raw) {
    RunConfig c;
    detail::Reader r(raw);

    r.string("graph", c.graph);
    r.delimiter("graph.delimiter", c.graph_format.delimiter);
    r.boolean("graph.directed", c.graph_format.directed);
    r.boolean("graph.header", c.graph_format.header);
    r.string("graph.comment", c.graph_format.comment_prefix);
    r.string("adoption", c.adoption);
    r.delimiter("adoption.delimiter", c.adoption_format.delimiter);
    r.boolean("adoption.header", c.adoption_format.header);
    r.string("adoption.kickoff", c.kickoff);
    if (!c.kickoff.empty() && !parse_iso_date(c.kickoff))
        r.fail("adoption.kickoff", "expected a YYYY-MM-DD date, got '" + c.kickoff + "'");

    if (auto e = r.find("measures")) {
        c.measures.clear();
        for (const auto& m : detail::split_list(e->value)) {
            if (std::find(measure_names().begin(), measure_names().end(), m) == measure_names().end())
                r.fail("measures", "unknown measure '" + m + "'; valid measures: " + join(measure_names()));
            if (!c.has_measure(m)) c.measures.push_back(m);
        }
        if (c.measures.empty()) r.fail("measures", "at least one measure is required");
    }

    if (auto e = r.find("harmonic.pivots")) {
        if (e->value == "exact") {
            c.harmonic_pivots.reset();
        } else {
            std::size_t p = 0;
            r.integer("harmonic.pivots", p);
            if (p == 0) r.fail("harmonic.pivots", "must be 'exact' or a positive integer");
            c.harmonic_pivots = p;
        }
    }
    r.number("pagerank.damping", c.pagerank_damping);
    if (!(c.pagerank_damping > 0.0 && c.pagerank_damping < 1.0)) r.fail("pagerank.damping", "must lie in (0, 1)");
    r.number("pagerank.tolerance", c.pagerank_tolerance);
    if (!(c.pagerank_tolerance > 0.0)) r.fail("pagerank.tolerance", "must be positive");
    r.integer("pagerank.max_iterations", c.pagerank_max_iterations);
    if (c.pagerank_max_iterations < 1) r.fail("pagerank.max_iterations", "must be at least 1");

    r.number("gdd.p", c.gdd_p);
    if (!(c.gdd_p > 0.0 && c.gdd_p <= 1.0)) r.fail("gdd.p", "must lie in (0, 1]");
    r.integer("gdd.q", c.gdd_q);
    if (c.gdd_q < 1) r.fail("gdd.q", "must be at least 1");
    if (auto e = r.find("gdd.variant")) {
        if (e->value == "generalized") c.gdd_variant = GddVariant::generalized;
        else if (e->value == "degree_discount") c.gdd_variant = GddVariant::degree_discount;
        else if (e->value == "discount_only") c.gdd_variant = GddVariant::discount_only;
        else r.fail("gdd.variant", "expected generalized, degree_discount or discount_only");
    }

    r.number("ltc.theta", c.ltc_theta);
    if (!(c.ltc_theta > 0.0 && c.ltc_theta <= 1.0)) r.fail("ltc.theta", "must lie in (0, 1]");

    if (auto e = r.find("tc.alpha_grid")) {
        c.tc_alpha_grid.clear();
        for (const auto& item : detail::split_list(e->value)) c.tc_alpha_grid.push_back(r.parse_double("tc.alpha_grid", item));
        if (c.tc_alpha_grid.empty()) r.fail("tc.alpha_grid", "must list at least one value");
        for (std::size_t i = 0; i < c.tc_alpha_grid.size(); ++i) {
            const double a = c.tc_alpha_grid[i];
            if (!(a >= 0.0 && a <= 1.0)) r.fail("tc.alpha_grid", "values must lie in [0, 1]");
            if (i > 0 && !(a > c.tc_alpha_grid[i - 1])) r.fail("tc.alpha_grid", "values must be strictly increasing");
        }
    }
    if (auto e = r.find("tc.tie_rule")) {
        if (e->value == "inclusive") c.tc_tie_rule = TieRule::inclusive;
        else if (e->value == "exclusive") c.tc_tie_rule = TieRule::exclusive;
        else r.fail("tc.tie_rule", "expected inclusive or exclusive");
    }

    r.integer("k", c.k);
    if (c.k < 1) r.fail("k", "must be at least 1");
    if (auto e = r.find("cutoffs")) {
        const auto items = detail::split_list(e->value);
        if (items.size() != 4) r.fail("cutoffs", "expected four percentiles");
        for (std::size_t i = 0; i < 4; ++i) c.cutoffs[i] = r.parse_double("cutoffs", items[i]);
        for (std::size_t i = 0; i < 4; ++i)
            if (!(c.cutoffs[i] > (i ? c.cutoffs[i - 1] : 0.0) && c.cutoffs[i] < 100.0))
                r.fail("cutoffs", "percentiles must be strictly increasing within (0, 100)");
    }
    r.boolean("reach.strict", c.reach_strict);
    r.integer("histogram.bin_days", c.histogram_bin_days);
    if (c.histogram_bin_days < 1) r.fail("histogram.bin_days", "must be at least 1");

    r.string("simulate.model", c.sim_model);
    if (c.sim_model != "lt" && c.sim_model != "ic") r.fail("simulate.model", "expected lt or ic");
    r.string("simulate.thresholds", c.sim_thresholds);
    if (c.sim_thresholds != "multiplier" && c.sim_thresholds != "random" && c.sim_thresholds != "class_aware")
        r.fail("simulate.thresholds", "unknown preset '" + c.sim_thresholds + "'; valid: multiplier, random, class_aware");
    r.number("simulate.theta", c.sim_theta);
    if (!(c.sim_theta > 0.0 && c.sim_theta <= 1.0)) r.fail("simulate.theta", "must lie in (0, 1]");
    r.string("simulate.ic_preset", c.sim_ic_preset);
    if (c.sim_ic_preset != "uniform" && c.sim_ic_preset != "weighted_cascade" && c.sim_ic_preset != "trivalency")
        r.fail("simulate.ic_preset",
               "unknown preset '" + c.sim_ic_preset + "'; valid: uniform, weighted_cascade, trivalency");
    r.number("simulate.probability", c.sim_probability);
    if (!(c.sim_probability >= 0.0 && c.sim_probability <= 1.0)) r.fail("simulate.probability", "must lie in [0, 1]");
    r.string("simulate.seeds", c.sim_seed_source);
    if (!c.sim_seed_source.empty()) {
        const auto colon = c.sim_seed_source.find(':');
        const auto kind = c.sim_seed_source.substr(0, colon);
        if (colon == std::string::npos || (kind != "measure" && kind != "class" && kind != "list" && kind != "file"))
            r.fail("simulate.seeds", "expected measure:<name>, class:<name>, list:<a;b;...> or file:<path>");
        const auto arg = c.sim_seed_source.substr(colon + 1);
        if (kind == "measure" && std::find(measure_names().begin(), measure_names().end(), arg) == measure_names().end())
            r.fail("simulate.seeds", "unknown measure '" + arg + "'; valid measures: " + join(measure_names()));
        if (kind == "class" && !parse_class(arg)) r.fail("simulate.seeds", "unknown adopter class '" + arg + "'");
    }
    r.integer("simulate.seed_count", c.sim_seed_count);
    r.integer("simulate.runs", c.sim_runs);
    if (c.sim_runs < 1) r.fail("simulate.runs", "must be at least 1");
    for (auto cls : kAdopterClasses) {
        const auto key = "simulate.interval." + std::string(class_name(cls));
        if (auto e = r.find(key)) {
            const auto items = detail::split_list(e->value);
            if (items.size() != 2) r.fail(key, "expected lo, hi");
            FractionInterval iv{r.parse_double(key, items[0]), r.parse_double(key, items[1])};
            if (!(0.0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= 1.0)) r.fail(key, "must satisfy 0 <= lo <= hi <= 1");
            c.sim_class_intervals[class_index(cls)] = iv;
        }
    }

    r.integer("seed", c.seed);
    r.string("output", c.output);
    if (c.output.empty()) r.fail("output", "must not be empty");
    if (auto e = r.find("formats")) {
        c.formats.clear();
        for (const auto& f : detail::split_list(e->value)) {
            if (f != "csv" && f != "json") r.fail("formats", "unknown format '" + f + "'; valid: csv, json");
            c.formats.insert(f);
        }
        if (c.formats.empty()) r.fail("formats", "at least one format is required");
    }
    r.boolean("plot_data", c.plot_data);
    r.integer("workers", c.workers);

    if (const auto extra = r.unused(); !extra.empty()) {
        const auto it = raw.find(extra.front());
        throw ConfigError(extra.front(), it->second.origin, "unknown configuration key");
    }
    return c;
}

/**
 * Canonical `key=value` lines over every field that can change a result.
 * The output location, report formats, plot switch and worker count are
 * left out: they never change a computed number. Measures are sorted
 * because their listing order does not matter.
 */
inline std::string canonical_config(const RunConfig& c) {
    std::map<std::string, std::string> f;
    f["graph"] = c.graph;
    f["graph.delimiter"] = detail::delimiter_name(c.graph_format.delimiter);
    f["graph.directed"] = c.graph_format.directed ? "true" : "false";
    f["graph.header"] = c.graph_format.header ? "true" : "false";
    f["graph.comment"] = c.graph_format.comment_prefix;
    f["adoption"] = c.adoption;
    f["adoption.delimiter"] = detail::delimiter_name(c.adoption_format.delimiter);
    f["adoption.header"] = c.adoption_format.header ? "true" : "false";
    f["adoption.kickoff"] = c.kickoff;
    auto measures = c.measures;
    std::sort(measures.begin(), measures.end());
    f["measures"] = join(measures, ",");
    f["harmonic.pivots"] = c.harmonic_pivots ? std::to_string(*c.harmonic_pivots) : "exact";
    f["pagerank.damping"] = format_double(c.pagerank_damping);
    f["pagerank.tolerance"] = format_double(c.pagerank_tolerance);
    f["pagerank.max_iterations"] = std::to_string(c.pagerank_max_iterations);
    f["gdd.p"] = format_double(c.gdd_p);
    f["gdd.q"] = std::to_string(c.gdd_q);
    f["gdd.variant"] = detail::gdd_variant_name(c.gdd_variant);
    f["ltc.theta"] = format_double(c.ltc_theta);
    std::vector<std::string> grid;
    for (double a : c.tc_alpha_grid) grid.push_back(format_double(a));
    f["tc.alpha_grid"] = join(grid, ",");
    f["tc.tie_rule"] = c.tc_tie_rule == TieRule::inclusive ? "inclusive" : "exclusive";
    f["k"] = std::to_string(c.k);
    std::vector<std::string> cut;
    for (double x : c.cutoffs) cut.push_back(format_double(x));
    f["cutoffs"] = join(cut, ",");
    f["reach.strict"] = c.reach_strict ? "true" : "false";
    f["histogram.bin_days"] = std::to_string(c.histogram_bin_days);
    f["simulate.model"] = c.sim_model;
    f["simulate.thresholds"] = c.sim_thresholds;
    f["simulate.theta"] = format_double(c.sim_theta);
    f["simulate.ic_preset"] = c.sim_ic_preset;
    f["simulate.probability"] = format_double(c.sim_probability);
    f["simulate.seeds"] = c.sim_seed_source;
    f["simulate.seed_count"] = std::to_string(c.sim_seed_count);
    f["simulate.runs"] = std::to_string(c.sim_runs);
    for (auto cls : kAdopterClasses) {
        const auto& iv = c.sim_class_intervals[class_index(cls)];
        f["simulate.interval." + std::string(class_name(cls))] = format_double(iv.lo) + "," + format_double(iv.hi);
    }
    f["seed"] = std::to_string(c.seed);
    std::string out;
    for (const auto& [k, v] : f) out += k + "=" + v + "\n";
    return out;
}

inline std::string hex64(std::uint64_t x) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, x >>= 4) s[static_cast<std::size_t>(i)] = digits[x & 15];
    return s;
}

inline std::string config_hash(const RunConfig& c) { return hex64(fnv1a64(canonical_config(c))); }

} // namespace tcrank::cli
