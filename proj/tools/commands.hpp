#pragma once

// Subcommand implementations for the tcrank tool. Each command reads a
// resolved RunConfig, writes into the configured output directory, and
// reports through exceptions: UsageError for exit code 1, DataError (and
// ConvergenceError) for exit code 2.

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>

#include <json.hpp>

#include "run_config.hpp"
#include "tcrank/tcrank.hpp"

namespace tcrank::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

inline bool g_quiet = false;

inline void log(const std::string& msg) {
    if (!g_quiet) std::cerr << "tcrank: " << msg << '\n';
}

/// Holds `<dir>/.tcrank.lock` for the lifetime of a command.
class OutputLock {
public:
    explicit OutputLock(const std::string& dir) : path_(fs::path(dir) / ".tcrank.lock") {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw DataError("cannot create output directory '" + dir + "': " + ec.message());
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0) {
            if (errno == EEXIST)
                throw UsageError("output directory '" + dir + "' is in use by another run (remove " + path_.string() +
                                 " if it is stale)");
            throw DataError("cannot create lockfile " + path_.string() + ": " + std::strerror(errno));
        }
        const auto pid = std::to_string(::getpid()) + "\n";
        [[maybe_unused]] auto w = ::write(fd_, pid.data(), pid.size());
    }
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;
    ~OutputLock() {
        ::close(fd_);
        std::error_code ec;
        fs::remove(path_, ec);
    }

private:
    fs::path path_;
    int fd_ = -1;
};

inline void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    body(out);
    out.flush();
    if (!out) throw DataError("error while writing " + path.string());
}

inline void write_json(const fs::path& path, const json& j) {
    write_file(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return hex64(fnv1a64(buf.str()));
}

inline Graph load_graph(const RunConfig& c) {
    if (c.graph.empty()) throw ConfigError("graph", "", "an input graph path is required");
    std::ifstream in(c.graph);
    if (!in) throw DataError("cannot open graph file '" + c.graph + "'");
    try {
        return load_edge_list(in, c.graph_format);
    } catch (const ParseError& e) {
        throw DataError(c.graph + ": " + e.what());
    }
}

inline AdoptionTable load_days(const RunConfig& c, const Graph& g) {
    if (c.adoption.empty()) throw ConfigError("adoption", "", "an adoption file is required for this command");
    std::ifstream in(c.adoption);
    if (!in) throw DataError("cannot open adoption file '" + c.adoption + "'");
    DateConfig dc;
    dc.format = c.adoption_format;
    if (!c.kickoff.empty()) dc.kickoff = parse_iso_date(c.kickoff);
    AdoptionTable t;
    try {
        t = load_adoption(in, g, dc);
    } catch (const ParseError& e) {
        throw DataError(c.adoption + ": " + e.what());
    }
    for (const auto& w : t.warnings) log("warning: " + w);
    return t;
}

inline fs::path out_path(const RunConfig& c, const std::string& name) { return fs::path(c.output) / name; }

inline fs::path score_path(const RunConfig& c, const std::string& measure) {
    return out_path(c, "scores/" + measure + ".csv");
}

inline json class_counts_json(const std::array<std::size_t, kAdopterClassCount>& counts) {
    json j = json::object();
    for (auto cls : kAdopterClasses) j[std::string(class_name(cls))] = counts[class_index(cls)];
    return j;
}

// ---------------------------------------------------------------- ingest

inline void cmd_ingest(const RunConfig& c) {
    OutputLock lock(c.output);
    const auto g = load_graph(c);
    log("loaded " + std::to_string(g.node_count()) + " nodes, " + std::to_string(g.edge_count()) + " edges");
    if (const auto problem = validate(g); !problem.empty()) throw DataError("graph failed validation: " + problem);
    write_file(out_path(c, "graph.tsv"), [&](std::ostream& out) { write_edge_list(out, g); });
    write_file(out_path(c, "labels.csv"), [&](std::ostream& out) { write_label_map(out, g); });

    std::size_t isolated = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) isolated += g.degree(v) == 0;
    json j;
    j["graph"] = {{"path", c.graph},
                  {"digest", file_digest(c.graph)},
                  {"nodes", g.node_count()},
                  {"edges", g.edge_count()},
                  {"isolated", isolated},
                  {"max_degree", g.max_degree()}};
    if (!c.adoption.empty()) {
        const auto days = load_days(c, g);
        write_file(out_path(c, "adoption.tsv"), [&](std::ostream& out) { write_adoption(out, g, days); });
        j["adoption"] = {{"path", c.adoption},
                         {"digest", file_digest(c.adoption)},
                         {"dated", g.node_count() - days.missing_count()},
                         {"missing", days.missing_count()},
                         {"warnings", days.warnings}};
    }
    write_json(out_path(c, "ingest.json"), j);
}

// ---------------------------------------------------------------- compute

inline void apply_workers(const RunConfig& c) {
    if (c.workers > 0) set_workers(c.workers);
}

inline TCRanking run_tc(const RunConfig& c, const Graph& g) {
    return tc_ranking(g, c.tc_alpha_grid, c.tc_tie_rule);
}

inline void write_tc_outputs(const RunConfig& c, const Graph& g, const TCRanking& r) {
    write_file(out_path(c, "tc_ranking.csv"), [&](std::ostream& out) { write_tc_ranking(out, g, r); });
    write_file(out_path(c, "tc_membership.csv"), [&](std::ostream& out) { write_tc_membership(out, g, r); });
}

inline json tc_sets_json(const TCRanking& r) {
    json sets = json::array();
    for (std::size_t i = 0; i < r.sets.size(); ++i) {
        const auto& s = r.sets[i];
        sets.push_back({{"alpha", r.alpha_grid[i]},
                        {"size", s.members.size()},
                        {"iterations", s.iterations},
                        {"round_sizes", s.round_sizes}});
    }
    return sets;
}

/// Computes one measure; may write measure-specific side files.
inline ScoreVector compute_measure(const RunConfig& c, const Graph& g, const std::string& m) {
    const auto n = g.node_count();
    if (m == "degree") return degree(g);
    if (m == "harmonic") {
        HarmonicParams p;
        if (c.harmonic_pivots) p.pivots = std::min(*c.harmonic_pivots, n);
        p.seed = c.stage_seed("measure/harmonic");
        return harmonic(g, p);
    }
    if (m == "pagerank") return pagerank(g, {c.pagerank_damping, c.pagerank_tolerance, c.pagerank_max_iterations});
    if (m == "kcore") return k_core(g);
    if (m == "shapley") return shapley_g1(g);
    if (m == "gdd") {
        if (c.gdd_q > n) throw ConfigError("gdd.q", "", "seed count " + std::to_string(c.gdd_q) +
                                                            " exceeds the node count " + std::to_string(n));
        const GDDParams p{c.gdd_p, c.gdd_q, c.gdd_variant};
        const auto order = gdd_rank(g, p);
        write_file(out_path(c, "gdd_ranking.csv"), [&](std::ostream& out) {
            out << "rank,label\n";
            for (std::size_t r = 0; r < order.size(); ++r)
                out << r + 1 << ',' << tcrank::detail::csv_field(g.label(order[r])) << '\n';
        });
        auto sv = gdd_scores(g, order, p);
        sv.params["variant"] = detail::gdd_variant_name(c.gdd_variant);
        return sv;
    }
    if (m == "ltc") return ltc(g, c.ltc_theta);
    if (m == "tc") {
        const auto r = run_tc(c, g);
        write_tc_outputs(c, g, r);
        return tc_scores(r);
    }
    throw UsageError("unknown measure '" + m + "'; valid measures: " + join(measure_names()));
}

inline json graph_json(const RunConfig& c, const Graph& g) {
    return {{"path", c.graph}, {"digest", file_digest(c.graph)}, {"nodes", g.node_count()}, {"edges", g.edge_count()}};
}

inline void cmd_compute(const RunConfig& c) {
    OutputLock lock(c.output);
    apply_workers(c);
    const auto g = load_graph(c);
    log("loaded " + std::to_string(g.node_count()) + " nodes, " + std::to_string(g.edge_count()) + " edges");

    json manifest;
    manifest["config_hash"] = config_hash(c);
    manifest["seed"] = c.seed;
    manifest["graph"] = graph_json(c, g);
    json measures = json::array();
    json timing = json::object();
    double total = 0.0;
    for (const auto& m : c.measures) {
        log("computing " + m);
        const auto sv = timed([&] { return compute_measure(c, g, m); });
        const auto path = score_path(c, m);
        write_file(path, [&](std::ostream& out) { write_scores(out, g, sv); });
        json params = json::object();
        for (const auto& [k, v] : sv.params) params[k] = v;
        measures.push_back({{"name", m}, {"file", "scores/" + m + ".csv"}, {"rows", sv.size()}, {"params", params}});
        timing[m] = sv.runtime_seconds;
        total += sv.runtime_seconds;
        log(m + " done in " + format_double(sv.runtime_seconds) + " s");
    }
    manifest["measures"] = measures;
    manifest["config"] = canonical_config(c);
    write_json(out_path(c, "manifest.json"), manifest);
    // Wall times live apart from the manifest so reruns leave it byte-identical.
    write_json(out_path(c, "timing.json"), {{"config_hash", config_hash(c)}, {"seconds", timing}, {"total_seconds", total}});
}

// ---------------------------------------------------------------- rank-tc

inline void cmd_rank_tc(const RunConfig& c) {
    OutputLock lock(c.output);
    apply_workers(c);
    const auto g = load_graph(c);
    const auto r = run_tc(c, g);
    write_tc_outputs(c, g, r);
    write_file(score_path(c, "tc"), [&](std::ostream& out) { write_scores(out, g, tc_scores(r)); });
    json j;
    j["config_hash"] = config_hash(c);
    j["tie_rule"] = c.tc_tie_rule == TieRule::inclusive ? "inclusive" : "exclusive";
    j["sets"] = tc_sets_json(r);
    std::size_t never = 0;
    for (double s : r.score) never += std::isinf(s);
    j["never_selected"] = never;
    write_json(out_path(c, "tc.json"), j);
    log("top candidate ranking over " + std::to_string(r.alpha_grid.size()) + " alpha values written");
}

// ---------------------------------------------------------------- analyze

inline ScoreVector load_score_file(const RunConfig& c, const Graph& g, const std::string& m) {
    const auto path = score_path(c, m);
    std::ifstream in(path);
    if (!in) throw DataError("no score file for measure '" + m + "' (expected " + path.string() + ")");
    try {
        return read_scores(in, g, m);
    } catch (const ParseError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

/// Order stored in tc_ranking.csv, best first.
inline std::vector<NodeId> load_tc_order(const RunConfig& c, const Graph& g) {
    const auto path = out_path(c, "tc_ranking.csv");
    std::ifstream in(path);
    if (!in) throw DataError("no Top Candidate ranking (expected " + path.string() + ")");
    const auto index = label_index(g);
    std::vector<NodeId> order(g.node_count(), 0);
    std::vector<bool> filled(g.node_count(), false);
    EdgeListFormat fmt;
    fmt.delimiter = ',';
    fmt.header = true;
    tcrank::detail::for_each_record(in, fmt, [&](std::size_t line, const std::vector<std::string_view>& f) {
        if (f.size() != 3) throw DataError(path.string() + ": line " + std::to_string(line) + ": expected 3 fields");
        const auto it = index.find(std::string(f[0]));
        std::size_t rank = 0;
        const auto res = std::from_chars(f[2].data(), f[2].data() + f[2].size(), rank);
        if (it == index.end() || res.ec != std::errc{} || rank < 1 || rank > g.node_count() || filled[rank - 1])
            throw DataError(path.string() + ": line " + std::to_string(line) + ": bad row");
        order[rank - 1] = it->second;
        filled[rank - 1] = true;
    });
    for (bool f : filled)
        if (!f) throw DataError(path.string() + ": ranking does not cover every node");
    return order;
}

struct MeasureAnalysis {
    ScoreVector scores;
    TopKSet top;
    RegistrationStats registration;
    ReachReport reach;
    Assortativity assortativity;
};

inline void cmd_analyze(const RunConfig& c) {
    OutputLock lock(c.output);
    const auto g = load_graph(c);
    const auto days = load_days(c, g);
    const auto classes = classify_adopters(days, c.cutoffs);
    if (c.k > g.node_count())
        throw ConfigError("k", "", "top-k size " + std::to_string(c.k) + " exceeds the node count " +
                                       std::to_string(g.node_count()));
    const bool csv = c.formats.count("csv") > 0;

    std::vector<MeasureAnalysis> rows;
    std::vector<TopKSet> sets;
    for (const auto& m : c.measures) {
        MeasureAnalysis a;
        a.scores = load_score_file(c, g, m);
        if (m == "tc") {
            const auto order = load_tc_order(c, g);
            a.top = top_k_prefix(m, order, c.k);
        } else {
            a.top = top_k(a.scores, c.k, c.stage_seed("topk/" + m));
        }
        a.registration = registration_stats(a.top, days, &classes);
        a.reach = reach_analysis(a.top, classes.label, g, c.reach_strict);
        a.assortativity = numeric_assortativity(g, a.scores);
        sets.push_back(a.top);
        rows.push_back(std::move(a));
    }
    std::vector<NodeId> everyone(g.node_count());
    std::iota(everyone.begin(), everyone.end(), NodeId{0});
    const auto whole = registration_stats(everyone, days, &classes);
    const auto matrix = interconnectedness(g, classes.label);
    for (const auto& w : matrix.warnings) log("warning: " + w);

    std::vector<std::string> class_cols;
    for (auto cls : kAdopterClasses) class_cols.emplace_back(class_name(cls));
    const auto header = [&](std::ostream& out, const std::string& first) {
        out << first;
        for (const auto& s : class_cols) out << ',' << s;
        out << '\n';
    };

    if (csv) {
        write_file(out_path(c, "classes.csv"), [&](std::ostream& out) {
            out << "label,class\n";
            for (NodeId v = 0; v < g.node_count(); ++v)
                out << tcrank::detail::csv_field(g.label(v)) << ',' << class_name(classes[v]) << '\n';
        });
        write_file(out_path(c, "interconnectedness.csv"), [&](std::ostream& out) {
            header(out, "row_class");
            for (std::size_t r = 0; r < kAdopterClassCount; ++r) {
                out << class_cols[r];
                for (std::size_t col = 0; col < kAdopterClassCount; ++col) out << ',' << format_double(matrix.percent[r][col]);
                out << '\n';
            }
            out << "endpoints";
            for (std::size_t col = 0; col < kAdopterClassCount; ++col) {
                std::uint64_t total = 0;
                for (std::size_t r = 0; r < kAdopterClassCount; ++r) total += matrix.endpoints[r][col];
                out << ',' << total;
            }
            out << '\n';
        });
        write_file(out_path(c, "assortativity.csv"), [&](std::ostream& out) {
            out << "measure,assortativity,degenerate\n";
            for (const auto& a : rows)
                out << a.scores.measure << ',' << format_double(a.assortativity.value) << ','
                    << (a.assortativity.degenerate ? "true" : "false") << '\n';
        });
        write_file(out_path(c, "registration.csv"), [&](std::ostream& out) {
            out << "measure,average_day,median_day,counted,missing\n";
            for (const auto& a : rows)
                out << a.scores.measure << ',' << format_double(a.registration.average) << ',' << a.registration.median
                    << ',' << a.registration.counted << ',' << a.registration.missing << '\n';
            out << "whole_graph," << format_double(whole.average) << ',' << whole.median << ',' << whole.counted << ','
                << whole.missing << '\n';
        });
        write_file(out_path(c, "class_distribution.csv"), [&](std::ostream& out) {
            header(out, "measure");
            for (const auto& a : rows) {
                out << a.scores.measure;
                for (auto n : a.registration.per_class) out << ',' << n;
                out << '\n';
            }
            out << "whole_graph";
            for (auto n : classes.sizes) out << ',' << n;
            out << '\n';
        });
        write_file(out_path(c, "reach.csv"), [&](std::ostream& out) {
            out << "measure,reaching,innovators,early_adopters,early_majority,innovators_pct,early_adopters_pct,"
                   "early_majority_pct\n";
            for (const auto& a : rows) {
                out << a.scores.measure << ',' << a.reach.reaching;
                for (auto n : a.reach.counts) out << ',' << n;
                for (auto p : a.reach.percent) out << ',' << format_double(p);
                out << '\n';
            }
        });
        if (sets.size() >= 2) {
            const auto overlap = overlap_matrix(sets);
            write_file(out_path(c, "overlap.csv"), [&](std::ostream& out) {
                out << "measure";
                for (const auto& s : sets) out << ',' << s.measure;
                out << '\n';
                for (std::size_t i = 0; i < sets.size(); ++i) {
                    out << sets[i].measure;
                    for (auto x : overlap[i]) out << ',' << x;
                    out << '\n';
                }
            });
        }
    }

    if (c.plot_data) {
        write_file(out_path(c, "plot/class_distribution.csv"), [&](std::ostream& out) {
            out << "measure,class,count,percent\n";
            for (const auto& a : rows)
                for (std::size_t i = 0; i < kAdopterClassCount; ++i)
                    out << a.scores.measure << ',' << class_cols[i] << ',' << a.registration.per_class[i] << ','
                        << format_double(100.0 * static_cast<double>(a.registration.per_class[i]) /
                                         static_cast<double>(a.registration.counted))
                        << '\n';
        });
        write_file(out_path(c, "plot/day_histogram.csv"), [&](std::ostream& out) {
            out << "measure,bin_start,count\n";
            for (const auto& a : rows)
                for (const auto& [bin, n] : day_histogram(a.top.members, days, c.histogram_bin_days))
                    out << a.scores.measure << ',' << bin << ',' << n << '\n';
            for (const auto& [bin, n] : day_histogram(everyone, days, c.histogram_bin_days))
                out << "whole_graph," << bin << ',' << n << '\n';
        });
        write_file(out_path(c, "plot/reach.csv"), [&](std::ostream& out) {
            out << "measure,class,count,percent\n";
            for (const auto& a : rows)
                for (std::size_t i = 0; i < kReachClasses.size(); ++i)
                    out << a.scores.measure << ',' << class_name(kReachClasses[i]) << ',' << a.reach.counts[i] << ','
                        << format_double(a.reach.percent[i]) << '\n';
        });
    }

    if (c.formats.count("json")) {
        json j;
        j["config_hash"] = config_hash(c);
        j["k"] = c.k;
        j["cutoffs"] = c.cutoffs;
        j["class_sizes"] = class_counts_json(classes.sizes);
        j["excluded_nodes"] = classes.excluded.size();
        json m = json::object();
        for (std::size_t r = 0; r < kAdopterClassCount; ++r) {
            json row = json::object();
            for (std::size_t col = 0; col < kAdopterClassCount; ++col) row[class_cols[col]] = matrix.percent[r][col];
            m[class_cols[r]] = row;
        }
        j["interconnectedness"] = {{"percent_of_column", m}, {"warnings", matrix.warnings}};
        json measures = json::object();
        for (const auto& a : rows) {
            json reach = {{"reaching", a.reach.reaching}, {"strict", a.reach.exclude_all_members}};
            for (std::size_t i = 0; i < kReachClasses.size(); ++i)
                reach[std::string(class_name(kReachClasses[i]))] = {{"count", a.reach.counts[i]},
                                                                    {"percent", a.reach.percent[i]}};
            measures[a.scores.measure] = {
                {"assortativity", a.assortativity.value},
                {"assortativity_degenerate", a.assortativity.degenerate},
                {"top_k_seed", a.top.seed},
                {"registration",
                 {{"average_day", a.registration.average},
                  {"median_day", a.registration.median},
                  {"counted", a.registration.counted},
                  {"missing", a.registration.missing}}},
                {"class_distribution", class_counts_json(a.registration.per_class)},
                {"reach", reach}};
        }
        j["measures"] = measures;
        j["whole_graph"] = {{"average_day", whole.average}, {"median_day", whole.median}, {"counted", whole.counted}};
        if (sets.size() >= 2) {
            json names = json::array();
            for (const auto& s : sets) names.push_back(s.measure);
            j["overlap"] = {{"measures", names}, {"matrix", overlap_matrix(sets)}};
        }
        write_json(out_path(c, "analysis.json"), j);
    }
    log("analysis of " + std::to_string(rows.size()) + " measures written to " + c.output);
}

// ---------------------------------------------------------------- simulate

inline std::vector<NodeId> resolve_labels(const Graph& g, const std::vector<std::string>& labels) {
    const auto index = label_index(g);
    std::vector<NodeId> ids;
    for (const auto& l : labels) {
        const auto it = index.find(l);
        if (it == index.end()) throw DataError("seed node '" + l + "' is not in the graph");
        ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

/// Seed set for run `run`; only class sampling varies between runs.
inline std::vector<NodeId> simulation_seeds(const RunConfig& c, const Graph& g, const Classification* classes,
                                            std::size_t run) {
    const auto colon = c.sim_seed_source.find(':');
    if (colon == std::string::npos) throw ConfigError("simulate.seeds", "", "a seed source is required");
    const auto kind = c.sim_seed_source.substr(0, colon);
    const auto arg = c.sim_seed_source.substr(colon + 1);
    if (kind == "list") {
        std::vector<std::string> labels;
        for (auto f : tcrank::detail::split_fields(arg, ';')) labels.emplace_back(tcrank::detail::trim(f));
        return resolve_labels(g, labels);
    }
    if (kind == "file") {
        std::ifstream in(arg);
        if (!in) throw DataError("cannot open seed file '" + arg + "'");
        std::vector<std::string> labels;
        std::string line;
        while (std::getline(in, line)) {
            const auto t = tcrank::detail::trim(line);
            if (!t.empty() && t.front() != '#') labels.emplace_back(t);
        }
        return resolve_labels(g, labels);
    }
    const auto count = std::min(c.sim_seed_count, static_cast<std::size_t>(g.node_count()));
    if (kind == "measure") {
        if (arg == "tc") return top_k_prefix(arg, load_tc_order(c, g), count).members;
        return top_k(load_score_file(c, g, arg), count, c.stage_seed("topk/" + arg)).members;
    }
    const auto cls = *parse_class(arg);
    std::vector<NodeId> pool;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if ((*classes)[v] == cls) pool.push_back(v);
    if (pool.empty()) throw DataError("no node belongs to class '" + arg + "'");
    if (c.sim_seed_count == 0 || c.sim_seed_count >= pool.size()) return pool;
    Rng rng(c.stage_seed("simulate/seeds/" + std::to_string(run)));
    partial_shuffle(std::span<NodeId>(pool), c.sim_seed_count, rng);
    pool.resize(c.sim_seed_count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

inline void cmd_simulate(const RunConfig& c) {
    OutputLock lock(c.output);
    const auto g = load_graph(c);
    std::optional<Classification> classes;
    const bool needs_classes = (c.sim_model == "lt" && c.sim_thresholds == "class_aware") ||
                               c.sim_seed_source.rfind("class:", 0) == 0;
    if (needs_classes) classes = classify_adopters(load_days(c, g), c.cutoffs);
    const auto* cls = classes ? &*classes : nullptr;

    const auto fixed_seeds = c.sim_seed_source.rfind("class:", 0) == 0
                                 ? std::optional<std::vector<NodeId>>{}
                                 : std::optional<std::vector<NodeId>>{simulation_seeds(c, g, cls, 0)};
    ArcProbability prob;
    if (c.sim_model == "ic") {
        if (c.sim_ic_preset == "uniform") prob = uniform_probability(c.sim_probability);
        else if (c.sim_ic_preset == "weighted_cascade") prob = weighted_cascade_probability(g);
        else prob = trivalency_probability(c.stage_seed("simulate/trivalency"));
    }

    json runs = json::array();
    double total_fraction = 0.0;
    CascadeResult first;
    std::vector<NodeId> first_seeds;
    for (std::size_t run = 0; run < c.sim_runs; ++run) {
        const auto seeds = fixed_seeds ? *fixed_seeds : simulation_seeds(c, g, cls, run);
        const auto run_seed = c.stage_seed("simulate/run/" + std::to_string(run));
        CascadeResult res;
        if (c.sim_model == "lt") {
            ThresholdAssignment th;
            if (c.sim_thresholds == "multiplier") th = thresholds_uniform_multiplier(g, c.sim_theta);
            else if (c.sim_thresholds == "random") th = thresholds_uniform_random(g, run_seed);
            else th = thresholds_class_aware(g, classes->label, c.sim_class_intervals, run_seed);
            res = lt_simulate(g, seeds, th);
        } else {
            res = ic_simulate(g, seeds, prob, run_seed);
        }
        const double fraction = static_cast<double>(res.size()) / static_cast<double>(g.node_count());
        total_fraction += fraction;
        runs.push_back({{"run", run}, {"seeds", seeds.size()}, {"activated", res.size()}, {"fraction", fraction},
                        {"rounds", res.rounds}});
        if (run == 0) {
            first = std::move(res);
            first_seeds = seeds;
        }
    }
    write_file(out_path(c, "activation.csv"), [&](std::ostream& out) {
        out << "label,round\n";
        for (NodeId v : first.activated) out << tcrank::detail::csv_field(g.label(v)) << ',' << first.round[v] << '\n';
    });
    json summary;
    summary["config_hash"] = config_hash(c);
    summary["model"] = c.sim_model;
    summary["preset"] = c.sim_model == "lt" ? c.sim_thresholds : c.sim_ic_preset;
    summary["seed_source"] = c.sim_seed_source;
    summary["nodes"] = g.node_count();
    summary["runs"] = runs;
    summary["mean_fraction"] = total_fraction / static_cast<double>(c.sim_runs);
    write_json(out_path(c, "summary.json"), summary);
    log("mean activated fraction " + format_double(total_fraction / static_cast<double>(c.sim_runs)) + " over " +
        std::to_string(c.sim_runs) + " runs");
}

// ---------------------------------------------------------------- report

inline json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("missing " + path.string() + "; run the earlier stages first");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

/// Markdown summary of the manifest and analysis bundle.
inline void cmd_report(const RunConfig& c, bool to_stdout) {
    OutputLock lock(c.output);
    const auto manifest = read_json(out_path(c, "manifest.json"));
    const auto analysis = read_json(out_path(c, "analysis.json"));
    std::ostringstream md;
    const auto fmt = [](const json& v) {
        return v.is_number_float() ? format_double(std::round(v.get<double>() * 1000.0) / 1000.0) : v.dump();
    };
    md << "# tcrank report\n\n";
    md << "Graph `" << manifest["graph"]["path"].get<std::string>() << "`: " << manifest["graph"]["nodes"] << " nodes, "
       << manifest["graph"]["edges"] << " edges. Config hash `" << manifest["config_hash"].get<std::string>() << "`.\n";
    if (manifest["config_hash"] != analysis["config_hash"])
        md << "\nThe analysis was produced with a different configuration than the scores.\n";

    md << "\n## Adopter classes\n\n| class | nodes |\n|---|---|\n";
    for (const auto& [name, n] : analysis["class_sizes"].items()) md << "| " << name << " | " << n << " |\n";

    md << "\n## Interconnectedness (percent of column endpoints)\n\n| row |";
    const auto& pct = analysis["interconnectedness"]["percent_of_column"];
    for (const auto& [col, _] : pct.items()) md << ' ' << col << " |";
    md << "\n|---|";
    for (std::size_t i = 0; i < pct.size(); ++i) md << "---|";
    md << '\n';
    for (const auto& [row, cols] : pct.items()) {
        md << "| " << row << " |";
        for (const auto& [col, v] : cols.items()) md << ' ' << fmt(v) << " |";
        md << '\n';
    }

    md << "\n## Top " << analysis["k"] << " by measure\n\n"
       << "| measure | assortativity | average day | median day | innovators | early adopters |\n"
       << "|---|---|---|---|---|---|\n";
    for (const auto& [m, a] : analysis["measures"].items())
        md << "| " << m << " | " << fmt(a["assortativity"]) << " | " << fmt(a["registration"]["average_day"]) << " | "
           << a["registration"]["median_day"] << " | " << a["class_distribution"]["innovators"] << " | "
           << a["class_distribution"]["early_adopters"] << " |\n";
    md << "| whole graph | | " << fmt(analysis["whole_graph"]["average_day"]) << " | "
       << analysis["whole_graph"]["median_day"] << " | | |\n";

    md << "\n## Net reach\n\n| measure | reaching | innovators | early adopters | early majority |\n|---|---|---|---|---|\n";
    for (const auto& [m, a] : analysis["measures"].items()) {
        const auto& r = a["reach"];
        md << "| " << m << " | " << r["reaching"] << " | " << r["innovators"]["count"] << " | "
           << r["early_adopters"]["count"] << " | " << r["early_majority"]["count"] << " |\n";
    }
    const auto text = md.str();
    write_file(out_path(c, "report.md"), [&](std::ostream& out) { out << text; });
    if (to_stdout) std::cout << text;
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
    std::string model = "planted"; // planted | pa | gnp
    std::size_t nodes = 10000;
    std::size_t links = 5;
    double p = 0.001;
    std::uint64_t seed = 1;
    std::string output = "data";
};

inline void cmd_generate(const GenerateOptions& o) {
    OutputLock lock(o.output);
    const auto dir = fs::path(o.output);
    if (o.model == "planted") {
        PlantedAdoptionParams params;
        params.nodes = o.nodes;
        const auto pa = planted_adoption(params, o.seed);
        write_file(dir / "edges.tsv", [&](std::ostream& out) { write_edge_list(out, pa.graph); });
        write_file(dir / "adoption.tsv", [&](std::ostream& out) { write_adoption(out, pa.graph, pa.days); });
        write_file(dir / "planted_classes.csv", [&](std::ostream& out) {
            out << "label,class\n";
            for (NodeId v = 0; v < pa.graph.node_count(); ++v) out << pa.graph.label(v) << ',' << class_name(pa.planted[v]) << '\n';
        });
        log("planted adoption graph: " + std::to_string(pa.graph.edge_count()) + " edges");
        return;
    }
    Graph g;
    if (o.model == "pa") g = preferential_attachment(o.nodes, o.links, o.seed);
    else if (o.model == "gnp") g = gnp(o.nodes, o.p, o.seed);
    else throw UsageError("unknown generator '" + o.model + "'; valid: planted, pa, gnp");
    write_file(dir / "edges.tsv", [&](std::ostream& out) { write_edge_list(out, g); });
    log(o.model + " graph: " + std::to_string(g.node_count()) + " nodes, " + std::to_string(g.edge_count()) + " edges");
}

} // namespace tcrank::cli
