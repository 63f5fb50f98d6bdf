#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace tcrank::cli;

struct CommonFlags {
    std::string config_file;
    std::vector<std::string> overrides;
    // Shorthands for frequently set keys, applied before --set.
    std::map<std::string, std::string> shorthand;
};

void add_common(CLI::App* sub, CommonFlags& f, const std::vector<std::pair<std::string, std::string>>& keys) {
    sub->add_option("-c,--config", f.config_file, "Run configuration file (key = value lines)");
    sub->add_option("--set", f.overrides, "Override a configuration key, as key=value")->take_all();
    for (const auto& [flag, key] : keys)
        sub->add_option("--" + flag, f.shorthand[key], "Sets configuration key '" + key + "'");
}

RunConfig resolve(const CommonFlags& f) {
    RawConfig raw = f.config_file.empty() ? RawConfig{} : read_config_file(f.config_file);
    for (const auto& [key, value] : f.shorthand)
        if (!value.empty()) raw[key] = {value, "--" + key};
    for (const auto& o : f.overrides) apply_override(raw, o);
    return resolve_config(raw);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tcrank: expert ranking and adopter analysis for social graphs"};
    app.require_subcommand(1);
    app.add_flag("-q,--quiet", g_quiet, "Suppress log lines");

    const std::vector<std::pair<std::string, std::string>> io_keys{
        {"graph", "graph"}, {"adoption", "adoption"}, {"kickoff", "adoption.kickoff"}, {"out", "output"}};
    auto with = [&](std::vector<std::pair<std::string, std::string>> extra) {
        extra.insert(extra.begin(), io_keys.begin(), io_keys.end());
        return extra;
    };

    CommonFlags ingest_f, compute_f, rank_f, analyze_f, simulate_f, report_f;
    auto* ingest = app.add_subcommand("ingest", "Load and check the edge list and adoption file");
    add_common(ingest, ingest_f, io_keys);
    auto* compute = app.add_subcommand("compute", "Compute centrality measures into per-measure CSV files");
    add_common(compute, compute_f, with({{"measures", "measures"}, {"seed", "seed"}, {"workers", "workers"}}));
    auto* rank = app.add_subcommand("rank-tc", "Top Candidate ranking with per-alpha membership");
    add_common(rank, rank_f, with({{"alpha-grid", "tc.alpha_grid"}, {"tie-rule", "tc.tie_rule"}, {"workers", "workers"}}));
    auto* analyze = app.add_subcommand("analyze", "Evaluate score files against adoption days");
    bool plot_data = false;
    add_common(analyze, analyze_f, with({{"measures", "measures"}, {"k", "k"}, {"seed", "seed"}}));
    analyze->add_flag("--plot-data", plot_data, "Also write per-figure CSV files under plot/");
    auto* simulate = app.add_subcommand("simulate", "Run a Linear Threshold or Independent Cascade simulation");
    add_common(simulate, simulate_f,
               with({{"model", "simulate.model"},
                     {"thresholds", "simulate.thresholds"},
                     {"ic-preset", "simulate.ic_preset"},
                     {"probability", "simulate.probability"},
                     {"seeds", "simulate.seeds"},
                     {"seed-count", "simulate.seed_count"},
                     {"runs", "simulate.runs"},
                     {"seed", "seed"}}));
    auto* report = app.add_subcommand("report", "Summarize manifest and analysis as Markdown");
    bool to_stdout = false;
    add_common(report, report_f, io_keys);
    report->add_flag("--stdout", to_stdout, "Print the report");

    GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "Write a synthetic graph (and adoption file for 'planted')");
    generate->add_option("--model", gen.model, "planted, pa or gnp")->capture_default_str();
    generate->add_option("--nodes", gen.nodes, "Node count")->capture_default_str();
    generate->add_option("--links", gen.links, "Links per new node (pa)")->capture_default_str();
    generate->add_option("--p", gen.p, "Edge probability (gnp)")->capture_default_str();
    generate->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
    generate->add_option("--out", gen.output, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*ingest) cmd_ingest(resolve(ingest_f));
        else if (*compute) cmd_compute(resolve(compute_f));
        else if (*rank) cmd_rank_tc(resolve(rank_f));
        else if (*analyze) {
            auto c = resolve(analyze_f);
            c.plot_data = c.plot_data || plot_data;
            cmd_analyze(c);
        } else if (*simulate) cmd_simulate(resolve(simulate_f));
        else if (*report) cmd_report(resolve(report_f), to_stdout);
        else if (*generate) cmd_generate(gen);
    } catch (const UsageError& e) {
        std::cerr << "tcrank: error: " << e.what() << '\n';
        return 1;
    } catch (const tcrank::ArgumentError& e) {
        std::cerr << "tcrank: error: " << e.what() << '\n';
        return 1;
    } catch (const tcrank::DataError& e) {
        std::cerr << "tcrank: data error: " << e.what() << '\n';
        return 2;
    } catch (const tcrank::ConvergenceError& e) {
        std::cerr << "tcrank: " << e.what() << " (residual " << e.residual() << " after " << e.iterations()
                  << " iterations)\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "tcrank: data error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
