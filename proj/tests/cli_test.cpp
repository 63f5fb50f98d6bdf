#include <gtest/gtest.h>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t line_count(const fs::path& p) {
    const auto text = slurp(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class CliTest : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("tcrank_cli_") + info->name());
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    void write(const std::string& name, const std::string& text) { std::ofstream(dir / name, std::ios::binary) << text; }

    int run(const std::string& args) {
        const auto cmd = std::string(TCRANK_CLI) + " -q " + args + " 2> " + (dir / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string err() { return slurp(dir / "stderr.txt"); }
    std::string p(const std::string& name) { return (dir / name).string(); }

    json read_json(const std::string& name) { return json::parse(slurp(dir / name)); }

    void generate_planted(std::size_t nodes, std::uint64_t seed = 1) {
        ASSERT_EQ(run("generate --model planted --nodes " + std::to_string(nodes) + " --seed " + std::to_string(seed) +
                      " --out " + p("data")),
                  0)
            << err();
    }
};

TEST_F(CliTest, DegreeOnPath) {
    write("p3.tsv", "a\tb\nb\tc\n");
    ASSERT_EQ(run("compute --graph " + p("p3.tsv") + " --measures degree --out " + p("out")), 0) << err();
    EXPECT_EQ(slurp(dir / "out/scores/degree.csv"), "label,score\na,1\nb,2\nc,1\n");
    const auto manifest = read_json("out/manifest.json");
    EXPECT_EQ(manifest["graph"]["nodes"], 3);
    EXPECT_EQ(manifest["measures"][0]["rows"], 3);
    EXPECT_EQ(manifest["config_hash"].get<std::string>().size(), 16u);
    EXPECT_FALSE(fs::exists(dir / "out/.tcrank.lock"));
}

TEST_F(CliTest, AllMeasuresAreReproducible) {
    generate_planted(1000);
    write("run.conf",
          "graph = " + p("data/edges.tsv") +
              "\n"
              "measures = degree, harmonic, pagerank, kcore, shapley, gdd, ltc, tc\n"
              "[harmonic]\npivots = 200\n[gdd]\nq = 100\n");
    ASSERT_EQ(run("compute -c " + p("run.conf") + " --out " + p("a") + " --workers 1"), 0) << err();
    const auto manifest = read_json("a/manifest.json");
    const std::size_t n = manifest["graph"]["nodes"];
    EXPECT_GE(n, 990u);
    ASSERT_EQ(manifest["measures"].size(), 8u);
    for (const auto& m : manifest["measures"]) {
        const auto file = dir / "a" / m["file"].get<std::string>();
        ASSERT_TRUE(fs::exists(file)) << file;
        EXPECT_EQ(line_count(file), n + 1) << file;
    }
    EXPECT_EQ(line_count(dir / "a/tc_ranking.csv"), n + 1);
    EXPECT_EQ(line_count(dir / "a/gdd_ranking.csv"), 101u);
    EXPECT_TRUE(read_json("a/timing.json")["seconds"].contains("ltc"));

    ASSERT_EQ(run("compute -c " + p("run.conf") + " --out " + p("b") + " --workers 1"), 0) << err();
    ASSERT_EQ(run("compute -c " + p("run.conf") + " --out " + p("c") + " --workers 4"), 0) << err();
    for (const auto& entry : fs::recursive_directory_iterator(dir / "a")) {
        if (!entry.is_regular_file() || entry.path().filename() == "timing.json") continue;
        const auto rel = fs::relative(entry.path(), dir / "a");
        EXPECT_EQ(slurp(entry.path()), slurp(dir / "b" / rel)) << rel;
        EXPECT_EQ(slurp(entry.path()), slurp(dir / "c" / rel)) << rel;
    }
}

TEST_F(CliTest, UsageAndDataErrors) {
    write("p3.tsv", "a\tb\nb\tc\n");
    EXPECT_EQ(run("compute --graph " + p("p3.tsv") + " --measures degree,closeness --out " + p("out")), 1);
    EXPECT_NE(err().find("valid measures: degree, harmonic, pagerank, kcore, shapley, gdd, ltc, tc"), std::string::npos);
    EXPECT_EQ(run("compute --graph " + p("p3.tsv") + " --set pagerank.damping=2 --out " + p("out")), 1);
    EXPECT_NE(err().find("pagerank.damping"), std::string::npos);
    EXPECT_EQ(run("compute --graph " + p("p3.tsv") + " --measures gdd --out " + p("out")), 1);
    EXPECT_NE(err().find("gdd.q"), std::string::npos);
    EXPECT_EQ(run("compute --out " + p("out")), 1);
    EXPECT_EQ(run("frobnicate"), 1);
    EXPECT_EQ(run("compute --graph " + p("missing.tsv") + " --out " + p("out")), 2);
    write("bad.tsv", "a\tb\nc\n");
    EXPECT_EQ(run("compute --graph " + p("bad.tsv") + " --out " + p("out")), 2);
    EXPECT_NE(err().find("line 2"), std::string::npos);
    EXPECT_EQ(run("simulate --graph " + p("p3.tsv") + " --seeds list:a --thresholds fancy --out " + p("out")), 1);

    fs::create_directories(dir / "locked");
    write("locked/.tcrank.lock", "1\n");
    EXPECT_EQ(run("compute --graph " + p("p3.tsv") + " --out " + p("locked")), 1);
    EXPECT_NE(err().find("in use"), std::string::npos);
}

TEST_F(CliTest, IdenticalScoresOverlapFully) {
    write("g.tsv", "a\tb\nb\tc\nc\td\nd\te\ne\ta\n");
    write("days.tsv", "a\t1\nb\t5\nc\t9\nd\t20\ne\t40\n");
    fs::create_directories(dir / "out/scores");
    const std::string scores = "label,score\na,5\nb,4\nc,3\nd,2\ne,1\n";
    write("out/scores/degree.csv", scores);
    write("out/scores/pagerank.csv", scores);
    ASSERT_EQ(run("analyze --graph " + p("g.tsv") + " --adoption " + p("days.tsv") +
                  " --measures degree,pagerank --k 3 --out " + p("out")),
              0)
        << err();
    const auto a = read_json("out/analysis.json");
    EXPECT_EQ(a["overlap"]["matrix"], json::parse("[[3,3],[3,3]]"));
    EXPECT_EQ(slurp(dir / "out/overlap.csv"), "measure,degree,pagerank\ndegree,3,3\npagerank,3,3\n");
    // Top 3 are a, b, c with days 1, 5, 9.
    EXPECT_EQ(a["measures"]["degree"]["registration"]["average_day"], 5.0);
    EXPECT_EQ(a["measures"]["degree"]["registration"]["median_day"], 5);
    EXPECT_EQ(a["whole_graph"]["median_day"], 9);

    EXPECT_EQ(run("analyze --graph " + p("g.tsv") + " --adoption " + p("days.tsv") +
                  " --measures degree,kcore --k 3 --out " + p("out")),
              2);
    EXPECT_NE(err().find("measure 'kcore'"), std::string::npos);
}

TEST_F(CliTest, PlantedPipeline) {
    generate_planted(3000, 4);
    const auto common = " --graph " + p("data/edges.tsv") + " --adoption " + p("data/adoption.tsv") + " --out " + p("out");
    ASSERT_EQ(run("compute" + common + " --measures degree,pagerank,kcore,tc"), 0) << err();
    ASSERT_EQ(run("analyze" + common + " --measures degree,pagerank,kcore,tc --k 100 --plot-data"), 0) << err();
    const auto a = read_json("out/analysis.json");
    const auto& pct = a["interconnectedness"]["percent_of_column"];
    for (const auto& [col, _] : pct.items()) {
        double sum = 0.0, off = 0.0;
        for (const auto& [row, cols] : pct.items()) {
            sum += cols[col].get<double>();
            if (row != col) off += cols[col].get<double>();
        }
        EXPECT_NEAR(sum, 100.0, 0.1);
        EXPECT_GT(pct[col][col].get<double>(), off / 4.0) << col;
    }
    for (const auto& [m, entry] : a["measures"].items()) {
        const double r = entry["assortativity"];
        EXPECT_GE(r, -1.0);
        EXPECT_LE(r, 1.0);
    }
    EXPECT_LT(a["measures"]["tc"]["registration"]["average_day"].get<double>(),
              a["whole_graph"]["average_day"].get<double>());
    const auto reg = slurp(dir / "out/registration.csv");
    EXPECT_NE(reg.find("\nwhole_graph,"), std::string::npos);
    for (const auto* f : {"interconnectedness.csv", "assortativity.csv", "overlap.csv", "class_distribution.csv",
                          "reach.csv", "classes.csv", "plot/class_distribution.csv", "plot/day_histogram.csv",
                          "plot/reach.csv"})
        EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
    EXPECT_EQ(line_count(dir / "out/assortativity.csv"), 5u);

    ASSERT_EQ(run("report --stdout" + common + " > " + p("report.txt")), 0) << err();
    EXPECT_NE(slurp(dir / "report.txt").find("## Interconnectedness"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir / "out/report.md"));

    ASSERT_EQ(run("rank-tc --graph " + p("data/edges.tsv") + " --alpha-grid 0,0.5,1 --out " + p("tc")), 0) << err();
    EXPECT_EQ(read_json("tc/tc.json")["sets"].size(), 3u);
    EXPECT_EQ(slurp(dir / "tc/tc_membership.csv").substr(0, 30), "label,alpha_0,alpha_0.5,alpha_");

    ASSERT_EQ(run("ingest" + common), 0) << err();
    EXPECT_EQ(read_json("out/ingest.json")["adoption"]["missing"], 0);
}

TEST_F(CliTest, SimulationEdgeCases) {
    write("g.tsv", "a\tb\nb\tc\nc\td\nd\ta\nd\te\n");
    write("all.txt", "a\nb\nc\nd\ne\n");
    ASSERT_EQ(run("simulate --graph " + p("g.tsv") + " --model lt --seeds file:" + p("all.txt") + " --out " + p("lt")), 0)
        << err();
    EXPECT_EQ(read_json("lt/summary.json")["mean_fraction"], 1.0);
    EXPECT_EQ(line_count(dir / "lt/activation.csv"), 6u);

    ASSERT_EQ(run("simulate --graph " + p("g.tsv") + " --model ic --probability 0 --seeds 'list:b;e' --runs 5 --out " +
                  p("ic")),
              0)
        << err();
    EXPECT_EQ(slurp(dir / "ic/activation.csv"), "label,round\nb,0\ne,0\n");
    for (const auto& r : read_json("ic/summary.json")["runs"]) EXPECT_EQ(r["activated"], 2);

    ASSERT_EQ(run("simulate --graph " + p("g.tsv") + " --model ic --probability 1 --seeds list:a --out " + p("ic1")), 0);
    EXPECT_EQ(read_json("ic1/summary.json")["mean_fraction"], 1.0);
}

TEST_F(CliTest, ClassAwareThresholdsFavorEarlySeeds) {
    generate_planted(3000, 2);
    const auto common = " --graph " + p("data/edges.tsv") + " --adoption " + p("data/adoption.tsv") +
                        " --model lt --thresholds class_aware --seed-count 60 --runs 20";
    ASSERT_EQ(run("simulate" + common + " --seeds class:innovators --out " + p("innov")), 0) << err();
    ASSERT_EQ(run("simulate" + common + " --seeds class:laggards --out " + p("lag")), 0) << err();
    const double innov = read_json("innov/summary.json")["mean_fraction"];
    const double lag = read_json("lag/summary.json")["mean_fraction"];
    EXPECT_GT(innov, lag);
}

} // namespace
