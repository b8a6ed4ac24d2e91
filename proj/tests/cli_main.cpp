// Exercises the installed binary through a shell: exit-code contract,
// artifact layout, and byte-level reproducibility. The binary path arrives
// via the ORDEX_BIN environment variable (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

const char* ordex_bin() {
    const char* bin = std::getenv("ORDEX_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "ORDEX_BIN must point at the ordex binary");
    return bin;
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const fs::path log = fs::temp_directory_path() / "ordex_cli_log.txt";
    const std::string cmd =
        env_prefix + std::string(ordex_bin()) + " " + args + " >" + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / tag) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("generate writes the documented csv layout, reproducibly") {
    TempDir tmp("ordex_cli_gen");
    const std::string out = (tmp.path / "data").string();
    const auto r1 = run_cli("generate --kind synergy-cubic --samples 2000 --distractors 3 --seed 42 --out " + out);
    CHECK(r1.exit_code == 0);

    const fs::path csv = tmp.path / "data" / "synergy-cubic.csv";
    REQUIRE(fs::exists(csv));
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x1,x2,x3,x4,x5,y");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2000);
    CHECK(fs::exists(tmp.path / "data" / "synergy-cubic.provenance.json"));

    const std::string first = slurp(csv);
    const auto r2 = run_cli("generate --kind synergy-cubic --samples 2000 --distractors 3 --seed 42 --out " + out);
    CHECK(r2.exit_code == 0);
    CHECK(slurp(csv) == first);
}

TEST_CASE("generate rejects unknown kinds with exit 2 and the valid list") {
    const auto r = run_cli("generate --kind nope --out /tmp/ordex_nope");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("synergy-cubic") != std::string::npos);
    CHECK(r.output.find("redundancy-cubic") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("analyze").exit_code == 2);                    // missing --data
    CHECK(run_cli("frobnicate").exit_code == 2);                 // unknown subcommand
    CHECK(run_cli("analyze --data x.csv --mode turbo").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("analyze produces the report tree and is byte-deterministic") {
    TempDir tmp("ordex_cli_analyze");
    const std::string data = (tmp.path / "d").string();
    REQUIRE(run_cli("generate --kind redundancy-cubic --samples 400 --distractors 3 --seed 42 --out " + data)
                .exit_code == 0);
    const std::string csv = data + "/redundancy-cubic.csv";

    const std::string out1 = (tmp.path / "run1").string();
    const auto r1 = run_cli("analyze --data " + csv + " --mode exhaustive --out " + out1 +
                            " --baselines pearson");
    CHECK(r1.exit_code == 0);

    // five features: C(5,2) pair records, 5! trials, at most 2^5 model fits
    const auto report = nlohmann::json::parse(slurp(fs::path(out1) / "report.json"));
    CHECK(report["pairs"].size() == 10);
    CHECK(report["trials"]["count"] == 120);
    CHECK(report["work"]["model_fits"] == 32);
    CHECK(report["config"]["mode"] == "exhaustive");

    // identical config, different worker cap: identical bytes
    const std::string out2 = (tmp.path / "run2").string();
    const auto ra = run_cli("analyze --data " + csv + " --trials 40 --seed 7 --out " + out2,
                            "ORDEX_THREADS=1 ");
    CHECK(ra.exit_code == 0);
    const std::string bytes1 = slurp(fs::path(out2) / "report.json");
    const std::string svg1 = slurp(fs::path(out2) / "plots" / "heatmap_l_score.svg");
    const auto rb = run_cli("analyze --data " + csv + " --trials 40 --seed 7 --out " + out2,
                            "ORDEX_THREADS=2 ");
    CHECK(rb.exit_code == 0);
    CHECK(slurp(fs::path(out2) / "report.json") == bytes1);
    CHECK(slurp(fs::path(out2) / "plots" / "heatmap_l_score.svg") == svg1);
}

TEST_CASE("analyze failure modes exit 1 with a named cause") {
    TempDir tmp("ordex_cli_fail");
    {
        std::ofstream out(tmp.path / "bad.csv");
        out << "x1,x2,y\n0.5,a,1.0\n";
    }
    const auto bad = run_cli("analyze --data " + (tmp.path / "bad.csv").string() + " --out " +
                             (tmp.path / "o1").string());
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("x2") != std::string::npos);

    {
        std::ofstream out(tmp.path / "wide.csv");
        for (int f = 0; f < 65; ++f) out << "c" << f << ",";
        out << "y\n";
        for (int r = 0; r < 40; ++r) {
            for (int f = 0; f < 65; ++f) out << (f + r) % 7 << ",";
            out << r % 3 << "\n";
        }
    }
    const auto wide = run_cli("analyze --data " + (tmp.path / "wide.csv").string() + " --out " +
                              (tmp.path / "o2").string());
    CHECK(wide.exit_code == 1);

    const auto missing = run_cli("analyze --data " + (tmp.path / "absent.csv").string() +
                                 " --out " + (tmp.path / "o3").string());
    CHECK(missing.exit_code == 1);
}

TEST_CASE("compare writes heatmaps and the rank table") {
    TempDir tmp("ordex_cli_cmp");
    const std::string data = (tmp.path / "d").string();
    REQUIRE(run_cli("generate --kind synergy-multiplicative --samples 400 --distractors 2 --seed 5 --out " + data)
                .exit_code == 0);
    const auto r = run_cli("compare --data " + data + "/synergy-multiplicative.csv --trials 60 --out " +
                           (tmp.path / "cmp").string());
    CHECK(r.exit_code == 0);
    for (const auto* rel : {"compare.csv", "plots/heatmap_l_score.svg", "plots/heatmap_pearson.svg",
                            "plots/heatmap_mutual_information.svg",
                            "plots/heatmap_shapley_interaction.svg"})
        CHECK(fs::exists(tmp.path / "cmp" / rel));
}

TEST_CASE("compare beyond the shapley capacity exits 1 with guidance") {
    TempDir tmp("ordex_cli_cmp_cap");
    {
        std::ofstream out(tmp.path / "wide.csv");
        for (int f = 0; f < 13; ++f) out << "c" << f << ",";
        out << "y\n";
        for (int r = 0; r < 60; ++r) {
            for (int f = 0; f < 13; ++f) out << 0.1 * ((f * 7 + r * 3) % 11) << ",";
            out << 0.1 * (r % 5) << "\n";
        }
    }
    const auto r = run_cli("compare --data " + (tmp.path / "wide.csv").string() + " --trials 20 --out " +
                           (tmp.path / "cmp").string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("12") != std::string::npos);
    CHECK(r.output.find("shapley") != std::string::npos);
}
