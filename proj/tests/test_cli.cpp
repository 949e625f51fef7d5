#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_binary;
fs::path g_work;

int run(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

// small table and coarse grids to keep each invocation fast
const std::string kFast =
    " --set solver.iv_spacing_uv=1.0 --set mode.l_max=8 --set mode.cutoff=6";

}  // namespace

TEST_CASE("iv subcommand writes a csv with metadata sidecar") {
    const fs::path dir = g_work / "iv";
    REQUIRE(run("iv -o " + dir.string() + kFast) == 0);

    const fs::path csv = dir / "run_iv.csv";
    REQUIRE(fs::exists(csv));
    REQUIRE(fs::exists(dir / "run_iv.csv.meta.json"));

    const auto rows = read_csv(csv);
    REQUIRE(rows.size() > 10);
    CHECK(rows[0] == std::vector<std::string>{"V", "I"});
    CHECK(rows[1] == std::vector<std::string>{"uV", "nA"});
    for (size_t k = 2; k < rows.size(); ++k) CHECK(rows[k].size() == 2);

    const std::string meta = slurp(dir / "run_iv.csv.meta.json");
    CHECK(meta.find("\"config_hash\"") != std::string::npos);
    CHECK(meta.find("\"columns\"") != std::string::npos);
}

TEST_CASE("kk subcommand adds the transform column") {
    const fs::path dir = g_work / "kk";
    REQUIRE(run("kk -o " + dir.string() + kFast) == 0);
    const auto rows = read_csv(dir / "run_kk.csv");
    REQUIRE(rows.size() > 10);
    CHECK(rows[0] == std::vector<std::string>{"V", "I", "IKK"});
}

TEST_CASE("rates csv respects the photoassisted thresholds") {
    const fs::path dir = g_work / "rates";
    REQUIRE(run("rates -o " + dir.string() + kFast +
                " --set grids.v_uv.min=340 --set grids.v_uv.max=420"
                " --set grids.v_uv.points=81") == 0);
    const auto rows = read_csv(dir / "run_rates.csv");
    REQUIRE(rows.size() == 2 + 81);
    REQUIRE(rows[0][0] == "V");
    REQUIRE(rows[0][1] == "gamma_1");
    REQUIRE(rows[0][2] == "gamma_2");

    // 2Δ − ħω/e ≈ 375.2 µV and 2Δ − 2ħω/e ≈ 350.4 µV
    for (size_t k = 2; k < rows.size(); ++k) {
        const double v = std::stod(rows[k][0]);
        const double g1 = std::stod(rows[k][1]);
        const double g2 = std::stod(rows[k][2]);
        if (v < 375.0) CHECK(g1 == 0.0);
        if (v > 376.0) CHECK(g1 > 0.0);
        if (v < 350.0) CHECK(g2 == 0.0);
        if (v > 351.0) CHECK(g2 > 0.0);
    }
}

TEST_CASE("lamb csv is baseline-subtracted") {
    const fs::path dir = g_work / "lamb";
    REQUIRE(run("lamb -o " + dir.string() + kFast +
                " --set grids.v_uv.points=5 --set solver.lamb_reference_uv=300") == 0);
    const auto rows = read_csv(dir / "run_lamb.csv");
    REQUIRE(rows.size() == 2 + 5);
    CHECK(rows[0][1] == "dw_0");
    CHECK(rows[0].back() == "classical_shift");
    // the reference bias is inside the sweep only by accident; instead check
    // the advertised columns carry finite values
    for (size_t k = 2; k < rows.size(); ++k)
        for (const auto& cell : rows[k]) CHECK(std::isfinite(std::stod(cell)));
}

TEST_CASE("repeated runs are byte-identical") {
    const fs::path d1 = g_work / "det1";
    const fs::path d2 = g_work / "det2";
    const std::string common =
        kFast + " --set grids.v_uv.points=11 --set grids.f_ghz.points=21 --threads 3";
    REQUIRE(run("spectrum -o " + d1.string() + common) == 0);
    REQUIRE(run("spectrum -o " + d2.string() + common) == 0);
    CHECK(slurp(d1 / "run_spectrum.csv") == slurp(d2 / "run_spectrum.csv"));
    CHECK(slurp(d1 / "run_spectrum_fit.csv") == slurp(d2 / "run_spectrum_fit.csv"));
}

TEST_CASE("config file loading and overrides") {
    const fs::path dir = g_work / "cfg";
    fs::create_directories(dir);
    const fs::path cfg = dir / "cfg.json";
    {
        std::ofstream out(cfg);
        out << R"({"mode": {"cutoff": 5}, "output": {"prefix": "alt"}})";
    }
    REQUIRE(run("iv -c " + cfg.string() + " -o " + dir.string() + kFast) == 0);
    CHECK(fs::exists(dir / "alt_iv.csv"));
}

TEST_CASE("bad inputs exit with status 2 and write nothing") {
    const fs::path dir = g_work / "bad";

    SUBCASE("malformed json") {
        fs::create_directories(dir);
        const fs::path cfg = dir / "broken.json";
        std::ofstream(cfg) << "{ not json";
        CHECK(run("iv -c " + cfg.string() + " -o " + dir.string()) == 2);
        CHECK(!fs::exists(dir / "run_iv.csv"));
    }

    SUBCASE("unknown config key") {
        fs::create_directories(dir);
        const fs::path cfg = dir / "unknown.json";
        std::ofstream(cfg) << R"({"mode": {"cutofff": 5}})";
        CHECK(run("iv -c " + cfg.string() + " -o " + dir.string()) == 2);
    }

    SUBCASE("unknown --set key") {
        CHECK(run("iv -o " + dir.string() + " --set mode.bogus=1") == 2);
    }

    SUBCASE("invalid physics parameter") {
        CHECK(run("iv -o " + dir.string() + " --set junction.delta_uev=-5") == 1);
    }

    SUBCASE("missing subcommand") {
        CHECK(run("") != 0);
    }
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-qpt-binary> [doctest args]\n");
        return 1;
    }
    g_binary = argv[1];
    g_work = fs::temp_directory_path() / "qpt_cli_test";
    fs::remove_all(g_work);
    fs::create_directories(g_work);

    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    const int rc = ctx.run();
    fs::remove_all(g_work);
    return rc;
}
