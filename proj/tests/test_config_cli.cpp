#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qheis/cli.hpp"
#include "qheis/config.hpp"
#include "qheis/errors.hpp"
#include "qheis/output.hpp"

using namespace qheis;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qheis_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

const char* kShortExplicit = R"({
  "n_spins": 2,
  "couplings": [[1, 2, 5.0]],
  "b_prime": 20,
  "tau": 2,
  "samples": 3
})";

} // namespace

TEST_CASE("preset shorthand and explicit configs resolve to the same physics") {
    const RunConfig a = parse_config_text(R"({"preset": "ferro2"})", "test");
    const RunConfig b = parse_config_text(
        R"({"n_spins": 2, "couplings": [[1, 2, 5.0]], "b_prime": 20, "tau": 500})", "test");
    const AnnealConfig ca = a.resolve();
    const AnnealConfig cb = b.resolve();
    CHECK(ca.graph.n_spins == cb.graph.n_spins);
    CHECK(ca.fields.b_prime == cb.fields.b_prime);
    CHECK(ca.tau == cb.tau);
    const auto ha = build_exchange_zeeman(ca.graph, ca.fields.b0);
    const auto hb = build_exchange_zeeman(cb.graph, cb.fields.b0);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) CHECK(ha.at(i, j) == hb.at(i, j));
    }
    CHECK(a.label() == "ferro2");
    CHECK(b.label() == "custom");
}

TEST_CASE("config validation failures name the problem") {
    CHECK_THROWS_WITH_AS(
        parse_config_text(R"({"n_spins": 2, "couplings": [[1, 3, 5.0]], "b_prime": 20,
                              "tau": 500})", "test"),
        doctest::Contains("exceeds n_spins"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"preset": "ferro2", "n_spins": 2})", "test"),
                         doctest::Contains("excludes"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"preset": "nope"})", "test"),
                         doctest::Contains("unknown preset"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"n_spins": 2, "b_prime": 20})", "test"),
                         doctest::Contains("tau"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"preset": "ferro2", "bogus": 1})", "test"),
                         doctest::Contains("unknown field"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config_text(R"({"n_spins": 2, "couplings": [], "b_prime": 20, "tau": -1})",
                          "test"),
        doctest::Contains("tau"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("{\n  \"n_spins\": 2,\n  oops\n}", "test"),
                         doctest::Contains("line 3"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"preset": "ferro2", "track": "some"})", "test"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/path.json"), IoError);
}

TEST_CASE("track options") {
    const RunConfig all = parse_config_text(R"({"preset": "ferro2", "track": "all"})", "test");
    CHECK(all.resolve().track.size() == 4);
    const RunConfig some =
        parse_config_text(R"({"preset": "ferro2", "track": [0, 3]})", "test");
    CHECK(some.resolve().track == std::vector<std::size_t>{0, 3});
    CHECK_THROWS_WITH_AS(
        parse_config_text(R"({"preset": "ferro2", "track": [9]})", "test"),
        doctest::Contains("exceeds"), ConfigError);
}

TEST_CASE("anneal command writes trajectory and report") {
    const fs::path dir = fresh_dir("anneal");
    RunConfig cfg = parse_config_text(kShortExplicit, "test");
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    const int code = dispatch("anneal", cfg, out, err);
    CHECK(code == kExitOk);
    CHECK(err.str().empty());

    const std::string csv = slurp(dir / "trajectory.csv");
    CHECK(csv.rfind("t,p_0,p_1,p_2,p_3,norm\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4); // header + 3 samples

    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report["label"] == "custom");
    CHECK(report["probability_sum"].get<double>() == Approx(1.0).epsilon(1e-6));
    double sum = 0.0;
    for (const auto& p : report["final_probabilities"]) sum += p.get<double>();
    CHECK(sum == Approx(1.0).epsilon(1e-6));
    // every dominant entry's pattern encodes its index
    for (const auto& d : report["dominant_states"]) {
        const auto pattern = d["pattern"].get<std::string>();
        std::size_t decoded = 0;
        for (char c : pattern) decoded = decoded * 2 + (c == '1');
        CHECK(decoded == d["index"].get<std::size_t>());
    }
}

TEST_CASE("anneal output is byte-identical across reruns") {
    const fs::path dir1 = fresh_dir("rerun1");
    const fs::path dir2 = fresh_dir("rerun2");
    RunConfig cfg = parse_config_text(kShortExplicit, "test");
    std::ostringstream out, err;
    cfg.out_dir = dir1.string();
    REQUIRE(dispatch("anneal", cfg, out, err) == kExitOk);
    cfg.out_dir = dir2.string();
    REQUIRE(dispatch("anneal", cfg, out, err) == kExitOk);
    CHECK(slurp(dir1 / "trajectory.csv") == slurp(dir2 / "trajectory.csv"));
    CHECK(slurp(dir1 / "report.json") == slurp(dir2 / "report.json"));
}

TEST_CASE("spectrum command emits the full grid") {
    const fs::path dir = fresh_dir("spectrum");
    RunConfig cfg = config_for_preset("frustrated3");
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    REQUIRE(dispatch("spectrum", cfg, out, err) == kExitOk);
    const std::string csv = slurp(dir / "spectrum.csv");
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "s,E_1,E_2,E_3,E_4,E_5,E_6,E_7,E_8");
    int rows = 0;
    std::string line;
    std::vector<std::string> first_row;
    while (std::getline(lines, line)) {
        if (rows == 0) {
            std::istringstream cells(line);
            std::string cell;
            while (std::getline(cells, cell, ',')) first_row.push_back(cell);
        }
        ++rows;
    }
    CHECK(rows == 101);
    REQUIRE(first_row.size() == 9);
    CHECK(first_row[0] == "0");
    // s = 0 row is the driver spectrum: -30, -10 (x3), 10 (x3), 30
    CHECK(std::stod(first_row[1]) == Approx(-30.0).epsilon(1e-9));
    CHECK(std::stod(first_row[8]) == Approx(30.0).epsilon(1e-9));
}

TEST_CASE("ground command summarizes the exact diagonalization") {
    const fs::path dir = fresh_dir("ground");
    RunConfig cfg = config_for_preset("antiferro2");
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    REQUIRE(dispatch("ground", cfg, out, err) == kExitOk);
    const auto g = nlohmann::json::parse(slurp(dir / "ground.json"));
    CHECK(g["ground"]["energy"].get<double>() == Approx(-15.0).epsilon(1e-9));
    CHECK(g["gaps"]["gap_1_2"].get<double>() == Approx(19.0).epsilon(1e-9));
    CHECK(g["energies"].size() == 4);
    CHECK(g["spin"]["s_squared"].get<double>() == Approx(0.0).epsilon(1e-8));
}

TEST_CASE("exit codes") {
    std::ostringstream out, err;
    SUBCASE("unknown command") {
        CHECK(dispatch("bogus", config_for_preset("ferro2"), out, err) == kExitConfigError);
        CHECK(err.str().find("unknown command") != std::string::npos);
    }
    SUBCASE("numerical failure maps to 2") {
        RunConfig cfg = parse_config_text(
            R"({"n_spins": 2, "couplings": [[1, 2, 5.0]], "b_prime": 20,
                "tau": 10, "dt": 0.5, "samples": 11})",
            "test");
        cfg.out_dir = fresh_dir("drift").string();
        CHECK(dispatch("anneal", cfg, out, err) == kExitNumericalFailure);
        CHECK(err.str().find("norm drift") != std::string::npos);
    }
    SUBCASE("unwritable output directory maps to 3") {
        const fs::path dir = fresh_dir("blocked");
        std::ofstream(dir / "file") << "x";
        RunConfig cfg = config_for_preset("ferro2");
        cfg.dt = 0.01; // keep it quick; failure happens after the run
        cfg.out_dir = (dir / "file" / "sub").string();
        CHECK(dispatch("ground", cfg, out, err) == kExitIoError);
    }
}

TEST_CASE("csv numbers carry 12 significant digits") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1234567890123456) == "0.123456789012");
    CHECK(format_number(-49.5) == "-49.5");
}
