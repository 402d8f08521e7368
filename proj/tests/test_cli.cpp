#include "cli.hpp"
#include "graded/report.hpp"
#include "graded/scenario.hpp"
#include "graded/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = graded::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) { return std::string(GRADED_SCENARIO_DIR) + "/" + name; }

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("graded_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST_CASE("run --case engel --analyses regularity --check reports SINGULAR") {
    const Result r = cli({"run", "--case", "engel/x2_line", "--analyses", "regularity", "--check"});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["reports"][0]["analyses"]["regularity"]["results"]["classification"] == "SINGULAR");
    CHECK(doc["passed"] == true);
}

TEST_CASE("run --case pansu_sphere --analyses limits --check") {
    const Result r = cli({"run", "--case", "pansu_sphere", "--analyses", "limits", "--check"});
    CHECK(r.code == 0);
    const json res = json::parse(r.out)["reports"][0]["analyses"]["limits"]["results"];
    CHECK(std::abs(res["two_s_bar"].get<double>() - M_PI / 2) < 1e-3);
}

TEST_CASE("even node counts are input errors") {
    const Result r = cli({"run", "--scenario", scenario("even_grid.json")});
    CHECK(r.code == 1);
    CHECK(r.err.find("scenario.grid") != std::string::npos);
    CHECK(cli({"run", "--case", "engel", "--grid", "1000"}).code == 1);
}

TEST_CASE("tightened tolerances produce an expectation mismatch") {
    const Result r = cli({"run", "--case", "pansu_sphere", "--analyses", "limits", "--check", "--tol-scale", "1e-9"});
    CHECK(r.code == 2);
    CHECK(r.err.find("FAIL pansu_sphere__meridian") != std::string::npos);
}

TEST_CASE("unknown catalog names list the available entries") {
    const Result r = cli({"run", "--case", "nosuch"});
    CHECK(r.code == 1);
    CHECK(r.err.find("kolmogorov") != std::string::npos);
    CHECK(cli({"run", "--case", "engel/nosuch"}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
}

TEST_CASE("catalog list prints every entry") {
    const Result r = cli({"catalog", "list"});
    CHECK(r.code == 0);
    for (const char* name : {"heisenberg_h1", "engel", "r5_degree2", "r5_rank3", "kolmogorov", "euclidean_split(4,2)",
                             "h1_vertical_plane", "h1_characteristic_plane", "pansu_sphere"})
        CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("scenario with a catalog frame writes reports and CSV files") {
    const fs::path dir = temp_dir("scenario");
    const Result r = cli({"run", "--scenario", scenario("engel_regularity.json"), "--out", dir.string()});
    CHECK(r.code == 0);
    const fs::path report = dir / "engel_regularity.json";
    REQUIRE(fs::exists(report));
    std::ifstream in(report);
    const json doc = json::parse(in);
    CHECK(doc["analyses"]["regularity"]["results"]["classification"] == "SINGULAR");
    CHECK(doc["analyses"]["regularity"].contains("tolerances"));
    CHECK(doc["analyses"]["regularity"]["expectations"][0].contains("anchor"));
    CHECK(fs::exists(dir / "engel_regularity__admissibility_admissibility.csv"));
    std::ifstream csv(dir / "engel_regularity__admissibility_admissibility.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header.rfind("t,A1_1,A1_2", 0) == 0);
}

TEST_CASE("scenario with an inline frame file and polynomial curve") {
    const Result r = cli({"run", "--scenario", scenario("heisenberg_parabola.json")});
    CHECK(r.code == 0);
    const json a = json::parse(r.out)["reports"][0]["analyses"];
    CHECK(a["regularity"]["results"]["classification"] == "REGULAR");
    CHECK(a["geodesic"]["results"]["reparameterized"] == true);
    CHECK(a["geodesic"]["results"]["max_residual"].get<double>() > 0.1);
}

TEST_CASE("GRADED_CURVES_OUT overrides --out") {
    const fs::path env_dir = temp_dir("env"), flag_dir = temp_dir("flag");
    setenv("GRADED_CURVES_OUT", env_dir.c_str(), 1);
    const Result r = cli({"run", "--case", "r5_rank3", "--analyses", "regularity", "--out", flag_dir.string()});
    unsetenv("GRADED_CURVES_OUT");
    CHECK(r.code == 0);
    CHECK(fs::exists(env_dir / "r5_rank3__x5_line.json"));
    CHECK(!fs::exists(flag_dir / "r5_rank3__x5_line.json"));
}

TEST_CASE("the seed changes randomized runs but not their verdicts") {
    auto run = [](const std::string& seed) {
        const Result r = cli({"run", "--case", "h1_vertical_plane", "--analyses", "limits", "--check", "--seed", seed});
        CHECK(r.code == 0);
        return json::parse(r.out)["reports"][0]["analyses"]["limits"]["results"]["min_competitor"].get<double>();
    };
    const double a = run("42"), b = run("42"), c = run("7");
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("parallel catalog runs match sequential runs") {
    const Result seq = cli({"catalog", "run", "kolmogorov", "--analyses", "covector"});
    const Result par = cli({"catalog", "run", "euclidean_split(4,2)", "--analyses", "covector", "--parallel", "3"});
    CHECK(seq.code == 0);
    CHECK(par.code == 0);
    const Result both = cli({"catalog", "run", "engel", "--analyses", "covector", "--parallel", "2"});
    const json doc = json::parse(both.out);
    REQUIRE(doc["reports"].size() == 2u);
    CHECK(doc["reports"][0]["case"] == "x2_line");
    CHECK(doc["reports"][1]["case"] == "x2_line_subinterval");
}

TEST_CASE("schema errors carry field paths") {
    using graded::SchemaError;
    auto path_of = [](const std::string& text) {
        try {
            graded::parse_scenario(json::parse(text));
        } catch (const SchemaError& e) {
            return e.field_path;
        }
        return std::string("no error");
    };
    CHECK(path_of(R"({"curve": "x2_line", "analyses": []})") == "scenario.frame");
    CHECK(path_of(R"({"frame": "engel", "analyses": ["bogus"]})") == "scenario.analyses[0]");
    CHECK(path_of(R"({"frame": "engel", "analyses": [], "interval": [0, 3], "curve": "x2_line"})") == "scenario.interval");
    CHECK(path_of(R"({"frame": "engel", "analyses": [], "curve": {"type": "polynomial", "domain": [0, 1], "components": [[0], [0, 1]]}})") ==
          "scenario.curve.components");
    CHECK(path_of(R"({"frame": {"dimension": 2, "growth": [1, 2], "fields": [{"components": [[{"coeff": 1}], []]}, {"components": [[], [{"coeff": "x"}]]}]}, "analyses": []})") ==
          "scenario.frame.fields[1].components[1][0].coeff");
    CHECK(path_of(R"({"frame": "nosuch", "analyses": []})") == "scenario.frame");
}

TEST_CASE("reports print sorted keys and 17 significant digits") {
    const json j{{"zeta", 0.1}, {"alpha", 1}, {"mid", {{"b", 2.0 / 3.0}, {"a", true}}}};
    const std::string s = graded::dump_json(j, 0);
    CHECK(s == "{\"alpha\":1,\"mid\":{\"a\":true,\"b\":0.66666666666666663},\"zeta\":0.10000000000000001}\n");
}
