#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = DISCBOUND_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("discbound_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json slurp_json(const std::string& path) { return json::parse(slurp(path)); }

}  // namespace

TEST_CASE("classify command verdicts and determinism") {
    TempDir tmp;
    std::string out1 = tmp.file("c1.json"), out2 = tmp.file("c2.json");
    REQUIRE(run("classify --region prop2b --ladder 3..14 --budget 128 --out " + out1) == 0);
    REQUIRE(run("classify --region prop2b --ladder 3..14 --budget 128 --out " + out2) == 0);
    CHECK(slurp(out1) == slurp(out2));                    // byte identical
    json rep = slurp_json(out1);
    CHECK(rep.at("verdict") == "Tangential");

    std::string st = tmp.file("stolz.json");
    REQUIRE(run("classify --region stolz:2 --ladder 3..14 --budget 128 --out " + st) == 0);
    CHECK(slurp_json(st).at("verdict") == "Nontangential");

    std::string vo = tmp.file("vo.json");
    REQUIRE(run("classify --region oscillating --ladder 3..14 --budget 128 --out " + vo) == 0);
    CHECK(slurp_json(vo).at("verdict") == "VeryOscillatory");

    std::string csv = tmp.file("c.csv");
    REQUIRE(run("classify --region prop2b --ladder 3..8 --budget 64 --format csv --out " +
                csv) == 0);
    CHECK(slurp(csv).rfind("r,lower_tau,upper_tau\n", 0) == 0);
}

TEST_CASE("adjacency command") {
    TempDir tmp;
    std::string wit = tmp.file("wit.json");
    REQUIRE(run("adjacency --region prop2b --b 2 --ladder 3..10 --out " + wit) == 0);
    CHECK(slurp_json(wit).at("verdict") == "WitnessFound");

    std::string ref = tmp.file("ref.json");
    REQUIRE(run("adjacency --region prop2c --b 10 --mode refute --out " + ref) == 0);
    json rj = slurp_json(ref);
    CHECK(rj.at("verdict") == "RefutedAtProbes");
    CHECK(rj.at("first_tail_index") == 20);
}

TEST_CASE("poisson command") {
    TempDir tmp;
    std::string ind = tmp.file("indicator.json");
    {
        std::ofstream f(ind);
        f << R"({"terms":[{"coeff":1.0,"support":{"full_circle":true,"arcs":[]}}]})";
    }
    std::string pts = tmp.file("points.json");
    {
        std::ofstream f(pts);
        f << "[[0.0, 0.0], [0.5, 0.25]]";
    }
    std::string out = tmp.file("vals.json");
    REQUIRE(run("poisson --indicator " + ind + " --points " + pts + " --out " + out) == 0);
    json rows = slurp_json(out).at("rows");
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.at("u").get<double>() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(row.at("v").get<double>() == doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("tent constant command") {
    TempDir tmp;
    std::string out = tmp.file("tent.json");
    REQUIRE(run("tent-constant --density 16 --out " + out) == 0);
    double c0 = slurp_json(out).at("c0").get<double>();
    CHECK(c0 > 0.40);
    CHECK(c0 < 0.45);
}

TEST_CASE("build, verify, figures round trip") {
    TempDir tmp;
    std::string art1 = tmp.file("a1.json"), art2 = tmp.file("a2.json");
    std::string flags = "build --levels 2 --truncation 7 --grid 512 --out ";
    REQUIRE(run(flags + art1) == 0);
    REQUIRE(run(flags + art2) == 0);
    CHECK(slurp(art1) == slurp(art2));                    // criterion-9 style determinism

    json artifact = slurp_json(art1);
    CHECK(artifact.at("phi").size() == 7);
    CHECK(artifact.at("c0").get<double>() > 0.0);

    std::string rep = tmp.file("report.json");
    REQUIRE(run("verify --artifact " + art1 + " --samples 40 --out " + rep) == 0);
    json report = slurp_json(rep);
    CHECK(report.at("checked").get<int>() == 40);
    CHECK(report.at("pass_rate").get<double>() >= 0.8);

    std::string svg = tmp.file("fig.svg");
    REQUIRE(run("figures --artifact " + art1 + " --out " + svg) == 0);
    CHECK(slurp(svg).rfind("<svg", 0) == 0);

    std::string csv = tmp.file("report.csv");
    REQUIRE(run("verify --artifact " + art1 + " --samples 10 --format csv --out " + csv) == 0);
    CHECK(slurp(csv).rfind("w_angle,", 0) == 0);
}

TEST_CASE("config file overrides flags") {
    TempDir tmp;
    std::string cfg = tmp.file("cfg.json");
    {
        std::ofstream f(cfg);
        f << R"({"region":"stolz:3","ladder":"3..10"})";
    }
    std::string out = tmp.file("out.json");
    REQUIRE(run("classify --region prop2b --config " + cfg + " --out " + out) == 0);
    CHECK(slurp_json(out).at("region") == "stolz:3");
    CHECK(slurp_json(out).at("verdict") == "Nontangential");
}

TEST_CASE("exit codes") {
    TempDir tmp;
    // hypothesis gate: a nontangential family is rejected with exit code 2
    CHECK(run("build --family stolz:2 --levels 1 --truncation 1 --grid 64 --out " +
              tmp.file("x.json")) == 2);
    // validation error
    CHECK(run("classify --region no-such-region --out " + tmp.file("y.json")) == 1);
    CHECK(run("verify --artifact /nonexistent.json --out " + tmp.file("z.json")) == 1);
}
