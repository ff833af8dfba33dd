#include "nalab/errors.hpp"
#include "nalab/experiments.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace nalab;
using nlohmann::json;

TEST_CASE("config parsing")
{
    const json j = json::parse(R"({
        "space": {"m": 2, "k": 1},
        "grid": {"J_max": 60, "N_max": 20, "normalization": "median"},
        "weight": {"variant": "EtaProduct", "base": {"variant": "ExpStrong", "p": 2}},
        "checker": {"id": "weak-type", "p": 2, "f": {"indicator": 2}},
        "seed": 7,
        "axes": {"p": [1.5, 2]},
        "output": {"dir": "out", "name": "run"}
    })");
    const ExperimentConfig c = parse_config(j);
    CHECK(c.J_max == 60);
    CHECK(c.N_max == 20);
    CHECK(c.normalization == Normalization::median);
    CHECK(c.checker == "weak-type");
    CHECK(c.seed == 7);
    CHECK(c.axes.at("p").size() == 2);
    CHECK(c.output_name == "run");
    CHECK(parse_config(json::object()).checker == "msw");
}

TEST_CASE("config rejects unknown fields at every level")
{
    const char* bad[] = {
        R"({"colour": 1})",
        R"({"space": {"m": 2, "k": 1, "n": 3}})",
        R"({"space": {"m": 2, "k": 1, "sigma": 1}})",
        R"({"space": {"m": 2, "k": 0}})",
        R"({"grid": {"J_max": 60, "width": 3}})",
        R"({"grid": {"J_max": 20, "N_max": 19}})",
        R"({"grid": {"normalization": "mean"}})",
        R"({"weight": {"variant": "ExpRadial", "gamma": -0.5, "beta": 1}})",
        R"({"weight": {"variant": "Nope"}})",
        R"({"weight": {"variant": "Custom", "power": 1, "values": [1]}})",
        R"({"checker": {"id": "msw", "z": 1}})",
        R"({"checker": {"id": "no-such-checker"}})",
        R"({"backend": "graph"})",
        R"({"tree": {"k": 2, "height": 3}})",
        R"({"axes": {"banana": [1]}})",
        R"({"axes": {"p": []}})",
        R"({"output": {"dir": "x", "format": "xml"}})",
        R"({"seed": "abc"})",
    };
    for (const char* text : bad) {
        INFO(text);
        CHECK_THROWS_AS(parse_config(json::parse(text)), ConfigError);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("empty axes give one cell identical to the direct checker call")
{
    const ExperimentConfig c = parse_config(json::parse(R"({
        "grid": {"J_max": 40, "N_max": 10},
        "weight": {"variant": "ExpRadial", "gamma": -0.3},
        "checker": {"id": "msw", "s": 2}
    })"));
    const auto rows = sweep(c);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].params.empty());
    const CheckReport direct = run_checker(c);
    CHECK(to_json(rows[0].report) == to_json(direct));
    CHECK(direct.meta.contains("refined_constant"));
}

TEST_CASE("sweep over s is monotone for the Fefferman-Stein ratio")
{
    const ExperimentConfig c = parse_config(json::parse(R"({
        "grid": {"J_max": 100, "N_max": 30},
        "weight": {"variant": "ExpRadial", "gamma": -1},
        "checker": {"id": "fs", "f": {"indicator": 10}, "refine": false},
        "axes": {"s": [1.1, 1.25, 1.5, 2]}
    })"));
    const auto rows = sweep(c);
    REQUIRE(rows.size() == 4);
    for (std::size_t n = 1; n < rows.size(); ++n)
        CHECK(rows[n].report.constant <= rows[n - 1].report.constant);
    const std::string csv = sweep_csv(c, rows);
    CHECK(csv.rfind("id,s,constant,slope,r2,verdict\n", 0) == 0);
}

TEST_CASE("cartesian sweep order")
{
    const ExperimentConfig c = parse_config(json::parse(R"({
        "grid": {"J_max": 30, "N_max": 8},
        "checker": {"id": "easy-check", "refine": false},
        "axes": {"p": [1.5, 2, 3], "eta": [-1, 0]}
    })"));
    const auto rows = sweep(c);
    REQUIRE(rows.size() == 6);
    // Axes are ordered by name: eta, then p (fastest).
    CHECK(rows[0].params == std::vector<double>{-1, 1.5});
    CHECK(rows[1].params == std::vector<double>{-1, 2});
    CHECK(rows[3].params == std::vector<double>{0, 1.5});
}

TEST_CASE("seed changes only random-family rows")
{
    auto run = [](const char* family, std::uint64_t seed) {
        json j = json::parse(R"({"grid": {"J_max": 30, "N_max": 8}, "checker": {"id": "necessary", "refine": false}})");
        j["checker"]["family"] = family;
        j["seed"] = seed;
        return run_checker(parse_config(j)).constant;
    };
    CHECK(run("standard", 1) == run("standard", 2));
    CHECK(run("random", 1) != run("random", 2));
    CHECK(run("random", 3) == run("random", 3));
}

TEST_CASE("tree backend checkers")
{
    const ExperimentConfig c = parse_config(json::parse(R"({
        "backend": "tree", "tree": {"k": 2, "depth": 5},
        "checker": {"id": "kolmogorov", "q": 0.5, "cases": 10}
    })"));
    const CheckReport rep = run_checker(c);
    CHECK(rep.verdict == Verdict::pass);
    ExperimentConfig bad = c;
    bad.checker = "msw";
    CHECK_THROWS_AS(run_checker(bad), ConfigError);
}

TEST_CASE("output directory resolution")
{
    ::unsetenv(kOutputDirEnv);
    CHECK(resolve_output_dir("") == "reports");
    ::setenv(kOutputDirEnv, "/tmp/elsewhere", 1);
    CHECK(resolve_output_dir("") == "/tmp/elsewhere");
    CHECK(resolve_output_dir("flag") == "flag");
    ::unsetenv(kOutputDirEnv);
}

TEST_CASE("experiment registry")
{
    CHECK(experiment_ids().size() == 12);
    CHECK_THROWS_AS(reproduce("no-such-id"), ConfigError);
}

TEST_CASE("reports are byte-reproducible apart from the timestamp")
{
    const ExperimentOutcome a = reproduce("ex-apnot", 42), b = reproduce("ex-apnot", 42);
    CHECK(outcome_json(a, "T").dump(2) == outcome_json(b, "T").dump(2));
    CHECK(outcome_csv(a) == outcome_csv(b));
    CHECK(outcome_json(a, "T")["seed"] == 42);
    CHECK(a.pass);
}

TEST_CASE("seeded experiments embed and honour the seed")
{
    const ExperimentOutcome a = reproduce("vector-valued", 1), b = reproduce("vector-valued", 100);
    CHECK(a.seed == 1);
    CHECK(a.summary["max"] != b.summary["max"]);
    CHECK(outcome_json(a, "T").dump() == outcome_json(reproduce("vector-valued", 1), "T").dump());
}
