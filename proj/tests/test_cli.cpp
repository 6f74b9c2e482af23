#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qrea/cli.hpp"

using namespace qrea::cli;
using nlohmann::json;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("qrea_cli_" + name)).string();
}

void write(const std::string& path, const json& j) { std::ofstream(path) << j.dump(); }

json read(const std::string& path) { return json::parse(std::ifstream(path)); }

int run_args(std::vector<std::string> args) {
    std::vector<const char*> argv{"qrea"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

json find_check(const json& report, const std::string& id) {
    for (const auto& c : report["checks"])
        if (c["id"] == id) return c;
    return json();
}

}  // namespace

TEST_CASE("verify suites") {
    RunConfig cfg;
    cfg.suite = "braid";
    cfg.n = 3;
    auto b = cmd_verify(cfg);
    CHECK(b.exit_code == kPass);
    CHECK(find_check(b.report, "hecke")["pass"] == true);

    cfg.suite = "rea";
    cfg.n = 2;
    auto r = cmd_verify(cfg);
    CHECK(r.exit_code == kPass);
    CHECK(find_check(r.report, "centrality")["instances"].get<int>() > 0);

    cfg.suite = "reps";
    auto p = cmd_verify(cfg);
    CHECK(p.exit_code == kPass);
    CHECK(find_check(p.report, "harish-chandra")["pass"] == true);

    cfg.suite = "rea";
    cfg.n = 7;
    CHECK_THROWS_AS(cmd_verify(cfg), InputError);
    cfg.n = 2;
    cfg.q0 = 1.5;
    CHECK_THROWS_AS(cmd_verify(cfg), InputError);
}

TEST_CASE("build reports") {
    RunConfig cfg;
    json anti = {{"q", 0.5},
                 {"base", {{"character", {{"N", 2}, {"k", 0}, {"l", 1}, {"a", 1.0}, {"c", 1.0}, {"y", {0.0}}}}}},
                 {"chain", {{{"alpha", 1}, {"d", 16}}}}};
    auto res = cmd_build(cfg, anti);
    CHECK(res.exit_code == kPass);
    const auto& branches = res.report["split"]["branches"];
    REQUIRE(branches.size() == 2);
    for (const auto& b : branches) {
        CHECK(b["shape"]["tau"] == json({1, 2}));
        CHECK(b["shape"]["u"][0]["sign"].get<int>() == b["sign"].get<int>());
        CHECK(b["shape"]["u"][1]["sign"].get<int>() == -b["sign"].get<int>());
    }

    json verma = {{"q", 0.5}, {"base", {{"verma", {{"eps", {1, 1}}, {"r", {0.0, 0.0}}, {"cutoff", 4}}}}}};
    auto v = cmd_build(cfg, verma);
    CHECK(v.exit_code == kPass);
    CHECK(std::abs(v.report["central"][0].get<double>() - 1.25) < 1e-10);
    CHECK(std::abs(v.report["central"][1].get<double>() - 0.25) < 1e-10);

    json bad = verma;
    bad["base"]["verma"]["r"] = {0.0, -0.5};
    CHECK_THROWS_WITH_AS(cmd_build(cfg, bad), doctest::Contains("eps-adapted"), InputError);
}

TEST_CASE("classify") {
    RunConfig cfg;
    json good = {{"shape", {{"n", 2}, {"tau", {1, 2}}, {"u", {{{"sign", 1}}, {{"sign", 1}}}}}}, {"central", {1.25, 0.25}}};
    auto g = cmd_classify(cfg, good);
    CHECK(g.exit_code == kPass);
    CHECK(g.report["valid"] == true);
    CHECK(g.report["signature"]["plus"] == 2);

    json wrong = good;
    wrong["central"] = {0.0, 1.0};
    CHECK(cmd_classify(cfg, wrong).exit_code == kFail);

    json nsa = {{"shape", {{"n", 2}, {"tau", {2, 1}}, {"u", {{{"sign", 1}}, {{"sign", -1}}}}}}, {"central", {0.0, -0.25}}};
    CHECK_THROWS_AS(cmd_classify(cfg, nsa), InputError);

    cfg.enumerate = true;
    cfg.n = 4;
    cfg.rank = 4;
    cfg.limit = 100000;
    auto e = cmd_classify(cfg, json());
    CHECK(e.exit_code == kPass);
    CHECK(e.report["character_families"] == json::parse(R"([{"k":0,"l":0},{"k":0,"l":1},{"k":0,"l":2}])"));
}

TEST_CASE("exit codes and determinism") {
    const auto out1 = temp_path("a.json"), out2 = temp_path("b.json"), spec = temp_path("spec.json");
    CHECK(run_args({"verify", "--suite", "rea", "--n", "3", "--seed", "4", "--out", out1}) == kPass);
    CHECK(run_args({"--seed", "4", "--n", "3", "verify", "--suite", "rea", "--out", out2}) == kPass);
    CHECK(read(out1) == read(out2));
    CHECK(read(out1)["seed"] == 4);

    write(spec, {{"q", 0.5}, {"base", {{"verma", {{"eps", {1, 1}}, {"r", {0.0, -0.5}}, {"cutoff", 4}}}}}});
    CHECK(run_args({"build", "--in", spec, "--out", out1}) == kInputError);
    CHECK(read(out1)["error"].get<std::string>().find("eps-adapted") != std::string::npos);

    CHECK(run_args({"verify", "--suite", "nope", "--out", out1}) == kInputError);
    CHECK(run_args({"verify", "--bogus"}) == kInputError);
    CHECK(run_args({"build", "--in", temp_path("missing.json"), "--out", out1}) == kInputError);
    for (const auto& p : {out1, out2, spec}) std::filesystem::remove(p);
}
