/*
 * Copyright (c) 2026, The otcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <string>

#include "otcheck/report.hpp"

using namespace otcheck;

namespace {

const std::string kFixtures = OTCHECK_FIXTURES;

std::string schema_message(const std::string& text) {
  try {
    scenario_from_json(text);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

RunReport ellis_report() {
  ExplorerConfig cfg;
  cfg.alg = AlgorithmId::Ellis;
  cfg.nb_sites = 3;
  cfg.iter = {1, 1, 1};
  cfg.window = cfg.window_length();
  const auto res = explore(cfg);
  return {cfg, res.verdict, res.counterexample, res.stats};
}

}  // namespace

TEST_CASE("report JSON round-trips") {
  const RunReport report = ellis_report();
  REQUIRE(report.counterexample);
  const std::string text = to_json(report);
  const RunReport back = report_from_json(text);
  CHECK(back.verdict == Verdict::Diverged);
  REQUIRE(back.counterexample);
  CHECK(back.counterexample->site_a == 0);
  CHECK(back.counterexample->site_b == 1);
  CHECK(to_json(back) == text);

  const auto j = nlohmann::json::parse(text);
  CHECK(j["verdict"] == "diverged");
  CHECK(j["pair"] == nlohmann::json::array({0, 1}));
  CHECK(j["divergentCells"] == nlohmann::json::array({1}));
  CHECK(j["sites"][0]["finalText"] == nlohmann::json::array({0, -1, -1, -1, -1, -1}));
  CHECK(j["sites"][1]["finalText"] == nlohmann::json::array({0, 0, -1, -1, -1, -1}));
  CHECK_FALSE(j["stats"].contains("seconds"));
}

TEST_CASE("converged reports carry empty counterexample fields") {
  RunReport r;
  r.config.alg = AlgorithmId::Imine;
  r.config.nb_sites = 2;
  r.config.iter = {1, 1};
  r.stats.states = 12;
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["verdict"] == "converged");
  CHECK(j["signatures"].empty());
  CHECK(j["sites"].empty());
  CHECK(j["stats"]["states"] == 12);
  CHECK(to_json(report_from_json(to_json(r))) == to_json(r));
  CHECK_THROWS_AS(load_counterexample("/nonexistent/ce.json"), SchemaError);
}

TEST_CASE("counterexample files") {
  const RunReport report = ellis_report();
  const std::string path = "otcheck_test_ce.json";
  save_counterexample(path, *report.counterexample);
  const Counterexample ce = load_counterexample(path);
  CHECK(ce.ops.size() == 3);
  CHECK(ce.run_of(1).final_text == report.counterexample->run_of(1).final_text);
  std::remove(path.c_str());
}

TEST_CASE("fixtures load and replay") {
  const Scenario el = load_scenario(kFixtures + "/ellis_three_sites.json");
  const auto el_run = replay(el);
  CHECK(el_run.sites[0].final_text == DocWindow{0, -1, -1, -1, -1, -1});
  CHECK(el_run.sites[1].final_text == DocWindow{0, 0, -1, -1, -1, -1});

  const std::string sul_text = read_file(kFixtures + "/suleiman_deps.json");
  const Scenario sul = scenario_from_json(sul_text);
  CHECK(sul.config.deps.size() == 1);
  const auto sul_run = replay(sul);
  CHECK(sul_run.sites[1].final_text.digits() == "00001");
  CHECK(sul_run.sites[2].final_text.digits() == "000010");
  const auto recorded = recorded_runs(sul_text);
  REQUIRE(recorded.size() == 3);
  REQUIRE(recorded[1].final_text);
  CHECK(*recorded[1].final_text == std::vector<int>{0, 0, 0, 0, 1, -1, -1, -1});
}

TEST_CASE("schema errors name the field") {
  const auto base = nlohmann::json::parse(read_file(kFixtures + "/ellis_three_sites.json"));
  CHECK(schema_message("{").find("<root>: invalid JSON") == 0);
  CHECK(schema_message("[]").find("expected an object") != std::string::npos);

  auto j = base;
  j["config"]["alg"] = "jupiter";
  CHECK(schema_message(j.dump()).find("config.alg: unknown algorithm 'jupiter'") == 0);
  j = base;
  j["config"].erase("sites");
  CHECK(schema_message(j.dump()).find("config.sites: missing") == 0);
  j = base;
  j["signatures"][1]["kind"] = "Move";
  CHECK(schema_message(j.dump()).find("signatures[1].kind: unknown kind 'Move'") == 0);
  j = base;
  j["signatures"][2]["pos"] = 40;
  CHECK(schema_message(j.dump()).find("signatures[2].pos: outside the window") == 0);
  j = base;
  j["signatures"][0]["owner"] = 7;
  CHECK(schema_message(j.dump()).find("signatures[0].owner: no such site") == 0);
  j = base;
  j["sites"][1]["trace"][0]["opId"] = "x";
  CHECK(schema_message(j.dump()).find("sites[1].trace[0].opId: expected an integer") == 0);
  j = base;
  j["sites"][2]["trace"] = nlohmann::json::array({9});
  CHECK(schema_message(j.dump()).find("sites[2].trace[0]: unknown operation") == 0);
  j = base;
  j["config"]["deps"] = nlohmann::json::array({"0-1"});
  CHECK(schema_message(j.dump()).find("config.deps[0]") == 0);
}

TEST_CASE("dependency lists") {
  const auto deps = parse_deps(" 0>1, 2 > 3 ");
  REQUIRE(deps.size() == 2);
  CHECK(deps[0].first == 0);
  CHECK(deps[0].second == 1);
  CHECK(format_dep(deps[1]) == "2>3");
  CHECK(parse_deps("").empty());
  CHECK_THROWS_AS(parse_deps("0>"), ConfigError);
  CHECK_THROWS_AS(parse_deps("a>1"), ConfigError);
  CHECK(parse_deps("0>1,,").size() == 1);
  // Self-loops parse but fail config validation.
  ExplorerConfig cfg;
  cfg.model = Model::SymbolicFixedDeps;
  cfg.nb_sites = 2;
  cfg.iter = {1, 1};
  cfg.deps = parse_deps("1>1");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("trace tables") {
  const RunReport report = ellis_report();
  const std::string table = render_trace_table(*report.counterexample);
  CHECK(table.find("Variables") != std::string::npos);
  CHECK(table.find("Operations") != std::string::npos);
  CHECK(table.find("List") != std::string::npos);
  CHECK(table.find("0 -1 -1 -1 -1 -1") != std::string::npos);
  CHECK(table.find("0 0 -1 -1 -1 -1") != std::string::npos);
  CHECK(table.find("Nop") != std::string::npos);

  const Scenario sul = load_scenario(kFixtures + "/suleiman_deps.json");
  const auto sul_run = replay(sul);
  const std::string sul_table = render_trace_table(sul.config, sul_run.ops, sul_run.sites);
  CHECK(sul_table.find("word") != std::string::npos);
  CHECK(sul_table.find("00001 ") != std::string::npos);
  CHECK(sul_table.find("000010") != std::string::npos);
}

TEST_CASE("scenarios violating a dependency are rejected") {
  auto j = nlohmann::json::parse(read_file(kFixtures + "/suleiman_deps.json"));
  j["sites"][2]["trace"] = nlohmann::json::array({3, 2, 1, 0});
  const Scenario sc = scenario_from_json(j.dump());
  CHECK_THROWS_WITH_AS(replay(sc), doctest::Contains("0>1"), ScenarioError);
}

TEST_CASE("property reports") {
  PropertyReport r;
  r.kind = TPKind::TP2;
  r.alg = AlgorithmId::Ellis;
  r.bounds.pmax = 4;
  r.violation = check_tp2(AlgorithmId::Ellis, r.bounds);
  r.space = tp2_space(r.bounds);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["verdict"] == "violated");
  CHECK(to_json(r) == to_json(r));
  r.alg = AlgorithmId::Imine;
  r.violation = check_tp2(AlgorithmId::Imine, r.bounds);
  CHECK(nlohmann::json::parse(to_json(r))["verdict"] == "holds");
}
