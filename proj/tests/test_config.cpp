// Copyright 2026 The aan_dro Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aan/config.hpp"
#include "aan/errors.hpp"

#include <doctest.h>

using namespace aan;
using nlohmann::json;

TEST_CASE("decibel conversion") {
    CHECK(db_to_linear(-60.0) == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(db_to_linear(-100.0) == doctest::Approx(1e-10).epsilon(1e-12));
    CHECK(linear_to_db(db_to_linear(-37.5)) == doctest::Approx(-37.5).epsilon(1e-12));
}

TEST_CASE("empty document gives the reference defaults") {
    const auto rc = parse_run_config(json::object());
    const auto& s = rc.experiment.scenario;
    CHECK(s.num_tds == 10);
    CHECK(s.num_uavs == 3);
    CHECK(s.radio.noise_power == doctest::Approx(1e-10).epsilon(1e-12));
    CHECK(s.radio.ref_gain_td_uav == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(s.quota_uav == 4);
    CHECK(rc.experiment.history_size == 200);
    CHECK(rc.experiment.radius == 0.3);
    CHECK(rc.experiment.seeds.size() == 20);
    CHECK(rc.experiment.seeds.front() == 1);
    CHECK_FALSE(rc.sweep);
}

TEST_CASE("keys are read and unknown ones rejected") {
    const auto rc = parse_run_config(json::parse(R"({
        "scenario": {"num_tds": 6, "noise_power_db": -110},
        "ambiguity": {"epsilon": 0.1, "truth": [0.5, 0.5, 0, 0, 0]},
        "experiment": {"first_seed": 5, "num_seeds": 3, "methods": ["dro", "ro"]},
        "output": {"dir": "elsewhere"}})"));
    CHECK(rc.experiment.scenario.num_tds == 6);
    CHECK(rc.experiment.scenario.radio.noise_power == doctest::Approx(1e-11).epsilon(1e-12));
    CHECK(rc.experiment.radius == 0.1);
    CHECK(rc.experiment.seeds == std::vector<std::uint64_t>{5, 6, 7});
    CHECK(rc.experiment.methods == std::vector<Method>{Method::Mdrloa, Method::Robust});
    CHECK(rc.output_dir == "elsewhere");

    try {
        parse_run_config(json::parse(R"({"scenario": {"num_tdz": 6}})"));
        FAIL("unknown key accepted");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "scenario.num_tdz");
    }
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"extra": {}})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"ambiguity": {"truth": "skewed"}})")), ConfigError);
}

TEST_CASE("invalid values name the file key") {
    try {
        parse_run_config(json::parse(R"({"scenario": {"bandwidth_td_uav_hz": -1}})"));
        FAIL("negative bandwidth accepted");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "scenario.bandwidth_td_uav_hz");
    }
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"scenario": {"num_tds": "ten"}})")), ConfigError);
}

TEST_CASE("canonical form round trips") {
    auto rc = parse_run_config(json::parse(R"({"scenario": {"num_uavs": 2}, "experiment": {"sweep": {"param": "eps", "values": [0.1, 0.2]}}})"));
    const json a = run_config_to_json(rc);
    const json b = run_config_to_json(parse_run_config(a));
    CHECK(a == b);
    REQUIRE(rc.sweep);
    CHECK(rc.sweep->param == "eps");
}

TEST_CASE("overrides re-validate") {
    auto rc = parse_run_config(json::object());
    apply_override(rc, "scenario.num_tds", "6");
    CHECK(rc.experiment.scenario.num_tds == 6);
    apply_override(rc, "ambiguity.truth", "uniform");
    CHECK(rc.experiment.truth.empty());
    CHECK_THROWS_AS(apply_override(rc, "scenario.nope", "1"), ConfigError);
    CHECK_THROWS_AS(apply_override(rc, "scenario.num_tds", "0"), ConfigError);
}

TEST_CASE("config hash ignores the output directory") {
    auto a = parse_run_config(json::object());
    auto b = a;
    b.output_dir = "other";
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    apply_override(b, "scenario.num_tds", "6");
    CHECK(config_hash(a) != config_hash(b));
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("method names") {
    for (Method m : {Method::Mdrloa, Method::Deterministic, Method::Robust, Method::Exhaustive})
        CHECK(parse_method(method_cli_name(m)) == m);
    CHECK_THROWS_AS(parse_method("milp"), ConfigError);
}

TEST_CASE("deterministic and robust solutions coincide at zero radius on a point mass") {
    auto rc = parse_run_config(json::parse(R"({
        "scenario": {"num_tds": 6},
        "ambiguity": {"epsilon": 0, "truth": [0, 0, 1, 0, 0]}})"));
    const auto& x = rc.experiment;
    const Scenario s = generate_scenario(x.scenario, 3);
    const auto sets = build_ambiguity_sets(x, s.num_tds(), 3);
    const auto dro = solve_method(Method::Mdrloa, s, sets);
    const auto det = solve_method(Method::Deterministic, s, sets);
    CHECK(dro.decision == det.decision);
    CHECK(dro.worst_case_expected_latency == doctest::Approx(det.worst_case_expected_latency).epsilon(1e-12));
    CHECK((dro.task_sizes.array() == 15e6).all());
}
