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

#include "aan/errors.hpp"
#include "aan/random.hpp"
#include "aan/scenario.hpp"

#include <doctest.h>

#include <cmath>

using namespace aan;

namespace {

// Reference Shannon rate written with log2 directly.
double shannon(double b, double p, double g, double n) { return b * std::log2(1.0 + p * g / n); }

} // namespace

TEST_CASE("distances") {
    CHECK(distance({0, 0, 0}, {0, 0, 2000}) == 2000.0);
    CHECK(distance({3000, 4000, 0}, {0, 0, 0}) == 5000.0);
    CHECK(distance({1000, 2000, 0}, {4000, 6000, 2000}) == doctest::Approx(5385.16).epsilon(1e-6));
}

TEST_CASE("channel gain") {
    CHECK(channel_gain(1e-6, 1.0) == 1e-6);
    CHECK(channel_gain(1e-6, 2000.0) == doctest::Approx(2.5e-13).epsilon(1e-12));
    CHECK(channel_gain(1e-6, 18000.0) == doctest::Approx(3.086e-15).epsilon(1e-3));
    CHECK_THROWS_AS(channel_gain(1e-6, 0.0), DomainError);
    CHECK_THROWS_AS(channel_gain(1e-6, -1.0), DomainError);
}

TEST_CASE("link rate") {
    const double r1 = link_rate(1e6, 0.5, 2.5e-13, 1e-10);
    CHECK(r1 == doctest::Approx(1.802e3).epsilon(1e-3));
    CHECK(r1 == doctest::Approx(shannon(1e6, 0.5, 2.5e-13, 1e-10)).epsilon(1e-12));
    const double r2 = link_rate(2e7, 10.0, 3.086e-15, 1e-10);
    CHECK(r2 == doctest::Approx(8.90e3).epsilon(1e-3));
    CHECK(link_rate(1e6, 0.5, 0.0, 1e-10) == 0.0);
    CHECK(link_rate(1e6, 0.5, 1e-300, 1e-10) >= 0.0);
    CHECK_THROWS_AS(link_rate(0.0, 0.5, 1e-13, 1e-10), DomainError);
    CHECK_THROWS_AS(link_rate(1e6, 0.5, 1e-13, 0.0), DomainError);
}

TEST_CASE("per-bit coefficients of a hand-built scenario") {
    const Scenario s({{0, 0, 0}}, {{0, 0, 2000}}, {0, 0, 20000}, {}, {}, {}, 4, 4);
    const auto c = per_bit_coefficients(s);
    CHECK(c.uav_compute_delay(0) == doctest::Approx(9e-8).epsilon(1e-12));
    CHECK(3e6 * c.uav_compute_delay(0) == doctest::Approx(0.27).epsilon(1e-12));
    CHECK(1100.0 / 5e10 == doctest::Approx(2.2e-8));
    CHECK(c.uav_compute_energy(0) == doctest::Approx(2.43e-7).epsilon(1e-12));
    CHECK(3e6 * c.uav_compute_energy(0) == doctest::Approx(0.729).epsilon(1e-12));
    CHECK(c.hap_compute_energy == doctest::Approx(2.75e-4).epsilon(1e-12));

    const double r_access = shannon(1e6, 0.5, 1e-6 / (2000.0 * 2000.0), 1e-10);
    const double r_relay = shannon(2e7, 10.0, 1e-6 / (18000.0 * 18000.0), 1e-10);
    CHECK(c.access_delay(0, 0) == doctest::Approx(1.0 / r_access).epsilon(1e-12));
    CHECK(c.relay_path_delay(0) == doctest::Approx(1.0 / r_relay + 2.2e-8).epsilon(1e-12));
    CHECK(c.relay_energy(0) == doctest::Approx(10.0 / r_relay).epsilon(1e-12));
}

TEST_CASE("generated scenarios") {
    const ScenarioConfig cfg;
    const Scenario a = generate_scenario(cfg, 1);
    const Scenario b = generate_scenario(cfg, 1);
    const Scenario c = generate_scenario(cfg, 2);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    CHECK(a.num_tds() == 10);
    CHECK(a.num_uavs() == 3);
    for (const auto& p : a.tds()) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= cfg.area_m);
        CHECK(p.z == cfg.td_altitude_m);
    }
    for (const auto& p : a.uavs())
        CHECK(p.z == cfg.uav_altitude_m);
    CHECK(a.hap() == cfg.hap);

    const auto coeffs = per_bit_coefficients(a);
    CHECK((coeffs.access_delay.array() > 0).all());
    CHECK((coeffs.uav_compute_delay.array() > 0).all());
    CHECK((coeffs.relay_path_delay.array() > 0).all());
    CHECK((coeffs.relay_energy.array() > 0).all());
    CHECK((coeffs.uav_compute_energy.array() > 0).all());
    CHECK(coeffs.hap_compute_energy > 0);

    ScenarioConfig empty;
    empty.num_tds = 0;
    CHECK_THROWS_AS(generate_scenario(empty, 1), ConfigError);
    ScenarioConfig bad;
    bad.radio.bandwidth_td_uav = -1.0;
    try {
        generate_scenario(bad, 1);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "radio.bandwidth_td_uav");
    }
    ScenarioConfig budget;
    budget.energy.uav_basic = 2e5;
    CHECK_THROWS_AS(generate_scenario(budget, 1), ConfigError);
}

TEST_CASE("geometric properties") {
    auto rng = make_rng(5, Stream::Test);
    for (int t = 0; t < 200; ++t) {
        const Position3D a{1e4 * uniform01(rng), 1e4 * uniform01(rng), 3e3 * uniform01(rng)};
        const Position3D b{1e4 * uniform01(rng), 1e4 * uniform01(rng), 3e3 * uniform01(rng)};
        CHECK(distance(a, b) == distance(b, a));
        const double d = 1.0 + 1e4 * uniform01(rng);
        CHECK(channel_gain(1e-6, 2.0 * d) == channel_gain(1e-6, d) / 4.0);

        const double g = 1e-15 + 1e-12 * uniform01(rng);
        const double base = link_rate(1e6, 0.5, g, 1e-10);
        CHECK(link_rate(1e6, 0.5, 1.01 * g, 1e-10) > base);
        CHECK(link_rate(1e6, 0.6, g, 1e-10) > base);
        CHECK(link_rate(1.1e6, 0.5, g, 1e-10) > base);
    }
}

TEST_CASE("snapshot round trip") {
    const Scenario a = generate_scenario(ScenarioConfig{}, 3);
    const auto j = scenario_to_json(a);
    CHECK(scenario_from_json(j) == a);
    CHECK(scenario_from_json(nlohmann::json::parse(j.dump())) == a);

    auto tampered = j;
    tampered["rate_td_uav"][0][0] = tampered["rate_td_uav"][0][0].get<double>() * 1.01;
    CHECK_THROWS_AS(scenario_from_json(tampered), DataError);
}
