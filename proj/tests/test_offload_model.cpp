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
#include "aan/offload_model.hpp"
#include "instances.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace aan;
using aan::testing::for_each_decision;
using aan::testing::random_instance;

namespace {

// One TD at the origin, its UAV 1 m above and the HAP 1 m above that. The
// reference gains put both links at SNR 1, so R_ij = 1e6 and R_jH = 2e6.
Scenario unit_rate_scenario(int quota_uav = 1, int quota_hap = 1) {
    RadioParams radio;
    radio.ref_gain_td_uav = 2e-10;
    radio.ref_gain_uav_hap = 1e-11;
    radio.bandwidth_uav_hap = 2e6;
    return Scenario({{0, 0, 0}}, {{0, 0, 1}}, {0, 0, 2}, radio, {}, {}, quota_uav, quota_hap);
}

OffloadDecision single(int y, int z) {
    OffloadDecision d = OffloadDecision::zeros(1, 1);
    d.x(0, 0) = 1;
    d.y(0, 0) = y;
    d.z(0, 0) = z;
    return d;
}

Eigen::VectorXd mean3() { return Eigen::VectorXd::Constant(1, 3e6); }

} // namespace

TEST_CASE("expected latency examples") {
    const Scenario s = unit_rate_scenario();
    REQUIRE(s.rate_td_uav()(0, 0) == doctest::Approx(1e6).epsilon(1e-12));
    REQUIRE(s.rate_uav_hap()(0) == doctest::Approx(2e6).epsilon(1e-12));
    CHECK(expected_latency(OffloadDecision::zeros(1, 1), s, mean3()) == 0.0);
    CHECK(expected_latency(single(1, 0), s, mean3()) == doctest::Approx(3.27).epsilon(1e-12));
    CHECK(expected_latency(single(0, 1), s, mean3()) == doctest::Approx(4.566).epsilon(1e-12));
    CHECK_THROWS_AS(expected_latency(OffloadDecision::zeros(2, 1), s, mean3()), ShapeError);
    CHECK_THROWS_AS(expected_latency(single(1, 0), s, Eigen::VectorXd::Ones(2)), ShapeError);
}

TEST_CASE("expected energy examples") {
    EnergyParams e;
    e.uav_basic = 5.0;
    e.hap_basic = 7.0;
    RadioParams radio;
    radio.ref_gain_td_uav = 2e-10;
    radio.ref_gain_uav_hap = 1e-11;
    radio.bandwidth_uav_hap = 2e6;
    const Scenario s({{0, 0, 0}}, {{0, 0, 1}}, {0, 0, 2}, radio, {}, e, 1, 1);

    const auto none = expected_energy(OffloadDecision::zeros(1, 1), s, mean3());
    CHECK(none.uav(0) == 5.0);
    CHECK(none.hap == 7.0);
    CHECK(none.variable_total(s) == 0.0);

    const auto comp = expected_energy(single(1, 0), s, mean3());
    CHECK(comp.uav(0) - 5.0 == doctest::Approx(0.729).epsilon(1e-12));
    CHECK(comp.hap == 7.0);

    const auto relay = expected_energy(single(0, 1), s, mean3());
    CHECK(relay.uav(0) - 5.0 == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(relay.hap - 7.0 == doctest::Approx(825.0).epsilon(1e-12));
    CHECK(relay.variable_total(s) == doctest::Approx(840.0).epsilon(1e-12));
}

TEST_CASE("energy budget tightness") {
    const double budget = 1234.5;
    CHECK(within_budget(budget, budget));
    CHECK(within_budget(budget * (1.0 + 5e-10), budget));
    CHECK_FALSE(within_budget(budget * (1.0 + 1e-6), budget));

    // decision that saturates the UAV budget exactly
    EnergyParams e;
    e.uav_budget = 0.729;
    RadioParams radio;
    radio.ref_gain_td_uav = 2e-10;
    radio.ref_gain_uav_hap = 1e-11;
    radio.bandwidth_uav_hap = 2e6;
    const Scenario s({{0, 0, 0}}, {{0, 0, 1}}, {0, 0, 2}, radio, {}, e, 1, 1);
    CHECK(energy_feasible(expected_energy(single(1, 0), s, mean3()), s));
    CHECK(energy_feasible(expected_energy(single(1, 0), s, Eigen::VectorXd::Constant(1, 3e6 * (1 + 1e-10))), s));
    CHECK_FALSE(energy_feasible(expected_energy(single(1, 0), s, Eigen::VectorXd::Constant(1, 3e6 * (1 + 1e-6))), s));
}

TEST_CASE("structural checks") {
    const Scenario s = unit_rate_scenario();
    CHECK_FALSE(structural_violation(single(1, 0), s));
    CHECK(structural_violation(single(1, 1), s));
    CHECK(structural_violation(single(0, 0), s));
    CHECK(structural_violation(OffloadDecision::zeros(1, 1), s));
    const Scenario no_hap = unit_rate_scenario(1, 0);
    CHECK(structural_violation(single(0, 1), no_hap));
}

TEST_CASE("relaxed problem on a single device") {
    const Scenario s = unit_rate_scenario();
    const auto model = build_p2(s, mean3());
    CHECK(model.dims.num_vars == 3);
    const auto sol = lp::solve_lp(model.lp);
    REQUIRE(sol.status == lp::Status::Optimal);
    const auto d = model.layout.unpack(sol.primal);
    CHECK(d.x(0, 0) == doctest::Approx(1.0));
    // 9e-8 s/bit on the UAV beats 5e-7 + 2.2e-8 through the HAP
    CHECK(d.y(0, 0) == doctest::Approx(1.0));
    CHECK(sol.objective == doctest::Approx(3.27).epsilon(1e-9));

    const auto dual = lp::solve_lp(build_p3(s, mean3()));
    REQUIRE(dual.status == lp::Status::Optimal);
    CHECK(dual.objective == doctest::Approx(3.27).epsilon(1e-9));

    // slow UAV flips the choice to relaying
    ComputeParams slow;
    slow.uav_capability = 1e8;
    RadioParams radio;
    radio.ref_gain_td_uav = 2e-10;
    radio.ref_gain_uav_hap = 1e-11;
    radio.bandwidth_uav_hap = 2e6;
    const Scenario t({{0, 0, 0}}, {{0, 0, 1}}, {0, 0, 2}, radio, slow, {}, 1, 1);
    const auto m2 = build_p2(t, mean3());
    const auto s2 = lp::solve_lp(m2.lp);
    REQUIRE(s2.status == lp::Status::Optimal);
    CHECK(m2.layout.unpack(s2.primal).z(0, 0) == doctest::Approx(1.0));
    CHECK(s2.objective == doctest::Approx(4.566).epsilon(1e-9));
    CHECK(lp::solve_lp(build_p3(t, mean3())).objective == doctest::Approx(4.566).epsilon(1e-9));
}

TEST_CASE("zero UAV quota is infeasible") {
    const Scenario s = unit_rate_scenario(0, 1);
    CHECK(lp::solve_lp(build_p2(s, mean3()).lp).status == lp::Status::Infeasible);
}

TEST_CASE("variable count is 3IJ") {
    auto rng = make_rng(30, Stream::Test);
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 4; ++j) {
            const auto inst = random_instance(rng, i, j, i, i, false);
            CHECK(build_p2(inst.scenario, inst.means).dims.num_vars == static_cast<std::size_t>(3 * i * j));
        }
}

TEST_CASE("dimension report") {
    const Scenario s = generate_scenario(ScenarioConfig{}, 1);
    const auto rep = dimension_report(s);
    CHECK(rep.reference_vars == 90);
    CHECK(rep.reference_constraints == 196);
    CHECK(rep.actual.num_vars == 90);
    CHECK(rep.vars_match);
    // 10 + 3 + 1 + 30 + 3 + 1 rows, counted independently of the builder
    CHECK(rep.actual.num_constraints == 48);
    CHECK(rep.actual.num_constraints == build_p2(s, Eigen::VectorXd::Ones(10)).lp.num_constraints());
    CHECK_FALSE(rep.constraints_match);
    CHECK(rep.box_bounds == 180);
    CHECK_FALSE(rep.note.empty());
}

TEST_CASE("strong duality on random instances") {
    auto rng = make_rng(31, Stream::Test);
    int checked = 0;
    int attempts = 0;
    while (checked < 50) {
        REQUIRE(++attempts < 500);
        const int ni = 2 + static_cast<int>(uniform01(rng) * 5);
        const int nj = 1 + static_cast<int>(uniform01(rng) * 3);
        const int nu = 1 + static_cast<int>(uniform01(rng) * ni);
        const int nh = static_cast<int>(uniform01(rng) * (ni + 1));
        const auto inst = random_instance(rng, ni, nj, nu, nh);
        const auto primal = lp::solve_lp(build_p2(inst.scenario, inst.means).lp);
        if (primal.status != lp::Status::Optimal)
            continue;
        const auto p3 = build_p3(inst.scenario, inst.means);
        const auto dual = lp::solve_lp(p3);
        REQUIRE(dual.status == lp::Status::Optimal);
        CHECK(std::abs(primal.objective - dual.objective) <= 1e-6 * std::max(1.0, std::abs(primal.objective)));
        // sign pattern: only the assignment multipliers are free
        for (std::size_t v = static_cast<std::size_t>(ni); v < p3.num_vars(); ++v) {
            CHECK(p3.lower[v] == 0.0);
            CHECK(dual.primal[v] >= -1e-9);
        }
        for (int i = 0; i < ni; ++i)
            CHECK(std::isinf(p3.lower[i]));
        ++checked;
    }
}

TEST_CASE("relaxation bounds every feasible integral decision") {
    auto rng = make_rng(32, Stream::Test);
    int instances = 0;
    for (int t = 0; t < 40; ++t) {
        const int ni = 1 + t % 4;
        const int nu = 1 + static_cast<int>(uniform01(rng) * ni);
        const int nh = static_cast<int>(uniform01(rng) * (ni + 1));
        const auto inst = random_instance(rng, ni, 2, nu, nh);
        const auto root = lp::solve_lp(build_p2(inst.scenario, inst.means).lp);
        int feasible = 0;
        for_each_decision(ni, 2, [&](const OffloadDecision& d) {
            if (structural_violation(d, inst.scenario))
                return;
            if (!energy_feasible(expected_energy(d, inst.scenario, inst.means), inst.scenario))
                return;
            ++feasible;
            REQUIRE(root.status == lp::Status::Optimal);
            const double value = expected_latency(d, inst.scenario, inst.means);
            CHECK(root.objective <= value + 1e-9 * std::max(1.0, value));
        });
        if (feasible > 0)
            ++instances;
    }
    CHECK(instances >= 20);
}

TEST_CASE("worst-case distributions dominate the ambiguity set") {
    const auto space = SampleSpace::from_mbit(std::array<double, 5>{3, 9, 15, 21, 27});
    auto rng = make_rng(33, Stream::Test);
    const Scenario s = generate_scenario(ScenarioConfig{}, 4);
    const int ni = s.num_tds();

    std::vector<AmbiguitySet> sets;
    for (int i = 0; i < ni; ++i) {
        std::vector<double> p(5);
        double sum = 0.0;
        for (auto& v : p)
            sum += (v = 0.05 + uniform01(rng));
        for (auto& v : p)
            v /= sum;
        p[4] = 1.0 - p[0] - p[1] - p[2] - p[3];
        sets.emplace_back(space, Distribution(p), 0.1 + 0.5 * uniform01(rng));
    }
    const auto worst = worst_case_distributions(sets);
    const Eigen::VectorXd worst_means = task_means(space, worst);

    std::vector<Distribution> unchanged;
    for (const auto& set : sets)
        unchanged.push_back(set.reference);
    const auto zero_radius = [&] {
        std::vector<AmbiguitySet> z;
        for (const auto& set : sets)
            z.emplace_back(set.space, set.reference, 0.0);
        return worst_case_distributions(z);
    }();
    for (int i = 0; i < ni; ++i)
        CHECK(zero_radius[i].probs() == unchanged[i].probs());

    for (int t = 0; t < 20; ++t) {
        OffloadDecision d = OffloadDecision::zeros(ni, s.num_uavs());
        for (int i = 0; i < ni; ++i) {
            const int j = static_cast<int>(uniform01(rng) * s.num_uavs());
            d.x(i, j) = 1;
            (uniform01(rng) < 0.5 ? d.y : d.z)(i, j) = 1;
        }
        const double top = expected_latency(d, s, worst_means);
        for (int r = 0; r < 100; ++r) {
            // random point of each ball: pull a random simplex point toward the center
            std::vector<Distribution> inside;
            for (const auto& set : sets) {
                std::vector<double> q(5);
                double sum = 0.0;
                for (auto& v : q)
                    sum += (v = -std::log(1.0 - uniform01(rng)));
                for (auto& v : q)
                    v /= sum;
                double dist = 0.0;
                for (std::size_t k = 0; k < 5; ++k)
                    dist += std::abs(q[k] - set.reference[k]);
                const double lam = dist > set.radius ? set.radius / dist : 1.0;
                std::vector<double> p(5);
                for (std::size_t k = 0; k < 5; ++k)
                    p[k] = set.reference[k] + lam * (q[k] - set.reference[k]);
                p[4] = std::max(0.0, 1.0 - p[0] - p[1] - p[2] - p[3]);
                inside.emplace_back(p);
                CHECK(l1_distance(inside.back(), set.reference) <= set.radius + 1e-9);
            }
            CHECK(expected_latency(d, s, task_means(space, inside)) <= top * (1 + 1e-12));
        }
    }
}

TEST_CASE("latency is linear in each task mean") {
    const Scenario s = generate_scenario(ScenarioConfig{}, 5);
    OffloadDecision d = OffloadDecision::zeros(s.num_tds(), s.num_uavs());
    for (int i = 0; i < s.num_tds(); ++i) {
        d.x(i, i % 3) = 1;
        (i % 2 ? d.y : d.z)(i, i % 3) = 1;
    }
    Eigen::VectorXd m = Eigen::VectorXd::Constant(s.num_tds(), 9e6);
    const double base = expected_latency(d, s, m);
    Eigen::VectorXd only = Eigen::VectorXd::Zero(s.num_tds());
    only(3) = 9e6;
    const double contribution = expected_latency(d, s, only);
    m(3) *= 2.0;
    CHECK(expected_latency(d, s, m) == doctest::Approx(base + contribution).epsilon(1e-14));
    only(3) *= 2.0;
    CHECK(expected_latency(d, s, only) == 2.0 * contribution);
}

TEST_CASE("decision serialization") {
    const auto j = decision_to_json(single(0, 1));
    CHECK(j.dump() == R"({"x":[[1]],"y":[[0]],"z":[[1]]})");
}
