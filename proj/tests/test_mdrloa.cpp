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
#include "aan/mdrloa.hpp"
#include "instances.hpp"

#include <doctest.h>

#include <array>
#include <limits>

using namespace aan;
using aan::testing::for_each_decision;
using aan::testing::random_instance;

namespace {

Eigen::MatrixXd row(std::initializer_list<double> v) {
    Eigen::MatrixXd m(1, static_cast<Eigen::Index>(v.size()));
    Eigen::Index k = 0;
    for (double x : v)
        m(0, k++) = x;
    return m;
}

Scenario stacked(int num_tds, int num_uavs, int quota_uav, int quota_hap, ComputeParams compute = {}) {
    std::vector<Position3D> tds, uavs;
    for (int i = 0; i < num_tds; ++i)
        tds.push_back({1000.0 * i, 500.0, 0.0});
    for (int j = 0; j < num_uavs; ++j)
        uavs.push_back({3000.0 * j, 800.0, 2000.0});
    return Scenario(tds, uavs, {5000, 5000, 20000}, {}, compute, {}, quota_uav, quota_hap);
}

// Minimum expected latency over every feasible decision, computed without the solver.
double brute_force_optimum(const Scenario& s, const Eigen::VectorXd& means) {
    double best = std::numeric_limits<double>::infinity();
    for_each_decision(s.num_tds(), s.num_uavs(), [&](const OffloadDecision& d) {
        if (structural_violation(d, s) || !energy_feasible(expected_energy(d, s, means), s))
            return;
        best = std::min(best, expected_latency(d, s, means));
    });
    return best;
}

} // namespace

TEST_CASE("branch selection") {
    const auto pick = select_branch_x(row({0.9, 0.1, 0.5}));
    REQUIRE(pick);
    CHECK(*pick == BranchIndex{0, 2});
    CHECK_FALSE(select_branch_x(row({0.0, 1.0, 1.0})));
    CHECK_FALSE(select_branch_x(row({1e-7, 1.0 - 1e-7})));
    CHECK(*select_branch_y(row({0.4, 0.6})) == BranchIndex{0, 0});
    Eigen::MatrixXd m(2, 2);
    m << 1.0, 0.3, 0.7, 0.3;
    CHECK(*select_branch(m) == BranchIndex{0, 1});
}

TEST_CASE("two devices on one UAV") {
    const Scenario s = stacked(2, 1, 2, 2);
    const Eigen::VectorXd sizes = Eigen::VectorXd::Constant(2, 15e6);
    const auto r = dive_and_fix(s, sizes, Method::Mdrloa);
    CHECK(r.decision.x.sum() == 2);
    // 9e-8 s/bit on the UAV is far below the relay path, so both compute locally
    const auto c = per_bit_coefficients(s);
    REQUIRE(c.uav_compute_delay(0) < c.relay_path_delay(0));
    CHECK(r.decision.y.sum() == 2);
    CHECK(r.decision.z.sum() == 0);

    // a slow UAV makes relaying the cheaper route
    ComputeParams slow;
    slow.uav_capability = 1e3;
    const Scenario t = stacked(2, 1, 2, 2, slow);
    REQUIRE(per_bit_coefficients(t).uav_compute_delay(0) > per_bit_coefficients(t).relay_path_delay(0));
    const auto r2 = dive_and_fix(t, sizes, Method::Mdrloa);
    CHECK(r2.decision.z.sum() == 2);
}

TEST_CASE("quota pigeonhole is reported as infeasible") {
    const Scenario s = stacked(3, 1, 2, 2);
    try {
        dive_and_fix(s, Eigen::VectorXd::Constant(3, 3e6), Method::Mdrloa);
        FAIL("expected InfeasibleError");
    } catch (const BacktrackError&) {
        FAIL("root infeasibility must not be reported as a backtrack");
    } catch (const InfeasibleError& e) {
        CHECK(std::string(e.what()).find("infeasible") != std::string::npos);
    }
}

TEST_CASE("four devices on two UAVs with quota two") {
    auto rng = make_rng(40, Stream::Test);
    for (int t = 0; t < 10; ++t) {
        const auto inst = random_instance(rng, 4, 2, 2, 4, false);
        const auto r = dive_and_fix(inst.scenario, inst.means, Method::Mdrloa);
        CHECK(r.decision.x.col(0).sum() == 2);
        CHECK(r.decision.x.col(1).sum() == 2);
        const auto ex = exhaustive_solve(inst.scenario, inst.means);
        CHECK(r.worst_case_expected_latency <= 1.10 * ex.worst_case_expected_latency);
    }
}

TEST_CASE("baseline estimates") {
    const auto space = SampleSpace::from_mbit(std::array<double, 5>{3, 9, 15, 21, 27});
    CHECK(space.mean_atom() == doctest::Approx(15e6).epsilon(1e-15));
    CHECK(space.max_atom() == 27e6);
    const Scenario s = generate_scenario(ScenarioConfig{}, 1);
    const auto d = baseline_deterministic(s, space.mean_atom(), Method::Deterministic);
    CHECK(d.method == Method::Deterministic);
    CHECK((d.task_sizes.array() == 15e6).all());
    const auto r = baseline_deterministic(s, space.max_atom(), Method::Robust);
    CHECK((r.task_sizes.array() == 27e6).all());
    CHECK_THROWS_AS(baseline_deterministic(s, 0.0, Method::Robust), DomainError);
    CHECK(std::string(method_tag(Method::Robust)) == "RO");
    CHECK(std::string(method_tag(Method::Mdrloa)) == "MDRLOA");
}

TEST_CASE("robust decision respects worst-case energy") {
    const auto space = SampleSpace::from_mbit(std::array<double, 5>{3, 9, 15, 21, 27});
    auto rng = make_rng(41, Stream::Test);
    int compared = 0;
    for (int t = 0; t < 40; ++t) {
        auto inst = random_instance(rng, 3, 2, 2, 2, true, 27e6);
        std::vector<AmbiguitySet> sets;
        for (int i = 0; i < 3; ++i)
            sets.emplace_back(space, Distribution::uniform(5), 0.3);
        SolveResult dro, ro;
        try {
            dro = mdrloa_solve(inst.scenario, sets);
            ro = baseline_deterministic(inst.scenario, space.max_atom(), Method::Robust);
        } catch (const InfeasibleError&) {
            continue;
        }
        ++compared;
        CHECK(energy_feasible(expected_energy(ro.decision, inst.scenario, dro.task_sizes), inst.scenario));
    }
    CHECK(compared >= 5);
}

TEST_CASE("exhaustive oracle") {
    const Scenario one = stacked(1, 1, 1, 1);
    const Eigen::VectorXd m1 = Eigen::VectorXd::Constant(1, 3e6);
    const auto e1 = exhaustive_solve(one, m1);
    CHECK(e1.decision.y(0, 0) == 1);
    CHECK(e1.worst_case_expected_latency == doctest::Approx(brute_force_optimum(one, m1)).epsilon(1e-15));

    const Scenario two = stacked(2, 2, 1, 2);
    int surviving = 0;
    for_each_decision(2, 2, [&](const OffloadDecision& d) {
        if (!structural_violation(d, two))
            ++surviving;
    });
    CHECK(surviving == 8); // two perfect matchings, four y/z splits each
    const Eigen::VectorXd m2 = Eigen::VectorXd::Constant(2, 9e6);
    const auto e2 = exhaustive_solve(two, m2);
    CHECK(e2.decision.x.col(0).sum() == 1);
    CHECK(e2.decision.x.col(1).sum() == 1);
    CHECK(e2.worst_case_expected_latency == doctest::Approx(brute_force_optimum(two, m2)).epsilon(1e-15));

    CHECK_THROWS_AS(exhaustive_solve(stacked(7, 2, 7, 7), Eigen::VectorXd::Ones(7)), SizeError);
    CHECK_THROWS_AS(exhaustive_solve(stacked(2, 4, 2, 2), Eigen::VectorXd::Ones(2)), SizeError);
    CHECK_THROWS_AS(exhaustive_solve(stacked(3, 1, 2, 2), Eigen::VectorXd::Ones(3)), InfeasibleError);
}

TEST_CASE("dive invariants on random oracle-sized instances") {
    auto rng = make_rng(42, Stream::Test);
    int solved = 0;
    int backtracks = 0;
    for (int t = 0; t < 120; ++t) {
        const int ni = 2 + t % 3;
        const int nj = 2 + (t / 3) % 2;
        const int nu = 1 + static_cast<int>(uniform01(rng) * ni);
        const int nh = static_cast<int>(uniform01(rng) * (ni + 1));
        const auto inst = random_instance(rng, ni, nj, nu, nh);
        const double oracle = brute_force_optimum(inst.scenario, inst.means);
        SolveResult r;
        try {
            r = dive_and_fix(inst.scenario, inst.means, Method::Mdrloa);
        } catch (const BacktrackError&) {
            ++backtracks;
            continue;
        } catch (const InfeasibleError&) {
            CHECK(std::isinf(oracle));
            continue;
        }
        ++solved;
        CHECK_FALSE(structural_violation(r.decision, inst.scenario));
        CHECK(energy_feasible(expected_energy(r.decision, inst.scenario, inst.means), inst.scenario));
        for (std::size_t k = 1; k < r.dive_objectives.size(); ++k)
            CHECK(r.dive_objectives[k] >= r.dive_objectives[k - 1] - 1e-9 * std::max(1.0, r.dive_objectives[k]));
        CHECK(r.lp_solve_count <= 2 * r.fractional_x_at_root + 2 * r.fractional_y_after_x + 2);
        CHECK(r.relaxation_bound <= oracle + 1e-9 * oracle);
        CHECK(oracle <= r.worst_case_expected_latency + 1e-9 * oracle);
        CHECK(r.worst_case_expected_latency >= r.relaxation_bound - 1e-6);

        const auto ex = exhaustive_solve(inst.scenario, inst.means);
        CHECK(ex.worst_case_expected_latency == doctest::Approx(oracle).epsilon(1e-12));

        const auto again = dive_and_fix(inst.scenario, inst.means, Method::Mdrloa);
        CHECK(again.decision == r.decision);
        CHECK(again.dive_objectives == r.dive_objectives);
    }
    MESSAGE("solved " << solved << ", backtracked " << backtracks);
    CHECK(solved >= 50);
}

TEST_CASE("solve result serialization") {
    const Scenario s = stacked(2, 1, 2, 2);
    const auto r = dive_and_fix(s, Eigen::VectorXd::Constant(2, 3e6), Method::Deterministic);
    const auto j = solve_result_to_json(r);
    CHECK(j.at("method") == "DO");
    CHECK(j.at("lp_solve_count") == r.lp_solve_count);
    CHECK(j.at("decision").at("x").size() == 2);
}
