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

// Offloading decisions and the linear programs built from them.
//
// Every cost in the model is linear in the expected task size of each device
// with a non-negative coefficient, so the builders take the vector of
// per-device expected sizes (bits) rather than whole distributions.
// `task_means` turns distributions into that vector.

#pragma once

#include "aan/ambiguity.hpp"
#include "aan/lp.hpp"
#include "aan/scenario.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace aan {

/// Binary access (x), UAV-compute (y) and relay-to-HAP (z) matrices, I x J.
struct OffloadDecision {
    Eigen::MatrixXi x;
    Eigen::MatrixXi y;
    Eigen::MatrixXi z;

    static OffloadDecision zeros(int num_tds, int num_uavs);
    bool operator==(const OffloadDecision& other) const {
        return x == other.x && y == other.y && z == other.z;
    }
};

/// Continuous counterpart of OffloadDecision, entries in [0, 1].
struct RelaxedDecision {
    Eigen::MatrixXd x;
    Eigen::MatrixXd y;
    Eigen::MatrixXd z;

    static RelaxedDecision from(const OffloadDecision& d);
};

struct ModelDimensions {
    std::size_t num_vars = 0;
    std::size_t num_constraints = 0;
};

/// Variable indexing of the relaxed problem: blocks x, y, z, each row-major I x J.
struct P2Layout {
    int num_tds = 0;
    int num_uavs = 0;

    std::size_t x(int i, int j) const { return static_cast<std::size_t>(i * num_uavs + j); }
    std::size_t y(int i, int j) const { return block() + x(i, j); }
    std::size_t z(int i, int j) const { return 2 * block() + x(i, j); }
    std::size_t block() const { return static_cast<std::size_t>(num_tds * num_uavs); }

    RelaxedDecision unpack(const std::vector<double>& primal) const;
};

struct P2Model {
    lp::LinearProgram lp;
    P2Layout layout;
    ModelDimensions dims;
};

/// Per-device expected task sizes E[phi_i] in bits.
Eigen::VectorXd task_means(const SampleSpace& space, const std::vector<Distribution>& dists);

/// Sum_i E[phi_i] * (per-bit delay of TD i's route). Works on relaxed values.
double expected_latency(const RelaxedDecision& decision, const Scenario& scenario,
                        const Eigen::VectorXd& means);
double expected_latency(const OffloadDecision& decision, const Scenario& scenario,
                        const Eigen::VectorXd& means);

struct EnergyUse {
    Eigen::VectorXd uav; ///< J per UAV, including the basic cost
    double hap = 0.0;    ///< J, including the basic cost

    /// Transmission plus computation only.
    double variable_total(const Scenario& scenario) const;
};

EnergyUse expected_energy(const RelaxedDecision& decision, const Scenario& scenario,
                          const Eigen::VectorXd& means);
EnergyUse expected_energy(const OffloadDecision& decision, const Scenario& scenario,
                          const Eigen::VectorXd& means);

/// E <= E_max within 1e-9 relative counts as feasible.
bool within_budget(double energy, double budget);
bool energy_feasible(const EnergyUse& use, const Scenario& scenario);

/// Structural constraints: binaries, single access, quotas, flow conservation.
/// Returns a description of the first violation, or nullopt.
std::optional<std::string> structural_violation(const OffloadDecision& decision,
                                                const Scenario& scenario);

/// Relaxed problem: minimize expected latency over the polytope of access,
/// quota, flow and expected-energy constraints with every variable in [0, 1].
///
/// Row order: assignment (I), UAV quota (J), HAP quota (1), flow (I*J),
/// UAV energy (J), HAP energy (1).
P2Model build_p2(const Scenario& scenario, const Eigen::VectorXd& means);

/// Dual of the relaxed problem, as a maximization over the multipliers of
/// each constraint family. Variable blocks, in order: assignment (I, free),
/// UAV quota (J), HAP quota (1), flow (I*J), UAV energy (J), HAP energy (1);
/// all except the first are non-negative.
lp::LinearProgram build_p3(const Scenario& scenario, const Eigen::VectorXd& means);

/// Worst-case distribution of every device's ambiguity set.
std::vector<Distribution> worst_case_distributions(const std::vector<AmbiguitySet>& sets);

struct DimensionReport {
    ModelDimensions actual;
    std::size_t box_bounds = 0;       ///< two per variable
    std::size_t reference_vars = 0;   ///< 3IJ
    std::size_t reference_constraints = 0; ///< 6IJ + 2J + I
    bool vars_match = false;
    bool constraints_match = false;
    std::string note;
};

DimensionReport dimension_report(const Scenario& scenario);

nlohmann::json decision_to_json(const OffloadDecision& decision);

} // namespace aan
