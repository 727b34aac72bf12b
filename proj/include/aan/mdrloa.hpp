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

// Distributionally robust offloading: worst-case task sizes, LP relaxation and
// dive-and-fix integerization, plus the deterministic and robust baselines and
// an exhaustive optimality oracle for small instances.

#pragma once

#include "aan/ambiguity.hpp"
#include "aan/offload_model.hpp"
#include "aan/scenario.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace aan {

enum class Method { Mdrloa, Deterministic, Robust, Exhaustive };

/// "MDRLOA", "DO", "RO", "EXHAUSTIVE".
const char* method_tag(Method method);

struct SolveResult {
    OffloadDecision decision;
    Method method = Method::Mdrloa;
    /// Expected latency of `decision` under the task sizes it was solved for.
    double worst_case_expected_latency = 0.0;
    /// Optimum of the root relaxation.
    double relaxation_bound = 0.0;
    std::size_t lp_solve_count = 0;
    /// Task sizes (bits) the decision was optimized for.
    Eigen::VectorXd task_sizes;
    /// Relaxed objective after the root and after each fixing step.
    std::vector<double> dive_objectives;
    /// Fractional entries of x at the root and of y when the y phase starts.
    std::size_t fractional_x_at_root = 0;
    std::size_t fractional_y_after_x = 0;
};

struct BranchIndex {
    int i = 0;
    int j = 0;
    bool operator==(const BranchIndex&) const = default;
};

inline constexpr double kIntegralityTol = 1e-6;

/// Entry maximizing min(v, 1 - v) among the non-integral ones (ties go to the
/// lexicographically smallest index), or nullopt when all are integral.
std::optional<BranchIndex> select_branch(const Eigen::MatrixXd& values, double tol = kIntegralityTol);
inline std::optional<BranchIndex> select_branch_x(const Eigen::MatrixXd& x) { return select_branch(x); }
inline std::optional<BranchIndex> select_branch_y(const Eigen::MatrixXd& y) { return select_branch(y); }

/// Relaxation followed by the two-phase dive (x first, then y) for fixed
/// per-device task sizes. Throws InfeasibleError when the root relaxation is
/// infeasible and BacktrackError when both children of a branch are.
SolveResult dive_and_fix(const Scenario& scenario, const Eigen::VectorXd& task_sizes, Method tag);

/// Worst-case distributions of the ambiguity sets, then dive_and_fix.
SolveResult mdrloa_solve(const Scenario& scenario, const std::vector<AmbiguitySet>& sets);

/// Every task size replaced by `estimate` bits (mean atom for DO, largest atom for RO).
SolveResult baseline_deterministic(const Scenario& scenario, double estimate, Method tag);

/// Largest instance exhaustive_solve accepts.
inline constexpr int kExhaustiveMaxTds = 6;
inline constexpr int kExhaustiveMaxUavs = 3;

/// Enumerates every integral decision and returns the cheapest feasible one.
SolveResult exhaustive_solve(const Scenario& scenario, const Eigen::VectorXd& task_sizes);

nlohmann::json solve_result_to_json(const SolveResult& result);

} // namespace aan
