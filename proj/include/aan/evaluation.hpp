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

// Realized costs of decisions and the seeded comparison / sweep harness.

#pragma once

#include "aan/ambiguity.hpp"
#include "aan/mdrloa.hpp"
#include "aan/offload_model.hpp"
#include "aan/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace aan {

/// One draw of every device's task size.
struct Realization {
    Eigen::VectorXd task_sizes; ///< bits, each an atom of the sample space
    std::uint64_t seed = 0;
    std::string truth_id;
};

/// I independent draws from `truth` on the realization stream of `seed`.
Realization draw_realization(const Distribution& truth, const SampleSpace& space, int num_tds,
                             std::uint64_t seed, std::string truth_id = "uniform");

double realized_latency(const OffloadDecision& decision, const Scenario& scenario,
                        const Realization& realization);
EnergyUse realized_energy(const OffloadDecision& decision, const Scenario& scenario,
                          const Realization& realization);

/// Everything one comparison run needs besides the seeds.
struct ExperimentConfig {
    ScenarioConfig scenario;
    std::vector<double> atoms_mbit{3, 9, 15, 21, 27};
    std::size_t history_size = 200;
    double radius = 0.3;
    double confidence = 0.9;
    /// Radius from (K, Q, confidence) instead of `radius`.
    bool derive_radius = false;
    /// Ground truth over the atoms; empty means uniform.
    std::vector<double> truth;
    /// One history per device instead of one shared history.
    bool per_device_history = false;
    std::vector<std::uint64_t> seeds{1};
    std::vector<Method> methods{Method::Mdrloa, Method::Deterministic, Method::Robust};
    /// Worker threads across seeds; 0 or 1 runs sequentially.
    int jobs = 1;

    SampleSpace space() const { return SampleSpace::from_mbit(atoms_mbit); }
    Distribution truth_distribution() const;
    std::string truth_id() const;
    double effective_radius() const;
};

/// Per-device ambiguity sets of `seed`: histories on the history stream, the
/// empirical reference of each and the configured radius.
std::vector<AmbiguitySet> build_ambiguity_sets(const ExperimentConfig& config, int num_tds,
                                               std::uint64_t seed);

/// Dispatches to mdrloa_solve, the DO/RO baselines or exhaustive_solve (at
/// the worst-case task sizes).
SolveResult solve_method(Method method, const Scenario& scenario,
                         const std::vector<AmbiguitySet>& sets);

struct EvaluationRow {
    Method method = Method::Mdrloa;
    std::uint64_t seed = 0;
    std::string param_name;
    double param_value = 0.0;
    /// False when the method found no decision; costs are NaN then.
    bool feasible = false;
    double realized_latency = 0.0;
    double max_uav_energy = 0.0;
    double hap_energy = 0.0;
    /// Transmission plus computation, all UAVs and the HAP.
    double variable_energy = 0.0;
    /// Realized energy exceeded some budget.
    bool budget_violation = false;
    std::string error;
};

struct MethodSummary {
    Method method = Method::Mdrloa;
    std::string param_name;
    double param_value = 0.0;
    std::size_t runs = 0;
    std::size_t feasible_runs = 0;
    double latency_mean = 0.0;
    double latency_std = 0.0;
    double energy_mean = 0.0;
    double energy_std = 0.0;
    std::size_t budget_violations = 0;
};

struct EvaluationReport {
    std::vector<EvaluationRow> rows;
    std::vector<MethodSummary> summaries;

    /// Summary for (param value, method); throws std::out_of_range when absent.
    const MethodSummary& summary(Method method, double param_value = 0.0) const;
};

/// Scenario, history, ambiguity sets, every method's solve and one
/// realization per seed. Row order is seeds x methods regardless of `jobs`.
EvaluationReport compare_methods(const ExperimentConfig& config,
                                 const std::string& param_name = "none", double param_value = 0.0);

enum class SweepParam { HistorySize, Radius, QuotaHap, QuotaUav };

/// "Q", "eps", "quota-hap", "quota-uav".
const char* sweep_param_name(SweepParam param);
/// Throws ConfigError on an unknown name.
SweepParam parse_sweep_param(const std::string& name);

/// compare_methods once per value. A history-size sweep derives the radius
/// from the configured confidence; a radius sweep uses the values directly.
EvaluationReport sweep(const ExperimentConfig& config, SweepParam param,
                       const std::vector<double>& values);

/// Columns: method, seed, param_name, param_value, realized_latency_s,
/// max_uav_energy_J, hap_energy_J, feasible.
void write_csv(const EvaluationReport& report, std::ostream& out);

/// Means, standard deviations and the MDRLOA gaps against DO (latency) and
/// RO (energy), in percent, per parameter value.
nlohmann::json summary_json(const EvaluationReport& report);

/// (baseline - mdrloa) / baseline * 100.
double percent_gap(double mdrloa, double baseline);

} // namespace aan
