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

// Physical model of the aerial access network: node placement, link rates and
// the per-bit delay/energy coefficients every problem builder consumes.
//
// All quantities are SI and linear (watts, hertz, bits, seconds, joules). dB
// values are converted when a config is parsed.

#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <vector>

namespace aan {

struct Position3D {
    double x = 0.0; ///< meters
    double y = 0.0; ///< meters
    double z = 0.0; ///< altitude, meters

    bool operator==(const Position3D&) const = default;
};

struct RadioParams {
    double ref_gain_td_uav = 1e-6;  ///< channel gain at 1 m, TD -> UAV
    double ref_gain_uav_hap = 1e-6; ///< channel gain at 1 m, UAV -> HAP
    double bandwidth_td_uav = 1e6;  ///< Hz
    double bandwidth_uav_hap = 2e7; ///< Hz
    double noise_power = 1e-10;     ///< W
    double tx_power_td = 0.5;       ///< W
    double tx_power_uav = 10.0;     ///< W

    bool operator==(const RadioParams&) const = default;
};

struct ComputeParams {
    double uav_capability = 3e9;    ///< cycles/s
    double hap_capability = 5e10;   ///< cycles/s
    double uav_cycles_per_bit = 270.0;
    double hap_cycles_per_bit = 1100.0;

    bool operator==(const ComputeParams&) const = default;
};

struct EnergyParams {
    double uav_basic = 0.0;       ///< J
    double hap_basic = 0.0;       ///< J
    double uav_chip_coeff = 1e-28;
    double hap_chip_coeff = 1e-28;
    double uav_budget = 1e5;      ///< J
    double hap_budget = 1e6;      ///< J
    double uav_relay_power = 10.0; ///< W, UAV -> HAP forwarding

    bool operator==(const EnergyParams&) const = default;
};

/// Per-bit delay and energy coefficients of every route.
struct DelayEnergyCoeffs {
    Eigen::MatrixXd access_delay;        ///< I x J, 1/R_ij  [s/bit]
    Eigen::VectorXd uav_compute_delay;   ///< J, lambda_j/C_j  [s/bit]
    Eigen::VectorXd relay_path_delay;    ///< J, 1/R_jH + lambda_H/C_H  [s/bit]
    Eigen::VectorXd relay_energy;        ///< J, P_j/R_jH  [J/bit], charged to UAV j
    Eigen::VectorXd uav_compute_energy;  ///< J, beta_U C_j^2 lambda_j  [J/bit]
    double hap_compute_energy = 0.0;     ///< beta_H C_H^2 lambda_H  [J/bit]
};

double distance(const Position3D& a, const Position3D& b);

/// Free-space gain `ref_gain / distance^2`. Throws DomainError for distance <= 0.
double channel_gain(double ref_gain, double distance_m);

/// Shannon rate B log2(1 + p g / sigma^2) in bits/s.
double link_rate(double bandwidth, double tx_power, double gain, double noise);

/// Placement settings plus the physical parameters of a generated scenario.
struct ScenarioConfig {
    int num_tds = 10;
    int num_uavs = 3;
    double area_m = 10000.0;
    double td_altitude_m = 0.0;
    double uav_altitude_m = 2000.0;
    Position3D hap{5000.0, 5000.0, 20000.0};
    RadioParams radio;
    ComputeParams compute;
    EnergyParams energy;
    int quota_uav = 4;
    int quota_hap = 4;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

/// Immutable network description. Rates are always derived from geometry.
class Scenario {
public:
    /// Validates all parameters and computes the link rates.
    Scenario(std::vector<Position3D> tds, std::vector<Position3D> uavs, Position3D hap,
             RadioParams radio, ComputeParams compute, EnergyParams energy, int quota_uav,
             int quota_hap);

    int num_tds() const noexcept { return static_cast<int>(tds_.size()); }
    int num_uavs() const noexcept { return static_cast<int>(uavs_.size()); }

    const std::vector<Position3D>& tds() const noexcept { return tds_; }
    const std::vector<Position3D>& uavs() const noexcept { return uavs_; }
    const Position3D& hap() const noexcept { return hap_; }
    const RadioParams& radio() const noexcept { return radio_; }
    const ComputeParams& compute() const noexcept { return compute_; }
    const EnergyParams& energy() const noexcept { return energy_; }
    int quota_uav() const noexcept { return quota_uav_; }
    int quota_hap() const noexcept { return quota_hap_; }

    /// I x J, bits/s.
    const Eigen::MatrixXd& rate_td_uav() const noexcept { return rate_td_uav_; }
    /// J, bits/s.
    const Eigen::VectorXd& rate_uav_hap() const noexcept { return rate_uav_hap_; }

    /// Same scenario with different quotas (used by parameter sweeps).
    Scenario with_quotas(int quota_uav, int quota_hap) const;

    bool operator==(const Scenario& other) const;

private:
    std::vector<Position3D> tds_;
    std::vector<Position3D> uavs_;
    Position3D hap_;
    RadioParams radio_;
    ComputeParams compute_;
    EnergyParams energy_;
    int quota_uav_;
    int quota_hap_;
    Eigen::MatrixXd rate_td_uav_;
    Eigen::VectorXd rate_uav_hap_;
};

DelayEnergyCoeffs per_bit_coefficients(const Scenario& scenario);

/// Uniform placement of TDs and UAVs over the square [0, area]^2.
Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed);

/// Snapshot format: all parameters, positions in meters and rates in bits/s.
nlohmann::json scenario_to_json(const Scenario& scenario);

/// Rebuilds from a snapshot. Stored rates, if present, must match the ones
/// recomputed from geometry (relative 1e-9) or DataError is thrown.
Scenario scenario_from_json(const nlohmann::json& j);

} // namespace aan
