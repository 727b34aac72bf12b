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

#include "aan/scenario.hpp"

#include "aan/errors.hpp"
#include "aan/random.hpp"

#include <cmath>
#include <string>

namespace aan {

namespace {

bool finite(const Position3D& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw ConfigError(field, "must be a finite positive number");
}

void require_nonnegative(double value, const char* field) {
    if (!(value >= 0.0) || !std::isfinite(value))
        throw ConfigError(field, "must be a finite non-negative number");
}

void validate_params(const RadioParams& r, const ComputeParams& c, const EnergyParams& e) {
    require_positive(r.ref_gain_td_uav, "radio.ref_gain_td_uav");
    require_positive(r.ref_gain_uav_hap, "radio.ref_gain_uav_hap");
    require_positive(r.bandwidth_td_uav, "radio.bandwidth_td_uav");
    require_positive(r.bandwidth_uav_hap, "radio.bandwidth_uav_hap");
    require_positive(r.noise_power, "radio.noise_power");
    require_positive(r.tx_power_td, "radio.tx_power_td");
    require_positive(r.tx_power_uav, "radio.tx_power_uav");

    require_positive(c.uav_capability, "compute.uav_capability");
    require_positive(c.hap_capability, "compute.hap_capability");
    require_positive(c.uav_cycles_per_bit, "compute.uav_cycles_per_bit");
    require_positive(c.hap_cycles_per_bit, "compute.hap_cycles_per_bit");

    require_nonnegative(e.uav_basic, "energy.uav_basic");
    require_nonnegative(e.hap_basic, "energy.hap_basic");
    require_nonnegative(e.uav_chip_coeff, "energy.uav_chip_coeff");
    require_nonnegative(e.hap_chip_coeff, "energy.hap_chip_coeff");
    require_nonnegative(e.uav_relay_power, "energy.uav_relay_power");
    if (!(e.uav_budget > e.uav_basic) || !std::isfinite(e.uav_budget))
        throw ConfigError("energy.uav_budget", "must exceed energy.uav_basic");
    if (!(e.hap_budget > e.hap_basic) || !std::isfinite(e.hap_budget))
        throw ConfigError("energy.hap_budget", "must exceed energy.hap_basic");
}

void validate_position(const Position3D& p, const std::string& field) {
    if (!finite(p))
        throw ConfigError(field, "coordinates must be finite");
    if (p.z < 0.0)
        throw ConfigError(field, "altitude must be non-negative");
}

} // namespace

double distance(const Position3D& a, const Position3D& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double channel_gain(double ref_gain, double distance_m) {
    if (!(distance_m > 0.0))
        throw DomainError("channel_gain: distance must be positive");
    return ref_gain / (distance_m * distance_m);
}

double link_rate(double bandwidth, double tx_power, double gain, double noise) {
    if (!(bandwidth > 0.0))
        throw DomainError("link_rate: bandwidth must be positive");
    if (!(noise > 0.0))
        throw DomainError("link_rate: noise power must be positive");
    if (tx_power < 0.0 || gain < 0.0)
        throw DomainError("link_rate: power and gain must be non-negative");
    // log1p keeps full precision at the tiny SNRs of km-scale links
    return bandwidth * std::log1p(tx_power * gain / noise) / std::log(2.0);
}

void ScenarioConfig::validate() const {
    if (num_tds < 1)
        throw ConfigError("scenario.num_tds", "must be at least 1");
    if (num_uavs < 1)
        throw ConfigError("scenario.num_uavs", "must be at least 1");
    require_positive(area_m, "scenario.area_m");
    require_nonnegative(td_altitude_m, "scenario.td_altitude_m");
    require_nonnegative(uav_altitude_m, "scenario.uav_altitude_m");
    validate_position(hap, "scenario.hap_position_m");
    if (quota_uav < 0)
        throw ConfigError("scenario.quota_uav", "must be non-negative");
    if (quota_hap < 0)
        throw ConfigError("scenario.quota_hap", "must be non-negative");
    validate_params(radio, compute, energy);
}

Scenario::Scenario(std::vector<Position3D> tds, std::vector<Position3D> uavs, Position3D hap,
                   RadioParams radio, ComputeParams compute, EnergyParams energy, int quota_uav,
                   int quota_hap)
    : tds_(std::move(tds)), uavs_(std::move(uavs)), hap_(hap), radio_(radio), compute_(compute),
      energy_(energy), quota_uav_(quota_uav), quota_hap_(quota_hap) {
    if (tds_.empty())
        throw ConfigError("scenario.tds", "at least one terminal device is required");
    if (uavs_.empty())
        throw ConfigError("scenario.uavs", "at least one UAV is required");
    for (std::size_t i = 0; i < tds_.size(); ++i)
        validate_position(tds_[i], "scenario.tds[" + std::to_string(i) + "]");
    for (std::size_t j = 0; j < uavs_.size(); ++j)
        validate_position(uavs_[j], "scenario.uavs[" + std::to_string(j) + "]");
    validate_position(hap_, "scenario.hap");
    if (quota_uav_ < 0)
        throw ConfigError("scenario.quota_uav", "must be non-negative");
    if (quota_hap_ < 0)
        throw ConfigError("scenario.quota_hap", "must be non-negative");
    validate_params(radio_, compute_, energy_);

    const auto ni = tds_.size();
    const auto nj = uavs_.size();
    rate_td_uav_.resize(static_cast<Eigen::Index>(ni), static_cast<Eigen::Index>(nj));
    rate_uav_hap_.resize(static_cast<Eigen::Index>(nj));
    for (std::size_t j = 0; j < nj; ++j) {
        for (std::size_t i = 0; i < ni; ++i) {
            const double g = channel_gain(radio_.ref_gain_td_uav, distance(tds_[i], uavs_[j]));
            rate_td_uav_(i, j) =
                link_rate(radio_.bandwidth_td_uav, radio_.tx_power_td, g, radio_.noise_power);
        }
        const double g = channel_gain(radio_.ref_gain_uav_hap, distance(uavs_[j], hap_));
        rate_uav_hap_(j) =
            link_rate(radio_.bandwidth_uav_hap, radio_.tx_power_uav, g, radio_.noise_power);
    }
    if ((rate_td_uav_.array() <= 0.0).any() || (rate_uav_hap_.array() <= 0.0).any())
        throw DataError("scenario: link rate underflowed to zero");
}

Scenario Scenario::with_quotas(int quota_uav, int quota_hap) const {
    return Scenario(tds_, uavs_, hap_, radio_, compute_, energy_, quota_uav, quota_hap);
}

bool Scenario::operator==(const Scenario& other) const {
    return tds_ == other.tds_ && uavs_ == other.uavs_ && hap_ == other.hap_ &&
           radio_ == other.radio_ && compute_ == other.compute_ && energy_ == other.energy_ &&
           quota_uav_ == other.quota_uav_ && quota_hap_ == other.quota_hap_;
}

DelayEnergyCoeffs per_bit_coefficients(const Scenario& s) {
    const auto& c = s.compute();
    const auto& e = s.energy();
    const int nj = s.num_uavs();

    DelayEnergyCoeffs out;
    out.access_delay = s.rate_td_uav().cwiseInverse();
    out.uav_compute_delay = Eigen::VectorXd::Constant(nj, c.uav_cycles_per_bit / c.uav_capability);
    out.relay_path_delay = s.rate_uav_hap().cwiseInverse().array() +
                           c.hap_cycles_per_bit / c.hap_capability;
    out.relay_energy = e.uav_relay_power * s.rate_uav_hap().cwiseInverse();
    // beta C^3 * (lambda / C) per bit
    out.uav_compute_energy = Eigen::VectorXd::Constant(
        nj, e.uav_chip_coeff * c.uav_capability * c.uav_capability * c.uav_cycles_per_bit);
    out.hap_compute_energy =
        e.hap_chip_coeff * c.hap_capability * c.hap_capability * c.hap_cycles_per_bit;
    return out;
}

Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed) {
    config.validate();
    auto rng = make_rng(seed, Stream::Placement);
    const auto place = [&](double altitude) {
        Position3D p;
        p.x = uniform01(rng) * config.area_m;
        p.y = uniform01(rng) * config.area_m;
        p.z = altitude;
        return p;
    };
    std::vector<Position3D> tds;
    std::vector<Position3D> uavs;
    tds.reserve(static_cast<std::size_t>(config.num_tds));
    uavs.reserve(static_cast<std::size_t>(config.num_uavs));
    for (int i = 0; i < config.num_tds; ++i)
        tds.push_back(place(config.td_altitude_m));
    for (int j = 0; j < config.num_uavs; ++j)
        uavs.push_back(place(config.uav_altitude_m));
    return Scenario(std::move(tds), std::move(uavs), config.hap, config.radio, config.compute,
                    config.energy, config.quota_uav, config.quota_hap);
}

// ---------------------------------------------------------------------------
// snapshot serialization

namespace {

nlohmann::json position_json(const Position3D& p) { return nlohmann::json::array({p.x, p.y, p.z}); }

Position3D position_from(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3)
        throw DataError(field + ": expected [x, y, z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::vector<Position3D> positions_from(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array())
        throw DataError(field + ": expected an array of positions");
    std::vector<Position3D> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(position_from(j[k], field + "[" + std::to_string(k) + "]"));
    return out;
}

bool close_rel(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

} // namespace

nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    nlohmann::json tds = nlohmann::json::array();
    for (const auto& p : s.tds())
        tds.push_back(position_json(p));
    nlohmann::json uavs = nlohmann::json::array();
    for (const auto& p : s.uavs())
        uavs.push_back(position_json(p));
    j["tds"] = tds;
    j["uavs"] = uavs;
    j["hap"] = position_json(s.hap());
    const auto& r = s.radio();
    j["radio"] = {{"ref_gain_td_uav", r.ref_gain_td_uav},   {"ref_gain_uav_hap", r.ref_gain_uav_hap},
                  {"bandwidth_td_uav", r.bandwidth_td_uav}, {"bandwidth_uav_hap", r.bandwidth_uav_hap},
                  {"noise_power", r.noise_power},           {"tx_power_td", r.tx_power_td},
                  {"tx_power_uav", r.tx_power_uav}};
    const auto& c = s.compute();
    j["compute"] = {{"uav_capability", c.uav_capability},
                    {"hap_capability", c.hap_capability},
                    {"uav_cycles_per_bit", c.uav_cycles_per_bit},
                    {"hap_cycles_per_bit", c.hap_cycles_per_bit}};
    const auto& e = s.energy();
    j["energy"] = {{"uav_basic", e.uav_basic},           {"hap_basic", e.hap_basic},
                   {"uav_chip_coeff", e.uav_chip_coeff}, {"hap_chip_coeff", e.hap_chip_coeff},
                   {"uav_budget", e.uav_budget},         {"hap_budget", e.hap_budget},
                   {"uav_relay_power", e.uav_relay_power}};
    j["quota_uav"] = s.quota_uav();
    j["quota_hap"] = s.quota_hap();

    nlohmann::json rates = nlohmann::json::array();
    for (Eigen::Index i = 0; i < s.rate_td_uav().rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index jj = 0; jj < s.rate_td_uav().cols(); ++jj)
            row.push_back(s.rate_td_uav()(i, jj));
        rates.push_back(row);
    }
    j["rate_td_uav"] = rates;
    j["rate_uav_hap"] = std::vector<double>(s.rate_uav_hap().begin(), s.rate_uav_hap().end());
    return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
    try {
        RadioParams r;
        const auto& jr = j.at("radio");
        r.ref_gain_td_uav = jr.at("ref_gain_td_uav").get<double>();
        r.ref_gain_uav_hap = jr.at("ref_gain_uav_hap").get<double>();
        r.bandwidth_td_uav = jr.at("bandwidth_td_uav").get<double>();
        r.bandwidth_uav_hap = jr.at("bandwidth_uav_hap").get<double>();
        r.noise_power = jr.at("noise_power").get<double>();
        r.tx_power_td = jr.at("tx_power_td").get<double>();
        r.tx_power_uav = jr.at("tx_power_uav").get<double>();
        ComputeParams c;
        const auto& jc = j.at("compute");
        c.uav_capability = jc.at("uav_capability").get<double>();
        c.hap_capability = jc.at("hap_capability").get<double>();
        c.uav_cycles_per_bit = jc.at("uav_cycles_per_bit").get<double>();
        c.hap_cycles_per_bit = jc.at("hap_cycles_per_bit").get<double>();
        EnergyParams e;
        const auto& je = j.at("energy");
        e.uav_basic = je.at("uav_basic").get<double>();
        e.hap_basic = je.at("hap_basic").get<double>();
        e.uav_chip_coeff = je.at("uav_chip_coeff").get<double>();
        e.hap_chip_coeff = je.at("hap_chip_coeff").get<double>();
        e.uav_budget = je.at("uav_budget").get<double>();
        e.hap_budget = je.at("hap_budget").get<double>();
        e.uav_relay_power = je.at("uav_relay_power").get<double>();

        Scenario s(positions_from(j.at("tds"), "tds"), positions_from(j.at("uavs"), "uavs"),
                   position_from(j.at("hap"), "hap"), r, c, e, j.at("quota_uav").get<int>(),
                   j.at("quota_hap").get<int>());

        if (j.contains("rate_td_uav")) {
            const auto& rates = j.at("rate_td_uav");
            if (rates.size() != static_cast<std::size_t>(s.num_tds()))
                throw DataError("rate_td_uav: row count does not match tds");
            for (int i = 0; i < s.num_tds(); ++i) {
                if (rates[i].size() != static_cast<std::size_t>(s.num_uavs()))
                    throw DataError("rate_td_uav: column count does not match uavs");
                for (int jj = 0; jj < s.num_uavs(); ++jj)
                    if (!close_rel(rates[i][jj].get<double>(), s.rate_td_uav()(i, jj)))
                        throw DataError("rate_td_uav[" + std::to_string(i) + "][" +
                                        std::to_string(jj) + "] inconsistent with geometry");
            }
        }
        if (j.contains("rate_uav_hap")) {
            const auto& rates = j.at("rate_uav_hap");
            if (rates.size() != static_cast<std::size_t>(s.num_uavs()))
                throw DataError("rate_uav_hap: length does not match uavs");
            for (int jj = 0; jj < s.num_uavs(); ++jj)
                if (!close_rel(rates[jj].get<double>(), s.rate_uav_hap()(jj)))
                    throw DataError("rate_uav_hap[" + std::to_string(jj) +
                                    "] inconsistent with geometry");
        }
        return s;
    } catch (const nlohmann::json::exception& ex) {
        throw DataError(std::string("scenario snapshot: ") + ex.what());
    }
}

} // namespace aan
