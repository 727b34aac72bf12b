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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

namespace aan {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

Method parse_method(const std::string& name) {
    if (name == "dro")
        return Method::Mdrloa;
    if (name == "do")
        return Method::Deterministic;
    if (name == "ro")
        return Method::Robust;
    if (name == "exhaustive")
        return Method::Exhaustive;
    throw ConfigError("method", "unknown method '" + name + "' (expected dro, do, ro or exhaustive)");
}

const char* method_cli_name(Method method) {
    switch (method) {
    case Method::Mdrloa:
        return "dro";
    case Method::Deterministic:
        return "do";
    case Method::Robust:
        return "ro";
    case Method::Exhaustive:
        return "exhaustive";
    }
    return "unknown";
}

namespace {

using Json = nlohmann::json;

/// Reads keys of one block, remembering which ones were consumed so that
/// leftovers can be reported.
class Block {
public:
    Block(const Json& doc, std::string name) : name_(std::move(name)) {
        if (doc.contains(name_)) {
            node_ = doc.at(name_);
            if (!node_.is_object())
                throw ConfigError(name_, "must be an object");
        } else {
            node_ = Json::object();
        }
    }

    template <class T>
    void read(const char* key, T& out) {
        used_.insert(key);
        if (!node_.contains(key))
            return;
        try {
            out = node_.at(key).get<T>();
        } catch (const Json::exception&) {
            throw ConfigError(path(key), "has the wrong type");
        }
    }

    void read_number(const char* key, double& out) {
        used_.insert(key);
        if (!node_.contains(key))
            return;
        if (!node_.at(key).is_number())
            throw ConfigError(path(key), "must be a number");
        out = node_.at(key).get<double>();
        if (!std::isfinite(out))
            throw ConfigError(path(key), "must be finite");
    }

    void read_count(const char* key, int& out) {
        used_.insert(key);
        if (!node_.contains(key))
            return;
        const auto& v = node_.at(key);
        if (!v.is_number_integer())
            throw ConfigError(path(key), "must be an integer");
        out = v.get<int>();
    }

    void read_db(const char* key, double& linear) {
        double db = linear_to_db(linear);
        used_.insert(key);
        if (!node_.contains(key))
            return;
        read_number(key, db);
        linear = db_to_linear(db);
    }

    bool has(const char* key) const { return node_.contains(key); }
    void mark(const char* key) { used_.insert(key); }
    const Json& at(const char* key) { used_.insert(key); return node_.at(key); }
    std::string path(const std::string& key) const { return name_ + "." + key; }

    void reject_unknown() const {
        for (const auto& [k, v] : node_.items())
            if (!used_.count(k))
                throw ConfigError(path(k), "unknown key");
    }

private:
    std::string name_;
    Json node_;
    std::set<std::string> used_;
};

void parse_scenario(const Json& doc, ScenarioConfig& s) {
    Block b(doc, "scenario");
    b.read_count("num_tds", s.num_tds);
    b.read_count("num_uavs", s.num_uavs);
    b.read_number("area_m", s.area_m);
    b.read_number("td_altitude_m", s.td_altitude_m);
    b.read_number("uav_altitude_m", s.uav_altitude_m);
    if (b.has("hap_position_m")) {
        std::vector<double> p;
        b.read("hap_position_m", p);
        if (p.size() != 3)
            throw ConfigError(b.path("hap_position_m"), "must be [x, y, z]");
        s.hap = {p[0], p[1], p[2]};
    } else {
        b.mark("hap_position_m");
    }
    b.read_db("ref_gain_td_uav_db", s.radio.ref_gain_td_uav);
    b.read_db("ref_gain_uav_hap_db", s.radio.ref_gain_uav_hap);
    b.read_number("bandwidth_td_uav_hz", s.radio.bandwidth_td_uav);
    b.read_number("bandwidth_uav_hap_hz", s.radio.bandwidth_uav_hap);
    b.read_db("noise_power_db", s.radio.noise_power);
    b.read_number("tx_power_td_w", s.radio.tx_power_td);
    b.read_number("tx_power_uav_w", s.radio.tx_power_uav);
    b.read_number("uav_capability_hz", s.compute.uav_capability);
    b.read_number("hap_capability_hz", s.compute.hap_capability);
    b.read_number("uav_cycles_per_bit", s.compute.uav_cycles_per_bit);
    b.read_number("hap_cycles_per_bit", s.compute.hap_cycles_per_bit);
    b.read_number("uav_basic_energy_j", s.energy.uav_basic);
    b.read_number("hap_basic_energy_j", s.energy.hap_basic);
    b.read_number("uav_chip_coeff", s.energy.uav_chip_coeff);
    b.read_number("hap_chip_coeff", s.energy.hap_chip_coeff);
    b.read_number("uav_budget_j", s.energy.uav_budget);
    b.read_number("hap_budget_j", s.energy.hap_budget);
    b.read_number("uav_relay_power_w", s.energy.uav_relay_power);
    b.read_count("quota_uav", s.quota_uav);
    b.read_count("quota_hap", s.quota_hap);
    b.reject_unknown();
    try {
        s.validate();
    } catch (const ConfigError& e) {
        // map the struct field name onto the file key
        static const std::map<std::string, std::string> keys{
            {"num_tds", "num_tds"},
            {"num_uavs", "num_uavs"},
            {"area_m", "area_m"},
            {"radio.bandwidth_td_uav", "bandwidth_td_uav_hz"},
            {"radio.bandwidth_uav_hap", "bandwidth_uav_hap_hz"},
            {"radio.noise_power", "noise_power_db"},
            {"radio.ref_gain_td_uav", "ref_gain_td_uav_db"},
            {"radio.ref_gain_uav_hap", "ref_gain_uav_hap_db"},
            {"radio.tx_power_td", "tx_power_td_w"},
            {"radio.tx_power_uav", "tx_power_uav_w"},
            {"compute.uav_capability", "uav_capability_hz"},
            {"compute.hap_capability", "hap_capability_hz"},
            {"compute.uav_cycles_per_bit", "uav_cycles_per_bit"},
            {"compute.hap_cycles_per_bit", "hap_cycles_per_bit"},
            {"energy.uav_budget", "uav_budget_j"},
            {"energy.hap_budget", "hap_budget_j"},
            {"energy.uav_basic", "uav_basic_energy_j"},
            {"energy.hap_basic", "hap_basic_energy_j"},
            {"energy.uav_chip_coeff", "uav_chip_coeff"},
            {"energy.hap_chip_coeff", "hap_chip_coeff"},
            {"energy.uav_relay_power", "uav_relay_power_w"},
            {"quota_uav", "quota_uav"},
            {"quota_hap", "quota_hap"},
        };
        std::string field = e.field();
        if (field.rfind("scenario.", 0) == 0)
            field = field.substr(9);
        const auto it = keys.find(field);
        const std::string key = it == keys.end() ? field : it->second;
        const std::string what = e.what();
        throw ConfigError("scenario." + key, what.substr(e.field().size() + 2));
    }
}

void parse_ambiguity(const Json& doc, ExperimentConfig& x) {
    Block b(doc, "ambiguity");
    b.read("atoms_mbit", x.atoms_mbit);
    int q = static_cast<int>(x.history_size);
    b.read_count("history_size", q);
    if (q < 1)
        throw ConfigError(b.path("history_size"), "must be at least 1");
    x.history_size = static_cast<std::size_t>(q);
    b.read_number("epsilon", x.radius);
    b.read_number("confidence", x.confidence);
    b.read("derive_epsilon", x.derive_radius);
    if (b.has("truth")) {
        const auto& t = b.at("truth");
        if (t.is_string()) {
            if (t.get<std::string>() != "uniform")
                throw ConfigError(b.path("truth"), "must be \"uniform\" or a probability list");
            x.truth.clear();
        } else {
            b.read("truth", x.truth);
        }
    } else {
        b.mark("truth");
    }
    b.read("per_device_history", x.per_device_history);
    b.reject_unknown();

    try {
        (void)x.space();
    } catch (const DomainError& e) {
        throw ConfigError(b.path("atoms_mbit"), e.what());
    }
    if (!(x.radius >= 0.0))
        throw ConfigError(b.path("epsilon"), "must be non-negative");
    if (!(x.confidence > 0.0 && x.confidence < 1.0))
        throw ConfigError(b.path("confidence"), "must lie in (0, 1)");
    try {
        (void)x.truth_distribution();
    } catch (const DomainError& e) {
        throw ConfigError(b.path("truth"), e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(b.path("truth"), "needs one probability per atom");
    }
}

void parse_experiment(const Json& doc, RunConfig& rc) {
    Block b(doc, "experiment");
    auto& x = rc.experiment;
    int first = 1;
    int count = 20;
    b.read_count("first_seed", first);
    b.read_count("num_seeds", count);
    if (b.has("seeds")) {
        if (b.has("first_seed") || b.has("num_seeds"))
            throw ConfigError(b.path("seeds"), "give either seeds or first_seed/num_seeds");
        b.read("seeds", x.seeds);
    } else {
        b.mark("seeds");
        if (first < 0)
            throw ConfigError(b.path("first_seed"), "must be non-negative");
        if (count < 1)
            throw ConfigError(b.path("num_seeds"), "must be at least 1");
        x.seeds.clear();
        for (int k = 0; k < count; ++k)
            x.seeds.push_back(static_cast<std::uint64_t>(first + k));
    }
    if (x.seeds.empty())
        throw ConfigError(b.path("seeds"), "must not be empty");

    if (b.has("methods")) {
        std::vector<std::string> names;
        b.read("methods", names);
        x.methods.clear();
        for (const auto& n : names) {
            try {
                x.methods.push_back(parse_method(n));
            } catch (const ConfigError&) {
                throw ConfigError(b.path("methods"), "unknown method '" + n + "'");
            }
        }
        if (x.methods.empty())
            throw ConfigError(b.path("methods"), "must not be empty");
    } else {
        b.mark("methods");
    }
    b.read_count("jobs", x.jobs);
    if (x.jobs < 1)
        throw ConfigError(b.path("jobs"), "must be at least 1");

    if (b.has("sweep")) {
        const auto& s = b.at("sweep");
        if (!s.is_null()) {
            if (!s.is_object())
                throw ConfigError(b.path("sweep"), "must be an object");
            for (const auto& [k, v] : s.items())
                if (k != "param" && k != "values")
                    throw ConfigError(b.path("sweep." + k), "unknown key");
            SweepSpec spec;
            try {
                spec.param = s.at("param").get<std::string>();
                spec.values = s.at("values").get<std::vector<double>>();
            } catch (const Json::exception&) {
                throw ConfigError(b.path("sweep"), "needs a string param and a list of values");
            }
            try {
                (void)parse_sweep_param(spec.param);
            } catch (const ConfigError& e) {
                throw ConfigError(b.path("sweep.param"), e.what());
            }
            rc.sweep = spec;
        }
    } else {
        b.mark("sweep");
    }
    b.reject_unknown();
}

void parse_output(const Json& doc, RunConfig& rc) {
    Block b(doc, "output");
    std::string dir = rc.output_dir.string();
    b.read("dir", dir);
    if (dir.empty())
        throw ConfigError(b.path("dir"), "must not be empty");
    rc.output_dir = dir;
    b.reject_unknown();
}

} // namespace

RunConfig parse_run_config(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw ConfigError("(root)", "config must be a JSON object");
    for (const auto& [k, v] : doc.items())
        if (k != "scenario" && k != "ambiguity" && k != "experiment" && k != "output")
            throw ConfigError(k, "unknown key");
    RunConfig rc;
    parse_scenario(doc, rc.experiment.scenario);
    parse_ambiguity(doc, rc.experiment);
    parse_experiment(doc, rc);
    parse_output(doc, rc);
    return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("--config", "cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
    return parse_run_config(doc);
}

nlohmann::json run_config_to_json(const RunConfig& rc) {
    const auto& x = rc.experiment;
    const auto& s = x.scenario;
    nlohmann::json methods = nlohmann::json::array();
    for (Method m : x.methods)
        methods.push_back(method_cli_name(m));
    nlohmann::json truth = x.truth.empty() ? nlohmann::json("uniform") : nlohmann::json(x.truth);
    nlohmann::json sweep = nullptr;
    if (rc.sweep)
        sweep = {{"param", rc.sweep->param}, {"values", rc.sweep->values}};
    return {
        {"scenario",
         {{"num_tds", s.num_tds},
          {"num_uavs", s.num_uavs},
          {"area_m", s.area_m},
          {"td_altitude_m", s.td_altitude_m},
          {"uav_altitude_m", s.uav_altitude_m},
          {"hap_position_m", {s.hap.x, s.hap.y, s.hap.z}},
          {"ref_gain_td_uav_db", linear_to_db(s.radio.ref_gain_td_uav)},
          {"ref_gain_uav_hap_db", linear_to_db(s.radio.ref_gain_uav_hap)},
          {"bandwidth_td_uav_hz", s.radio.bandwidth_td_uav},
          {"bandwidth_uav_hap_hz", s.radio.bandwidth_uav_hap},
          {"noise_power_db", linear_to_db(s.radio.noise_power)},
          {"tx_power_td_w", s.radio.tx_power_td},
          {"tx_power_uav_w", s.radio.tx_power_uav},
          {"uav_capability_hz", s.compute.uav_capability},
          {"hap_capability_hz", s.compute.hap_capability},
          {"uav_cycles_per_bit", s.compute.uav_cycles_per_bit},
          {"hap_cycles_per_bit", s.compute.hap_cycles_per_bit},
          {"uav_basic_energy_j", s.energy.uav_basic},
          {"hap_basic_energy_j", s.energy.hap_basic},
          {"uav_chip_coeff", s.energy.uav_chip_coeff},
          {"hap_chip_coeff", s.energy.hap_chip_coeff},
          {"uav_budget_j", s.energy.uav_budget},
          {"hap_budget_j", s.energy.hap_budget},
          {"uav_relay_power_w", s.energy.uav_relay_power},
          {"quota_uav", s.quota_uav},
          {"quota_hap", s.quota_hap}}},
        {"ambiguity",
         {{"atoms_mbit", x.atoms_mbit},
          {"history_size", x.history_size},
          {"epsilon", x.radius},
          {"confidence", x.confidence},
          {"derive_epsilon", x.derive_radius},
          {"truth", truth},
          {"per_device_history", x.per_device_history}}},
        {"experiment", {{"seeds", x.seeds}, {"methods", methods}, {"jobs", x.jobs}, {"sweep", sweep}}},
        {"output", {{"dir", rc.output_dir.string()}}},
    };
}

void apply_override(RunConfig& config, const std::string& path, const std::string& value) {
    const auto dot = path.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == path.size())
        throw ConfigError(path, "override keys look like block.key");
    nlohmann::json doc = run_config_to_json(config);
    const std::string block = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);
    if (!doc.contains(block))
        throw ConfigError(path, "unknown block");
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(value);
    } catch (const nlohmann::json::parse_error&) {
        parsed = value;
    }
    // seeds are stored as an explicit list; a range override replaces it
    if (block == "experiment" && (key == "first_seed" || key == "num_seeds")) {
        auto& e = doc["experiment"];
        const auto& seeds = e["seeds"];
        const bool had_range = e.contains("first_seed");
        if (!had_range) {
            e["first_seed"] = seeds.empty() ? 1 : seeds.front().get<std::uint64_t>();
            e["num_seeds"] = seeds.size();
        }
        e.erase("seeds");
    }
    doc[block][key] = parsed;
    config = parse_run_config(doc);
}

std::string config_hash(const RunConfig& config) {
    char buf[17];
    auto doc = run_config_to_json(config);
    doc.erase("output");
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(doc.dump())));
    return buf;
}

} // namespace aan
