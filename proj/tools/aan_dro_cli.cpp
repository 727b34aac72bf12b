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

// Command line front end: generate, solve, evaluate, sweep.
//
// Exit codes: 0 success, 2 bad configuration or request, 3 infeasible model,
// 4 internal or numerical failure.

#include "aan/config.hpp"
#include "aan/errors.hpp"
#include "aan/evaluation.hpp"
#include "aan/lp.hpp"
#include "aan/mdrloa.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef AAN_DRO_VERSION
#define AAN_DRO_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace aan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 4;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<int> jobs;
    std::vector<std::string> overrides;
};

void add_common(CLI::App& cmd, CommonArgs& a) {
    cmd.add_option("--config", a.config_path, "JSON run configuration (defaults when omitted)");
    cmd.add_option("--seed", a.seed, "run a single seed instead of the configured list");
    cmd.add_option("--out", a.out, "output directory (overrides output.dir)");
    cmd.add_option("--jobs", a.jobs, "worker threads across seeds")->check(CLI::PositiveNumber);
    cmd.add_option("--set", a.overrides, "override a config field, e.g. --set scenario.num_tds=6");
}

RunConfig resolve(const CommonArgs& a) {
    RunConfig rc = a.config_path.empty() ? parse_run_config(nlohmann::json::object())
                                         : load_run_config(a.config_path);
    for (const auto& kv : a.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError(kv, "overrides look like block.key=value");
        apply_override(rc, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (a.seed)
        rc.experiment.seeds = {*a.seed};
    if (!a.out.empty())
        rc.output_dir = a.out;
    if (a.jobs)
        rc.experiment.jobs = *a.jobs;
    return rc;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

void write_manifest(const RunConfig& rc, const std::string& command,
                    const std::vector<std::string>& outputs) {
    const nlohmann::json manifest = {
        {"artifact", "aan_dro"},
        {"version", AAN_DRO_VERSION},
        {"command", command},
        {"config_hash_fnv1a64", config_hash(rc)},
        {"seeds", rc.experiment.seeds},
        {"outputs", outputs},
        {"config", run_config_to_json(rc)},
    };
    write_text(rc.output_dir / ("manifest_" + command + ".json"), manifest.dump(2) + "\n");
}

std::string seed_tag(std::uint64_t seed) { return "seed" + std::to_string(seed); }

int cmd_generate(const RunConfig& rc) {
    fs::create_directories(rc.output_dir);
    std::vector<std::string> outputs;
    const auto& x = rc.experiment;
    for (std::uint64_t seed : x.seeds) {
        const Scenario s = generate_scenario(x.scenario, seed);
        const auto sets = build_ambiguity_sets(x, s.num_tds(), seed);
        nlohmann::json snap = scenario_to_json(s);
        nlohmann::json amb = nlohmann::json::array();
        for (const auto& set : sets)
            amb.push_back(ambiguity_to_json(set));
        snap["ambiguity_sets"] = amb;
        const std::string name = "scenario_" + seed_tag(seed) + ".json";
        write_text(rc.output_dir / name, snap.dump(2) + "\n");
        outputs.push_back(name);

        const SampleSpace space = x.space();
        const Distribution truth = x.truth_distribution();
        const int logs = x.per_device_history ? s.num_tds() : 1;
        for (int d = 0; d < logs; ++d) {
            const std::string hname = x.per_device_history
                                          ? "history_" + seed_tag(seed) + "_td" + std::to_string(d) + ".txt"
                                          : "history_" + seed_tag(seed) + ".txt";
            write_history(generate_history(truth, space, x.history_size, seed, static_cast<std::uint32_t>(d)),
                          rc.output_dir / hname);
            outputs.push_back(hname);
        }
        std::cout << "wrote " << name << "\n";
    }
    write_manifest(rc, "generate", outputs);
    return kExitOk;
}

int cmd_solve(const RunConfig& rc, const std::string& method_name) {
    const Method method = parse_method(method_name);
    fs::create_directories(rc.output_dir);
    std::vector<std::string> outputs;
    const auto& x = rc.experiment;
    for (std::uint64_t seed : x.seeds) {
        const Scenario s = generate_scenario(x.scenario, seed);
        const auto sets = build_ambiguity_sets(x, s.num_tds(), seed);
        const SolveResult r = solve_method(method, s, sets);
        const auto dims = dimension_report(s);
        nlohmann::json j = solve_result_to_json(r);
        j["seed"] = seed;
        j["radius"] = x.effective_radius();
        j["dimensions"] = {{"num_vars", dims.actual.num_vars},
                           {"num_constraints", dims.actual.num_constraints},
                           {"box_bounds", dims.box_bounds},
                           {"reference_num_vars", dims.reference_vars},
                           {"reference_num_constraints", dims.reference_constraints},
                           {"vars_match", dims.vars_match},
                           {"constraints_match", dims.constraints_match},
                           {"note", dims.note}};
        const std::string name = "solve_" + std::string(method_cli_name(method)) + "_" + seed_tag(seed) + ".json";
        write_text(rc.output_dir / name, j.dump(2) + "\n");
        outputs.push_back(name);
        std::cout << method_tag(method) << " seed " << seed << ": expected latency "
                  << r.worst_case_expected_latency << " s, relaxation bound " << r.relaxation_bound
                  << " s, " << r.lp_solve_count << " LP solves\n";
    }
    write_manifest(rc, "solve", outputs);
    return kExitOk;
}

int finish_report(const RunConfig& rc, const EvaluationReport& report, const std::string& command,
                  const std::string& stem) {
    fs::create_directories(rc.output_dir);
    std::ostringstream csv;
    write_csv(report, csv);
    write_text(rc.output_dir / (stem + ".csv"), csv.str());
    write_text(rc.output_dir / (stem + "_summary.json"), summary_json(report).dump(2) + "\n");
    write_manifest(rc, command, {stem + ".csv", stem + "_summary.json"});

    std::size_t ok = 0;
    for (const auto& row : report.rows)
        ok += row.feasible ? 1 : 0;
    for (const auto& s : report.summaries)
        std::cout << s.param_name << "=" << s.param_value << " " << method_tag(s.method)
                  << ": latency " << s.latency_mean << " s (sd " << s.latency_std << "), energy "
                  << s.energy_mean << " J, " << s.feasible_runs << "/" << s.runs << " feasible\n";
    if (ok == 0) {
        std::cerr << "error: every run was infeasible\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributionally robust task offloading in aerial access networks"};
    app.set_version_flag("--version", AAN_DRO_VERSION);
    app.require_subcommand(1);

    CommonArgs gen_args, solve_args, eval_args, sweep_args;
    auto* gen = app.add_subcommand("generate", "write scenario snapshots and history logs");
    add_common(*gen, gen_args);

    auto* solve = app.add_subcommand("solve", "solve one offloading instance per seed");
    add_common(*solve, solve_args);
    std::string method = "dro";
    solve->add_option("--method", method, "dro, do, ro or exhaustive")
        ->check(CLI::IsMember({"dro", "do", "ro", "exhaustive"}));

    auto* eval = app.add_subcommand("evaluate", "compare methods on realized task sizes");
    add_common(*eval, eval_args);

    auto* sw = app.add_subcommand("sweep", "repeat the comparison over one parameter");
    add_common(*sw, sweep_args);
    std::string param;
    std::vector<double> values;
    sw->add_option("--param", param, "Q, eps, quota-hap or quota-uav")
        ->check(CLI::IsMember({"Q", "eps", "quota-hap", "quota-uav"}));
    sw->add_option("--values", values, "parameter values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*gen)
            return cmd_generate(resolve(gen_args));
        if (*solve)
            return cmd_solve(resolve(solve_args), method);
        if (*eval) {
            const RunConfig rc = resolve(eval_args);
            return finish_report(rc, compare_methods(rc.experiment), "evaluate", "evaluate");
        }
        if (*sw) {
            RunConfig rc = resolve(sweep_args);
            if (!param.empty() || !values.empty())
                rc.sweep = SweepSpec{param, values};
            if (!rc.sweep || rc.sweep->param.empty())
                throw ConfigError("sweep.param", "give --param or experiment.sweep in the config");
            const SweepParam p = parse_sweep_param(rc.sweep->param);
            const auto report = sweep(rc.experiment, p, rc.sweep->values);
            return finish_report(rc, report, "sweep", std::string("sweep_") + sweep_param_name(p));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
