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

#include "aan/evaluation.hpp"

#include "aan/errors.hpp"
#include "aan/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace aan {

Realization draw_realization(const Distribution& truth, const SampleSpace& space, int num_tds,
                             std::uint64_t seed, std::string truth_id) {
    if (truth.size() != space.size())
        throw ShapeError("truth distribution size differs from sample space");
    std::vector<double> cdf(truth.size());
    std::partial_sum(truth.probs().begin(), truth.probs().end(), cdf.begin());
    auto rng = make_rng(seed, Stream::Realization);
    Realization r{Eigen::VectorXd(num_tds), seed, std::move(truth_id)};
    for (int i = 0; i < num_tds; ++i) {
        const double u = uniform01(rng) * cdf.back();
        auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        r.task_sizes(i) = space.atoms()[std::min(k, cdf.size() - 1)];
    }
    return r;
}

double realized_latency(const OffloadDecision& decision, const Scenario& scenario,
                        const Realization& realization) {
    return expected_latency(decision, scenario, realization.task_sizes);
}

EnergyUse realized_energy(const OffloadDecision& decision, const Scenario& scenario,
                          const Realization& realization) {
    return expected_energy(decision, scenario, realization.task_sizes);
}

Distribution ExperimentConfig::truth_distribution() const {
    if (truth.empty())
        return Distribution::uniform(atoms_mbit.size());
    if (truth.size() != atoms_mbit.size())
        throw ConfigError("ambiguity.truth", "needs one probability per atom");
    return Distribution(truth);
}

std::string ExperimentConfig::truth_id() const {
    if (truth.empty())
        return "uniform";
    std::ostringstream s;
    s << "categorical";
    for (double p : truth)
        s << ":" << p;
    return s.str();
}

double ExperimentConfig::effective_radius() const {
    return derive_radius ? tolerance_from_confidence(atoms_mbit.size(), history_size, confidence)
                         : radius;
}

std::vector<AmbiguitySet> build_ambiguity_sets(const ExperimentConfig& config, int num_tds,
                                               std::uint64_t seed) {
    const SampleSpace space = config.space();
    const Distribution truth = config.truth_distribution();
    const double eps = config.effective_radius();
    std::vector<AmbiguitySet> sets;
    sets.reserve(static_cast<std::size_t>(num_tds));
    if (!config.per_device_history) {
        const auto ref = empirical_distribution(
            generate_history(truth, space, config.history_size, seed), space);
        for (int i = 0; i < num_tds; ++i)
            sets.emplace_back(space, ref, eps);
        return sets;
    }
    for (int i = 0; i < num_tds; ++i) {
        const auto h = generate_history(truth, space, config.history_size, seed,
                                        static_cast<std::uint32_t>(i));
        sets.emplace_back(space, empirical_distribution(h, space), eps);
    }
    return sets;
}

SolveResult solve_method(Method method, const Scenario& scenario,
                         const std::vector<AmbiguitySet>& sets) {
    if (sets.empty())
        throw ShapeError("no ambiguity sets");
    const SampleSpace& space = sets.front().space;
    switch (method) {
    case Method::Mdrloa:
        return mdrloa_solve(scenario, sets);
    case Method::Deterministic:
        return baseline_deterministic(scenario, space.mean_atom(), Method::Deterministic);
    case Method::Robust:
        return baseline_deterministic(scenario, space.max_atom(), Method::Robust);
    case Method::Exhaustive:
        return exhaustive_solve(scenario, task_means(space, worst_case_distributions(sets)));
    }
    throw std::logic_error("unknown method");
}

const MethodSummary& EvaluationReport::summary(Method method, double param_value) const {
    for (const auto& s : summaries)
        if (s.method == method && s.param_value == param_value)
            return s;
    throw std::out_of_range(std::string("no summary for ") + method_tag(method));
}

namespace {

std::vector<EvaluationRow> run_seed(const ExperimentConfig& config, std::uint64_t seed,
                                    const std::string& param_name, double param_value) {
    const Scenario scenario = generate_scenario(config.scenario, seed);
    const auto sets = build_ambiguity_sets(config, scenario.num_tds(), seed);
    const Realization real = draw_realization(config.truth_distribution(), config.space(),
                                              scenario.num_tds(), seed, config.truth_id());
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<EvaluationRow> rows;
    for (Method m : config.methods) {
        EvaluationRow row;
        row.method = m;
        row.seed = seed;
        row.param_name = param_name;
        row.param_value = param_value;
        try {
            const SolveResult r = solve_method(m, scenario, sets);
            const EnergyUse e = realized_energy(r.decision, scenario, real);
            row.feasible = true;
            row.realized_latency = realized_latency(r.decision, scenario, real);
            row.max_uav_energy = e.uav.maxCoeff();
            row.hap_energy = e.hap;
            row.variable_energy = e.variable_total(scenario);
            row.budget_violation = !energy_feasible(e, scenario);
        } catch (const InfeasibleError& ex) {
            row.feasible = false;
            row.realized_latency = row.max_uav_energy = row.hap_energy = row.variable_energy = nan;
            row.error = ex.what();
        } catch (const SizeError& ex) {
            row.feasible = false;
            row.realized_latency = row.max_uav_energy = row.hap_energy = row.variable_energy = nan;
            row.error = ex.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
    if (v.empty())
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() < 2)
        return {mean, 0.0};
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

std::vector<MethodSummary> summarize(const std::vector<EvaluationRow>& rows,
                                     const std::vector<Method>& methods,
                                     const std::string& param_name, double param_value) {
    std::vector<MethodSummary> out;
    for (Method m : methods) {
        MethodSummary s;
        s.method = m;
        s.param_name = param_name;
        s.param_value = param_value;
        std::vector<double> lat, en;
        for (const auto& r : rows) {
            if (r.method != m)
                continue;
            ++s.runs;
            if (!r.feasible)
                continue;
            ++s.feasible_runs;
            lat.push_back(r.realized_latency);
            en.push_back(r.variable_energy);
            s.budget_violations += r.budget_violation ? 1 : 0;
        }
        std::tie(s.latency_mean, s.latency_std) = mean_std(lat);
        std::tie(s.energy_mean, s.energy_std) = mean_std(en);
        out.push_back(s);
    }
    return out;
}

std::string fmt(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

EvaluationReport compare_methods(const ExperimentConfig& config, const std::string& param_name,
                                 double param_value) {
    if (config.seeds.empty())
        throw ConfigError("experiment.seeds", "at least one seed is required");
    if (config.methods.empty())
        throw ConfigError("experiment.methods", "at least one method is required");
    config.scenario.validate();

    const std::size_t n = config.seeds.size();
    std::vector<std::vector<EvaluationRow>> per_seed(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            try {
                per_seed[k] = run_seed(config, config.seeds[k], param_name, param_value);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const std::size_t jobs = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, config.jobs)));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    EvaluationReport report;
    for (auto& rows : per_seed)
        for (auto& r : rows)
            report.rows.push_back(std::move(r));
    report.summaries = summarize(report.rows, config.methods, param_name, param_value);
    return report;
}

const char* sweep_param_name(SweepParam param) {
    switch (param) {
    case SweepParam::HistorySize:
        return "Q";
    case SweepParam::Radius:
        return "eps";
    case SweepParam::QuotaHap:
        return "quota-hap";
    case SweepParam::QuotaUav:
        return "quota-uav";
    }
    return "unknown";
}

SweepParam parse_sweep_param(const std::string& name) {
    for (SweepParam p : {SweepParam::HistorySize, SweepParam::Radius, SweepParam::QuotaHap,
                         SweepParam::QuotaUav})
        if (name == sweep_param_name(p))
            return p;
    throw ConfigError("sweep.param", "unknown parameter '" + name + "' (expected Q, eps, quota-hap or quota-uav)");
}

EvaluationReport sweep(const ExperimentConfig& config, SweepParam param,
                       const std::vector<double>& values) {
    if (values.empty())
        throw ConfigError("sweep.values", "at least one value is required");
    const char* name = sweep_param_name(param);
    const auto as_count = [&](double v) {
        if (!(v >= 0.0) || v != std::floor(v) || v > 1e9)
            throw ConfigError("sweep.values", std::string(name) + " values must be non-negative integers");
        return static_cast<int>(v);
    };
    EvaluationReport all;
    for (double v : values) {
        ExperimentConfig c = config;
        switch (param) {
        case SweepParam::HistorySize:
            if (as_count(v) < 1)
                throw ConfigError("sweep.values", "Q must be at least 1");
            c.history_size = static_cast<std::size_t>(as_count(v));
            c.derive_radius = true;
            break;
        case SweepParam::Radius:
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ConfigError("sweep.values", "eps must be finite and non-negative");
            c.radius = v;
            c.derive_radius = false;
            break;
        case SweepParam::QuotaHap:
            c.scenario.quota_hap = as_count(v);
            break;
        case SweepParam::QuotaUav:
            c.scenario.quota_uav = as_count(v);
            break;
        }
        auto part = compare_methods(c, name, v);
        all.rows.insert(all.rows.end(), part.rows.begin(), part.rows.end());
        all.summaries.insert(all.summaries.end(), part.summaries.begin(), part.summaries.end());
    }
    return all;
}

void write_csv(const EvaluationReport& report, std::ostream& out) {
    out << "method,seed,param_name,param_value,realized_latency_s,max_uav_energy_J,hap_energy_J,feasible\n";
    for (const auto& r : report.rows)
        out << method_tag(r.method) << ',' << r.seed << ',' << r.param_name << ','
            << fmt(r.param_value) << ',' << fmt(r.realized_latency) << ',' << fmt(r.max_uav_energy)
            << ',' << fmt(r.hap_energy) << ',' << (r.feasible ? "true" : "false") << '\n';
}

double percent_gap(double mdrloa, double baseline) {
    return (baseline - mdrloa) / baseline * 100.0;
}

nlohmann::json summary_json(const EvaluationReport& report) {
    nlohmann::json groups = nlohmann::json::array();
    std::vector<double> seen;
    for (const auto& s : report.summaries) {
        if (std::find(seen.begin(), seen.end(), s.param_value) != seen.end())
            continue;
        seen.push_back(s.param_value);
        nlohmann::json g;
        g["param_name"] = s.param_name;
        g["param_value"] = s.param_value;
        nlohmann::json methods = nlohmann::json::object();
        const MethodSummary* dro = nullptr;
        const MethodSummary* det = nullptr;
        const MethodSummary* rob = nullptr;
        for (const auto& m : report.summaries) {
            if (m.param_value != s.param_value)
                continue;
            methods[method_tag(m.method)] = {{"runs", m.runs},
                                             {"feasible_runs", m.feasible_runs},
                                             {"latency_mean_s", m.latency_mean},
                                             {"latency_std_s", m.latency_std},
                                             {"variable_energy_mean_J", m.energy_mean},
                                             {"variable_energy_std_J", m.energy_std},
                                             {"budget_violations", m.budget_violations}};
            if (m.method == Method::Mdrloa)
                dro = &m;
            if (m.method == Method::Deterministic)
                det = &m;
            if (m.method == Method::Robust)
                rob = &m;
        }
        g["methods"] = methods;
        if (dro && det)
            g["latency_gap_vs_do_pct"] = percent_gap(dro->latency_mean, det->latency_mean);
        if (dro && rob)
            g["energy_gap_vs_ro_pct"] = percent_gap(dro->energy_mean, rob->energy_mean);
        groups.push_back(std::move(g));
    }
    return {{"groups", groups}};
}

} // namespace aan
