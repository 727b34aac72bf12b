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

#include "aan/mdrloa.hpp"

#include "aan/errors.hpp"
#include "aan/lp.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace aan {

const char* method_tag(Method method) {
    switch (method) {
    case Method::Mdrloa:
        return "MDRLOA";
    case Method::Deterministic:
        return "DO";
    case Method::Robust:
        return "RO";
    case Method::Exhaustive:
        return "EXHAUSTIVE";
    }
    return "UNKNOWN";
}

std::optional<BranchIndex> select_branch(const Eigen::MatrixXd& values, double tol) {
    std::optional<BranchIndex> best;
    double best_score = -1.0;
    // row-major scan; a later entry must beat the incumbent by more than
    // rounding noise, so near-ties keep the smallest (i, j)
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            const double v = values(i, j);
            const double score = std::min(v, 1.0 - v);
            if (score <= tol)
                continue;
            if (score > best_score + 1e-12) {
                best_score = score;
                best = BranchIndex{static_cast<int>(i), static_cast<int>(j)};
            }
        }
    return best;
}

namespace {

std::size_t count_fractional(const Eigen::MatrixXd& m) {
    std::size_t n = 0;
    for (Eigen::Index k = 0; k < m.size(); ++k)
        if (std::min(m(k), 1.0 - m(k)) > kIntegralityTol)
            ++n;
    return n;
}

void fix(lp::LinearProgram& lp, std::size_t var, double value) {
    lp.lower[var] = value;
    lp.upper[var] = value;
}

struct DiveState {
    lp::LinearProgram lp;
    lp::LpSolution solution;
};

enum class Block { X, Y };

std::string describe_fixings(const lp::LinearProgram& lp) {
    std::ostringstream s;
    bool first = true;
    for (std::size_t v = 0; v < lp.num_vars(); ++v) {
        if (lp.lower[v] != lp.upper[v])
            continue;
        s << (first ? "" : ", ") << lp.names[v] << "=" << lp.lower[v];
        first = false;
    }
    return first ? std::string("none") : s.str();
}

/// Branches on `block` until all of its entries are integral.
void dive_block(DiveState& state, const P2Layout& layout, Block block, SolveResult& result) {
    while (true) {
        const RelaxedDecision relaxed = layout.unpack(state.solution.primal);
        const Eigen::MatrixXd& values = block == Block::X ? relaxed.x : relaxed.y;
        const auto branch = select_branch(values);
        if (!branch)
            return;
        const auto var_of = [&](int i, int j) {
            return block == Block::X ? layout.x(i, j) : layout.y(i, j);
        };

        // every entry of the block that is already integral gets fixed too
        lp::LinearProgram base = state.lp;
        for (Eigen::Index i = 0; i < values.rows(); ++i)
            for (Eigen::Index j = 0; j < values.cols(); ++j) {
                const double v = values(i, j);
                const double r = std::round(v);
                if (std::abs(v - r) <= kIntegralityTol)
                    fix(base, var_of(static_cast<int>(i), static_cast<int>(j)), r);
            }

        const std::size_t star = var_of(branch->i, branch->j);
        lp::LinearProgram child0 = base;
        lp::LinearProgram child1 = std::move(base);
        fix(child0, star, 0.0);
        fix(child1, star, 1.0);
        auto sol0 = lp::solve_lp(child0);
        auto sol1 = lp::solve_lp(child1);
        result.lp_solve_count += 2;
        const bool ok0 = sol0.status == lp::Status::Optimal;
        const bool ok1 = sol1.status == lp::Status::Optimal;
        if (!ok0 && !ok1) {
            std::ostringstream msg;
            msg << "dive: both fixings of " << child0.names[star]
                << " are infeasible; fixed variables: " << describe_fixings(child0);
            throw BacktrackError(msg.str());
        }
        const bool take0 = ok0 && (!ok1 || sol0.objective < sol1.objective);
        if (take0)
            state = {std::move(child0), std::move(sol0)};
        else
            state = {std::move(child1), std::move(sol1)};
        result.dive_objectives.push_back(state.solution.objective);
    }
}

OffloadDecision round_decision(const RelaxedDecision& r) {
    const auto rounded = [](const Eigen::MatrixXd& m) {
        return m.unaryExpr([](double v) { return static_cast<int>(std::lround(v)); }).eval();
    };
    OffloadDecision d{rounded(r.x), rounded(r.y), Eigen::MatrixXi()};
    d.z = d.x - d.y;
    for (Eigen::Index k = 0; k < d.z.size(); ++k) {
        if (std::abs(r.z(k) - d.z(k)) > kIntegralityTol || (d.z(k) != 0 && d.z(k) != 1))
            throw SolverError("dive: relay variable is not integral after the y phase");
    }
    return d;
}

} // namespace

SolveResult dive_and_fix(const Scenario& scenario, const Eigen::VectorXd& sizes, Method tag) {
    P2Model model = build_p2(scenario, sizes);
    SolveResult result;
    result.method = tag;
    result.task_sizes = sizes;

    auto root = lp::solve_lp(model.lp);
    result.lp_solve_count = 1;
    if (root.status != lp::Status::Optimal) {
        std::ostringstream msg;
        msg << "relaxed offloading problem is " << lp::to_string(root.status) << " (I="
            << scenario.num_tds() << ", J=" << scenario.num_uavs() << ", N_u=" << scenario.quota_uav()
            << ", N_H=" << scenario.quota_hap() << ")";
        throw InfeasibleError(msg.str());
    }
    result.relaxation_bound = root.objective;
    result.dive_objectives.push_back(root.objective);
    result.fractional_x_at_root = count_fractional(model.layout.unpack(root.primal).x);

    DiveState state{std::move(model.lp), std::move(root)};
    dive_block(state, model.layout, Block::X, result);

    // x is integral now; pin it before working on y
    const RelaxedDecision after_x = model.layout.unpack(state.solution.primal);
    for (int i = 0; i < scenario.num_tds(); ++i)
        for (int j = 0; j < scenario.num_uavs(); ++j)
            fix(state.lp, model.layout.x(i, j), std::round(after_x.x(i, j)));
    result.fractional_y_after_x = count_fractional(after_x.y);
    dive_block(state, model.layout, Block::Y, result);

    result.decision = round_decision(model.layout.unpack(state.solution.primal));
    if (const auto why = structural_violation(result.decision, scenario))
        throw SolverError("dive produced an invalid decision: " + *why);
    if (!energy_feasible(expected_energy(result.decision, scenario, sizes), scenario))
        throw SolverError("dive produced a decision that exceeds an energy budget");
    result.worst_case_expected_latency = expected_latency(result.decision, scenario, sizes);
    return result;
}

SolveResult mdrloa_solve(const Scenario& scenario, const std::vector<AmbiguitySet>& sets) {
    if (sets.size() != static_cast<std::size_t>(scenario.num_tds()))
        throw ShapeError("expected one ambiguity set per terminal device");
    const auto worst = worst_case_distributions(sets);
    Eigen::VectorXd sizes(scenario.num_tds());
    for (std::size_t i = 0; i < sets.size(); ++i)
        sizes(static_cast<Eigen::Index>(i)) = worst[i].mean(sets[i].space);
    return dive_and_fix(scenario, sizes, Method::Mdrloa);
}

SolveResult baseline_deterministic(const Scenario& scenario, double estimate, Method tag) {
    if (!(estimate > 0.0) || !std::isfinite(estimate))
        throw DomainError("task size estimate must be positive");
    return dive_and_fix(scenario, Eigen::VectorXd::Constant(scenario.num_tds(), estimate), tag);
}

SolveResult exhaustive_solve(const Scenario& scenario, const Eigen::VectorXd& sizes) {
    const int ni = scenario.num_tds();
    const int nj = scenario.num_uavs();
    if (ni > kExhaustiveMaxTds || nj > kExhaustiveMaxUavs) {
        std::ostringstream msg;
        msg << "exhaustive search limited to I <= " << kExhaustiveMaxTds << " and J <= "
            << kExhaustiveMaxUavs << " (got I=" << ni << ", J=" << nj << ")";
        throw SizeError(msg.str());
    }
    if (sizes.size() != ni)
        throw ShapeError("expected one task size per terminal device");

    const auto c = per_bit_coefficients(scenario);
    const auto& e = scenario.energy();
    // choice per TD: uav j, computed there (0) or relayed (1)
    std::vector<int> uav(static_cast<std::size_t>(ni), 0);
    std::vector<int> relay(static_cast<std::size_t>(ni), 0);
    std::vector<int> best_uav, best_relay;
    double best = std::numeric_limits<double>::infinity();

    const int choices = 2 * nj;
    long long total = 1;
    for (int i = 0; i < ni; ++i)
        total *= choices;
    for (long long code = 0; code < total; ++code) {
        long long rest = code;
        for (int i = 0; i < ni; ++i) {
            const int ch = static_cast<int>(rest % choices);
            rest /= choices;
            uav[i] = ch / 2;
            relay[i] = ch % 2;
        }
        std::vector<int> load(static_cast<std::size_t>(nj), 0);
        int relayed = 0;
        for (int i = 0; i < ni; ++i) {
            ++load[uav[i]];
            relayed += relay[i];
        }
        bool ok = relayed <= scenario.quota_hap();
        for (int j = 0; j < nj && ok; ++j)
            ok = load[j] <= scenario.quota_uav();
        if (!ok)
            continue;
        Eigen::VectorXd uav_energy = Eigen::VectorXd::Constant(nj, e.uav_basic);
        double hap_energy = e.hap_basic;
        double latency = 0.0;
        for (int i = 0; i < ni; ++i) {
            const int j = uav[i];
            if (relay[i]) {
                latency += sizes(i) * (c.access_delay(i, j) + c.relay_path_delay(j));
                uav_energy(j) += sizes(i) * c.relay_energy(j);
                hap_energy += sizes(i) * c.hap_compute_energy;
            } else {
                latency += sizes(i) * (c.access_delay(i, j) + c.uav_compute_delay(j));
                uav_energy(j) += sizes(i) * c.uav_compute_energy(j);
            }
        }
        if (!energy_feasible({uav_energy, hap_energy}, scenario))
            continue;
        if (latency < best) {
            best = latency;
            best_uav = uav;
            best_relay = relay;
        }
    }
    if (best_uav.empty())
        throw InfeasibleError("exhaustive search found no feasible decision");

    SolveResult result;
    result.method = Method::Exhaustive;
    result.task_sizes = sizes;
    result.decision = OffloadDecision::zeros(ni, nj);
    for (int i = 0; i < ni; ++i) {
        result.decision.x(i, best_uav[i]) = 1;
        (best_relay[i] ? result.decision.z : result.decision.y)(i, best_uav[i]) = 1;
    }
    result.worst_case_expected_latency = expected_latency(result.decision, scenario, sizes);

    const auto root = lp::solve_lp(build_p2(scenario, sizes).lp);
    result.lp_solve_count = 1;
    result.relaxation_bound = root.status == lp::Status::Optimal
                                  ? root.objective
                                  : std::numeric_limits<double>::quiet_NaN();
    result.dive_objectives.push_back(result.relaxation_bound);
    return result;
}

nlohmann::json solve_result_to_json(const SolveResult& r) {
    return {{"method", method_tag(r.method)},
            {"decision", decision_to_json(r.decision)},
            {"worst_case_expected_latency_s", r.worst_case_expected_latency},
            {"relaxation_bound_s", r.relaxation_bound},
            {"lp_solve_count", r.lp_solve_count},
            {"task_sizes_bits", std::vector<double>(r.task_sizes.begin(), r.task_sizes.end())},
            {"dive_objectives_s", r.dive_objectives}};
}

} // namespace aan
