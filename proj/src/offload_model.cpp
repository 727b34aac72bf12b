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

#include "aan/offload_model.hpp"

#include "aan/errors.hpp"

#include <cmath>
#include <sstream>

namespace aan {

namespace {

void check_shape(const Eigen::MatrixXd& m, const Scenario& s, const char* what) {
    if (m.rows() != s.num_tds() || m.cols() != s.num_uavs()) {
        std::ostringstream msg;
        msg << what << " is " << m.rows() << "x" << m.cols() << ", expected " << s.num_tds() << "x"
            << s.num_uavs();
        throw ShapeError(msg.str());
    }
}

void check_inputs(const RelaxedDecision& d, const Scenario& s, const Eigen::VectorXd& means) {
    check_shape(d.x, s, "x");
    check_shape(d.y, s, "y");
    check_shape(d.z, s, "z");
    if (means.size() != s.num_tds())
        throw ShapeError("expected one task mean per terminal device");
}

} // namespace

OffloadDecision OffloadDecision::zeros(int num_tds, int num_uavs) {
    return {Eigen::MatrixXi::Zero(num_tds, num_uavs), Eigen::MatrixXi::Zero(num_tds, num_uavs),
            Eigen::MatrixXi::Zero(num_tds, num_uavs)};
}

RelaxedDecision RelaxedDecision::from(const OffloadDecision& d) {
    return {d.x.cast<double>(), d.y.cast<double>(), d.z.cast<double>()};
}

RelaxedDecision P2Layout::unpack(const std::vector<double>& primal) const {
    if (primal.size() != 3 * block())
        throw ShapeError("primal vector does not match the relaxed-problem layout");
    RelaxedDecision d{Eigen::MatrixXd(num_tds, num_uavs), Eigen::MatrixXd(num_tds, num_uavs),
                      Eigen::MatrixXd(num_tds, num_uavs)};
    for (int i = 0; i < num_tds; ++i)
        for (int j = 0; j < num_uavs; ++j) {
            d.x(i, j) = primal[x(i, j)];
            d.y(i, j) = primal[y(i, j)];
            d.z(i, j) = primal[z(i, j)];
        }
    return d;
}

Eigen::VectorXd task_means(const SampleSpace& space, const std::vector<Distribution>& dists) {
    Eigen::VectorXd m(static_cast<Eigen::Index>(dists.size()));
    for (std::size_t i = 0; i < dists.size(); ++i)
        m(static_cast<Eigen::Index>(i)) = dists[i].mean(space);
    return m;
}

double expected_latency(const RelaxedDecision& d, const Scenario& s, const Eigen::VectorXd& means) {
    check_inputs(d, s, means);
    const auto c = per_bit_coefficients(s);
    double total = 0.0;
    for (int i = 0; i < s.num_tds(); ++i) {
        double per_bit = 0.0;
        for (int j = 0; j < s.num_uavs(); ++j)
            per_bit += d.x(i, j) * c.access_delay(i, j) + d.y(i, j) * c.uav_compute_delay(j) +
                       d.z(i, j) * c.relay_path_delay(j);
        total += means(i) * per_bit;
    }
    return total;
}

double expected_latency(const OffloadDecision& d, const Scenario& s, const Eigen::VectorXd& means) {
    return expected_latency(RelaxedDecision::from(d), s, means);
}

double EnergyUse::variable_total(const Scenario& s) const {
    return uav.sum() - s.energy().uav_basic * static_cast<double>(uav.size()) + hap -
           s.energy().hap_basic;
}

EnergyUse expected_energy(const RelaxedDecision& d, const Scenario& s, const Eigen::VectorXd& means) {
    check_inputs(d, s, means);
    const auto c = per_bit_coefficients(s);
    EnergyUse use{Eigen::VectorXd::Constant(s.num_uavs(), s.energy().uav_basic), s.energy().hap_basic};
    for (int i = 0; i < s.num_tds(); ++i)
        for (int j = 0; j < s.num_uavs(); ++j) {
            use.uav(j) += means(i) * (d.z(i, j) * c.relay_energy(j) + d.y(i, j) * c.uav_compute_energy(j));
            use.hap += means(i) * d.z(i, j) * c.hap_compute_energy;
        }
    return use;
}

EnergyUse expected_energy(const OffloadDecision& d, const Scenario& s, const Eigen::VectorXd& means) {
    return expected_energy(RelaxedDecision::from(d), s, means);
}

bool within_budget(double energy, double budget) {
    return energy <= budget + 1e-9 * std::max(1.0, std::abs(budget));
}

bool energy_feasible(const EnergyUse& use, const Scenario& s) {
    for (Eigen::Index j = 0; j < use.uav.size(); ++j)
        if (!within_budget(use.uav(j), s.energy().uav_budget))
            return false;
    return within_budget(use.hap, s.energy().hap_budget);
}

std::optional<std::string> structural_violation(const OffloadDecision& d, const Scenario& s) {
    const int ni = s.num_tds();
    const int nj = s.num_uavs();
    for (const auto* m : {&d.x, &d.y, &d.z})
        if (m->rows() != ni || m->cols() != nj)
            return "decision matrices have the wrong shape";
    std::ostringstream msg;
    for (int i = 0; i < ni; ++i)
        for (int j = 0; j < nj; ++j) {
            for (int v : {d.x(i, j), d.y(i, j), d.z(i, j)})
                if (v != 0 && v != 1) {
                    msg << "entry (" << i << "," << j << ") is not binary";
                    return msg.str();
                }
            if (d.y(i, j) + d.z(i, j) != d.x(i, j)) {
                msg << "flow conservation fails at (" << i << "," << j << ")";
                return msg.str();
            }
        }
    for (int i = 0; i < ni; ++i)
        if (d.x.row(i).sum() != 1) {
            msg << "TD " << i << " is not assigned to exactly one UAV";
            return msg.str();
        }
    for (int j = 0; j < nj; ++j)
        if (d.x.col(j).sum() > s.quota_uav()) {
            msg << "UAV " << j << " exceeds its quota";
            return msg.str();
        }
    if (d.z.sum() > s.quota_hap())
        return std::string("HAP quota exceeded");
    return std::nullopt;
}

P2Model build_p2(const Scenario& s, const Eigen::VectorXd& means) {
    const int ni = s.num_tds();
    const int nj = s.num_uavs();
    if (means.size() != ni)
        throw ShapeError("expected one task mean per terminal device");
    const auto c = per_bit_coefficients(s);
    const P2Layout L{ni, nj};
    const std::size_t n = 3 * L.block();

    P2Model model;
    model.layout = L;
    auto& lp = model.lp;
    lp = lp::LinearProgram(n, lp::Sense::Minimize);
    for (int i = 0; i < ni; ++i)
        for (int j = 0; j < nj; ++j) {
            lp.objective[L.x(i, j)] = means(i) * c.access_delay(i, j);
            lp.objective[L.y(i, j)] = means(i) * c.uav_compute_delay(j);
            lp.objective[L.z(i, j)] = means(i) * c.relay_path_delay(j);
            const std::string ij = "_" + std::to_string(i) + "_" + std::to_string(j);
            lp.names[L.x(i, j)] = "x" + ij;
            lp.names[L.y(i, j)] = "y" + ij;
            lp.names[L.z(i, j)] = "z" + ij;
        }
    std::fill(lp.upper.begin(), lp.upper.end(), 1.0);

    for (int i = 0; i < ni; ++i) {
        std::vector<double> row(n, 0.0);
        for (int j = 0; j < nj; ++j)
            row[L.x(i, j)] = 1.0;
        lp.add_constraint(std::move(row), lp::Relation::Equal, 1.0, "assign_" + std::to_string(i));
    }
    for (int j = 0; j < nj; ++j) {
        std::vector<double> row(n, 0.0);
        for (int i = 0; i < ni; ++i)
            row[L.x(i, j)] = 1.0;
        lp.add_constraint(std::move(row), lp::Relation::LessEqual, s.quota_uav(),
                          "uav_quota_" + std::to_string(j));
    }
    {
        std::vector<double> row(n, 0.0);
        for (int i = 0; i < ni; ++i)
            for (int j = 0; j < nj; ++j)
                row[L.z(i, j)] = 1.0;
        lp.add_constraint(std::move(row), lp::Relation::LessEqual, s.quota_hap(), "hap_quota");
    }
    for (int i = 0; i < ni; ++i)
        for (int j = 0; j < nj; ++j) {
            std::vector<double> row(n, 0.0);
            row[L.y(i, j)] = 1.0;
            row[L.z(i, j)] = 1.0;
            row[L.x(i, j)] = -1.0;
            lp.add_constraint(std::move(row), lp::Relation::Equal, 0.0,
                              "flow_" + std::to_string(i) + "_" + std::to_string(j));
        }
    const auto& e = s.energy();
    for (int j = 0; j < nj; ++j) {
        std::vector<double> row(n, 0.0);
        for (int i = 0; i < ni; ++i) {
            row[L.y(i, j)] = means(i) * c.uav_compute_energy(j);
            row[L.z(i, j)] = means(i) * c.relay_energy(j);
        }
        lp.add_constraint(std::move(row), lp::Relation::LessEqual, e.uav_budget - e.uav_basic,
                          "uav_energy_" + std::to_string(j));
    }
    {
        std::vector<double> row(n, 0.0);
        for (int i = 0; i < ni; ++i)
            for (int j = 0; j < nj; ++j)
                row[L.z(i, j)] = means(i) * c.hap_compute_energy;
        lp.add_constraint(std::move(row), lp::Relation::LessEqual, e.hap_budget - e.hap_basic,
                          "hap_energy");
    }
    model.dims = {lp.num_vars(), lp.num_constraints()};
    return model;
}

lp::LinearProgram build_p3(const Scenario& s, const Eigen::VectorXd& means) {
    const int ni = s.num_tds();
    const int nj = s.num_uavs();
    if (means.size() != ni)
        throw ShapeError("expected one task mean per terminal device");
    const auto c = per_bit_coefficients(s);
    const auto& e = s.energy();

    lp::LinearProgram lp(0, lp::Sense::Maximize);
    std::vector<std::size_t> assign(ni), uav_quota(nj), uav_energy(nj);
    std::vector<std::size_t> flow(static_cast<std::size_t>(ni * nj));
    for (int i = 0; i < ni; ++i)
        assign[i] = lp.add_variable(1.0, -lp::kInf, lp::kInf, "a_assign_" + std::to_string(i));
    for (int j = 0; j < nj; ++j)
        uav_quota[j] = lp.add_variable(-s.quota_uav(), 0.0, lp::kInf, "a_uav_quota_" + std::to_string(j));
    const std::size_t hap_quota = lp.add_variable(-s.quota_hap(), 0.0, lp::kInf, "a_hap_quota");
    for (int i = 0; i < ni; ++i)
        for (int j = 0; j < nj; ++j)
            flow[i * nj + j] = lp.add_variable(0.0, 0.0, lp::kInf,
                                               "a_flow_" + std::to_string(i) + "_" + std::to_string(j));
    for (int j = 0; j < nj; ++j)
        uav_energy[j] = lp.add_variable(-(e.uav_budget - e.uav_basic), 0.0, lp::kInf,
                                        "a_uav_energy_" + std::to_string(j));
    const std::size_t hap_energy = lp.add_variable(-(e.hap_budget - e.hap_basic), 0.0, lp::kInf, "a_hap_energy");

    const std::size_t n = lp.num_vars();
    for (int i = 0; i < ni; ++i)
        for (int j = 0; j < nj; ++j) {
            const std::string ij = "_" + std::to_string(i) + "_" + std::to_string(j);
            const std::size_t f = flow[i * nj + j];
            // column of x_ij
            std::vector<double> rx(n, 0.0);
            rx[assign[i]] = 1.0;
            rx[uav_quota[j]] = -1.0;
            rx[f] = -1.0;
            lp.add_constraint(std::move(rx), lp::Relation::LessEqual, means(i) * c.access_delay(i, j), "col_x" + ij);
            // column of y_ij
            std::vector<double> ry(n, 0.0);
            ry[f] = 1.0;
            ry[uav_energy[j]] = -means(i) * c.uav_compute_energy(j);
            lp.add_constraint(std::move(ry), lp::Relation::LessEqual, means(i) * c.uav_compute_delay(j), "col_y" + ij);
            // column of z_ij
            std::vector<double> rz(n, 0.0);
            rz[f] = 1.0;
            rz[hap_quota] = -1.0;
            rz[uav_energy[j]] = -means(i) * c.relay_energy(j);
            rz[hap_energy] = -means(i) * c.hap_compute_energy;
            lp.add_constraint(std::move(rz), lp::Relation::LessEqual, means(i) * c.relay_path_delay(j), "col_z" + ij);
        }
    return lp;
}

std::vector<Distribution> worst_case_distributions(const std::vector<AmbiguitySet>& sets) {
    std::vector<Distribution> out;
    out.reserve(sets.size());
    for (const auto& set : sets)
        out.push_back(worst_case_mean_distribution(set).first);
    return out;
}

DimensionReport dimension_report(const Scenario& s) {
    const std::size_t ni = static_cast<std::size_t>(s.num_tds());
    const std::size_t nj = static_cast<std::size_t>(s.num_uavs());
    const auto model = build_p2(s, Eigen::VectorXd::Ones(s.num_tds()));
    DimensionReport rep;
    rep.actual = model.dims;
    rep.box_bounds = 2 * model.dims.num_vars;
    rep.reference_vars = 3 * ni * nj;
    rep.reference_constraints = 6 * ni * nj + 2 * nj + ni;
    rep.vars_match = rep.actual.num_vars == rep.reference_vars;
    rep.constraints_match = rep.actual.num_constraints == rep.reference_constraints;
    std::ostringstream note;
    note << "rows: " << ni << " assignment + " << nj << " UAV quota + 1 HAP quota + " << ni * nj
         << " flow + " << nj << " UAV energy + 1 HAP energy = " << rep.actual.num_constraints
         << " (HAP quota and HAP energy are single global rows); " << rep.box_bounds
         << " box bounds are held as variable bounds; reference count 6IJ+2J+I = "
         << rep.reference_constraints;
    rep.note = note.str();
    return rep;
}

nlohmann::json decision_to_json(const OffloadDecision& d) {
    const auto mat = [](const Eigen::MatrixXi& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                row.push_back(m(i, j));
            rows.push_back(row);
        }
        return rows;
    };
    return {{"x", mat(d.x)}, {"y", mat(d.y)}, {"z", mat(d.z)}};
}

} // namespace aan
