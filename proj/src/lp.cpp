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

#include "aan/lp.hpp"

#include "aan/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>

namespace aan::lp {

const char* to_string(Status status) {
    switch (status) {
    case Status::Optimal:
        return "optimal";
    case Status::Infeasible:
        return "infeasible";
    case Status::Unbounded:
        return "unbounded";
    }
    return "unknown";
}

LinearProgram::LinearProgram(std::size_t num_vars, Sense sense_)
    : sense(sense_), objective(num_vars, 0.0), lower(num_vars, 0.0), upper(num_vars, kInf),
      names(num_vars) {}

std::size_t LinearProgram::add_variable(double cost, double lo, double hi, std::string name) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    names.push_back(std::move(name));
    for (auto& row : constraints)
        row.coeffs.push_back(0.0);
    return objective.size() - 1;
}

std::size_t LinearProgram::add_constraint(std::vector<double> coeffs, Relation relation, double rhs,
                                          std::string name) {
    if (coeffs.size() != num_vars())
        throw ShapeError("add_constraint: row has " + std::to_string(coeffs.size()) +
                         " coefficients, expected " + std::to_string(num_vars()));
    constraints.push_back({std::move(coeffs), relation, rhs, std::move(name)});
    return constraints.size() - 1;
}

void LinearProgram::validate() const {
    const std::size_t n = num_vars();
    if (lower.size() != n || upper.size() != n)
        throw ShapeError("bounds size differs from objective size");
    if (!names.empty() && names.size() != n)
        throw ShapeError("names size differs from objective size");
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(objective[j]))
            throw DomainError("objective coefficient " + std::to_string(j) + " is not finite");
        if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] == kInf || upper[j] == -kInf)
            throw DomainError("invalid bounds on variable " + std::to_string(j));
    }
    for (std::size_t r = 0; r < constraints.size(); ++r) {
        const auto& row = constraints[r];
        if (row.coeffs.size() != n)
            throw ShapeError("constraint " + std::to_string(r) + " has " +
                             std::to_string(row.coeffs.size()) + " coefficients, expected " +
                             std::to_string(n));
        if (!std::isfinite(row.rhs))
            throw DomainError("constraint " + std::to_string(r) + " has a non-finite rhs");
        for (double a : row.coeffs)
            if (!std::isfinite(a))
                throw DomainError("constraint " + std::to_string(r) + " has a non-finite coefficient");
    }
}

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class VarKind { Fixed, Shifted, Mirrored, Free };

struct VarMap {
    VarKind kind = VarKind::Shifted;
    Eigen::Index col = -1; ///< first standard-form column
    double offset = 0.0;
};

/// min c'u  s.t.  A u = b, u >= 0, b >= 0, rows scaled to unit max-norm.
/// Columns: structural, then one slack per inequality row, then artificials.
struct StandardForm {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    Eigen::VectorXd row_scale;   ///< row r of the scaled system = original / row_scale[r]
    double cost_scale = 1.0;     ///< c = internal cost / cost_scale
    std::vector<double> row_sign; ///< -1 when the row was negated to make b >= 0
    std::vector<int> origin;      ///< >= 0: LP row index; < 0: upper bound of variable -origin-1
    std::vector<VarMap> vars;
    Eigen::Index num_structural = 0;
    Eigen::Index first_artificial = 0;
    std::vector<Eigen::Index> initial_basis;
};

std::optional<StandardForm> standardize(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    const double sense = lp.sense == Sense::Minimize ? 1.0 : -1.0;

    StandardForm sf;
    sf.vars.resize(n);
    Eigen::Index ncols = 0;
    std::vector<std::size_t> bounded;
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = lp.lower[j];
        const double hi = lp.upper[j];
        auto& v = sf.vars[j];
        if (lo > hi)
            return std::nullopt;
        if (lo == hi) {
            v = {VarKind::Fixed, -1, lo};
        } else if (std::isfinite(lo)) {
            v = {VarKind::Shifted, ncols++, lo};
            if (std::isfinite(hi))
                bounded.push_back(j);
        } else if (std::isfinite(hi)) {
            v = {VarKind::Mirrored, ncols++, hi};
        } else {
            v = {VarKind::Free, ncols, 0.0};
            ncols += 2;
        }
    }
    sf.num_structural = ncols;

    struct Row {
        Eigen::VectorXd coeffs;
        Relation rel;
        double rhs;
        int origin;
    };
    std::vector<Row> rows;
    rows.reserve(lp.num_constraints() + bounded.size());
    for (std::size_t r = 0; r < lp.num_constraints(); ++r) {
        const auto& con = lp.constraints[r];
        Row row{Eigen::VectorXd::Zero(ncols), con.relation, con.rhs, static_cast<int>(r)};
        for (std::size_t j = 0; j < n; ++j) {
            const double a = con.coeffs[j];
            if (a == 0.0)
                continue;
            const auto& v = sf.vars[j];
            row.rhs -= a * v.offset;
            switch (v.kind) {
            case VarKind::Fixed:
                break;
            case VarKind::Shifted:
                row.coeffs(v.col) += a;
                break;
            case VarKind::Mirrored:
                row.coeffs(v.col) -= a;
                break;
            case VarKind::Free:
                row.coeffs(v.col) += a;
                row.coeffs(v.col + 1) -= a;
                break;
            }
        }
        rows.push_back(std::move(row));
    }
    for (std::size_t j : bounded) {
        Row row{Eigen::VectorXd::Zero(ncols), Relation::LessEqual, lp.upper[j] - lp.lower[j],
                -static_cast<int>(j) - 1};
        row.coeffs(sf.vars[j].col) = 1.0;
        rows.push_back(std::move(row));
    }

    const auto m = static_cast<Eigen::Index>(rows.size());
    sf.row_sign.assign(rows.size(), 1.0);
    sf.origin.resize(rows.size());
    sf.row_scale = Eigen::VectorXd::Ones(m);
    Eigen::Index nslack = 0;
    Eigen::Index nart = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto& row = rows[r];
        sf.origin[r] = row.origin;
        if (row.rhs < 0.0) {
            row.coeffs = -row.coeffs;
            row.rhs = -row.rhs;
            sf.row_sign[r] = -1.0;
            if (row.rel == Relation::LessEqual)
                row.rel = Relation::GreaterEqual;
            else if (row.rel == Relation::GreaterEqual)
                row.rel = Relation::LessEqual;
        }
        const double scale = row.coeffs.size() > 0 ? row.coeffs.cwiseAbs().maxCoeff() : 0.0;
        if (scale > 0.0) {
            sf.row_scale(static_cast<Eigen::Index>(r)) = scale;
            row.coeffs /= scale;
            row.rhs /= scale;
        }
        if (row.rel != Relation::Equal)
            ++nslack;
        if (row.rel != Relation::LessEqual)
            ++nart;
    }

    const Eigen::Index total = ncols + nslack + nart;
    sf.first_artificial = ncols + nslack;
    sf.a = Eigen::MatrixXd::Zero(m, total);
    sf.b.resize(m);
    sf.initial_basis.resize(rows.size());
    Eigen::Index slack = ncols;
    Eigen::Index art = sf.first_artificial;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto ri = static_cast<Eigen::Index>(r);
        sf.a.row(ri).head(ncols) = rows[r].coeffs.transpose();
        sf.b(ri) = rows[r].rhs;
        switch (rows[r].rel) {
        case Relation::LessEqual:
            sf.a(ri, slack) = 1.0;
            sf.initial_basis[r] = slack++;
            break;
        case Relation::GreaterEqual:
            sf.a(ri, slack++) = -1.0;
            sf.a(ri, art) = 1.0;
            sf.initial_basis[r] = art++;
            break;
        case Relation::Equal:
            sf.a(ri, art) = 1.0;
            sf.initial_basis[r] = art++;
            break;
        }
    }

    sf.c = Eigen::VectorXd::Zero(total);
    for (std::size_t j = 0; j < n; ++j) {
        const double cj = sense * lp.objective[j];
        const auto& v = sf.vars[j];
        switch (v.kind) {
        case VarKind::Fixed:
            break;
        case VarKind::Shifted:
            sf.c(v.col) = cj;
            break;
        case VarKind::Mirrored:
            sf.c(v.col) = -cj;
            break;
        case VarKind::Free:
            sf.c(v.col) = cj;
            sf.c(v.col + 1) = -cj;
            break;
        }
    }
    const double cmax = sf.c.size() > 0 ? sf.c.cwiseAbs().maxCoeff() : 0.0;
    if (cmax > 0.0) {
        sf.cost_scale = cmax;
        sf.c /= cmax;
    }
    return sf;
}

class Simplex {
public:
    Simplex(const StandardForm& sf, const SolverOptions& opt)
        : sf_(sf), opt_(opt), m_(sf.a.rows()), ncols_(sf.a.cols()), basis_(sf.initial_basis) {
        max_pivots_ = 50 * static_cast<std::size_t>(m_ + ncols_) + 1000;
    }

    /// Returns false when phase 1 proves infeasibility.
    bool phase1() {
        cost_ = Eigen::VectorXd::Zero(ncols_);
        for (Eigen::Index j = sf_.first_artificial; j < ncols_; ++j)
            cost_(j) = 1.0;
        allow_artificial_ = true;
        refactor();
        if (run() == Outcome::Unbounded)
            throw SolverError("phase 1 reported unbounded; this cannot happen for a bounded objective");
        const double bmax = sf_.b.size() > 0 ? sf_.b.cwiseAbs().maxCoeff() : 0.0;
        if (-cost_row_(ncols_) > 1e-9 * std::max(1.0, bmax))
            return false;
        drive_out_artificials();
        return true;
    }

    /// Returns false when the LP is unbounded.
    bool phase2() {
        cost_ = sf_.c;
        allow_artificial_ = false;
        refactor();
        for (int attempt = 0; attempt < 4; ++attempt) {
            if (run() == Outcome::Unbounded)
                return false;
            // certify on a freshly factorized tableau; continue pivoting if drift hid a candidate
            refactor();
            if (!entering_candidate(false))
                break;
        }
        const double worst = t_.col(ncols_).minCoeff();
        if (worst < -opt_.feasibility_tol)
            throw SolverError(diagnostic("final basis is primal infeasible by " + std::to_string(-worst)));
        return true;
    }

    const std::vector<Eigen::Index>& basis() const noexcept { return basis_; }
    std::size_t pivots() const noexcept { return pivots_; }

    Eigen::VectorXd values() const {
        Eigen::VectorXd u = Eigen::VectorXd::Zero(ncols_);
        for (Eigen::Index r = 0; r < m_; ++r)
            u(basis_[static_cast<std::size_t>(r)]) = std::max(0.0, t_(r, ncols_));
        return u;
    }

    /// Multipliers of the scaled system: B' y = c_B.
    Eigen::VectorXd row_duals() const {
        if (m_ == 0)
            return {};
        Eigen::MatrixXd bmat(m_, m_);
        Eigen::VectorXd cb(m_);
        for (Eigen::Index r = 0; r < m_; ++r) {
            bmat.col(r) = sf_.a.col(basis_[static_cast<std::size_t>(r)]);
            cb(r) = cost_(basis_[static_cast<std::size_t>(r)]);
        }
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
        return lu.transpose().solve(cb);
    }

private:
    enum class Outcome { Optimal, Unbounded };

    std::string diagnostic(const std::string& what) const {
        std::ostringstream s;
        s << "simplex: " << what << " (rows=" << m_ << ", columns=" << ncols_
          << ", pivots=" << pivots_ << ")";
        return s.str();
    }

    bool eligible(Eigen::Index j) const { return allow_artificial_ || j < sf_.first_artificial; }

    void refactor() {
        t_.resize(m_, ncols_ + 1);
        if (m_ > 0) {
            Eigen::MatrixXd bmat(m_, m_);
            for (Eigen::Index r = 0; r < m_; ++r)
                bmat.col(r) = sf_.a.col(basis_[static_cast<std::size_t>(r)]);
            const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
            const double rcond = lu.rcond();
            if (!(rcond > 1e-14))
                throw SolverError(diagnostic("ill-conditioned basis, rcond=" + std::to_string(rcond)));
            t_.leftCols(ncols_) = lu.solve(sf_.a);
            t_.col(ncols_) = lu.solve(sf_.b);
            // snap tiny noise so that unit columns stay exact
            for (Eigen::Index r = 0; r < m_; ++r)
                for (Eigen::Index j = 0; j <= ncols_; ++j)
                    if (std::abs(t_(r, j)) < 1e-13)
                        t_(r, j) = 0.0;
            for (Eigen::Index r = 0; r < m_; ++r)
                t_(r, basis_[static_cast<std::size_t>(r)]) = 1.0;
        }
        cost_row_.resize(ncols_ + 1);
        cost_row_.head(ncols_) = cost_;
        cost_row_(ncols_) = 0.0;
        for (Eigen::Index r = 0; r < m_; ++r) {
            const double cb = cost_(basis_[static_cast<std::size_t>(r)]);
            if (cb != 0.0)
                cost_row_ -= cb * t_.row(r).transpose();
        }
        for (Eigen::Index r = 0; r < m_; ++r)
            cost_row_(basis_[static_cast<std::size_t>(r)]) = 0.0;
        since_refactor_ = 0;
    }

    std::optional<Eigen::Index> entering_candidate(bool bland) const {
        std::optional<Eigen::Index> best;
        double best_value = -opt_.optimality_tol;
        for (Eigen::Index j = 0; j < ncols_; ++j) {
            if (!eligible(j))
                continue;
            const double d = cost_row_(j);
            if (d < best_value) {
                best = j;
                if (bland)
                    return best;
                best_value = d;
            }
        }
        return best;
    }

    std::optional<Eigen::Index> leaving_row(Eigen::Index e, bool bland) const {
        std::optional<Eigen::Index> best;
        double best_ratio = 0.0;
        for (Eigen::Index r = 0; r < m_; ++r) {
            const double a = t_(r, e);
            if (a <= opt_.pivot_tol)
                continue;
            const double ratio = std::max(0.0, t_(r, ncols_)) / a;
            if (!best) {
                best = r;
                best_ratio = ratio;
                continue;
            }
            const double slack = 1e-12 * std::max(1.0, best_ratio);
            if (ratio < best_ratio - slack) {
                best = r;
                best_ratio = ratio;
            } else if (ratio <= best_ratio + slack) {
                const auto cur = basis_[static_cast<std::size_t>(*best)];
                const auto cand = basis_[static_cast<std::size_t>(r)];
                const bool better = bland ? cand < cur : a > t_(*best, e);
                if (better) {
                    best = r;
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
        }
        return best;
    }

    void pivot(Eigen::Index r, Eigen::Index e) {
        t_.row(r) /= t_(r, e);
        t_(r, e) = 1.0;
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (i == r)
                continue;
            const double f = t_(i, e);
            if (f != 0.0) {
                t_.row(i) -= f * t_.row(r);
                t_(i, e) = 0.0;
            }
        }
        const double f = cost_row_(e);
        if (f != 0.0) {
            cost_row_ -= f * t_.row(r).transpose();
            cost_row_(e) = 0.0;
        }
        basis_[static_cast<std::size_t>(r)] = e;
        ++pivots_;
        if (++since_refactor_ >= opt_.refactor_interval)
            refactor();
    }

    Outcome run() {
        bool bland = false;
        std::size_t degenerate = 0;
        while (true) {
            if (pivots_ > max_pivots_)
                throw SolverError(diagnostic("iteration limit reached"));
            const auto e = entering_candidate(bland);
            if (!e)
                return Outcome::Optimal;
            const auto r = leaving_row(*e, bland);
            if (!r)
                return Outcome::Unbounded;
            const double step = t_(*r, ncols_) / t_(*r, *e);
            if (step <= 1e-12) {
                if (++degenerate > opt_.degenerate_limit)
                    bland = true;
            } else {
                degenerate = 0;
            }
            pivot(*r, *e);
        }
    }

    void drive_out_artificials() {
        for (Eigen::Index r = 0; r < m_; ++r) {
            if (basis_[static_cast<std::size_t>(r)] < sf_.first_artificial)
                continue;
            Eigen::Index best = -1;
            double best_abs = 1e-7;
            for (Eigen::Index j = 0; j < sf_.first_artificial; ++j) {
                if (std::abs(t_(r, j)) > best_abs) {
                    best = j;
                    best_abs = std::abs(t_(r, j));
                }
            }
            // no candidate: the row is redundant and its artificial stays basic at zero
            if (best >= 0)
                pivot(r, best);
        }
    }

    const StandardForm& sf_;
    const SolverOptions& opt_;
    Eigen::Index m_;
    Eigen::Index ncols_;
    std::vector<Eigen::Index> basis_;
    Tableau t_;
    Eigen::VectorXd cost_;
    Eigen::VectorXd cost_row_; ///< reduced costs, last entry = -objective
    bool allow_artificial_ = true;
    std::size_t pivots_ = 0;
    std::size_t since_refactor_ = 0;
    std::size_t max_pivots_ = 0;
};

std::mutex stats_mutex;
CertificationStats stats;

double row_activity(const Constraint& row, const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        s += row.coeffs[j] * x[j];
    return s;
}

/// Multiplier convention -> d(objective)/d(rhs).
double sensitivity_from_dual(Sense sense, Relation rel, double dual) {
    if (rel == Relation::Equal)
        return dual;
    const bool opposing = (sense == Sense::Minimize) == (rel == Relation::LessEqual);
    return opposing ? -dual : dual;
}

} // namespace

LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& options) {
    lp.validate();
    LpSolution sol;
    const auto sf = standardize(lp);
    if (!sf) {
        sol.status = Status::Infeasible;
        return sol;
    }

    Simplex simplex(*sf, options);
    if (!simplex.phase1()) {
        sol.status = Status::Infeasible;
        sol.iterations = simplex.pivots();
        return sol;
    }
    if (!simplex.phase2()) {
        sol.status = Status::Unbounded;
        sol.iterations = simplex.pivots();
        return sol;
    }
    sol.status = Status::Optimal;
    sol.iterations = simplex.pivots();

    const std::size_t n = lp.num_vars();
    const Eigen::VectorXd u = simplex.values();
    sol.primal.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& v = sf->vars[j];
        double x = v.offset;
        switch (v.kind) {
        case VarKind::Fixed:
            break;
        case VarKind::Shifted:
            x += u(v.col);
            break;
        case VarKind::Mirrored:
            x -= u(v.col);
            break;
        case VarKind::Free:
            x = u(v.col) - u(v.col + 1);
            break;
        }
        // clip round-off outside the box
        sol.primal[j] = std::clamp(x, lp.lower[j], lp.upper[j]);
    }
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        sol.objective += lp.objective[j] * sol.primal[j];

    // d(objective)/d(rhs) per LP row
    const double sense = lp.sense == Sense::Minimize ? 1.0 : -1.0;
    const Eigen::VectorXd y = simplex.row_duals();
    std::vector<double> pi(lp.num_constraints(), 0.0);
    for (std::size_t r = 0; r < sf->origin.size(); ++r) {
        if (sf->origin[r] < 0)
            continue;
        const auto ri = static_cast<Eigen::Index>(r);
        pi[static_cast<std::size_t>(sf->origin[r])] =
            sense * sf->row_sign[r] * y(ri) * sf->cost_scale / sf->row_scale(ri);
    }
    sol.duals.resize(lp.num_constraints());
    for (std::size_t r = 0; r < lp.num_constraints(); ++r) {
        const auto rel = lp.constraints[r].relation;
        // the mapping is an involution
        sol.duals[r] = sensitivity_from_dual(lp.sense, rel, pi[r]);
    }
    sol.reduced_costs.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = lp.objective[j];
        for (std::size_t r = 0; r < lp.num_constraints(); ++r)
            d -= pi[r] * lp.constraints[r].coeffs[j];
        sol.reduced_costs[j] = d;
    }

    sol.residuals = check_solution(lp, sol);
    const auto& rep = sol.residuals;
    if (!rep.certified(options.feasibility_tol, 1e-7)) {
        std::ostringstream msg;
        msg << "simplex: optimal basis failed certification (primal " << rep.primal_residual
            << ", dual " << rep.dual_residual << ", complementarity " << rep.complementarity
            << ", gap " << rep.duality_gap << ")";
        throw SolverError(msg.str());
    }
    {
        const std::lock_guard lock(stats_mutex);
        ++stats.optimal_solves;
        stats.worst_residual = std::max(
            {stats.worst_residual, rep.primal_residual, rep.dual_residual, rep.complementarity});
        stats.worst_gap = std::max(stats.worst_gap, rep.duality_gap);
    }
    return sol;
}

CertificationStats certification_stats() {
    const std::lock_guard lock(stats_mutex);
    return stats;
}

ResidualReport check_solution(const LinearProgram& lp, const LpSolution& sol) {
    lp.validate();
    if (sol.primal.size() != lp.num_vars() || sol.duals.size() != lp.num_constraints())
        throw ShapeError("check_solution: solution does not match the program dimensions");

    const double sense = lp.sense == Sense::Minimize ? 1.0 : -1.0;
    const auto& x = sol.primal;
    ResidualReport rep;

    // primal feasibility
    for (const auto& row : lp.constraints) {
        const double act = row_activity(row, x);
        double viol = 0.0;
        switch (row.relation) {
        case Relation::LessEqual:
            viol = std::max(0.0, act - row.rhs);
            break;
        case Relation::GreaterEqual:
            viol = std::max(0.0, row.rhs - act);
            break;
        case Relation::Equal:
            viol = std::abs(act - row.rhs);
            break;
        }
        rep.primal_residual = std::max(rep.primal_residual, viol / std::max(1.0, std::abs(row.rhs)));
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double viol = std::max({0.0, lp.lower[j] - x[j], x[j] - lp.upper[j]});
        rep.primal_residual = std::max(rep.primal_residual, viol / std::max(1.0, std::abs(x[j])));
    }

    // everything below is in minimization orientation
    const double obj_scale = std::max(1.0, std::abs(sol.objective));
    double dual_obj = 0.0;
    std::vector<double> pi(lp.num_constraints());
    for (std::size_t r = 0; r < lp.num_constraints(); ++r) {
        const auto& row = lp.constraints[r];
        pi[r] = sense * sensitivity_from_dual(lp.sense, row.relation, sol.duals[r]);
        const double scale = std::max(1.0, std::abs(row.rhs));
        if (row.relation == Relation::LessEqual && pi[r] > 0.0)
            rep.dual_residual = std::max(rep.dual_residual, pi[r] / scale);
        if (row.relation == Relation::GreaterEqual && pi[r] < 0.0)
            rep.dual_residual = std::max(rep.dual_residual, -pi[r] / scale);
        if (row.relation != Relation::Equal) {
            const double slack = std::abs(row_activity(row, x) - row.rhs);
            rep.complementarity = std::max(rep.complementarity, std::abs(pi[r]) * slack / obj_scale);
        }
        dual_obj += pi[r] * row.rhs;
    }
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        double d = sense * lp.objective[j];
        for (std::size_t r = 0; r < lp.num_constraints(); ++r)
            d -= pi[r] * lp.constraints[r].coeffs[j];
        const double lo = lp.lower[j];
        const double hi = lp.upper[j];
        const double scale = std::max(1.0, std::abs(lp.objective[j]));
        if (d > 0.0) {
            if (std::isfinite(lo)) {
                dual_obj += d * lo;
                rep.complementarity = std::max(rep.complementarity, d * std::abs(x[j] - lo) / obj_scale);
            } else {
                rep.dual_residual = std::max(rep.dual_residual, d / scale);
            }
        } else if (d < 0.0) {
            if (std::isfinite(hi)) {
                dual_obj += d * hi;
                rep.complementarity = std::max(rep.complementarity, -d * std::abs(hi - x[j]) / obj_scale);
            } else {
                rep.dual_residual = std::max(rep.dual_residual, -d / scale);
            }
        }
    }
    rep.dual_objective = sense * dual_obj;
    rep.duality_gap = std::abs(sol.objective - rep.dual_objective) / obj_scale;
    return rep;
}

void write_lp_format(const LinearProgram& lp, std::ostream& out) {
    lp.validate();
    const auto name = [&](std::size_t j) {
        return (j < lp.names.size() && !lp.names[j].empty()) ? lp.names[j] : "x" + std::to_string(j);
    };
    const auto terms = [&](const std::vector<double>& coeffs) {
        std::ostringstream s;
        s.precision(17);
        bool first = true;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            const double a = coeffs[j];
            if (a == 0.0)
                continue;
            s << (a < 0.0 ? (first ? "-" : " - ") : (first ? "" : " + ")) << std::abs(a) << ' ' << name(j);
            first = false;
        }
        if (first)
            s << "0 " << name(0);
        return s.str();
    };

    out.precision(17);
    out << (lp.sense == Sense::Minimize ? "Minimize\n" : "Maximize\n");
    out << " obj: " << terms(lp.objective) << '\n';
    out << "Subject To\n";
    for (std::size_t r = 0; r < lp.num_constraints(); ++r) {
        const auto& row = lp.constraints[r];
        const std::string label = row.name.empty() ? "c" + std::to_string(r) : row.name;
        const char* rel = row.relation == Relation::LessEqual      ? "<="
                          : row.relation == Relation::GreaterEqual ? ">="
                                                                   : "=";
        out << ' ' << label << ": " << terms(row.coeffs) << ' ' << rel << ' ' << row.rhs << '\n';
    }
    out << "Bounds\n";
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        const double lo = lp.lower[j];
        const double hi = lp.upper[j];
        if (!std::isfinite(lo) && !std::isfinite(hi))
            out << ' ' << name(j) << " free\n";
        else if (lo == hi)
            out << ' ' << name(j) << " = " << lo << '\n';
        else if (!std::isfinite(lo))
            out << " -inf <= " << name(j) << " <= " << hi << '\n';
        else if (!std::isfinite(hi))
            out << ' ' << name(j) << " >= " << lo << '\n';
        else
            out << ' ' << lo << " <= " << name(j) << " <= " << hi << '\n';
    }
    out << "End\n";
}

} // namespace aan::lp
