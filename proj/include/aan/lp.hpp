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

// Dense linear programs and a deterministic two-phase simplex solver that
// returns primal values, constraint multipliers and reduced costs.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace aan::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Status { Optimal, Infeasible, Unbounded };

const char* to_string(Status status);

struct Constraint {
    std::vector<double> coeffs; ///< dense, one entry per variable
    Relation relation = Relation::LessEqual;
    double rhs = 0.0;
    std::string name;
};

/// min/max c'x  s.t.  a_r x {<=,=,>=} b_r,  lo <= x <= hi.
struct LinearProgram {
    Sense sense = Sense::Minimize;
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::string> names;
    std::vector<Constraint> constraints;

    LinearProgram() = default;
    LinearProgram(std::size_t num_vars, Sense sense);

    std::size_t num_vars() const noexcept { return objective.size(); }
    std::size_t num_constraints() const noexcept { return constraints.size(); }

    /// Appends a variable and returns its index.
    std::size_t add_variable(double cost, double lo, double hi, std::string name = {});
    /// Appends a row and returns its index. `coeffs` must have num_vars() entries.
    std::size_t add_constraint(std::vector<double> coeffs, Relation relation, double rhs,
                               std::string name = {});

    /// Throws ShapeError / DomainError when sizes disagree or data is not finite.
    void validate() const;
};

struct SolverOptions {
    double feasibility_tol = 1e-8;
    double optimality_tol = 1e-9;
    double pivot_tol = 1e-10;
    /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
    std::size_t degenerate_limit = 50;
    /// Pivots between refactorizations of the tableau from the original data.
    std::size_t refactor_interval = 64;
};

/// Scaled optimality residuals of a claimed optimal solution.
///
/// Row residuals are divided by max(1, |rhs|), reduced-cost residuals by
/// max(1, |c_j|), complementarity products by max(1, |objective|).
struct ResidualReport {
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double complementarity = 0.0;
    double dual_objective = 0.0;
    /// |primal - dual| / max(1, |primal|)
    double duality_gap = 0.0;

    bool certified(double residual_tol = 1e-8, double gap_tol = 1e-7) const noexcept {
        return primal_residual <= residual_tol && dual_residual <= residual_tol &&
               complementarity <= residual_tol && duality_gap <= gap_tol;
    }
};

/// Solution of a LinearProgram.
///
/// `duals[r]` is the multiplier of row r oriented so that every inequality
/// multiplier is non-negative: it equals d(objective)/d(rhs_r), negated for
/// `<=` rows of a minimization and `>=` rows of a maximization. Equality rows
/// carry d(objective)/d(rhs_r) unchanged.
///
/// `reduced_costs[j]` is c_j - sum_r pi_r a_rj with pi_r = d(objective)/d(rhs_r).
struct LpSolution {
    Status status = Status::Infeasible;
    std::vector<double> primal;
    double objective = 0.0;
    std::vector<double> duals;
    std::vector<double> reduced_costs;
    std::size_t iterations = 0;
    /// Filled for optimal solutions.
    ResidualReport residuals;
};

/// Solves `lp`. Deterministic: identical input yields bit-identical output.
/// Every optimal result is checked with check_solution before it is returned.
/// Throws ShapeError on malformed input and SolverError when the result
/// cannot be certified (ill-conditioned basis, iteration limit, residuals
/// above tolerance).
LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& options = {});

/// Process-wide tally of certified optimal solves.
struct CertificationStats {
    std::size_t optimal_solves = 0;
    double worst_residual = 0.0;
    double worst_gap = 0.0;
};
CertificationStats certification_stats();

ResidualReport check_solution(const LinearProgram& lp, const LpSolution& solution);

/// Writes `lp` in CPLEX LP text format.
void write_lp_format(const LinearProgram& lp, std::ostream& out);

} // namespace aan::lp
