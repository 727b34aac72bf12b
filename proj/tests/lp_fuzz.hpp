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

// Random LP generator with a planted feasible point, shared by the unit and
// acceptance suites.

#pragma once

#include "aan/lp.hpp"
#include "aan/random.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace aan::testing {

struct PlantedLp {
    lp::LinearProgram lp;
    std::vector<double> feasible_point;
};

inline double objective_at(const lp::LinearProgram& lp, const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        s += lp.objective[j] * x[j];
    return s;
}

/// Every variable ends up bounded (box bounds or explicit +-M rows) so the
/// program is feasible and bounded by construction.
inline PlantedLp random_bounded_lp(std::uint64_t seed, std::size_t num_vars, std::size_t num_rows) {
    using namespace aan::lp;
    auto rng = make_rng(seed, Stream::Test);
    const auto unif = [&](double lo, double hi) { return lo + (hi - lo) * uniform01(rng); };

    PlantedLp out;
    auto& lp = out.lp;
    lp = LinearProgram(num_vars, uniform01(rng) < 0.5 ? Sense::Minimize : Sense::Maximize);
    out.feasible_point.resize(num_vars);
    std::vector<bool> needs_rows(num_vars, false);
    for (std::size_t j = 0; j < num_vars; ++j) {
        const double x0 = std::round(unif(-5.0, 5.0) * 4.0) / 4.0;
        out.feasible_point[j] = x0;
        lp.objective[j] = std::round(unif(-10.0, 10.0) * 8.0) / 8.0;
        const double kind = uniform01(rng);
        if (kind < 0.4) {
            lp.lower[j] = x0 - std::round(unif(0.0, 3.0));
            lp.upper[j] = x0 + std::round(unif(0.0, 3.0));
        } else if (kind < 0.6) {
            lp.lower[j] = x0 - std::round(unif(0.0, 3.0));
            lp.upper[j] = kInf;
            needs_rows[j] = true;
        } else if (kind < 0.75) {
            lp.lower[j] = -kInf;
            lp.upper[j] = x0 + std::round(unif(0.0, 3.0));
            needs_rows[j] = true;
        } else if (kind < 0.85) {
            lp.lower[j] = x0;
            lp.upper[j] = x0;
        } else {
            lp.lower[j] = -kInf;
            lp.upper[j] = kInf;
            needs_rows[j] = true;
        }
    }
    for (std::size_t r = 0; r < num_rows; ++r) {
        std::vector<double> a(num_vars, 0.0);
        double act = 0.0;
        for (std::size_t j = 0; j < num_vars; ++j) {
            if (uniform01(rng) < 0.4) {
                a[j] = std::round(unif(-6.0, 6.0));
                act += a[j] * out.feasible_point[j];
            }
        }
        const double kind = uniform01(rng);
        const double slack = uniform01(rng) < 0.3 ? 0.0 : std::round(unif(0.0, 5.0));
        if (kind < 0.45)
            lp.add_constraint(a, Relation::LessEqual, act + slack);
        else if (kind < 0.85)
            lp.add_constraint(a, Relation::GreaterEqual, act - slack);
        else
            lp.add_constraint(a, Relation::Equal, act);
    }
    for (std::size_t j = 0; j < num_vars; ++j) {
        if (!needs_rows[j])
            continue;
        std::vector<double> e(num_vars, 0.0);
        e[j] = 1.0;
        lp.add_constraint(e, Relation::LessEqual, 20.0);
        lp.add_constraint(e, Relation::GreaterEqual, -20.0);
    }
    return out;
}

} // namespace aan::testing
