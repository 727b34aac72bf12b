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

// L1-ball ambiguity sets over a discrete task-size sample space.

#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace aan {

/// K task-size atoms (bits, ascending) and the K+1 bin edges that quantize
/// observed sizes onto them. Edges are midpoints between atoms; the first
/// edge is 0 and the last is +inf.
class SampleSpace {
public:
    explicit SampleSpace(std::vector<double> atoms);

    static SampleSpace from_mbit(std::span<const double> atoms_mbit);

    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<double>& atoms() const noexcept { return atoms_; }
    const std::vector<double>& bin_edges() const noexcept { return edges_; }
    double max_atom() const noexcept { return atoms_.back(); }
    double mean_atom() const noexcept;

    /// Index k with edges[k] <= value < edges[k+1], or -1 when outside.
    int bin_of(double value) const noexcept;

private:
    std::vector<double> atoms_;
    std::vector<double> edges_;
};

/// Probability vector over the atoms of a SampleSpace.
class Distribution {
public:
    /// Throws DomainError unless every entry is in [0,1] and they sum to 1 within 1e-9.
    explicit Distribution(std::vector<double> probs);

    static Distribution uniform(std::size_t k);
    static Distribution point_mass(std::size_t k, std::size_t at);

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t k) const { return probs_[k]; }
    const std::vector<double>& probs() const noexcept { return probs_; }

    double mean(const SampleSpace& space) const;

private:
    std::vector<double> probs_;
};

struct AmbiguitySet {
    SampleSpace space;
    Distribution reference;
    double radius = 0.0;

    AmbiguitySet(SampleSpace space, Distribution reference, double radius);
};

/// Historical task sizes in bits.
struct HistoryLog {
    std::vector<double> samples;
};

Distribution empirical_distribution(const HistoryLog& history, const SampleSpace& space);

double l1_distance(const Distribution& a, const Distribution& b);

/// Radius such that the empirical distribution of Q samples over K atoms is
/// within it with confidence nu: (K / 2Q) ln(2K / (1 - nu)).
double tolerance_from_confidence(std::size_t k, std::size_t q, double confidence);

/// Inverse of tolerance_from_confidence: 1 - 2K exp(-2 Q eps / K).
double confidence_from_tolerance(std::size_t k, std::size_t q, double radius);

/// Distribution in the ball maximizing the expected task size, with that
/// expectation in bits.
///
/// Moving mass t from atom a to atom b changes the L1 distance by at most 2t,
/// so the ball lets ε/2 of mass travel. The optimum takes it from the lowest
/// atoms first and piles it on the highest one.
std::pair<Distribution, double> worst_case_mean_distribution(const AmbiguitySet& set);

/// Q independent draws of atom values under `truth`.
HistoryLog generate_history(const Distribution& truth, const SampleSpace& space, std::size_t q,
                            std::uint64_t seed, std::uint32_t device = 0);

/// One integer bit count per line.
void write_history(const HistoryLog& history, const std::filesystem::path& path);
HistoryLog read_history(const std::filesystem::path& path);

nlohmann::json ambiguity_to_json(const AmbiguitySet& set);
AmbiguitySet ambiguity_from_json(const nlohmann::json& j);

} // namespace aan
