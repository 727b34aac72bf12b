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

#include "aan/ambiguity.hpp"

#include "aan/errors.hpp"
#include "aan/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

namespace aan {

SampleSpace::SampleSpace(std::vector<double> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty())
        throw DomainError("sample space needs at least one atom");
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
        if (!std::isfinite(atoms_[k]) || atoms_[k] <= 0.0)
            throw DomainError("sample space atoms must be finite and positive");
        if (k > 0 && !(atoms_[k] > atoms_[k - 1]))
            throw DomainError("sample space atoms must be strictly increasing");
    }
    edges_.reserve(atoms_.size() + 1);
    edges_.push_back(0.0);
    for (std::size_t k = 1; k < atoms_.size(); ++k)
        edges_.push_back(0.5 * (atoms_[k - 1] + atoms_[k]));
    edges_.push_back(std::numeric_limits<double>::infinity());
}

SampleSpace SampleSpace::from_mbit(std::span<const double> atoms_mbit) {
    std::vector<double> bits(atoms_mbit.begin(), atoms_mbit.end());
    for (auto& b : bits)
        b *= 1e6;
    return SampleSpace(std::move(bits));
}

double SampleSpace::mean_atom() const noexcept {
    return std::accumulate(atoms_.begin(), atoms_.end(), 0.0) / static_cast<double>(atoms_.size());
}

int SampleSpace::bin_of(double value) const noexcept {
    if (!(value >= edges_.front()) || std::isnan(value))
        return -1;
    // first edge strictly greater than value, minus one
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
    if (it == edges_.end())
        return -1;
    return static_cast<int>(it - edges_.begin()) - 1;
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty())
        throw DomainError("distribution must have at least one entry");
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0 && p <= 1.0))
            throw DomainError("distribution entries must lie in [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw DomainError("distribution must sum to 1 (got " + std::to_string(sum) + ")");
}

Distribution Distribution::uniform(std::size_t k) {
    return Distribution(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Distribution Distribution::point_mass(std::size_t k, std::size_t at) {
    std::vector<double> p(k, 0.0);
    p.at(at) = 1.0;
    return Distribution(std::move(p));
}

double Distribution::mean(const SampleSpace& space) const {
    if (space.size() != probs_.size())
        throw ShapeError("distribution and sample space sizes differ");
    double m = 0.0;
    for (std::size_t k = 0; k < probs_.size(); ++k)
        m += probs_[k] * space.atoms()[k];
    return m;
}

AmbiguitySet::AmbiguitySet(SampleSpace space_, Distribution reference_, double radius_)
    : space(std::move(space_)), reference(std::move(reference_)), radius(radius_) {
    if (space.size() != reference.size())
        throw ShapeError("ambiguity set: reference distribution size differs from sample space");
    if (!(radius >= 0.0) || !std::isfinite(radius))
        throw DomainError("ambiguity set: radius must be finite and non-negative");
}

Distribution empirical_distribution(const HistoryLog& history, const SampleSpace& space) {
    if (history.samples.empty())
        throw DataError("history is empty");
    std::vector<std::size_t> counts(space.size(), 0);
    for (double s : history.samples) {
        const int k = space.bin_of(s);
        if (k < 0) {
            std::ostringstream msg;
            msg << "history sample " << s << " lies outside every bin";
            throw DataError(msg.str());
        }
        ++counts[static_cast<std::size_t>(k)];
    }
    const double q = static_cast<double>(history.samples.size());
    std::vector<double> probs(space.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        probs[k] = static_cast<double>(counts[k]) / q;
    return Distribution(std::move(probs));
}

double l1_distance(const Distribution& a, const Distribution& b) {
    if (a.size() != b.size())
        throw ShapeError("l1_distance: distributions have different sizes");
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        d += std::abs(a[k] - b[k]);
    return d;
}

double tolerance_from_confidence(std::size_t k, std::size_t q, double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0))
        throw DomainError("confidence must lie in (0, 1)");
    if (k == 0 || q == 0)
        throw DomainError("K and Q must be positive");
    const double kk = static_cast<double>(k);
    return kk / (2.0 * static_cast<double>(q)) * std::log(2.0 * kk / (1.0 - confidence));
}

double confidence_from_tolerance(std::size_t k, std::size_t q, double radius) {
    if (k == 0 || q == 0)
        throw DomainError("K and Q must be positive");
    const double kk = static_cast<double>(k);
    return 1.0 - 2.0 * kk * std::exp(-2.0 * static_cast<double>(q) * radius / kk);
}

std::pair<Distribution, double> worst_case_mean_distribution(const AmbiguitySet& set) {
    std::vector<double> p = set.reference.probs();
    const std::size_t top = p.size() - 1;
    double budget = std::min(0.5 * set.radius, 1.0 - p[top]);
    for (std::size_t k = 0; k < top && budget > 0.0; ++k) {
        const double moved = std::min(p[k], budget);
        p[k] -= moved;
        p[top] += moved;
        budget -= moved;
    }
    p[top] = std::min(p[top], 1.0);
    Distribution worst(std::move(p));
    const double m = worst.mean(set.space);
    return {std::move(worst), m};
}

HistoryLog generate_history(const Distribution& truth, const SampleSpace& space, std::size_t q,
                            std::uint64_t seed, std::uint32_t device) {
    if (q == 0)
        throw DataError("history size must be at least 1");
    if (truth.size() != space.size())
        throw ShapeError("truth distribution size differs from sample space");
    std::vector<double> cdf(truth.size());
    std::partial_sum(truth.probs().begin(), truth.probs().end(), cdf.begin());
    auto rng = make_rng(seed, Stream::History, device);
    HistoryLog log;
    log.samples.reserve(q);
    for (std::size_t n = 0; n < q; ++n) {
        const double u = uniform01(rng) * cdf.back();
        auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        k = std::min(k, cdf.size() - 1);
        log.samples.push_back(space.atoms()[k]);
    }
    return log;
}

void write_history(const HistoryLog& history, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (double s : history.samples)
        out << static_cast<long long>(std::llround(s)) << '\n';
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

HistoryLog read_history(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open history file " + path.string());
    HistoryLog log;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::size_t pos = 0;
        long long bits = 0;
        try {
            bits = std::stoll(line, &pos);
        } catch (const std::exception&) {
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": not an integer");
        }
        if (line.find_first_not_of(" \t\r", pos) != std::string::npos)
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": trailing characters");
        log.samples.push_back(static_cast<double>(bits));
    }
    if (log.samples.empty())
        throw DataError("history file " + path.string() + " is empty");
    return log;
}

nlohmann::json ambiguity_to_json(const AmbiguitySet& set) {
    return {{"atoms_bits", set.space.atoms()},
            {"reference", set.reference.probs()},
            {"radius", set.radius}};
}

AmbiguitySet ambiguity_from_json(const nlohmann::json& j) {
    try {
        return AmbiguitySet(SampleSpace(j.at("atoms_bits").get<std::vector<double>>()),
                            Distribution(j.at("reference").get<std::vector<double>>()),
                            j.at("radius").get<double>());
    } catch (const nlohmann::json::exception& ex) {
        throw DataError(std::string("ambiguity snapshot: ") + ex.what());
    }
}

} // namespace aan
