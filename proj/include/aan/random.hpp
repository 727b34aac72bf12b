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

#pragma once

#include <cstdint>
#include <random>

namespace aan {

/// Independent random streams derived from one experiment seed. Each consumer
/// draws from its own stream so changing e.g. the history size does not shift
/// the placement or the realized task sizes.
enum class Stream : std::uint32_t {
    Placement = 1,
    History = 2,
    Realization = 3,
    Test = 99,
};

inline std::mt19937_64 make_rng(std::uint64_t seed, Stream stream, std::uint32_t sub = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), sub};
    return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform
/// unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace aan
