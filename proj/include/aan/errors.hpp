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

#include <stdexcept>
#include <string>

namespace aan {

/// Invalid argument value (zero distance, confidence outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Bad configuration value; `field()` names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Input data that violates a model assumption (sample outside the bins, empty history).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dimension mismatch between arguments.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// LP solver could not certify its result.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The offloading model admits no feasible decision.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The dive reached a variable whose two fixings are both infeasible.
class BacktrackError : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

/// Exhaustive enumeration refused because the instance is too large.
class SizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace aan
