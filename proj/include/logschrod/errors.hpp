// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace logschrod {

// Invalid parameter or argument outside the operator's domain.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation point incompatible with the grid box.
struct GeometryError : DomainError {
    using DomainError::DomainError;
};

// Non-finite or otherwise unusable data.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A stated precondition does not hold for the given input.
struct PreconditionError : DomainError {
    using DomainError::DomainError;
};

// Input admits no meaningful answer (e.g. constant field in a plane search).
struct DegenerateInputError : DomainError {
    using DomainError::DomainError;
};

// File or stream failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iteration collapsed to the zero solution.
struct TrivialSolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iteration failed (budget exhausted or an inadmissible iterate); carries the
// iteration trace for diagnosis.
struct NonconvergenceError : std::runtime_error {
    std::vector<double> residual_history;
    std::vector<double> max_u_history;
    std::vector<double> quotient_history;
    NonconvergenceError(const std::string& msg, std::vector<double> residuals,
                        std::vector<double> max_us = {}, std::vector<double> quotients = {})
        : std::runtime_error(msg),
          residual_history(std::move(residuals)),
          max_u_history(std::move(max_us)),
          quotient_history(std::move(quotients)) {}
};

} // namespace logschrod
