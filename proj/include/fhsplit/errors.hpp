// SPDX-License-Identifier: Apache-2.0
//
// fhsplit - fronthaul bit allocation for massive MU-MIMO
// Copyright (C) 2026 The fhsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace fhsplit {

// Configuration dimensions violate K <= tau_p <= tau_c or K < M.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A power, variance or other scalar parameter is outside its admissible range.
class ValueError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation (B < 1, trials = 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Gram matrix of a ZF/WF realization is numerically singular.
class NumericalRankError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input matrix that must be nonzero is zero (e.g. transmit rescaling of P_Q = 0).
class DegenerateInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Data payload leaves fewer than two bits per entry for CSI + precoder.
class InfeasibleBudgetError : public std::runtime_error {
public:
    explicit InfeasibleBudgetError(const std::string &what, long long per_entry_budget)
        : std::runtime_error(what), per_entry_budget_(per_entry_budget) {}
    long long per_entry_budget() const noexcept { return per_entry_budget_; }

private:
    long long per_entry_budget_;
};

} // namespace fhsplit
