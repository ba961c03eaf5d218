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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fhsplit/se_eval.hpp"

namespace fhsplit {

/// Fronthaul capacity and data payload per coherence block.
///
/// C_FH and the B_s T products are in bits per coherence block.
struct FronthaulBudget {
    double C_FH = 0.0;
    double B_s_UL = 0.0;
    double B_s_DL = 0.0;
    long long T_u = 0;
    long long T_d = 0;
    long long B_bar = 0; ///< bits per complex entry left for CSI + precoder

    bool feasible() const noexcept { return B_bar >= 2; }

    // Budget given directly as B_bar (no payload accounting). Throws
    // InfeasibleBudgetError when B_bar < 2.
    static FronthaulBudget from_bbar(long long B_bar);
};

// B_bar = floor((C_FH - (B_s_UL T_u + B_s_DL T_d) K) / (K M)). Throws
// InfeasibleBudgetError if B_bar < 2, ValueError on negative inputs.
FronthaulBudget compute_budget(FronthaulBudget inputs, int K, int M);

struct BitSplit {
    int B_H = 1;
    int B_P = 1;
    bool operator==(const BitSplit &) const = default;
};

struct ProfileEntry {
    BitSplit split;
    double sum_se = 0.0;
    std::vector<double> se;
};

struct AllocationResult {
    BitSplit best;
    double best_sum_se = 0.0;
    std::vector<ProfileEntry> profile;
    bool complete = true;          ///< false if an evaluation threw
    std::string failure;           ///< message of the failing evaluation
    int evaluations = 0;
};

using SplitEvaluator = std::function<SeReport(BitSplit)>;

/// Exhaustive search over B_H = 1..B_bar-1 with B_P = B_bar - B_H.
///
/// Keeps the first strict maximum, so ties go to the smallest B_H. An
/// evaluator exception stops the scan and returns the partial profile with
/// `complete = false`.
AllocationResult line_search(const FronthaulBudget &budget, const SplitEvaluator &evaluator);

} // namespace fhsplit
