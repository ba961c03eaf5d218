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

#include "fhsplit/allocation.hpp"

#include <cmath>
#include <limits>

#include "fhsplit/errors.hpp"

namespace fhsplit {

FronthaulBudget FronthaulBudget::from_bbar(long long B_bar) {
    if (B_bar < 2)
        throw InfeasibleBudgetError("per-entry budget B_bar=" + std::to_string(B_bar) +
                                        " leaves no room for one CSI and one precoder bit",
                                    B_bar);
    FronthaulBudget b;
    b.B_bar = B_bar;
    return b;
}

FronthaulBudget compute_budget(FronthaulBudget in, int K, int M) {
    if (K < 1 || M < 1)
        throw DimensionError("K and M must be positive");
    if (in.C_FH < 0.0 || in.B_s_UL < 0.0 || in.B_s_DL < 0.0 || in.T_u < 0 || in.T_d < 0 ||
        !std::isfinite(in.C_FH))
        throw ValueError("fronthaul capacity and payload terms must be nonnegative");
    const double payload = (in.B_s_UL * static_cast<double>(in.T_u) +
                            in.B_s_DL * static_cast<double>(in.T_d)) * K;
    const double left = in.C_FH - payload;
    const double per_entry = static_cast<double>(K) * M;
    long long b = static_cast<long long>(std::floor(left / per_entry));
    // Division can round across an integer; settle on the largest b with b K M <= left.
    while (static_cast<double>(b + 1) * per_entry <= left)
        ++b;
    while (static_cast<double>(b) * per_entry > left)
        --b;
    in.B_bar = b;
    if (b < 2)
        throw InfeasibleBudgetError("data payload leaves B_bar=" + std::to_string(b) +
                                        " bits per entry; at least 2 are required",
                                    b);
    return in;
}

AllocationResult line_search(const FronthaulBudget &budget, const SplitEvaluator &evaluator) {
    if (!budget.feasible())
        throw InfeasibleBudgetError("line search needs B_bar >= 2", budget.B_bar);
    AllocationResult res;
    double best = -std::numeric_limits<double>::infinity();
    for (long long bh = 1; bh <= budget.B_bar - 1; ++bh) {
        const BitSplit split{static_cast<int>(bh), static_cast<int>(budget.B_bar - bh)};
        SeReport rep;
        try {
            rep = evaluator(split);
        } catch (const std::exception &e) {
            res.complete = false;
            res.failure = e.what();
            break;
        }
        ++res.evaluations;
        res.profile.push_back(ProfileEntry{split, rep.sum_se, rep.se});
        if (rep.sum_se > best) {
            best = rep.sum_se;
            res.best = split;
            res.best_sum_se = rep.sum_se;
        }
    }
    return res;
}

} // namespace fhsplit
