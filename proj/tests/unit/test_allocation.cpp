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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "fhsplit/allocation.hpp"
#include "fhsplit/errors.hpp"

using namespace fhsplit;

namespace {

FronthaulBudget inputs(double cfh, double bs_ul, double bs_dl, long long tu, long long td) {
    FronthaulBudget b;
    b.C_FH = cfh;
    b.B_s_UL = bs_ul;
    b.B_s_DL = bs_dl;
    b.T_u = tu;
    b.T_d = td;
    return b;
}

SeReport report(double value) {
    SeReport r;
    r.sum_se = value;
    r.se = {value};
    return r;
}

} // namespace

TEST_CASE("budget examples") {
    CHECK(compute_budget(inputs(30720, 0, 0, 0, 0), 8, 128).B_bar == 30);
    CHECK(compute_budget(inputs(16640, 0, 8, 0, 100), 8, 128).B_bar == 10);
    try {
        compute_budget(inputs(6400, 0, 8, 0, 100), 8, 128);
        FAIL("expected InfeasibleBudgetError");
    } catch (const InfeasibleBudgetError &e) {
        CHECK(e.per_entry_budget() == 0);
    }
    CHECK_THROWS_AS(compute_budget(inputs(2047, 0, 0, 0, 0), 8, 128), InfeasibleBudgetError);
    CHECK(compute_budget(inputs(2048, 0, 0, 0, 0), 8, 128).B_bar == 2);
    CHECK_THROWS_AS(compute_budget(inputs(-1, 0, 0, 0, 0), 8, 128), ValueError);
    CHECK_THROWS_AS(compute_budget(inputs(1e6, 0, 0, -1, 0), 8, 128), ValueError);
    CHECK_THROWS_AS(compute_budget(inputs(1e6, 0, 0, 0, 0), 0, 128), DimensionError);
    CHECK_THROWS_AS(FronthaulBudget::from_bbar(1), InfeasibleBudgetError);
    CHECK(FronthaulBudget::from_bbar(7).B_bar == 7);
}

TEST_CASE("budget agrees with an integer brute force") {
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<long long> cap(0, 400000), bs(0, 16), t(0, 200);
    std::uniform_int_distribution<int> dim(1, 64);
    for (int it = 0; it < 500; ++it) {
        const long long c = cap(gen), su = bs(gen), sd = bs(gen), tu = t(gen), td = t(gen);
        const int K = dim(gen), M = dim(gen);
        const long long left = c - (su * tu + sd * td) * K;
        long long oracle = -1;
        if (left >= 0)
            while ((oracle + 1) * K * M <= left)
                ++oracle;
        else
            oracle = -((-left + K * M - 1) / (K * M));
        CAPTURE(it);
        if (oracle >= 2) {
            CHECK(compute_budget(inputs(c, su, sd, tu, td), K, M).B_bar == oracle);
        } else {
            CHECK_THROWS_AS(compute_budget(inputs(c, su, sd, tu, td), K, M), InfeasibleBudgetError);
        }
    }
}

TEST_CASE("line search visits every split once") {
    for (long long bbar : {2LL, 3LL, 10LL, 30LL}) {
        int calls = 0;
        const auto res = line_search(FronthaulBudget::from_bbar(bbar), [&](BitSplit s) {
            ++calls;
            CHECK(s.B_H + s.B_P == bbar);
            CHECK(s.B_H >= 1);
            CHECK(s.B_P >= 1);
            return report(-(s.B_H - 3.0) * (s.B_H - 3.0));
        });
        CHECK(calls == bbar - 1);
        CHECK(res.evaluations == bbar - 1);
        CHECK(res.complete);
        REQUIRE(res.profile.size() == static_cast<std::size_t>(bbar - 1));
        for (std::size_t i = 0; i < res.profile.size(); ++i)
            CHECK(res.profile[i].split.B_H == static_cast<int>(i) + 1);
        if (bbar == 2)
            CHECK(res.best == BitSplit{1, 1});
        else
            CHECK(res.best.B_H == std::min<long long>(3, bbar - 1));
    }
}

TEST_CASE("line search ties go to the smallest B_H") {
    const auto res = line_search(FronthaulBudget::from_bbar(9),
                                 [](BitSplit s) { return report(s.B_H >= 4 && s.B_H <= 6 ? 2.0 : 1.0); });
    CHECK(res.best == BitSplit{4, 5});
    CHECK(res.best_sum_se == 2.0);
    const auto flat = line_search(FronthaulBudget::from_bbar(9), [](BitSplit) { return report(1.0); });
    CHECK(flat.best == BitSplit{1, 8});
}

TEST_CASE("line search returns the exact maximum of a random profile") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int it = 0; it < 50; ++it) {
        std::vector<double> values(static_cast<std::size_t>(2 + it % 20));
        for (double &v : values)
            v = u(gen);
        const long long bbar = static_cast<long long>(values.size()) + 1;
        const auto res = line_search(FronthaulBudget::from_bbar(bbar), [&](BitSplit s) {
            return report(values[static_cast<std::size_t>(s.B_H - 1)]);
        });
        std::size_t arg = 0;
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] > values[arg])
                arg = i;
        CHECK(res.best.B_H == static_cast<int>(arg) + 1);
        CHECK(res.best_sum_se == values[arg]);
    }
}

TEST_CASE("closed-form optimum grows with the budget") {
    const SystemConfig cfg = SystemConfig::baseline(128, 8, 10.0);
    double prev = 0.0;
    for (long long bbar = 2; bbar <= 24; ++bbar) {
        const auto res = line_search(FronthaulBudget::from_bbar(bbar),
                                     [&](BitSplit s) { return closed_form_mrt_sinr(cfg, s.B_H, s.B_P); });
        CHECK(res.best_sum_se >= prev);
        prev = res.best_sum_se;
    }
}

TEST_CASE("evaluator failure leaves a partial profile") {
    const auto res = line_search(FronthaulBudget::from_bbar(10), [](BitSplit s) {
        if (s.B_H == 4)
            throw NumericalRankError("rank deficient");
        return report(s.B_H);
    });
    CHECK_FALSE(res.complete);
    CHECK(res.failure == "rank deficient");
    CHECK(res.profile.size() == 3);
    CHECK(res.evaluations == 3);
    CHECK(res.best == BitSplit{3, 7});
    FronthaulBudget bad;
    bad.B_bar = 1;
    CHECK_THROWS_AS(line_search(bad, [](BitSplit) { return report(0); }), InfeasibleBudgetError);
}
