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

#include <cmath>

#include "fhsplit/channel.hpp"

using namespace fhsplit;

TEST_CASE("gamma_coefficient examples") {
    CHECK(gamma_coefficient(0.0, 8, 1.0) == 0.0);
    CHECK(gamma_coefficient(1.0, 8, 1.0) == doctest::Approx(8.0 / 9.0));
    CHECK(gamma_coefficient(1.0, 8, 0.0) == 0.0);
}

TEST_CASE("gamma_coefficient lies in [0, beta] and grows with q and tau_p") {
    for (double beta : {0.01, 0.5, 1.0, 3.0}) {
        double prev_q = -1.0;
        for (double q : {0.0, 1e-3, 0.01, 0.1, 1.0, 10.0, 100.0, 1e4}) {
            const double g = gamma_coefficient(q, 8, beta);
            CHECK(g >= 0.0);
            CHECK(g <= beta);
            CHECK(g > prev_q);
            prev_q = g;
        }
        double prev_t = -1.0;
        for (int tau : {1, 2, 4, 8, 16, 64, 200}) {
            const double g = gamma_coefficient(0.5, tau, beta);
            CHECK(g > prev_t);
            prev_t = g;
        }
    }
}

TEST_CASE("despread_pilots without noise is the scaled channel") {
    SystemConfig cfg = SystemConfig::baseline(16, 4, 0.0);
    cfg.q = {1.0, 2.0, 0.5, 3.0};
    RngStream s(5, 0), n(5, 1);
    const ComplexMatrix H = draw_channels(cfg, s);
    const ComplexMatrix Y = despread_pilots(H, cfg, n, 0.0);
    for (int k = 0; k < cfg.K; ++k)
        CHECK((Y.col(k) - std::sqrt(cfg.q[k] * cfg.tau_p) * H.col(k)).norm() == 0.0);
}

TEST_CASE("despread_pilots second moments") {
    SystemConfig cfg = SystemConfig::baseline(16, 2, 0.0);
    cfg.q = {0.0, 1.0};
    cfg.tau_p = 8;
    const int trials = 10'000;
    double col0 = 0.0, col1 = 0.0;
    for (int t = 0; t < trials; ++t) {
        RngStream s(11, static_cast<std::uint64_t>(t));
        RngStream c = s.fork(StreamTag::channel), n = s.fork(StreamTag::pilot_noise);
        const ComplexMatrix Y = despread_pilots(draw_channels(cfg, c), cfg, n);
        col0 += Y.col(0).squaredNorm();
        col1 += Y.col(1).squaredNorm();
    }
    // q = 0: pure CN(0, I) noise; q tau_p beta = 8: M (8 + 1)
    CHECK(col0 / trials == doctest::Approx(16.0).epsilon(0.02));
    CHECK(col1 / trials == doctest::Approx(9.0 * 16.0).epsilon(0.02));
}

TEST_CASE("mmse_estimate scaling") {
    SystemConfig cfg = SystemConfig::baseline(8, 2, 0.0);
    cfg.q = {1.0, 1.0};
    cfg.tau_p = 8;
    RngStream s(1, 0);
    const ComplexMatrix Y = draw_complex_gaussian(s, 8, 2, 1.0);

    SUBCASE("beta = 1, q tau_p = 8 gives sqrt(8)/9 y") {
        const ChannelSet set = mmse_estimate(Y, cfg);
        CHECK((set.H_hat - (std::sqrt(8.0) / 9.0) * Y).norm() < 1e-14);
        CHECK(set.gamma[0] == doctest::Approx(8.0 / 9.0));
        CHECK(set.H.size() == 0);
    }
    SUBCASE("zero channel prior gives a zero estimate") {
        cfg.beta[1] = 0.0;
        const ChannelSet set = mmse_estimate(Y, cfg);
        CHECK(set.H_hat.col(1).norm() == 0.0);
        CHECK(set.gamma[1] == 0.0);
        CHECK(mmse_gain(1.0, 8, 0.0) == 0.0);
    }
}

TEST_CASE("MMSE statistics: variance gamma, orthogonal error, variance split") {
    SystemConfig cfg = SystemConfig::baseline(100, 1, 0.0);
    cfg.q = {0.3};
    cfg.tau_p = 4;
    cfg.beta = {2.0};
    const double gamma = gamma_coefficient(0.3, 4, 2.0);
    const int reps = 1000; // 10^5 entries
    double var_hat = 0.0, var_err = 0.0, var_h = 0.0;
    Complex cross{0.0, 0.0};
    for (int t = 0; t < reps; ++t) {
        const ChannelSet set = realize_channels(cfg, RngStream(77, static_cast<std::uint64_t>(t)));
        const ComplexMatrix err = set.H - set.H_hat;
        var_hat += set.H_hat.squaredNorm();
        var_err += err.squaredNorm();
        var_h += set.H.squaredNorm();
        cross += (set.H_hat.array() * err.array().conjugate()).sum();
    }
    const double n = 100.0 * reps;
    var_hat /= n;
    var_err /= n;
    var_h /= n;
    cross /= n;
    CHECK(var_hat == doctest::Approx(gamma).epsilon(0.02));
    CHECK(var_err == doctest::Approx(2.0 - gamma).epsilon(0.02));
    CHECK(var_h == doctest::Approx(var_hat + var_err).epsilon(0.02));
    // independent CN(0, gamma), CN(0, beta - gamma): each part of the cross moment has sd sqrt(g (b - g) / (2n))
    const double se = std::sqrt(gamma * (2.0 - gamma) / (2.0 * n));
    CHECK(std::abs(cross.real()) < 3.0 * se);
    CHECK(std::abs(cross.imag()) < 3.0 * se);
}

TEST_CASE("perfect_channels shares the channel draw with realize_channels") {
    const SystemConfig cfg = SystemConfig::baseline(16, 2, 5.0);
    const RngStream trial(3, 9);
    const ChannelSet est = realize_channels(cfg, trial);
    const ChannelSet per = perfect_channels(cfg, trial);
    CHECK(est.H == per.H);
    CHECK(per.H_hat == per.H);
    CHECK(per.gamma == cfg.beta);
}
