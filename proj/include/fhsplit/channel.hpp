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

#include <vector>

#include "fhsplit/sysmodel.hpp"

namespace fhsplit {

/// One realization of the uplink channels seen by the AAS.
struct ChannelSet {
    ComplexMatrix H;      ///< true channels h_k, M x K
    ComplexMatrix H_hat;  ///< MMSE estimates, M x K
    std::vector<double> gamma; ///< per-entry variance of each estimate column
};

// gamma_k = q tau_p beta^2 / (q tau_p beta + 1), in [0, beta].
double gamma_coefficient(double q_k, int tau_p, double beta_k);

// Scalar MMSE filter applied to the despread pilot y_k.
double mmse_gain(double q_k, int tau_p, double beta_k);

// Columns h_k ~ CN(0, beta_k I_M), independent across k.
ComplexMatrix draw_channels(const SystemConfig &cfg, RngStream &stream);

/// y_k = sqrt(q_k tau_p) h_k + n_k with n_k ~ CN(0, noise_variance I_M).
///
/// Orthonormal pilots make the despread observation a sufficient statistic,
/// so the M x tau_p pilot block is never formed. `noise_variance` is 1 in
/// the model; other values exist only for tests.
ComplexMatrix despread_pilots(const ComplexMatrix &H, const SystemConfig &cfg, RngStream &stream,
                              double noise_variance = 1.0);

// Column-wise MMSE estimate of H from despread pilots. `H` is carried along
// unchanged for downstream SINR evaluation (may be empty).
ChannelSet mmse_estimate(const ComplexMatrix &Y, const SystemConfig &cfg, ComplexMatrix H = {});

// draw -> despread -> estimate, on the channel and pilot-noise sub-streams of `trial`.
ChannelSet realize_channels(const SystemConfig &cfg, const RngStream &trial);

// Same channel draw as realize_channels but with H_hat = H and gamma = beta.
ChannelSet perfect_channels(const SystemConfig &cfg, const RngStream &trial);

} // namespace fhsplit
