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

#include <cstdint>
#include <string_view>
#include <vector>

#include "fhsplit/precoding.hpp"
#include "fhsplit/sysmodel.hpp"

namespace fhsplit {

enum class SeMethod { monte_carlo, closed_form_mrt };
std::string_view to_string(SeMethod method);

/// Per-UE hardening-bound SINR and spectral efficiency.
struct SeReport {
    std::vector<double> sinr;
    std::vector<double> se; ///< (1 - tau_p / tau_c) log2(1 + sinr) [bit/s/Hz]
    double sum_se = 0.0;
    SeMethod method = SeMethod::monte_carlo;
    int trials = 0; ///< 0 for the closed form
    CsiMode csi_mode = CsiMode::quantized;
    long long redraws = 0;
};

// (1 - tau_p / tau_c) log2(1 + sinr).
double se_from_sinr(double sinr, int tau_p, int tau_c);

// Fills se and sum_se of `report` from its sinr vector.
void finalize_report(SeReport &report, const SystemConfig &cfg);

/// Sample expectations behind the hardening bound.
///
/// signal_mean[k] estimates E{alpha h_k^T p_Q,k}; power(k, i) estimates
/// E{|alpha h_k^T p_Q,i|^2}.
struct HardeningMoments {
    Eigen::VectorXcd signal_mean;
    RealMatrix power;
    int trials = 0;
    long long redraws = 0;
};

struct McOptions {
    int trials = 1000;
    std::uint64_t seed = 1;
    CsiMode csi_mode = CsiMode::quantized;
    int workers = 1;
    // Trials of the D_{p_k} estimation pass for ZF/WF; 0 picks max(trials, 100).
    int moment_trials = 0;
};

/// Monte-Carlo hardening moments for any precoder kind.
///
/// Per trial: channel -> pilot MMSE estimate -> CSI AQNM (eta(B_H)) ->
/// precoder -> precoder AQNM (eta(B_P), D_{p_k} analytic for MRT, estimated
/// otherwise) -> AAS rescaling. Symbols are integrated out analytically.
/// Trials run on `workers` threads; results are reduced in trial order, so
/// the output does not depend on the worker count. In perfect mode B_H and
/// B_P are ignored.
HardeningMoments mc_hardening_moments(const SystemConfig &cfg, PrecoderKind kind, int B_H, int B_P,
                                      const McOptions &opts);

// Gamma_k = |E s|^2 / (sum_i E|.|^2 - |E s|^2 + sigma2).
SeReport sinr_from_moments(const HardeningMoments &moments, const SystemConfig &cfg,
                           CsiMode mode);

SeReport mc_hardening_sinr(const SystemConfig &cfg, PrecoderKind kind, int B_H, int B_P,
                           const McOptions &opts);

// Denominator variants of the MRT closed form. `printed` keeps the
// (1-eta_H)^2 (tr(C C^H) - |tr C|^2) bracket, which is negative for M > 1;
// `validated` drops it and matches Monte-Carlo term by term.
enum class MrtForm { validated, printed };

/// Individual terms of the MRT closed form for one UE.
struct MrtSinrTerms {
    double numerator = 0.0;        ///< abar^2 zbar^2 (1-eP)^2 (1-eH)^2 |tr C_hat|^2
    double coherent_bracket = 0.0; ///< printed form only, else 0
    double interference = 0.0;     ///< abar^2 zbar^2 (1-eP)^2 sum_i tr(C_h,k C_hQ,i)
    double precoder_noise = 0.0;   ///< abar^2 eP (1-eP) beta_k sum_i tr(D_i)
    double noise = 0.0;            ///< sigma2

    double denominator() const { return coherent_bracket + interference + precoder_noise + noise; }
    double sinr() const { return numerator / denominator(); }
};

std::vector<MrtSinrTerms> mrt_closed_form_terms(const SystemConfig &cfg, double eta_H,
                                                double eta_P, MrtForm form = MrtForm::validated);

// Closed-form MRT SINR from covariance traces only. Throws DomainError when
// the chosen form yields a nonpositive denominator.
SeReport closed_form_mrt_sinr(const SystemConfig &cfg, int B_H, int B_P,
                              MrtForm form = MrtForm::validated);
SeReport closed_form_mrt_sinr_eta(const SystemConfig &cfg, double eta_H, double eta_P,
                                  MrtForm form = MrtForm::validated);

} // namespace fhsplit
