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
#include <optional>
#include <string>
#include <string_view>

#include "fhsplit/channel.hpp"
#include "fhsplit/quantization.hpp"
#include "fhsplit/sysmodel.hpp"

namespace fhsplit {

enum class PrecoderKind { mrt, zf, wf };
enum class CsiMode { quantized, perfect };

std::string_view to_string(PrecoderKind kind);
std::string_view to_string(CsiMode mode);
PrecoderKind parse_precoder_kind(std::string_view text);
CsiMode parse_csi_mode(std::string_view text);

/// M x K precoder normalized so that ||P||_F^2 = P_t.
struct PrecodingMatrix {
    ComplexMatrix P;
    PrecoderKind kind = PrecoderKind::mrt;
    double zeta = 0.0;
};

/// Quantized precoder as applied at the AAS, x = alpha P_Q s.
struct TransmitPrecoder {
    ComplexMatrix P_Q;
    double alpha = 0.0; ///< alpha^2 ||P_Q||_F^2 = P_t
};

/// Second moments of the precoder entries feeding the precoder AQNM.
///
/// Column k of `D` is the diagonal of D_{p_k}, i.e. E|p_{m,k}|^2 for m = 1..M.
/// `D_stderr` is zero for analytic moments.
struct PrecoderMoments {
    RealMatrix D;
    RealMatrix D_stderr;
    double alpha_bar = 1.0;
    double zeta_bar = 0.0; ///< MRT only
    long long redraws = 0;
};

// Reciprocal condition numbers below this mark a Gram matrix as singular.
inline constexpr double kMinGramRcond = 1e-12;

// Maximum redraws of one Monte-Carlo trial before a NumericalRankError escapes.
inline constexpr int kMaxRedraws = 16;

/// Builds MRT, ZF or WF from the K x M downlink CSI `H_QD`.
///
/// ZF and WF solve the K x K (regularized) Gram system by Cholesky instead of
/// forming an inverse. WF regularizes with K sigma2 / P_t. Throws
/// NumericalRankError when the Gram matrix is numerically singular (rcond
/// below kMinGramRcond) or the CSI is all zero.
PrecodingMatrix build_precoder(const ComplexMatrix &H_QD, PrecoderKind kind,
                               const SystemConfig &cfg);

// alpha = sqrt(P_t / ||P_Q||_F^2). Throws DegenerateInputError for P_Q = 0.
TransmitPrecoder transmit_rescale(ComplexMatrix P_Q, double P_t);

// Large-system MRT moments: zeta_bar^2 = P_t / (M sum_k (1-eta_H) gamma_k),
// D[m][i] = zeta_bar^2 (1-eta_H) gamma_i, alpha_bar = 1 / sqrt(1 - eta_P).
PrecoderMoments mrt_moments(const SystemConfig &cfg, double eta_H, double eta_P);

/// Everything drawn for one trial up to the unquantized precoder.
struct PrecodedRealization {
    ChannelSet channels;
    ComplexMatrix H_Q;          ///< quantized CSI at the BBU, M x K
    PrecodingMatrix precoder;
    RngStream stream;           ///< stream of the accepted attempt
    int redraws = 0;
};

// Stream of trial `trial` under `seed`; attempt > 0 selects a redraw.
RngStream trial_stream(std::uint64_t seed, std::uint64_t trial, int attempt = 0);

/// Channel draw -> pilot estimation -> CSI AQNM -> precoder for one trial.
///
/// In perfect mode the estimate is the true channel and CSI quantization is
/// skipped. Rank-deficient realizations are redrawn from a fresh attempt
/// stream, at most kMaxRedraws times.
PrecodedRealization realize_precoder(const SystemConfig &cfg, PrecoderKind kind, double eta_H,
                                     CsiMode mode, std::uint64_t seed, std::uint64_t trial);

/// Monte-Carlo estimate of D_{p_k} and alpha_bar for any precoder kind.
///
/// Sample averages of |p_{m,k}|^2 over `trials` realizations under `seed`.
/// alpha_bar uses a second pass that quantizes each precoder with the
/// estimated D. Requires trials >= 100.
PrecoderMoments estimate_moments_mc(const SystemConfig &cfg, PrecoderKind kind, double eta_H,
                                    double eta_P, int trials, std::uint64_t seed);

} // namespace fhsplit
