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

#include "fhsplit/precoding.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "fhsplit/errors.hpp"

namespace fhsplit {

std::string_view to_string(PrecoderKind kind) {
    switch (kind) {
    case PrecoderKind::mrt: return "mrt";
    case PrecoderKind::zf: return "zf";
    case PrecoderKind::wf: return "wf";
    }
    return "?";
}

std::string_view to_string(CsiMode mode) {
    return mode == CsiMode::perfect ? "perfect" : "quantized";
}

PrecoderKind parse_precoder_kind(std::string_view text) {
    if (text == "mrt" || text == "MRT") return PrecoderKind::mrt;
    if (text == "zf" || text == "ZF") return PrecoderKind::zf;
    if (text == "wf" || text == "WF") return PrecoderKind::wf;
    throw ValueError("unknown precoder '" + std::string(text) + "' (expected mrt, zf or wf)");
}

CsiMode parse_csi_mode(std::string_view text) {
    if (text == "quantized") return CsiMode::quantized;
    if (text == "perfect") return CsiMode::perfect;
    throw ValueError("unknown CSI mode '" + std::string(text) + "' (expected quantized or perfect)");
}

namespace {

// Hd^H A^{-1} for Hermitian positive definite A, via Cholesky.
ComplexMatrix right_solve(const ComplexMatrix &H_QD, const ComplexMatrix &A) {
    Eigen::LLT<ComplexMatrix> llt(A);
    if (llt.info() != Eigen::Success || !(llt.rcond() >= kMinGramRcond))
        throw NumericalRankError("Gram matrix is numerically singular");
    // A^{-1} Hd is K x M; its adjoint is Hd^H A^{-1} because A is Hermitian.
    return llt.solve(H_QD).adjoint();
}

} // namespace

PrecodingMatrix build_precoder(const ComplexMatrix &H_QD, PrecoderKind kind,
                               const SystemConfig &cfg) {
    if (H_QD.rows() != cfg.K || H_QD.cols() != cfg.M)
        throw DimensionError("downlink CSI must be K x M");
    PrecodingMatrix out;
    out.kind = kind;
    ComplexMatrix direction;
    switch (kind) {
    case PrecoderKind::mrt:
        direction = H_QD.adjoint();
        break;
    case PrecoderKind::zf: {
        const ComplexMatrix gram = H_QD * H_QD.adjoint();
        direction = right_solve(H_QD, gram);
        break;
    }
    case PrecoderKind::wf: {
        ComplexMatrix reg = H_QD * H_QD.adjoint();
        reg.diagonal().array() += cfg.K * cfg.sigma2 / cfg.P_t;
        direction = right_solve(H_QD, reg);
        break;
    }
    }
    // ||direction||_F^2 equals tr(Hd Hd^H), tr(G^{-1}) and tr(A^{-1} G A^{-1})
    // for MRT, ZF and WF respectively.
    const double norm2 = direction.squaredNorm();
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw NumericalRankError("precoder direction has zero or non-finite norm");
    out.zeta = std::sqrt(cfg.P_t / norm2);
    out.P = out.zeta * direction;
    return out;
}

TransmitPrecoder transmit_rescale(ComplexMatrix P_Q, double P_t) {
    const double norm2 = P_Q.squaredNorm();
    if (!(norm2 > 0.0))
        throw DegenerateInputError("quantized precoder is the zero matrix");
    TransmitPrecoder out;
    out.alpha = std::sqrt(P_t / norm2);
    out.P_Q = std::move(P_Q);
    return out;
}

PrecoderMoments mrt_moments(const SystemConfig &cfg, double eta_H, double eta_P) {
    PrecoderMoments mom;
    double sum_cov = 0.0;
    for (int k = 0; k < cfg.K; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        sum_cov += quantized_csi_covariance(gamma_coefficient(cfg.q[uk], cfg.tau_p, cfg.beta[uk]),
                                            eta_H);
    }
    const double zeta2 = cfg.P_t / (cfg.M * sum_cov);
    mom.zeta_bar = std::sqrt(zeta2);
    mom.D.resize(cfg.M, cfg.K);
    for (int k = 0; k < cfg.K; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const double gk = gamma_coefficient(cfg.q[uk], cfg.tau_p, cfg.beta[uk]);
        mom.D.col(k).setConstant(zeta2 * quantized_csi_covariance(gk, eta_H));
    }
    mom.D_stderr = RealMatrix::Zero(cfg.M, cfg.K);
    mom.alpha_bar = 1.0 / std::sqrt(1.0 - eta_P);
    return mom;
}

RngStream trial_stream(std::uint64_t seed, std::uint64_t trial, int attempt) {
    RngStream base(seed, trial);
    if (attempt == 0)
        return base;
    return base.fork(StreamTag::user, static_cast<std::uint64_t>(attempt));
}

PrecodedRealization realize_precoder(const SystemConfig &cfg, PrecoderKind kind, double eta_H,
                                     CsiMode mode, std::uint64_t seed, std::uint64_t trial) {
    const AqnmQuantizer csi_quant = AqnmQuantizer::from_eta(mode == CsiMode::perfect ? 0.0 : eta_H);
    for (int attempt = 0;; ++attempt) {
        RngStream stream = trial_stream(seed, trial, attempt);
        ChannelSet channels =
            mode == CsiMode::perfect ? perfect_channels(cfg, stream) : realize_channels(cfg, stream);
        ComplexMatrix H_Q;
        if (mode == CsiMode::perfect) {
            H_Q = channels.H_hat;
        } else {
            RngStream qstream = stream.fork(StreamTag::csi_quantization);
            H_Q = aqnm_quantize(channels.H_hat, csi_quant, channels.gamma, qstream).value;
        }
        try {
            PrecodingMatrix precoder = build_precoder(H_Q.transpose(), kind, cfg);
            return PrecodedRealization{std::move(channels), std::move(H_Q), std::move(precoder),
                                       std::move(stream), attempt};
        } catch (const NumericalRankError &) {
            if (attempt >= kMaxRedraws)
                throw;
        }
    }
}

PrecoderMoments estimate_moments_mc(const SystemConfig &cfg, PrecoderKind kind, double eta_H,
                                    double eta_P, int trials, std::uint64_t seed) {
    if (trials < 100)
        throw DomainError("moment estimation needs at least 100 trials");
    RealMatrix sum = RealMatrix::Zero(cfg.M, cfg.K);
    RealMatrix sum_sq = RealMatrix::Zero(cfg.M, cfg.K);
    PrecoderMoments mom;
    double sum_csi_power = 0.0;
    for (int t = 0; t < trials; ++t) {
        const PrecodedRealization r = realize_precoder(cfg, kind, eta_H, CsiMode::quantized, seed,
                                                       static_cast<std::uint64_t>(t));
        mom.redraws += r.redraws;
        sum_csi_power += r.H_Q.squaredNorm();
        const RealMatrix p2 = r.precoder.P.cwiseAbs2();
        sum += p2;
        sum_sq += p2.cwiseAbs2();
    }
    const double n = trials;
    mom.D = sum / n;
    const RealMatrix var = ((sum_sq / n) - mom.D.cwiseAbs2()).cwiseMax(0.0) * (n / (n - 1.0));
    mom.D_stderr = (var / n).cwiseSqrt();

    const AqnmQuantizer prec_quant = AqnmQuantizer::from_eta(eta_P);
    double sum_norm = 0.0;
    for (int t = 0; t < trials; ++t) {
        const PrecodedRealization r = realize_precoder(cfg, kind, eta_H, CsiMode::quantized, seed,
                                                       static_cast<std::uint64_t>(t));
        RngStream pstream = r.stream.fork(StreamTag::precoder_quantization);
        sum_norm += aqnm_quantize(r.precoder.P, prec_quant, mom.D, pstream).value.squaredNorm();
    }
    mom.alpha_bar = std::sqrt(cfg.P_t / (sum_norm / n));
    mom.zeta_bar = kind == PrecoderKind::mrt ? std::sqrt(cfg.P_t / (sum_csi_power / n)) : 0.0;
    return mom;
}

} // namespace fhsplit
