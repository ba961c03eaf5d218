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

#include "fhsplit/se_eval.hpp"

#include <cmath>

#include "fhsplit/errors.hpp"
#include "parallel.hpp"

namespace fhsplit {

std::string_view to_string(SeMethod method) {
    return method == SeMethod::closed_form_mrt ? "closed_form_mrt" : "monte_carlo";
}

double se_from_sinr(double sinr, int tau_p, int tau_c) {
    return (1.0 - static_cast<double>(tau_p) / tau_c) * std::log2(1.0 + sinr);
}

void finalize_report(SeReport &report, const SystemConfig &cfg) {
    report.se.resize(report.sinr.size());
    report.sum_se = 0.0;
    for (std::size_t k = 0; k < report.sinr.size(); ++k) {
        report.se[k] = se_from_sinr(report.sinr[k], cfg.tau_p, cfg.tau_c);
        report.sum_se += report.se[k];
    }
}

namespace {

// Salt separating the D_{p_k} estimation pass from the evaluation trials.
constexpr std::uint64_t kMomentSeedSalt = 0x6D6F6D656E7473ULL;

struct TrialRecord {
    Eigen::VectorXcd signal; // alpha h_k^T p_Q,k
    RealMatrix power;        // |alpha h_k^T p_Q,i|^2
    long long redraws = 0;

    TrialRecord &operator+=(const TrialRecord &o) {
        signal += o.signal;
        power += o.power;
        redraws += o.redraws;
        return *this;
    }
};

} // namespace

HardeningMoments mc_hardening_moments(const SystemConfig &cfg, PrecoderKind kind, int B_H, int B_P,
                                      const McOptions &opts) {
    validate_config(cfg);
    if (opts.trials < 1)
        throw DomainError("Monte-Carlo evaluation needs at least one trial");
    const bool perfect = opts.csi_mode == CsiMode::perfect;
    const double eta_H = perfect ? 0.0 : eta_of_bits(B_H);
    const double eta_P = perfect ? 0.0 : eta_of_bits(B_P);
    const AqnmQuantizer prec_quant = AqnmQuantizer::from_eta(eta_P);

    PrecoderMoments moments;
    long long moment_redraws = 0;
    if (perfect) {
        moments.D = RealMatrix::Zero(cfg.M, cfg.K);
    } else if (kind == PrecoderKind::mrt) {
        moments = mrt_moments(cfg, eta_H, eta_P);
    } else {
        const int mt = opts.moment_trials > 0 ? opts.moment_trials : std::max(opts.trials, 100);
        moments = estimate_moments_mc(cfg, kind, eta_H, eta_P, mt, opts.seed ^ kMomentSeedSalt);
        moment_redraws = moments.redraws;
    }

    const auto n = static_cast<std::size_t>(opts.trials);
    std::vector<TrialRecord> records(n);
    detail::parallel_for(n, opts.workers, [&](std::size_t t) {
        PrecodedRealization r = realize_precoder(cfg, kind, eta_H, opts.csi_mode, opts.seed, t);
        RngStream pstream = r.stream.fork(StreamTag::precoder_quantization);
        ComplexMatrix P_Q = aqnm_quantize(r.precoder.P, prec_quant, moments.D, pstream).value;
        const TransmitPrecoder tx = transmit_rescale(std::move(P_Q), cfg.P_t);
        // G(k, i) = alpha h_k^T p_Q,i
        const ComplexMatrix G = tx.alpha * (r.channels.H.transpose() * tx.P_Q);
        records[t] = TrialRecord{G.diagonal(), G.cwiseAbs2(), r.redraws};
    });

    const TrialRecord total = detail::pairwise_sum(records, 0, n);
    HardeningMoments out;
    out.trials = opts.trials;
    out.signal_mean = total.signal / static_cast<double>(n);
    out.power = total.power / static_cast<double>(n);
    out.redraws = total.redraws + moment_redraws;
    return out;
}

SeReport sinr_from_moments(const HardeningMoments &moments, const SystemConfig &cfg,
                           CsiMode mode) {
    SeReport rep;
    rep.method = SeMethod::monte_carlo;
    rep.trials = moments.trials;
    rep.csi_mode = mode;
    rep.redraws = moments.redraws;
    rep.sinr.resize(static_cast<std::size_t>(cfg.K));
    for (int k = 0; k < cfg.K; ++k) {
        const double coherent = std::norm(moments.signal_mean(k));
        const double denom = moments.power.row(k).sum() - coherent + cfg.sigma2;
        rep.sinr[static_cast<std::size_t>(k)] = coherent / denom;
    }
    finalize_report(rep, cfg);
    return rep;
}

SeReport mc_hardening_sinr(const SystemConfig &cfg, PrecoderKind kind, int B_H, int B_P,
                           const McOptions &opts) {
    return sinr_from_moments(mc_hardening_moments(cfg, kind, B_H, B_P, opts), cfg, opts.csi_mode);
}

std::vector<MrtSinrTerms> mrt_closed_form_terms(const SystemConfig &cfg, double eta_H,
                                                double eta_P, MrtForm form) {
    validate_config(cfg);
    const PrecoderMoments mom = mrt_moments(cfg, eta_H, eta_P);
    const double a2 = mom.alpha_bar * mom.alpha_bar;
    const double z2 = mom.zeta_bar * mom.zeta_bar;
    const double gP = 1.0 - eta_P;
    const double gH = 1.0 - eta_H;
    const double M = cfg.M;
    const double trace_D = mom.D.sum();

    // C_h,k = beta_k I, C_hat,k = gamma_k I, C_hatQ,i = (1 - eta_H) gamma_i I.
    std::vector<double> gamma(static_cast<std::size_t>(cfg.K));
    double sum_cov_q = 0.0;
    for (int i = 0; i < cfg.K; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        gamma[ui] = gamma_coefficient(cfg.q[ui], cfg.tau_p, cfg.beta[ui]);
        sum_cov_q += quantized_csi_covariance(gamma[ui], eta_H);
    }

    std::vector<MrtSinrTerms> terms(static_cast<std::size_t>(cfg.K));
    for (int k = 0; k < cfg.K; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const double beta = cfg.beta[uk];
        const double tr_c = M * gamma[uk];
        MrtSinrTerms &t = terms[uk];
        t.numerator = a2 * z2 * gP * gP * gH * gH * tr_c * tr_c;
        if (form == MrtForm::printed)
            t.coherent_bracket = a2 * z2 * gP * gP * gH * gH * (M * gamma[uk] * gamma[uk] - tr_c * tr_c);
        t.interference = a2 * z2 * gP * gP * M * beta * sum_cov_q;
        t.precoder_noise = a2 * eta_P * gP * beta * trace_D;
        t.noise = cfg.sigma2;
    }
    return terms;
}

SeReport closed_form_mrt_sinr_eta(const SystemConfig &cfg, double eta_H, double eta_P,
                                  MrtForm form) {
    SeReport rep;
    rep.method = SeMethod::closed_form_mrt;
    rep.trials = 0;
    rep.csi_mode = CsiMode::quantized;
    for (const MrtSinrTerms &t : mrt_closed_form_terms(cfg, eta_H, eta_P, form)) {
        if (!(t.denominator() > 0.0))
            throw DomainError("closed-form MRT denominator is not positive for this form");
        rep.sinr.push_back(t.sinr());
    }
    finalize_report(rep, cfg);
    return rep;
}

SeReport closed_form_mrt_sinr(const SystemConfig &cfg, int B_H, int B_P, MrtForm form) {
    return closed_form_mrt_sinr_eta(cfg, eta_of_bits(B_H), eta_of_bits(B_P), form);
}

} // namespace fhsplit
