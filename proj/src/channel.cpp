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

#include "fhsplit/channel.hpp"

#include <cmath>

#include "fhsplit/errors.hpp"

namespace fhsplit {

double gamma_coefficient(double q_k, int tau_p, double beta_k) {
    const double snr_pilot = q_k * tau_p * beta_k;
    return q_k * tau_p * beta_k * beta_k / (snr_pilot + 1.0);
}

double mmse_gain(double q_k, int tau_p, double beta_k) {
    return std::sqrt(q_k * tau_p) * beta_k / (q_k * tau_p * beta_k + 1.0);
}

ComplexMatrix draw_channels(const SystemConfig &cfg, RngStream &stream) {
    ComplexMatrix H = draw_complex_gaussian(stream, cfg.M, cfg.K, 1.0);
    for (int k = 0; k < cfg.K; ++k)
        H.col(k) *= std::sqrt(cfg.beta[static_cast<std::size_t>(k)]);
    return H;
}

ComplexMatrix despread_pilots(const ComplexMatrix &H, const SystemConfig &cfg, RngStream &stream,
                              double noise_variance) {
    if (H.rows() != cfg.M || H.cols() != cfg.K)
        throw DimensionError("channel matrix must be M x K");
    ComplexMatrix Y = draw_complex_gaussian(stream, cfg.M, cfg.K, noise_variance);
    for (int k = 0; k < cfg.K; ++k)
        Y.col(k) += std::sqrt(cfg.q[static_cast<std::size_t>(k)] * cfg.tau_p) * H.col(k);
    return Y;
}

ChannelSet mmse_estimate(const ComplexMatrix &Y, const SystemConfig &cfg, ComplexMatrix H) {
    if (Y.rows() != cfg.M || Y.cols() != cfg.K)
        throw DimensionError("despread pilot matrix must be M x K");
    ChannelSet set;
    set.H = std::move(H);
    set.H_hat.resize(cfg.M, cfg.K);
    set.gamma.resize(static_cast<std::size_t>(cfg.K));
    for (int k = 0; k < cfg.K; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        set.H_hat.col(k) = mmse_gain(cfg.q[uk], cfg.tau_p, cfg.beta[uk]) * Y.col(k);
        set.gamma[uk] = gamma_coefficient(cfg.q[uk], cfg.tau_p, cfg.beta[uk]);
    }
    return set;
}

ChannelSet realize_channels(const SystemConfig &cfg, const RngStream &trial) {
    RngStream chan = trial.fork(StreamTag::channel);
    RngStream noise = trial.fork(StreamTag::pilot_noise);
    ComplexMatrix H = draw_channels(cfg, chan);
    ComplexMatrix Y = despread_pilots(H, cfg, noise);
    return mmse_estimate(Y, cfg, std::move(H));
}

ChannelSet perfect_channels(const SystemConfig &cfg, const RngStream &trial) {
    RngStream chan = trial.fork(StreamTag::channel);
    ChannelSet set;
    set.H = draw_channels(cfg, chan);
    set.H_hat = set.H;
    set.gamma = cfg.beta;
    return set;
}

} // namespace fhsplit
