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

#include "fhsplit/sysmodel.hpp"

#include <cmath>
#include <string>

#include "fhsplit/errors.hpp"

namespace fhsplit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t stream, std::uint64_t salt_hi,
                            std::uint64_t salt_lo) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xFFFFFFFFULL); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(master), hi(master), lo(stream), hi(stream),
                      lo(salt_hi), hi(salt_hi), lo(salt_lo), hi(salt_lo)};
    return std::mt19937_64(seq);
}

} // namespace

SystemConfig SystemConfig::baseline(int M, int K, double snr_db, int tau_c) {
    SystemConfig cfg;
    cfg.M = M;
    cfg.K = K;
    cfg.tau_c = tau_c;
    cfg.tau_p = K;
    cfg.sigma2 = 1.0;
    cfg.P_t = db_to_linear(snr_db) * cfg.sigma2;
    cfg.beta.assign(static_cast<std::size_t>(std::max(K, 0)), 1.0);
    cfg.q.assign(static_cast<std::size_t>(std::max(K, 0)), cfg.P_t / cfg.sigma2);
    return cfg;
}

double SystemConfig::snr_db() const { return linear_to_db(P_t / sigma2); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

const SystemConfig &validate_config(const SystemConfig &cfg) {
    if (cfg.M < 1 || cfg.K < 1 || cfg.tau_c < 1 || cfg.tau_p < 1)
        throw DimensionError("M, K, tau_c and tau_p must be positive");
    if (cfg.K > cfg.tau_p)
        throw DimensionError("pilot length tau_p=" + std::to_string(cfg.tau_p) +
                             " is shorter than the number of UEs K=" + std::to_string(cfg.K));
    if (cfg.tau_p > cfg.tau_c)
        throw DimensionError("pilot length tau_p exceeds coherence block tau_c");
    if (cfg.K >= cfg.M)
        throw DimensionError("K=" + std::to_string(cfg.K) + " must be smaller than M=" +
                             std::to_string(cfg.M));
    if (cfg.beta.size() != static_cast<std::size_t>(cfg.K) ||
        cfg.q.size() != static_cast<std::size_t>(cfg.K))
        throw DimensionError("beta and q must have K entries");
    for (double b : cfg.beta)
        if (!(b > 0.0) || !std::isfinite(b))
            throw ValueError("large-scale fading coefficients must be positive");
    for (double qk : cfg.q)
        if (!(qk >= 0.0) || !std::isfinite(qk))
            throw ValueError("pilot powers must be nonnegative");
    if (!(cfg.P_t > 0.0) || !std::isfinite(cfg.P_t))
        throw ValueError("transmit power P_t must be positive");
    if (!(cfg.sigma2 > 0.0) || !std::isfinite(cfg.sigma2))
        throw ValueError("noise variance sigma2 must be positive");
    return cfg;
}

SystemConfig with_snr_db(const SystemConfig &cfg, double snr_db, bool keep_pilot_power) {
    SystemConfig out = cfg;
    out.sigma2 = 1.0;
    out.P_t = db_to_linear(snr_db);
    if (!keep_pilot_power)
        out.q.assign(static_cast<std::size_t>(cfg.K), out.P_t / out.sigma2);
    return out;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : RngStream(master_seed, stream_id, 0, 0) {}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t salt_hi,
                     std::uint64_t salt_lo)
    : master_seed_(master_seed), stream_id_(stream_id), salt_hi_(salt_hi), salt_lo_(salt_lo),
      engine_(make_engine(master_seed, stream_id, salt_hi, salt_lo)) {}

RngStream RngStream::fork(StreamTag tag, std::uint64_t index) const {
    const auto t = static_cast<std::uint64_t>(tag);
    const std::uint64_t hi = splitmix64(salt_hi_ ^ splitmix64(t));
    const std::uint64_t lo = splitmix64(salt_lo_ ^ splitmix64(index + 0x51ED2701ULL * (t + 1)));
    return RngStream(master_seed_, stream_id_, hi, lo);
}

double RngStream::standard_normal() { return normal_(engine_); }

double RngStream::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

ComplexMatrix draw_complex_gaussian(RngStream &stream, int rows, int cols, double variance) {
    if (rows < 0 || cols < 0)
        throw DimensionError("matrix dimensions must be nonnegative");
    if (!(variance >= 0.0))
        throw ValueError("variance must be nonnegative");
    const double scale = std::sqrt(variance / 2.0);
    ComplexMatrix out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = stream.standard_normal();
            const double im = stream.standard_normal();
            out(i, j) = Complex(scale * re, scale * im);
        }
    return out;
}

ComplexMatrix draw_complex_gaussian(RngStream &stream, const RealMatrix &variances) {
    ComplexMatrix out(variances.rows(), variances.cols());
    for (Eigen::Index j = 0; j < variances.cols(); ++j)
        for (Eigen::Index i = 0; i < variances.rows(); ++i) {
            const double v = variances(i, j);
            if (!(v >= 0.0))
                throw ValueError("variance must be nonnegative");
            const double scale = std::sqrt(v / 2.0);
            const double re = stream.standard_normal();
            const double im = stream.standard_normal();
            out(i, j) = Complex(scale * re, scale * im);
        }
    return out;
}

} // namespace fhsplit
