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

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace fhsplit {

using Complex = std::complex<double>;

// Library-wide orientation: uplink channels and precoders are M x K (one
// column per UE), downlink channel matrices are K x M.
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Deployment of one AAS serving K single-antenna UEs.
///
/// All powers are linear and normalized to the respective noise power.
/// Use `SystemConfig::baseline()` for the defaults (beta_k = 1,
/// q_k = P_t / sigma2, tau_p = K).
struct SystemConfig {
    int M = 0;       ///< AAS antennas
    int K = 0;       ///< single-antenna UEs
    int tau_c = 0;   ///< coherence block length [symbols]
    int tau_p = 0;   ///< pilot length [symbols]
    std::vector<double> beta; ///< large-scale fading per UE
    std::vector<double> q;    ///< uplink pilot power per UE
    double P_t = 0.0;         ///< total downlink transmit power
    double sigma2 = 1.0;      ///< downlink noise variance

    static SystemConfig baseline(int M, int K, double snr_db, int tau_c = 200);

    double snr_db() const;

    bool operator==(const SystemConfig &) const = default;
};

double db_to_linear(double db);
double linear_to_db(double lin);

// Returns `cfg` unchanged or throws DimensionError / ValueError.
const SystemConfig &validate_config(const SystemConfig &cfg);

/// Returns a copy of `cfg` at a new SNR with sigma2 = 1. Pilot powers follow
/// P_t unless `keep_pilot_power` is set.
SystemConfig with_snr_db(const SystemConfig &cfg, double snr_db, bool keep_pilot_power = false);

// Purpose tags for the sub-streams of one Monte-Carlo trial. Keeping every
// random quantity on its own sub-stream gives common random numbers across
// bit resolutions and precoder kinds.
enum class StreamTag : std::uint64_t {
    channel = 1,
    pilot_noise = 2,
    csi_quantization = 3,
    precoder_quantization = 4,
    moments = 5,
    user = 100,
};

/// Deterministic random stream identified by (master_seed, stream_id).
///
/// The engine is seeded through `std::seed_seq` from both words of each id so
/// nearby ids give unrelated sequences. The sequence does not depend on any
/// global state, so a trial produces the same draws on whatever worker runs it.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    // Independent child stream; same (parent, tag, index) -> same child.
    RngStream fork(StreamTag tag, std::uint64_t index = 0) const;

    double standard_normal();
    double uniform();
    std::uint64_t next_u64() { return engine_(); }

private:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t salt_hi,
              std::uint64_t salt_lo);

    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t salt_hi_ = 0;
    std::uint64_t salt_lo_ = 0;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// i.i.d. CN(0, variance) entries; real and imaginary parts each variance/2.
///
/// Draws 2*rows*cols standard normals in column-major order irrespective of
/// `variance`, so equal streams give scaled copies for different variances.
ComplexMatrix draw_complex_gaussian(RngStream &stream, int rows, int cols, double variance);

// Same draw order as above, with per-entry variances given by `variances`.
ComplexMatrix draw_complex_gaussian(RngStream &stream, const RealMatrix &variances);

} // namespace fhsplit
