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

#include <array>
#include <vector>

#include "fhsplit/sysmodel.hpp"

namespace fhsplit {

// Distortion factors of the optimal uniform quantizer for a Gaussian input,
// B = 1..5 bits per complex entry.
inline constexpr std::array<double, 5> kEtaTable = {0.3634, 0.1175, 0.03454, 0.009497, 0.002499};

// Table value for B <= 5, (pi sqrt(3) / 2) 2^(-2B) beyond. Throws DomainError for B < 1.
double eta_of_bits(int bits);

/// Additive quantization noise model: x -> (1 - eta) x + n, n ~ CN(0, eta (1 - eta) E|x|^2).
struct AqnmQuantizer {
    int bits = 0; ///< 0 when constructed from a raw distortion factor
    double eta = 0.0;

    static AqnmQuantizer from_bits(int bits);
    // Raw distortion in [0, 1). eta = 0 is the distortion-free limit.
    static AqnmQuantizer from_eta(double eta);

    double gain() const noexcept { return 1.0 - eta; }
    double noise_factor() const noexcept { return eta * (1.0 - eta); }
};

struct QuantizedMatrix {
    ComplexMatrix value; ///< (1 - eta) X + noise, entrywise
    ComplexMatrix noise;
};

/// Applies the AQNM to `X`.
///
/// `entry_var` holds the population second moments E|x_mk|^2 of the input
/// distribution, not moments of the realization. The noise is drawn as
/// standard normals scaled per entry, so for a fixed stream it is a scaled
/// copy across quantizers.
QuantizedMatrix aqnm_quantize(const ComplexMatrix &X, const AqnmQuantizer &quant,
                              const RealMatrix &entry_var, RngStream &stream);

// Per-column variant: entry_var[k] applies to every entry of column k.
QuantizedMatrix aqnm_quantize(const ComplexMatrix &X, const AqnmQuantizer &quant,
                              const std::vector<double> &column_var, RngStream &stream);

// Per-entry variance of the quantized CSI: ((1-eta)^2 + eta(1-eta)) gamma = (1-eta) gamma.
double quantized_csi_covariance(double gamma_k, double eta_H);

} // namespace fhsplit
