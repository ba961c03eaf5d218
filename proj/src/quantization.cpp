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

#include "fhsplit/quantization.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fhsplit/errors.hpp"

namespace fhsplit {

double eta_of_bits(int bits) {
    if (bits < 1)
        throw DomainError("quantizer resolution must be at least 1 bit, got " + std::to_string(bits));
    if (bits <= static_cast<int>(kEtaTable.size()))
        return kEtaTable[static_cast<std::size_t>(bits - 1)];
    return std::numbers::pi * std::sqrt(3.0) / 2.0 * std::exp2(-2.0 * bits);
}

AqnmQuantizer AqnmQuantizer::from_bits(int bits) { return AqnmQuantizer{bits, eta_of_bits(bits)}; }

AqnmQuantizer AqnmQuantizer::from_eta(double eta) {
    if (!(eta >= 0.0 && eta < 1.0))
        throw DomainError("distortion factor must lie in [0, 1)");
    return AqnmQuantizer{0, eta};
}

QuantizedMatrix aqnm_quantize(const ComplexMatrix &X, const AqnmQuantizer &quant,
                              const RealMatrix &entry_var, RngStream &stream) {
    if (entry_var.rows() != X.rows() || entry_var.cols() != X.cols())
        throw DimensionError("entry variance matrix must match the input shape");
    if ((entry_var.array() < 0.0).any() || !entry_var.allFinite())
        throw DomainError("entry variances must be nonnegative");
    QuantizedMatrix out;
    out.noise = draw_complex_gaussian(stream, quant.noise_factor() * entry_var);
    out.value = quant.gain() * X + out.noise;
    return out;
}

QuantizedMatrix aqnm_quantize(const ComplexMatrix &X, const AqnmQuantizer &quant,
                              const std::vector<double> &column_var, RngStream &stream) {
    if (column_var.size() != static_cast<std::size_t>(X.cols()))
        throw DimensionError("need one variance per column");
    RealMatrix var(X.rows(), X.cols());
    for (Eigen::Index k = 0; k < X.cols(); ++k) {
        const double v = column_var[static_cast<std::size_t>(k)];
        if (!(v >= 0.0))
            throw DomainError("entry variances must be nonnegative");
        var.col(k).setConstant(v);
    }
    return aqnm_quantize(X, quant, var, stream);
}

double quantized_csi_covariance(double gamma_k, double eta_H) {
    return ((1.0 - eta_H) * (1.0 - eta_H) + eta_H * (1.0 - eta_H)) * gamma_k;
}

} // namespace fhsplit
