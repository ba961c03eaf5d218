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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fhsplit/errors.hpp"
#include "fhsplit/quantization.hpp"

using namespace fhsplit;

TEST_CASE("eta_of_bits table and asymptotic branch") {
    CHECK(eta_of_bits(1) == 0.3634);
    CHECK(eta_of_bits(2) == 0.1175);
    CHECK(eta_of_bits(3) == 0.03454);
    CHECK(eta_of_bits(4) == 0.009497);
    CHECK(eta_of_bits(5) == 0.002499);
    // pi sqrt(3) / 2 * 2^-16
    CHECK(eta_of_bits(8) == doctest::Approx(4.1515e-5).epsilon(1e-4));
    CHECK(eta_of_bits(6) == doctest::Approx(std::numbers::pi * std::sqrt(3.0) / 2.0 / 4096.0));
    CHECK_THROWS_AS(eta_of_bits(0), DomainError);
    CHECK_THROWS_AS(eta_of_bits(-3), DomainError);
}

TEST_CASE("eta_of_bits strictly decreases through B = 30") {
    for (int b = 1; b < 30; ++b)
        CHECK(eta_of_bits(b + 1) < eta_of_bits(b));
}

TEST_CASE("AqnmQuantizer construction") {
    const AqnmQuantizer q = AqnmQuantizer::from_bits(2);
    CHECK(q.bits == 2);
    CHECK(q.eta == 0.1175);
    CHECK(q.gain() == doctest::Approx(0.8825));
    CHECK(q.noise_factor() == doctest::Approx(0.1175 * 0.8825));
    CHECK_THROWS_AS(AqnmQuantizer::from_eta(1.0), DomainError);
    CHECK_THROWS_AS(AqnmQuantizer::from_eta(-0.1), DomainError);
}

TEST_CASE("distortion-free limit passes the input through") {
    RngStream s(1, 1), n(1, 2);
    const ComplexMatrix X = draw_complex_gaussian(s, 10, 3, 2.0);
    const QuantizedMatrix Q = aqnm_quantize(X, AqnmQuantizer::from_eta(0.0), std::vector<double>{2.0, 2.0, 2.0}, n);
    CHECK(Q.value == X);
    CHECK(Q.noise.squaredNorm() == 0.0);
}

TEST_CASE("affine identity holds exactly per realization") {
    RngStream s(4, 1), n(4, 2);
    const ComplexMatrix X = draw_complex_gaussian(s, 7, 5, 1.0);
    RealMatrix var = RealMatrix::Constant(7, 5, 0.7);
    var(2, 3) = 0.1;
    const AqnmQuantizer q = AqnmQuantizer::from_bits(3);
    const QuantizedMatrix Q = aqnm_quantize(X, q, var, n);
    const ComplexMatrix rebuilt = q.gain() * X + Q.noise;
    CHECK(Q.value == rebuilt);
}

TEST_CASE("AQNM second-moment contract at 10^5 entries") {
    const double gamma = 0.8;
    for (int bits : {1, 2, 3, 5}) {
        CAPTURE(bits);
        RngStream s(10, static_cast<std::uint64_t>(bits)), n(20, static_cast<std::uint64_t>(bits));
        const ComplexMatrix X = draw_complex_gaussian(s, 1000, 100, gamma);
        const AqnmQuantizer q = AqnmQuantizer::from_bits(bits);
        const QuantizedMatrix Q =
            aqnm_quantize(X, q, std::vector<double>(100, gamma), n);
        const double n_entries = 1e5;
        CHECK(Q.value.squaredNorm() / n_entries == doctest::Approx((1.0 - q.eta) * gamma).epsilon(0.02));
    }
}

TEST_CASE("one-bit noise variance is eta (1 - eta)") {
    RngStream s(5, 5), n(6, 6);
    const ComplexMatrix X = draw_complex_gaussian(s, 1000, 100, 1.0);
    const QuantizedMatrix Q =
        aqnm_quantize(X, AqnmQuantizer::from_bits(1), std::vector<double>(100, 1.0), n);
    CHECK(Q.noise.squaredNorm() / 1e5 == doctest::Approx(0.23134).epsilon(0.02));
}

TEST_CASE("quantization noise is uncorrelated across entries") {
    // Sample cross moments of neighbouring entries over many realizations.
    const int reps = 20'000;
    const AqnmQuantizer q = AqnmQuantizer::from_bits(2);
    const ComplexMatrix zero = ComplexMatrix::Zero(4, 2);
    const RealMatrix var = RealMatrix::Ones(4, 2);
    Complex c01{0, 0}, c_across{0, 0};
    for (int t = 0; t < reps; ++t) {
        RngStream n(8, static_cast<std::uint64_t>(t));
        const ComplexMatrix N = aqnm_quantize(zero, q, var, n).noise;
        c01 += N(0, 0) * std::conj(N(1, 0));
        c_across += N(2, 0) * std::conj(N(2, 1));
    }
    c01 /= reps;
    c_across /= reps;
    const double v = q.noise_factor();
    const double se = v / std::sqrt(2.0 * reps);
    CHECK(std::abs(c01.real()) < 3.0 * se);
    CHECK(std::abs(c01.imag()) < 3.0 * se);
    CHECK(std::abs(c_across.real()) < 3.0 * se);
    CHECK(std::abs(c_across.imag()) < 3.0 * se);
}

TEST_CASE("aqnm_quantize input validation") {
    RngStream n(1, 1);
    const ComplexMatrix X = ComplexMatrix::Zero(2, 2);
    CHECK_THROWS_AS(aqnm_quantize(X, AqnmQuantizer::from_bits(1), std::vector<double>{1.0, -1.0}, n), DomainError);
    CHECK_THROWS_AS(aqnm_quantize(X, AqnmQuantizer::from_bits(1), RealMatrix::Ones(3, 2), n),
                    DimensionError);
    CHECK_THROWS_AS(aqnm_quantize(X, AqnmQuantizer::from_bits(1), std::vector<double>{1.0}, n), DimensionError);
}

TEST_CASE("quantized_csi_covariance") {
    CHECK(quantized_csi_covariance(0.7, 0.0) == doctest::Approx(0.7));
    CHECK(quantized_csi_covariance(8.0 / 9.0, eta_of_bits(2)) == doctest::Approx(0.78444).epsilon(1e-4));
    CHECK(quantized_csi_covariance(0.0, 0.3) == 0.0);
    for (int b = 1; b <= 10; ++b)
        CHECK(quantized_csi_covariance(0.5, eta_of_bits(b)) ==
              doctest::Approx((1.0 - eta_of_bits(b)) * 0.5));
}
