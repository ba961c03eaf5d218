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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fhsplit/allocation.hpp"
#include "fhsplit/se_eval.hpp"

namespace fhsplit {

const char *library_version();

enum class Evaluator { closed_form, mc };

/// One curve of a sweep: a precoder evaluated one way across B_H.
struct SeriesSpec {
    PrecoderKind precoder = PrecoderKind::mrt;
    CsiMode csi_mode = CsiMode::quantized;
    SeMethod method = SeMethod::monte_carlo;
    std::optional<int> fixed_bp;  ///< B_P held fixed; otherwise B_P = B_bar - B_H

    std::string label() const;
    bool operator==(const SeriesSpec &) const = default;
};

/// Everything needed to re-run an experiment grid exactly.
struct ExperimentSpec {
    std::string scenario = "custom";
    int M = 128;
    int K = 8;
    int tau_c = 200;
    int tau_p = 0; ///< 0 means tau_p = K
    std::optional<std::vector<double>> beta;
    std::optional<std::vector<double>> q; ///< fixed pilot powers; default tracks P_t

    std::optional<long long> B_bar;
    std::optional<FronthaulBudget> fronthaul; ///< used when B_bar is not given

    std::vector<PrecoderKind> precoders = {PrecoderKind::mrt, PrecoderKind::zf, PrecoderKind::wf};
    CsiMode csi_mode = CsiMode::quantized;
    Evaluator evaluator = Evaluator::mc;
    std::vector<SeriesSpec> series; ///< explicit series override precoders/csi/evaluator
    std::optional<int> fixed_bp;

    std::vector<double> snr_db = {10.0};
    int bh_min = 1;
    int bh_max = 0; ///< 0 means B_bar - 1 (or B_bar - 1 with fixed B_P too)

    int trials = 1000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out_dir = "out";

    // Resolved budget; throws InfeasibleBudgetError / ValueError.
    long long resolved_bbar() const;
    std::vector<SeriesSpec> resolved_series() const;
    std::vector<int> bh_grid() const;
    SystemConfig system_at(double snr) const;
    // Throws ValueError / DimensionError when the grid cannot be resolved.
    void validate() const;
};

nlohmann::json to_json(const ExperimentSpec &spec);
ExperimentSpec spec_from_json(const nlohmann::json &j);
ExperimentSpec load_spec(const std::filesystem::path &path);

struct SweepRow {
    std::string precoder;
    std::string csi_mode;
    double snr_db = 0.0;
    int b_h = 0;
    int b_p = 0;
    std::string method;
    int trials = 0;
    std::uint64_t seed = 0;
    double sum_se = 0.0;
    std::vector<double> se;
};

struct SweepResult {
    std::vector<SweepRow> rows;     ///< canonical order: series, SNR, B_H
    std::vector<std::string> failed_cells;
    long long redraws = 0;
    double wall_time_s = 0.0;
};

// Evaluates one cell. Closed form is used for SeMethod::closed_form_mrt.
SeReport evaluate_cell(const ExperimentSpec &spec, const SeriesSpec &series, double snr_db,
                       BitSplit split);

// Evaluates the whole grid without writing anything.
SweepResult compute_sweep(const ExperimentSpec &spec);

/// compute_sweep plus persistence under spec.out_dir: <scenario>.csv,
/// <scenario>.meta.json and one two-column <scenario>_<series>_snr<x>.dat per curve.
SweepResult run_sweep(const ExperimentSpec &spec);

enum class Figure { fig2, fig3, fig4 };
Figure parse_figure(std::string_view name);
std::string_view to_string(Figure fig);
ExperimentSpec figure_preset(Figure fig);

// Preset with overrides applied by the caller, then run_sweep.
SweepResult reproduce(const ExperimentSpec &preset);

/// Line search for one precoder at one SNR (the first entries of spec).
///
/// Closed-form evaluation is only defined for MRT; asking for it with ZF or
/// WF is a ValueError. Writes <scenario>_profile.csv and metadata when
/// `persist` is set.
AllocationResult optimize(const ExperimentSpec &spec, bool persist = true);

// CSV with columns precoder,csi_mode,snr_db,b_h,b_p,method,trials,seed,sum_se,se_1..se_K.
void write_sweep_csv(const std::filesystem::path &path, const std::vector<SweepRow> &rows);
std::vector<SweepRow> read_sweep_csv(const std::filesystem::path &path);

// Shortest round-trip decimal representation.
std::string format_double(double v);

} // namespace fhsplit
