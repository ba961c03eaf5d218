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

// fhsplit command-line harness: eta, budget, sweep, optimize, reproduce.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fhsplit/errors.hpp"
#include "fhsplit/experiment.hpp"

using namespace fhsplit;

namespace {

enum ExitCode {
    kOk = 0,
    kFailure = 1,
    kInfeasible = 2,
    kConfigError = 3,
    kIoError = 4,
};

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> workers;
    std::optional<std::string> out;
    std::vector<std::string> precoders;
    std::optional<std::string> csi;
    std::vector<double> snr_db;
    std::optional<long long> bbar;
    std::optional<double> cfh;
    std::optional<double> bs_ul, bs_dl;
    std::optional<long long> tu, td;
    std::optional<std::string> evaluator;
    std::optional<int> M, K, tau_c, tau_p;
    std::optional<int> fixed_bp;
    std::optional<int> bh_min, bh_max;
    std::optional<double> pilot_power;
    std::optional<std::string> scenario;
};

void add_common(CLI::App *app, Overrides &o) {
    app->add_option("--config", o.config, "JSON experiment spec")->check(CLI::ExistingFile);
    app->add_option("--seed", o.seed, "master seed");
    app->add_option("--trials", o.trials, "Monte-Carlo trials per cell");
    app->add_option("--workers", o.workers, "worker threads");
    app->add_option("--out", o.out, "output directory");
    app->add_option("--precoder", o.precoders, "mrt, zf or wf (repeatable)")->delimiter(',');
    app->add_option("--csi", o.csi, "quantized or perfect");
    app->add_option("--snr-db", o.snr_db, "SNR list in dB")->delimiter(',');
    app->add_option("--budget-bbar", o.bbar, "per-entry bit budget B_bar");
    app->add_option("--cfh", o.cfh, "fronthaul capacity [bits per coherence block]");
    app->add_option("--bs-ul", o.bs_ul, "bits per uplink data symbol");
    app->add_option("--bs-dl", o.bs_dl, "bits per downlink data symbol");
    app->add_option("--tu", o.tu, "uplink payload symbols per block");
    app->add_option("--td", o.td, "downlink payload symbols per block");
    app->add_option("--evaluator", o.evaluator, "closed-form or mc");
    app->add_option("-M,--antennas", o.M, "AAS antennas");
    app->add_option("-K,--users", o.K, "UEs");
    app->add_option("--tau-c", o.tau_c, "coherence block length");
    app->add_option("--tau-p", o.tau_p, "pilot length (default K)");
    app->add_option("--bp", o.fixed_bp, "hold B_P fixed instead of B_bar - B_H");
    app->add_option("--bh-min", o.bh_min, "smallest B_H");
    app->add_option("--bh-max", o.bh_max, "largest B_H");
    app->add_option("--pilot-power", o.pilot_power, "fixed pilot power q_k for all UEs (linear)");
    app->add_option("--scenario", o.scenario, "scenario name used for output files");
}

ExperimentSpec apply(ExperimentSpec spec, const Overrides &o) {
    if (o.scenario) spec.scenario = *o.scenario;
    if (o.M) spec.M = *o.M;
    if (o.K) spec.K = *o.K;
    if (o.tau_c) spec.tau_c = *o.tau_c;
    if (o.tau_p) spec.tau_p = *o.tau_p;
    if (o.K && !o.tau_p && spec.tau_p != 0) spec.tau_p = *o.K;
    if (o.seed) spec.seed = *o.seed;
    if (o.trials) spec.trials = *o.trials;
    if (o.workers) spec.workers = *o.workers;
    if (o.out) spec.out_dir = *o.out;
    if (!o.precoders.empty()) {
        spec.precoders.clear();
        for (const auto &p : o.precoders)
            spec.precoders.push_back(parse_precoder_kind(p));
        spec.series.clear();
    }
    if (o.csi) {
        spec.csi_mode = parse_csi_mode(*o.csi);
        spec.series.clear();
    }
    if (o.evaluator) {
        if (*o.evaluator == "closed-form" || *o.evaluator == "closed_form")
            spec.evaluator = Evaluator::closed_form;
        else if (*o.evaluator == "mc")
            spec.evaluator = Evaluator::mc;
        else
            throw ValueError("unknown evaluator '" + *o.evaluator + "' (expected closed-form or mc)");
        spec.series.clear();
    }
    if (!o.snr_db.empty()) spec.snr_db = o.snr_db;
    if (o.bbar) {
        spec.B_bar = *o.bbar;
        spec.fronthaul.reset();
    } else if (o.cfh) {
        FronthaulBudget f;
        f.C_FH = *o.cfh;
        f.B_s_UL = o.bs_ul.value_or(0.0);
        f.B_s_DL = o.bs_dl.value_or(0.0);
        f.T_u = o.tu.value_or(0);
        f.T_d = o.td.value_or(0);
        spec.fronthaul = f;
        spec.B_bar.reset();
    }
    if (o.fixed_bp) spec.fixed_bp = *o.fixed_bp;
    if (o.bh_min) spec.bh_min = *o.bh_min;
    if (o.bh_max) spec.bh_max = *o.bh_max;
    if (o.pilot_power) spec.q = std::vector<double>(static_cast<std::size_t>(spec.K), *o.pilot_power);
    return spec;
}

ExperimentSpec base_spec(const Overrides &o) {
    return o.config.empty() ? ExperimentSpec{} : load_spec(o.config);
}

void print_report(const std::vector<SweepRow> &rows) {
    std::printf("%-8s %-9s %7s %4s %4s %-16s %10s\n", "precoder", "csi", "snr_db", "b_h", "b_p",
                "method", "sum_se");
    for (const SweepRow &r : rows)
        std::printf("%-8s %-9s %7.2f %4d %4d %-16s %10.4f\n", r.precoder.c_str(),
                    r.csi_mode.c_str(), r.snr_db, r.b_h, r.b_p, r.method.c_str(), r.sum_se);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fronthaul bit-split simulation for massive MU-MIMO"};
    app.require_subcommand(1);
    app.set_version_flag("--version", library_version());

    int eta_bits = 0;
    auto *eta_cmd = app.add_subcommand("eta", "AQNM distortion factor for a resolution");
    eta_cmd->add_option("--bits", eta_bits, "bits per complex entry")->required();

    Overrides budget_o, sweep_o, opt_o, repro_o;
    auto *budget_cmd = app.add_subcommand("budget", "per-entry bit budget from fronthaul capacity");
    add_common(budget_cmd, budget_o);
    auto *sweep_cmd = app.add_subcommand("sweep", "evaluate sum SE over a bit-split grid");
    add_common(sweep_cmd, sweep_o);
    auto *opt_cmd = app.add_subcommand("optimize", "exact bit split by finite line search");
    add_common(opt_cmd, opt_o);
    std::string figure;
    auto *repro_cmd = app.add_subcommand("reproduce", "figure presets (fig2, fig3, fig4)");
    repro_cmd->add_option("figure", figure, "fig2, fig3 or fig4")->required();
    add_common(repro_cmd, repro_o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eta_cmd) {
            std::printf("%s\n", format_double(eta_of_bits(eta_bits)).c_str());
            return kOk;
        }
        if (*budget_cmd) {
            const ExperimentSpec spec = apply(base_spec(budget_o), budget_o);
            const long long bbar = spec.resolved_bbar();
            std::printf("B_bar = %lld\n", bbar);
            return kOk;
        }
        if (*sweep_cmd) {
            const ExperimentSpec spec = apply(base_spec(sweep_o), sweep_o);
            const SweepResult res = run_sweep(spec);
            print_report(res.rows);
            for (const auto &f : res.failed_cells)
                std::fprintf(stderr, "failed cell: %s\n", f.c_str());
            std::printf("wrote %s/%s.csv\n", spec.out_dir.c_str(), spec.scenario.c_str());
            return kOk;
        }
        if (*opt_cmd) {
            ExperimentSpec defaults;
            defaults.scenario = "optimize";
            defaults.precoders = {PrecoderKind::mrt};
            defaults.evaluator = Evaluator::closed_form;
            ExperimentSpec spec = apply(opt_o.config.empty() ? defaults : base_spec(opt_o), opt_o);
            const AllocationResult res = optimize(spec);
            for (const ProfileEntry &e : res.profile)
                std::printf("B_H=%2d B_P=%2d sum_se=%.6f\n", e.split.B_H, e.split.B_P, e.sum_se);
            if (!res.complete) {
                std::fprintf(stderr, "evaluation failed: %s\n", res.failure.c_str());
                return kFailure;
            }
            std::printf("best B_H=%d B_P=%d sum_se=%.6f\n", res.best.B_H, res.best.B_P,
                        res.best_sum_se);
            return kOk;
        }
        if (*repro_cmd) {
            const ExperimentSpec spec = apply(figure_preset(parse_figure(figure)), repro_o);
            const SweepResult res = reproduce(spec);
            print_report(res.rows);
            for (const auto &f : res.failed_cells)
                std::fprintf(stderr, "failed cell: %s\n", f.c_str());
            std::printf("wrote %s/%s.csv\n", spec.out_dir.c_str(), spec.scenario.c_str());
            return kOk;
        }
    } catch (const InfeasibleBudgetError &e) {
        std::fprintf(stderr, "infeasible budget: %s\n", e.what());
        return kInfeasible;
    } catch (const std::ios_base::failure &e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kIoError;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::domain_error &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFailure;
    }
    return kFailure;
}
