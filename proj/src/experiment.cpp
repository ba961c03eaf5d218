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

#include "fhsplit/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fhsplit/errors.hpp"

#ifndef FHSPLIT_VERSION
#define FHSPLIT_VERSION "0.0.0"
#endif

namespace fhsplit {

namespace fs = std::filesystem;
using nlohmann::json;

const char *library_version() { return FHSPLIT_VERSION; }

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string &s) {
    if (s == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ValueError("not a number in CSV: '" + s + "'");
    return v;
}

std::string snr_tag(double snr) {
    std::string s = format_double(snr);
    for (char &c : s) {
        if (c == '-') c = 'm';
        if (c == '.') c = 'p';
    }
    return s;
}

SeMethod parse_method(std::string_view s) {
    if (s == "monte_carlo" || s == "mc") return SeMethod::monte_carlo;
    if (s == "closed_form_mrt" || s == "closed-form" || s == "closed_form") return SeMethod::closed_form_mrt;
    throw ValueError("unknown method '" + std::string(s) + "'");
}

Evaluator parse_evaluator(std::string_view s) {
    if (s == "mc" || s == "monte_carlo") return Evaluator::mc;
    if (s == "closed-form" || s == "closed_form" || s == "closed_form_mrt") return Evaluator::closed_form;
    throw ValueError("unknown evaluator '" + std::string(s) + "' (expected closed-form or mc)");
}

std::string_view to_string(Evaluator e) { return e == Evaluator::mc ? "mc" : "closed-form"; }

void ensure_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::ios_base::failure("cannot create output directory " + dir.string() + ": " +
                                     ec.message());
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    out << text;
    if (!out)
        throw std::ios_base::failure("write to " + path.string() + " failed");
}

SweepRow make_row(const ExperimentSpec &spec, const SeriesSpec &s, double snr, BitSplit split,
                  const SeReport &rep) {
    SweepRow row;
    row.precoder = std::string(to_string(s.precoder));
    row.csi_mode = std::string(to_string(s.csi_mode));
    row.snr_db = snr;
    row.b_h = split.B_H;
    row.b_p = s.csi_mode == CsiMode::perfect ? 0 : split.B_P;
    row.method = std::string(to_string(s.method));
    row.trials = rep.trials;
    row.seed = spec.seed;
    row.se = rep.se;
    row.sum_se = 0.0;
    for (double v : row.se)
        row.sum_se += v;
    return row;
}

SweepRow failed_row(const ExperimentSpec &spec, const SeriesSpec &s, double snr, BitSplit split) {
    SeReport empty;
    empty.trials = s.method == SeMethod::monte_carlo ? spec.trials : 0;
    empty.se.assign(static_cast<std::size_t>(spec.K), std::numeric_limits<double>::quiet_NaN());
    return make_row(spec, s, snr, split, empty);
}

json run_metadata(const ExperimentSpec &spec, const SweepResult &res) {
    json meta;
    meta["scenario"] = spec.scenario;
    meta["version"] = library_version();
    meta["seed"] = spec.seed;
    meta["trials"] = spec.trials;
    meta["workers"] = spec.workers;
    meta["spec"] = to_json(spec);
    meta["cells"] = res.rows.size();
    meta["failed_cells"] = res.failed_cells;
    meta["redraws"] = res.redraws;
    meta["wall_time_s"] = res.wall_time_s;
    return meta;
}

} // namespace

std::string SeriesSpec::label() const {
    std::string s(to_string(precoder));
    if (method == SeMethod::closed_form_mrt)
        s += "_cf";
    else
        s += csi_mode == CsiMode::perfect ? "_perfect" : "_quantized";
    if (fixed_bp && csi_mode != CsiMode::perfect)
        s += "_bp" + std::to_string(*fixed_bp);
    return s;
}

long long ExperimentSpec::resolved_bbar() const {
    if (B_bar)
        return FronthaulBudget::from_bbar(*B_bar).B_bar;
    if (fronthaul)
        return compute_budget(*fronthaul, K, M).B_bar;
    throw ValueError("experiment needs either B_bar or fronthaul capacity terms");
}

std::vector<SeriesSpec> ExperimentSpec::resolved_series() const {
    if (!series.empty())
        return series;
    std::vector<SeriesSpec> out;
    for (PrecoderKind kind : precoders) {
        SeriesSpec s;
        s.precoder = kind;
        s.csi_mode = csi_mode;
        s.fixed_bp = fixed_bp;
        if (evaluator == Evaluator::closed_form) {
            if (kind != PrecoderKind::mrt)
                throw ValueError("closed-form evaluation exists only for MRT; use --evaluator mc for " +
                                 std::string(to_string(kind)));
            if (csi_mode == CsiMode::perfect)
                throw ValueError("closed-form evaluation models quantized CSI only");
            s.method = SeMethod::closed_form_mrt;
        }
        out.push_back(s);
    }
    return out;
}

std::vector<int> ExperimentSpec::bh_grid() const {
    const long long bbar = resolved_bbar();
    const int hi = bh_max > 0 ? bh_max : static_cast<int>(bbar - 1);
    if (bh_min < 1 || hi < bh_min)
        throw ValueError("empty B_H range");
    if (!fixed_bp && hi > bbar - 1)
        throw ValueError("B_H range exceeds B_bar - 1");
    std::vector<int> grid;
    for (int b = bh_min; b <= hi; ++b)
        grid.push_back(b);
    return grid;
}

SystemConfig ExperimentSpec::system_at(double snr) const {
    SystemConfig cfg = SystemConfig::baseline(M, K, snr, tau_c);
    cfg.tau_p = tau_p > 0 ? tau_p : K;
    if (beta)
        cfg.beta = *beta;
    if (q)
        cfg.q = *q;
    return cfg;
}

void ExperimentSpec::validate() const {
    if (trials < 1)
        throw ValueError("trials must be at least 1");
    if (workers < 1)
        throw ValueError("workers must be at least 1");
    if (snr_db.empty())
        throw ValueError("at least one SNR is required");
    if (fixed_bp && *fixed_bp < 1)
        throw ValueError("fixed B_P must be at least 1");
    for (const SeriesSpec &s : resolved_series())
        if (s.fixed_bp && *s.fixed_bp < 1)
            throw ValueError("fixed B_P must be at least 1");
    for (double snr : snr_db)
        validate_config(system_at(snr));
    (void)bh_grid();
}

json to_json(const ExperimentSpec &spec) {
    json j;
    j["scenario"] = spec.scenario;
    j["M"] = spec.M;
    j["K"] = spec.K;
    j["tau_c"] = spec.tau_c;
    j["tau_p"] = spec.tau_p > 0 ? spec.tau_p : spec.K;
    if (spec.beta) j["beta"] = *spec.beta;
    if (spec.q) j["q"] = *spec.q;
    if (spec.B_bar) {
        j["budget"] = {{"B_bar", *spec.B_bar}};
    } else if (spec.fronthaul) {
        const auto &f = *spec.fronthaul;
        j["budget"] = {{"C_FH", f.C_FH}, {"B_s_UL", f.B_s_UL}, {"B_s_DL", f.B_s_DL},
                       {"T_u", f.T_u},   {"T_d", f.T_d}};
    }
    json prec = json::array();
    for (PrecoderKind k : spec.precoders)
        prec.push_back(std::string(to_string(k)));
    j["precoders"] = prec;
    j["csi_mode"] = std::string(to_string(spec.csi_mode));
    j["evaluator"] = std::string(to_string(spec.evaluator));
    if (!spec.series.empty()) {
        json arr = json::array();
        for (const SeriesSpec &s : spec.series) {
            json e{{"precoder", std::string(to_string(s.precoder))},
                   {"csi_mode", std::string(to_string(s.csi_mode))},
                   {"method", std::string(to_string(s.method))}};
            if (s.fixed_bp) e["fixed_bp"] = *s.fixed_bp;
            arr.push_back(e);
        }
        j["series"] = arr;
    }
    if (spec.fixed_bp) j["fixed_bp"] = *spec.fixed_bp;
    j["snr_db"] = spec.snr_db;
    if (spec.bh_max > 0)
        j["b_h"] = {spec.bh_min, spec.bh_max};
    else
        j["b_h"] = "sweep";
    j["trials"] = spec.trials;
    j["seed"] = spec.seed;
    j["workers"] = spec.workers;
    j["out"] = spec.out_dir;
    return j;
}

ExperimentSpec spec_from_json(const json &j) {
    ExperimentSpec s;
    try {
        s.scenario = j.value("scenario", s.scenario);
        s.M = j.value("M", s.M);
        s.K = j.value("K", s.K);
        s.tau_c = j.value("tau_c", s.tau_c);
        s.tau_p = j.value("tau_p", 0);
        if (j.contains("beta")) s.beta = j.at("beta").get<std::vector<double>>();
        if (j.contains("q")) s.q = j.at("q").get<std::vector<double>>();
        if (j.contains("budget")) {
            const json &b = j.at("budget");
            if (b.contains("B_bar")) {
                s.B_bar = b.at("B_bar").get<long long>();
            } else {
                FronthaulBudget f;
                f.C_FH = b.value("C_FH", 0.0);
                f.B_s_UL = b.value("B_s_UL", 0.0);
                f.B_s_DL = b.value("B_s_DL", 0.0);
                f.T_u = b.value("T_u", 0LL);
                f.T_d = b.value("T_d", 0LL);
                s.fronthaul = f;
            }
        }
        if (j.contains("precoders")) {
            s.precoders.clear();
            for (const auto &p : j.at("precoders"))
                s.precoders.push_back(parse_precoder_kind(p.get<std::string>()));
        }
        if (j.contains("csi_mode")) s.csi_mode = parse_csi_mode(j.at("csi_mode").get<std::string>());
        if (j.contains("evaluator")) s.evaluator = parse_evaluator(j.at("evaluator").get<std::string>());
        if (j.contains("series")) {
            for (const auto &e : j.at("series")) {
                SeriesSpec ss;
                ss.precoder = parse_precoder_kind(e.at("precoder").get<std::string>());
                ss.csi_mode = parse_csi_mode(e.value("csi_mode", std::string("quantized")));
                ss.method = parse_method(e.value("method", std::string("monte_carlo")));
                if (e.contains("fixed_bp")) ss.fixed_bp = e.at("fixed_bp").get<int>();
                s.series.push_back(ss);
            }
        }
        if (j.contains("fixed_bp") && !j.at("fixed_bp").is_null()) s.fixed_bp = j.at("fixed_bp").get<int>();
        if (j.contains("snr_db")) {
            const json &v = j.at("snr_db");
            s.snr_db = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
        }
        if (j.contains("b_h")) {
            const json &v = j.at("b_h");
            if (v.is_array()) {
                const auto r = v.get<std::vector<int>>();
                if (r.size() != 2)
                    throw ValueError("b_h range must be [min, max]");
                s.bh_min = r[0];
                s.bh_max = r[1];
            } else if (v.get<std::string>() != "sweep") {
                throw ValueError("b_h must be \"sweep\" or [min, max]");
            }
        }
        s.trials = j.value("trials", s.trials);
        s.seed = j.value("seed", s.seed);
        s.workers = j.value("workers", s.workers);
        s.out_dir = j.value("out", s.out_dir);
    } catch (const json::exception &e) {
        throw ValueError(std::string("malformed experiment spec: ") + e.what());
    }
    return s;
}

ExperimentSpec load_spec(const fs::path &path) {
    std::ifstream in(path);
    if (!in)
        throw std::ios_base::failure("cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw ValueError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return spec_from_json(j);
}

SeReport evaluate_cell(const ExperimentSpec &spec, const SeriesSpec &series, double snr_db,
                       BitSplit split) {
    const SystemConfig cfg = spec.system_at(snr_db);
    if (series.method == SeMethod::closed_form_mrt) {
        if (series.precoder != PrecoderKind::mrt)
            throw ValueError("closed-form evaluation exists only for MRT");
        return closed_form_mrt_sinr(cfg, split.B_H, split.B_P);
    }
    McOptions opts;
    opts.trials = spec.trials;
    opts.seed = spec.seed;
    opts.csi_mode = series.csi_mode;
    opts.workers = spec.workers;
    return mc_hardening_sinr(cfg, series.precoder, split.B_H, split.B_P, opts);
}

SweepResult compute_sweep(const ExperimentSpec &spec) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const long long bbar = spec.resolved_bbar();
    const std::vector<int> grid = spec.bh_grid();
    SweepResult res;
    for (const SeriesSpec &s : spec.resolved_series()) {
        for (double snr : spec.snr_db) {
            // Perfect CSI does not depend on the bit split; evaluate once per curve.
            std::optional<SeReport> perfect;
            std::string perfect_error;
            for (int bh : grid) {
                const BitSplit split{bh, s.fixed_bp ? *s.fixed_bp : static_cast<int>(bbar - bh)};
                try {
                    SeReport rep;
                    if (s.csi_mode == CsiMode::perfect) {
                        if (!perfect && perfect_error.empty()) {
                            try {
                                perfect = evaluate_cell(spec, s, snr, split);
                                res.redraws += perfect->redraws;
                            } catch (const std::exception &e) {
                                perfect_error = e.what();
                            }
                        }
                        if (!perfect)
                            throw std::runtime_error(perfect_error);
                        rep = *perfect;
                    } else {
                        rep = evaluate_cell(spec, s, snr, split);
                        res.redraws += rep.redraws;
                    }
                    res.rows.push_back(make_row(spec, s, snr, split, rep));
                } catch (const std::exception &e) {
                    res.rows.push_back(failed_row(spec, s, snr, split));
                    res.failed_cells.push_back(s.label() + " snr_db=" + format_double(snr) +
                                               " b_h=" + std::to_string(bh) + ": " + e.what());
                }
            }
        }
    }
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

SweepResult run_sweep(const ExperimentSpec &spec) {
    SweepResult res = compute_sweep(spec);
    const fs::path dir(spec.out_dir);
    ensure_dir(dir);
    write_sweep_csv(dir / (spec.scenario + ".csv"), res.rows);
    write_text(dir / (spec.scenario + ".meta.json"), run_metadata(spec, res).dump(2) + "\n");

    // One plot file per (series, SNR) curve.
    const auto series = spec.resolved_series();
    std::size_t idx = 0;
    const std::size_t per_curve = spec.bh_grid().size();
    for (const SeriesSpec &s : series) {
        for (double snr : spec.snr_db) {
            std::ostringstream dat;
            dat << "# " << s.label() << " snr_db=" << format_double(snr) << "\n# b_h sum_se\n";
            for (std::size_t i = 0; i < per_curve; ++i, ++idx)
                dat << res.rows[idx].b_h << ' ' << format_double(res.rows[idx].sum_se) << '\n';
            write_text(dir / (spec.scenario + "_" + s.label() + "_snr" + snr_tag(snr) + ".dat"),
                       dat.str());
        }
    }
    return res;
}

Figure parse_figure(std::string_view name) {
    if (name == "fig2") return Figure::fig2;
    if (name == "fig3") return Figure::fig3;
    if (name == "fig4") return Figure::fig4;
    throw ValueError("unknown figure '" + std::string(name) + "' (expected fig2, fig3 or fig4)");
}

std::string_view to_string(Figure fig) {
    switch (fig) {
    case Figure::fig2: return "fig2";
    case Figure::fig3: return "fig3";
    case Figure::fig4: return "fig4";
    }
    return "?";
}

ExperimentSpec figure_preset(Figure fig) {
    ExperimentSpec spec;
    spec.scenario = std::string(to_string(fig));
    spec.M = 128;
    spec.K = 8;
    spec.tau_c = 200;
    spec.tau_p = 8;
    spec.trials = 1000;
    spec.out_dir = "out";
    const std::vector<PrecoderKind> kinds = {PrecoderKind::wf, PrecoderKind::zf, PrecoderKind::mrt};
    switch (fig) {
    case Figure::fig2:
        spec.B_bar = 30;
        spec.snr_db = {10.0};
        for (PrecoderKind k : kinds)
            spec.series.push_back({k, CsiMode::perfect, SeMethod::monte_carlo, std::nullopt});
        for (int bp : {20, 2}) {
            for (PrecoderKind k : kinds)
                spec.series.push_back({k, CsiMode::quantized, SeMethod::monte_carlo, bp});
            spec.series.push_back({PrecoderKind::mrt, CsiMode::quantized, SeMethod::closed_form_mrt, bp});
        }
        break;
    case Figure::fig3:
    case Figure::fig4:
        spec.B_bar = 10;
        spec.snr_db = {fig == Figure::fig3 ? -15.0 : 10.0};
        for (PrecoderKind k : kinds)
            spec.series.push_back({k, CsiMode::quantized, SeMethod::monte_carlo, std::nullopt});
        spec.series.push_back(
            {PrecoderKind::mrt, CsiMode::quantized, SeMethod::closed_form_mrt, std::nullopt});
        break;
    }
    return spec;
}

SweepResult reproduce(const ExperimentSpec &preset) { return run_sweep(preset); }

AllocationResult optimize(const ExperimentSpec &spec, bool persist) {
    if (spec.precoders.empty() || spec.snr_db.empty())
        throw ValueError("optimize needs one precoder and one SNR");
    if (spec.trials < 1 || spec.workers < 1)
        throw ValueError("trials and workers must be at least 1");
    const long long bbar = spec.resolved_bbar();
    const double snr = spec.snr_db.front();
    validate_config(spec.system_at(snr));

    SeriesSpec series;
    series.precoder = spec.precoders.front();
    series.csi_mode = spec.csi_mode;
    if (spec.evaluator == Evaluator::closed_form) {
        if (series.precoder != PrecoderKind::mrt)
            throw ValueError("closed-form evaluation exists only for MRT; use --evaluator mc for " +
                             std::string(to_string(series.precoder)));
        series.method = SeMethod::closed_form_mrt;
        series.csi_mode = CsiMode::quantized;
    }

    const auto t0 = std::chrono::steady_clock::now();
    SweepResult rows;
    FronthaulBudget budget = FronthaulBudget::from_bbar(bbar);
    AllocationResult result = line_search(budget, [&](BitSplit split) {
        SeReport rep = evaluate_cell(spec, series, snr, split);
        rows.redraws += rep.redraws;
        rows.rows.push_back(make_row(spec, series, snr, split, rep));
        return rep;
    });
    rows.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!result.complete)
        rows.failed_cells.push_back(result.failure);

    if (persist) {
        const fs::path dir(spec.out_dir);
        ensure_dir(dir);
        write_sweep_csv(dir / (spec.scenario + "_profile.csv"), rows.rows);
        json meta = run_metadata(spec, rows);
        meta["best"] = {{"b_h", result.best.B_H},
                        {"b_p", result.best.B_P},
                        {"sum_se", result.best_sum_se},
                        {"complete", result.complete}};
        write_text(dir / (spec.scenario + "_profile.meta.json"), meta.dump(2) + "\n");
    }
    return result;
}

void write_sweep_csv(const fs::path &path, const std::vector<SweepRow> &rows) {
    std::size_t K = 0;
    for (const SweepRow &r : rows)
        K = std::max(K, r.se.size());
    std::ostringstream out;
    out << "precoder,csi_mode,snr_db,b_h,b_p,method,trials,seed,sum_se";
    for (std::size_t k = 1; k <= K; ++k)
        out << ",se_" << k;
    out << '\n';
    for (const SweepRow &r : rows) {
        out << r.precoder << ',' << r.csi_mode << ',' << format_double(r.snr_db) << ',' << r.b_h
            << ',' << r.b_p << ',' << r.method << ',' << r.trials << ',' << r.seed << ','
            << format_double(r.sum_se);
        for (std::size_t k = 0; k < K; ++k)
            out << ',' << (k < r.se.size() ? format_double(r.se[k]) : std::string("nan"));
        out << '\n';
    }
    write_text(path, out.str());
}

std::vector<SweepRow> read_sweep_csv(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw ValueError("empty CSV " + path.string());
    auto split = [](const std::string &l) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(l);
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        return cells;
    };
    const auto header = split(line);
    if (header.size() < 9 || header[0] != "precoder" || header[8] != "sum_se")
        throw ValueError("unexpected CSV header in " + path.string());
    const std::size_t K = header.size() - 9;
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto c = split(line);
        if (c.size() != header.size())
            throw ValueError("malformed CSV row in " + path.string());
        SweepRow r;
        r.precoder = c[0];
        r.csi_mode = c[1];
        r.snr_db = parse_double(c[2]);
        r.b_h = std::stoi(c[3]);
        r.b_p = std::stoi(c[4]);
        r.method = c[5];
        r.trials = std::stoi(c[6]);
        r.seed = std::stoull(c[7]);
        r.sum_se = parse_double(c[8]);
        for (std::size_t k = 0; k < K; ++k)
            r.se.push_back(parse_double(c[9 + k]));
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace fhsplit
