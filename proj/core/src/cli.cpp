#include "ztoa/cli.hpp"

#include "ztoa/analysis.hpp"
#include "ztoa/csvio.hpp"
#include "ztoa/errors.hpp"
#include "ztoa/manifest.hpp"
#include "ztoa/scenario.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ztoa {

namespace {

namespace fs = std::filesystem;

struct CommonArgs {
    std::string scenario_path;
    std::string model;
    std::string out_dir = ".";
    int workers = 1;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_model, bool with_out) {
    cmd->add_option("--scenario", a.scenario_path, "Scenario file (INI)")->required();
    if (with_model)
        cmd->add_option("--model", a.model, "projection|kicked|continuous");
    if (with_out)
        cmd->add_option("--out", a.out_dir, "Output directory (created if missing)");
    cmd->add_option("--workers", a.workers, "Worker threads for sweeps")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--override", a.overrides, "section.key=value (repeatable)");
}

/// Collects output files so a failed command leaves nothing behind.
struct OutputSink {
    fs::path dir;
    RunManifest manifest;
    std::vector<fs::path> written;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit OutputSink(const std::string& out_dir) : dir(out_dir) {
        fs::create_directories(dir);
    }
    void write_csv(const std::string& name, const CsvBuilder& csv) {
        const fs::path p = dir / name;
        csv.write_file(p.string());
        written.push_back(p);
        manifest.add_output(name, csv.str());
    }
    void finalize() {
        manifest.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        manifest.created_unix =
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count();
        manifest.write_file((dir / "manifest.json").string());
    }
    void discard() {
        for (const auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ResolvedScenario load(const CommonArgs& a, std::string* text_out = nullptr) {
    const std::string text = read_file(a.scenario_path);
    if (text_out) *text_out = text;
    const Scenario s = parse_scenario_with_overrides(text, a.overrides);
    return resolve_scenario(s);
}

void fill_manifest(RunManifest& m, const ResolvedScenario& r, const std::string& text) {
    m.scenario_name = r.raw.name;
    m.scenario_fnv64 = fnv1a64(text);
    m.resolved = {
        {"mass_kg", r.units.mass_kg},
        {"T0_seconds", r.units.T0_seconds},
        {"grid_x_min", r.grid->x_min},
        {"grid_x_max", r.grid->x_max},
        {"grid_n_points", static_cast<double>(r.grid->n_points)},
        {"t_start", r.t_start},
        {"t_end", r.schedule.t_end},
        {"delta_t", r.schedule.delta_t},
        {"v0", r.schedule.v0},
        {"alpha", r.schedule.alpha},
        {"inner_dt", r.schedule.inner_dt},
        {"k0", r.start_diagnostics.k0},
        {"delta_H0", r.start_diagnostics.delta_H0},
        {"neg_k_fraction", r.start_diagnostics.neg_k_fraction},
        {"zeno_mean", r.zeno_mean},
        {"zeno_std", r.zeno_std},
    };
}

MeasurementModel pick_model(const CommonArgs& a, const ResolvedScenario& r) {
    if (!a.model.empty()) {
        const auto m = measurement_model_from_string(a.model);
        if (!m) throw CLI::ValidationError("--model", "unknown model '" + a.model + "'");
        return *m;
    }
    if (r.model) return *r.model;
    throw validation_error("no model: give --model or set [schedule] model in the scenario");
}

void print_warnings(const ResolvedScenario& r) {
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_run(const CommonArgs& a) {
    std::string text;
    ResolvedScenario r = load(a, &text);
    print_warnings(r);
    MeasurementSchedule sched = r.schedule;
    sched.model = pick_model(a, r);
    if (sched.model != MeasurementModel::projection && !(sched.v0 > 0.0))
        throw validation_error("scenario: this model needs v0_hbar_per_us or alpha");

    const DetectionRecord rec = run_measurement(start_state(r), sched);
    const TimeDistribution dist = normalize_record(rec);

    OutputSink sink(a.out_dir);
    sink.manifest.command = "run";
    fill_manifest(sink.manifest, r, text);
    try {
        CsvBuilder record({"t_bin_end", "removed", "survival"});
        for (std::size_t i = 0; i < rec.t_bins.size(); ++i)
            record.row({rec.t_bins[i], rec.removed[i], rec.survival[i]});
        record.footer("model", to_string(sched.model));
        record.footer("detected_fraction", rec.detected_fraction);
        record.footer("mean_t", rec.mean_time());
        record.footer("reflection_flag", rec.reflection_flag ? "1" : "0");
        record.footer("t_start", rec.start_time);
        sink.write_csv("record.csv", record);

        CsvBuilder dcsv({"t", "density"});
        for (std::size_t i = 0; i < dist.t_values.size(); ++i)
            dcsv.row({dist.t_values[i], dist.density[i]});
        dcsv.footer("kind", to_string(dist.kind));
        dcsv.footer("detected_fraction", dist.detected_fraction);
        sink.write_csv("dist_operational.csv", dcsv);
        sink.finalize();
    } catch (...) {
        sink.discard();
        throw;
    }
    std::cout << "run: " << rec.t_bins.size() << " bins, detected fraction "
              << rec.detected_fraction << "\n";
    return 0;
}

int cmd_ideal(const CommonArgs& a) {
    std::string text;
    ResolvedScenario r = load(a, &text);
    print_warnings(r);
    FreeReference ref(r.grid, r.parts);
    const auto t = linspace(r.ideal_window.t_lo, r.ideal_window.t_hi, r.raw.t_points);

    OutputSink sink(a.out_dir);
    sink.manifest.command = "ideal";
    fill_manifest(sink.manifest, r, text);
    try {
        const TimeDistribution ds[] = {ideal_flux(ref, t), kijowski_distribution(ref, t),
                                       zeno_ideal_distribution(ref, t)};
        for (const auto& d : ds) {
            CsvBuilder csv({"t", "density"});
            for (std::size_t i = 0; i < d.t_values.size(); ++i)
                csv.row({d.t_values[i], d.density[i]});
            csv.footer("kind", to_string(d.kind));
            csv.footer("raw_integral", d.raw_integral);
            sink.write_csv(std::string("dist_") + to_string(d.kind) + ".csv", csv);
        }
        sink.finalize();
    } catch (...) {
        sink.discard();
        throw;
    }
    std::cout << "ideal: wrote flux, kijowski, zeno_ideal over [" << r.ideal_window.t_lo << ", "
              << r.ideal_window.t_hi << "]\n";
    return 0;
}

int cmd_sweep(const CommonArgs& a) {
    std::string text;
    ResolvedScenario r = load(a, &text);
    print_warnings(r);
    const MeasurementModel model = pick_model(a, r);
    if (model == MeasurementModel::kicked)
        throw validation_error("sweep models are projection and continuous");

    SweepConfig cfg;
    cfg.model = model;
    cfg.t_end = r.schedule.t_end;
    cfg.sampling_dt = r.zeno_std / 20.0;
    cfg.workers = a.workers;
    const auto abscissas = default_coupling_ladder(r.start_diagnostics.delta_H0);
    for (double x : abscissas)
        cfg.couplings.push_back(model == MeasurementModel::projection ? x : 0.5 / x);

    FreeReference ref(r.grid, r.parts);
    const SweepResult res = delay_sweep(start_state(r), ref, cfg);

    OutputSink sink(a.out_dir);
    sink.manifest.command = "sweep";
    fill_manifest(sink.manifest, r, text);
    try {
        CsvBuilder csv({"abscissa", "v0", "mean_t", "detected_fraction", "reflected", "l1_to_zeno"});
        for (const auto& row : res.rows)
            csv.row({row.abscissa, row.v0, row.mean_t, row.detected_fraction,
                     row.reflected ? 1.0 : 0.0, row.l1_to_zeno});
        csv.footer("model", to_string(model));
        csv.footer("fit_slope", res.fit.slope);
        csv.footer("fit_intercept", res.fit.intercept);
        csv.footer("fit_n_used", static_cast<double>(res.fit.n_used));
        csv.footer("fit_rms_residual", res.fit.rms_residual);
        csv.footer("zeno_mean", res.zeno_mean);
        csv.footer("zeno_std", res.zeno_std);
        sink.write_csv("sweep.csv", csv);
        sink.finalize();
    } catch (...) {
        sink.discard();
        throw;
    }
    std::cout << "sweep (" << to_string(model) << "): fit slope " << res.fit.slope
              << ", intercept " << res.fit.intercept << " (zeno mean " << res.zeno_mean << ")\n";
    return 0;
}

int cmd_bounds(const CommonArgs& a) {
    std::string text;
    ResolvedScenario r = load(a, &text);
    print_warnings(r);
    if (!(r.schedule.v0 > 0.0))
        throw validation_error("bounds: scenario needs v0_hbar_per_us (or alpha with delta_t)");
    const double sampling = (r.schedule.delta_t > 0.0) ? r.schedule.delta_t : r.zeno_std / 20.0;
    const BoundSeries series =
        zeno_bound_series(start_state(r), r.schedule.v0, sampling, r.schedule.t_end);

    OutputSink sink(a.out_dir);
    sink.manifest.command = "bounds";
    fill_manifest(sink.manifest, r, text);
    try {
        CsvBuilder csv({"t", "dH0_over_V0", "comm_lhs", "bound_rhs", "N_plus"});
        double max_ratio = 0.0;
        for (const auto& s : series.samples) {
            csv.row({s.t, s.dh0_over_v0, s.comm_lhs, s.bound_rhs, s.n_plus});
            max_ratio = std::max(max_ratio, s.dh0_over_v0);
        }
        csv.footer("v0", series.v0);
        csv.footer("dh0_initial", series.dh0_initial);
        csv.footer("survival_floor", series.survival_floor);
        csv.footer("max_dh0_over_v0", max_ratio);
        sink.write_csv("bounds.csv", csv);
        sink.finalize();
    } catch (...) {
        sink.discard();
        throw;
    }
    std::cout << "bounds: " << series.samples.size() << " samples at V0 " << series.v0 << "\n";
    return 0;
}

int cmd_validate(const CommonArgs& a) {
    ResolvedScenario r = load(a);
    std::cout << "scenario " << r.raw.name << ": OK\n"
              << "  t_start (internal)      = " << CsvBuilder::format_number(r.t_start) << "\n"
              << "  right norm at start     = " << r.right_norm_start << " (max "
              << r.raw.start_right_norm_max << ")\n"
              << "  boundary node mass      = " << r.boundary_mass_start << "\n"
              << "  neg_k_fraction          = " << r.start_diagnostics.neg_k_fraction << "\n"
              << "  k0 (internal)           = " << r.start_diagnostics.k0 << "\n"
              << "  delta_H0 (internal)     = " << r.start_diagnostics.delta_H0 << "\n"
              << "  zeno mean/std (internal)= " << r.zeno_mean << " / " << r.zeno_std << "\n";
    for (const auto& w : r.warnings) std::cout << "  warning: " << w << "\n";
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"1-D quantum time-of-arrival measurement simulator"};
    app.require_subcommand(1);

    CommonArgs run_a, ideal_a, sweep_a, bounds_a, val_a;
    auto* c_run = app.add_subcommand("run", "One measurement run: record + normalized distribution");
    add_common(c_run, run_a, true, true);
    auto* c_ideal = app.add_subcommand("ideal", "Ideal distributions J, Pi_K, Pi_N");
    add_common(c_ideal, ideal_a, false, true);
    auto* c_sweep = app.add_subcommand("sweep", "Delay-law coupling sweep");
    add_common(c_sweep, sweep_a, true, true);
    auto* c_bounds = app.add_subcommand("bounds", "Uncertainty-bound time series");
    add_common(c_bounds, bounds_a, false, true);
    auto* c_val = app.add_subcommand("validate", "Check a scenario without simulating");
    add_common(c_val, val_a, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return (app.exit(e) == 0) ? 0 : 4;
    }

    try {
        if (c_run->parsed()) return cmd_run(run_a);
        if (c_ideal->parsed()) return cmd_ideal(ideal_a);
        if (c_sweep->parsed()) return cmd_sweep(sweep_a);
        if (c_bounds->parsed()) return cmd_bounds(bounds_a);
        if (c_val->parsed()) return cmd_validate(val_a);
    } catch (const boundary_leak_error& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "bad arguments: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 4;
}

} // namespace ztoa
