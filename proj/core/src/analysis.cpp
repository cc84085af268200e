#include "ztoa/analysis.hpp"

#include "ztoa/errors.hpp"
#include "ztoa/spectral.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace ztoa {

std::vector<double> default_coupling_ladder(double delta_h0) {
    if (!(delta_h0 > 0.0)) throw std::invalid_argument("default_coupling_ladder: dH0 <= 0");
    // 8 points per decade over one decade -> 9 points
    std::vector<double> lad(9);
    for (int i = 0; i < 9; ++i)
        lad[i] = (1.0 / delta_h0) * std::pow(10.0, -1.0 + static_cast<double>(i) / 8.0);
    return lad;
}

SweepResult delay_sweep(const WaveFunction& psi0, const FreeReference& ref, SweepConfig cfg) {
    if (cfg.couplings.size() < 4)
        throw validation_error("delay_sweep: need a ladder of >= 4 couplings");
    if (cfg.model == MeasurementModel::kicked)
        throw validation_error("delay_sweep: sweep models are projection and continuous");

    const TimeWindow w = default_time_window(ref.parts());
    TimeDistribution zeno = zeno_ideal_distribution(ref, linspace(w.t_lo, w.t_hi, 4001));
    const double zmean = mean_arrival(zeno);
    const double zstd = stddev_arrival(zeno);
    const double window_end = zmean + 3.0 * zstd;

    std::sort(cfg.couplings.begin(), cfg.couplings.end());
    const int nrows = static_cast<int>(cfg.couplings.size());
    std::vector<SweepRow> rows(nrows);

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto work = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= nrows) return;
            try {
                const double c = cfg.couplings[i];
                MeasurementSchedule sched;
                sched.model = cfg.model;
                sched.t_end = cfg.t_end;
                sched.arrival_window_end = window_end;
                if (cfg.model == MeasurementModel::projection) {
                    sched.delta_t = c;
                } else {
                    sched.v0 = c;
                    sched.delta_t = cfg.sampling_dt;
                }
                const DetectionRecord rec = run_measurement(psi0, sched);
                SweepRow row;
                row.model = cfg.model;
                row.abscissa = (cfg.model == MeasurementModel::projection) ? c : 0.5 / c;
                row.v0 = sched.v0;
                row.alpha = sched.alpha;
                row.mean_t = rec.mean_time();
                row.detected_fraction = rec.detected_fraction;
                row.reflected = rec.reflection_flag;
                row.l1_to_zeno = l1_distance(normalize_record(rec), zeno);
                rows[i] = row;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const int nthreads = std::max(1, std::min(cfg.workers, nrows));
    if (nthreads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.abscissa < b.abscissa; });

    // least squares over the non-reflective sub-ladder
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& r : rows) {
        if (r.reflected || r.detected_fraction <= 0.95) continue;
        sx += r.abscissa;
        sy += r.mean_t;
        sxx += r.abscissa * r.abscissa;
        sxy += r.abscissa * r.mean_t;
        ++n;
    }
    if (n < 2)
        throw validation_error("delay_sweep: fewer than two non-reflective rows, no fit possible");

    SweepResult out;
    out.fit.n_used = n;
    out.fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.fit.intercept = (sy - out.fit.slope * sx) / n;
    double ss = 0.0;
    for (auto& r : rows) {
        r.residual = r.mean_t - (out.fit.intercept + out.fit.slope * r.abscissa);
        if (!r.reflected && r.detected_fraction > 0.95) ss += r.residual * r.residual;
    }
    out.fit.rms_residual = std::sqrt(ss / n);
    out.rows = std::move(rows);
    out.zeno_mean = zmean;
    out.zeno_std = zstd;
    return out;
}

BoundSample measure_bound_sample(const WaveFunction& psi, double v0) {
    const auto& g = *psi.grid;
    const double n = total_norm(psi);
    if (!(n > 0.0)) throw validation_error("measure_bound_sample: zero-norm state");

    // momentum moments of the normalized state
    const auto kamps = to_momentum(psi);
    double k2 = 0.0, k4 = 0.0, ksum = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        const double p = std::norm(kamps[j]);
        const double k = g.k_values[j];
        ksum += p;
        k2 += k * k * p;
        k4 += k * k * k * k * p;
    }
    const double h1 = 0.5 * k2 / ksum;
    const double var = 0.25 * k4 / ksum - h1 * h1;
    const double dh0 = std::sqrt(std::max(var, 0.0));

    // H0 psi via the spectral route, then the mixed overlap on x >= 0
    std::vector<cplx> h0psi = psi.amplitudes;
    auto& eng = SpectralEngine::for_size(g.n_points);
    eng.forward(h0psi.data());
    const double inv_n = 1.0 / static_cast<double>(g.n_points);
    for (int j = 0; j < g.n_points; ++j)
        h0psi[j] *= 0.5 * g.k_values[j] * g.k_values[j] * inv_n;
    eng.backward(h0psi.data());

    cplx overlap = 0.0;
    double right = 0.0;
    for (int i = g.split_index; i < g.n_points; ++i) {
        overlap += std::conj(psi.amplitudes[i]) * h0psi[i];
        right += std::norm(psi.amplitudes[i]);
    }
    overlap *= g.dx / n;
    right *= g.dx / n;

    BoundSample s;
    s.t = psi.time;
    s.n_plus = right;
    s.dh0_over_v0 = dh0 / v0;
    s.comm_lhs = 2.0 * v0 * std::abs(std::imag(overlap));
    s.bound_rhs = 2.0 * v0 * std::sqrt(std::max(right - right * right, 0.0)) * dh0;
    return s;
}

BoundSeries zeno_bound_series(const WaveFunction& psi0, double v0, double sampling_dt,
                              double t_end, double survival_floor) {
    if (!(v0 > 0.0)) throw validation_error("zeno_bound_series: V0 must be positive");
    BoundSeries series;
    series.v0 = v0;
    series.survival_floor = survival_floor;
    series.dh0_initial = packet_diagnostics(psi0).delta_H0;

    MeasurementSchedule sched;
    sched.model = MeasurementModel::continuous;
    sched.v0 = v0;
    sched.delta_t = sampling_dt;
    sched.t_end = t_end;

    run_measurement(psi0, sched, [&](const WaveFunction& psi, double /*t*/) {
        if (total_norm(psi) < survival_floor) return;
        series.samples.push_back(measure_bound_sample(psi, v0));
    });
    return series;
}

SchulmanMap schulman_map(double omega, double gamma) {
    if (!(omega > 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("schulman_map: omega and gamma must be positive");
    SchulmanMap m;
    m.v0 = omega * omega / (2.0 * gamma);
    m.delta_t = 2.0 * gamma / (omega * omega);
    m.product = m.v0 * m.delta_t;
    m.weak_driving_ok = (gamma / omega) < 0.1;
    return m;
}

} // namespace ztoa
