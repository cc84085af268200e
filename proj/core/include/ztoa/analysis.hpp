#pragma once

#include "ztoa/distributions.hpp"
#include "ztoa/measurement.hpp"

#include <optional>
#include <vector>

namespace ztoa {

/// One sweep run at a single coupling.  abscissa is delta_t for the
/// projection model and 1/(2 V0) for the continuous model.
struct SweepRow {
    MeasurementModel model = MeasurementModel::projection;
    double abscissa = 0.0;
    double v0 = 0.0;
    double alpha = 0.0;
    double mean_t = 0.0;
    double detected_fraction = 0.0;
    bool reflected = false;
    double l1_to_zeno = 0.0;
    double residual = 0.0;  // mean_t - (intercept + slope * abscissa)
};

struct SweepFit {
    double slope = 0.0;
    double intercept = 0.0;
    int n_used = 0;
    double rms_residual = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by abscissa
    SweepFit fit;                // least squares over the non-reflective sub-ladder
    double zeno_mean = 0.0;      // mean_arrival of the ideal Zeno distribution
    double zeno_std = 0.0;
};

struct SweepConfig {
    MeasurementModel model = MeasurementModel::projection;  // projection or continuous
    std::vector<double> couplings;  // delta_t values (projection) or V0 values (continuous)
    double t_end = 0.0;
    double sampling_dt = 1.0;       // continuous-model reporting bin
    int workers = 1;
};

/// Logarithmic default ladder [0.1, 1] * (1/dH0), 8 points per decade.
std::vector<double> default_coupling_ladder(double delta_h0);

/// One full measurement run per coupling; rows carry the delay-law
/// residuals and the fit is over rows with reflection_flag false and
/// detected_fraction > 0.95.  Throws if fewer than two rows qualify.
SweepResult delay_sweep(const WaveFunction& psi0, const FreeReference& ref, SweepConfig cfg);

struct BoundSample {
    double t = 0.0;
    double dh0_over_v0 = 0.0;
    double comm_lhs = 0.0;   // |<[V, H0]>| on the normalized state
    double bound_rhs = 0.0;  // 2 V0 sqrt(N+ - N+^2) dH0
    double n_plus = 0.0;
};

struct BoundSeries {
    std::vector<BoundSample> samples;
    double v0 = 0.0;
    double dh0_initial = 0.0;
    double survival_floor = 0.01;  // diagnostics reported while N(t) >= floor
};

/// Uncertainty-bound diagnostics on the normalized state of a
/// continuous-model run, sampled every sampling_dt.
BoundSeries zeno_bound_series(const WaveFunction& psi0, double v0, double sampling_dt,
                              double t_end, double survival_floor = 0.01);

/// Single diagnostic sample (exposed for tests).
BoundSample measure_bound_sample(const WaveFunction& psi, double v0);

/// Two-level-atom parameter mapping: V0 = Omega^2/(2 gamma),
/// delta_t = 2 gamma / Omega^2; the product is identically 1.
struct SchulmanMap {
    double v0 = 0.0;
    double delta_t = 0.0;
    double product = 0.0;
    bool weak_driving_ok = true;  // gamma/omega < 0.1
};
SchulmanMap schulman_map(double omega, double gamma);

} // namespace ztoa
