#pragma once

#include "ztoa/wavefunction.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ztoa {

enum class MeasurementModel { projection, kicked, continuous };

const char* to_string(MeasurementModel m);
std::optional<MeasurementModel> measurement_model_from_string(const std::string& s);

/// Which measurement model runs, its coupling, and the run horizon.
/// delta_t is the kick/projection period; for the continuous model it is
/// the sampling/reporting bin width.  All values in internal units.
struct MeasurementSchedule {
    MeasurementModel model = MeasurementModel::projection;
    double delta_t = 0.0;
    double v0 = 0.0;      // kicked / continuous
    double alpha = 0.0;   // recorded delta_t * v0 link; 0 when unset
    double t_end = 0.0;
    double inner_dt = 0.0;   // resolved continuous substep; 0 -> use the cap
    /// End of the classical arrival window (mean + 3 std of the ideal
    /// distribution); the reflection flag is only meaningful past it.
    double arrival_window_end = 0.0;

    /// Checks couplings and resolves inner_dt (cap 1/(20 v0), divides
    /// delta_t exactly).  Returns human-readable warnings (small alpha,
    /// small v0*delta_t for the kicked model).
    std::vector<std::string> validate_and_resolve(double t_start);
    int substeps_per_bin() const;
};

/// Time series of removed norm per interval plus surviving norm.
struct DetectionRecord {
    std::vector<double> t_bins;    // right edges, width delta_t
    std::vector<double> removed;   // absorbed norm per bin
    std::vector<double> survival;  // N(t) at each bin edge
    double detected_fraction = 0.0; // 1 - N(t_end)
    double start_time = 0.0;
    double start_norm = 1.0;
    double moment1 = 0.0;          // sum of removed * (exact removal instant)
    MeasurementSchedule schedule;
    bool reflection_flag = false;

    /// Mean detection time from the exact removal instants.
    double mean_time() const;
};

/// Zero amplitudes at x >= 0 (Theta(0)=1); returns the removed norm.
double project_left(WaveFunction& psi);

/// Eq.-(6)-style unit: damp amplitudes at x >= 0 by exp(-v0*delta_t),
/// then evolve freely by delta_t.  Returns the norm lost in the damping.
double kicked_step(WaveFunction& psi, double v0, double delta_t);

/// One symmetric (Strang) split step of H0 - i v0 Theta(x):
/// half damp, free evolve, half damp.  Returns the norm removed.
double continuous_step(WaveFunction& psi, double v0, double inner_dt);

/// Invoked at t_start and after every completed bin.
using StateSampler = std::function<void(const WaveFunction&, double)>;

/// Run the scheduled measurement from psi0.time to t_end, accumulating
/// removed norm per delta_t bin.  psi0 must be normalized and validated.
/// Aborts with boundary_leak_error if edge-node mass exceeds 1e-5.
DetectionRecord run_measurement(WaveFunction psi0, MeasurementSchedule schedule,
                                const StateSampler& sampler = {});

/// Momentum amplitudes multiplied by k^{1/2} (k < 0 zeroed), renormalized.
struct OperatorNormalized {
    WaveFunction state;
    double C = 0.0;  // normalization constant
};
OperatorNormalized operator_normalize(const WaveFunction& psi);

} // namespace ztoa
