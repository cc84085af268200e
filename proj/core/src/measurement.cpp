#include "ztoa/measurement.hpp"

#include "ztoa/errors.hpp"
#include "ztoa/packets.hpp"
#include "ztoa/spectral.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ztoa {

namespace {
constexpr double kBoundaryAbortMass = 1e-5;
constexpr double kNegKLimit = 1e-6;

void check_boundary(const WaveFunction& psi) {
    const double b = boundary_node_mass(psi);
    if (b > kBoundaryAbortMass) {
        std::ostringstream os;
        os << "boundary leak: edge-node mass " << b << " exceeds " << kBoundaryAbortMass
           << " at t = " << psi.time;
        throw boundary_leak_error(os.str());
    }
}

double damp_right(WaveFunction& psi, double factor) {
    const int n = psi.grid->n_points;
    const int split = psi.grid->split_index;
    double right = 0.0;
    for (int i = split; i < n; ++i) right += std::norm(psi.amplitudes[i]);
    right *= psi.grid->dx;
    for (int i = split; i < n; ++i) psi.amplitudes[i] *= factor;
    return right * (1.0 - factor * factor);
}
} // namespace

const char* to_string(MeasurementModel m) {
    switch (m) {
        case MeasurementModel::projection: return "projection";
        case MeasurementModel::kicked: return "kicked";
        case MeasurementModel::continuous: return "continuous";
    }
    return "?";
}

std::optional<MeasurementModel> measurement_model_from_string(const std::string& s) {
    if (s == "projection") return MeasurementModel::projection;
    if (s == "kicked") return MeasurementModel::kicked;
    if (s == "continuous") return MeasurementModel::continuous;
    return std::nullopt;
}

std::vector<std::string> MeasurementSchedule::validate_and_resolve(double t_start) {
    std::vector<std::string> warnings;
    if (!(delta_t > 0.0)) throw validation_error("schedule: delta_t must be positive");
    if (!(t_end > t_start)) throw validation_error("schedule: t_end must exceed the start time");
    if (model != MeasurementModel::projection) {
        if (!(v0 > 0.0)) throw validation_error("schedule: V0 must be positive for this model");
        if (alpha > 0.0 && std::abs(delta_t * v0 - alpha) > 1e-9 * alpha)
            throw validation_error("schedule: alpha inconsistent with delta_t * V0");
        alpha = delta_t * v0;
        if (alpha < 10.0)
            warnings.push_back("alpha = delta_t*V0 = " + std::to_string(alpha) + " < 10");
    }
    if (model == MeasurementModel::kicked && v0 * delta_t < 10.0)
        warnings.push_back("kicked model: V0*delta_t = " + std::to_string(v0 * delta_t) +
                           " is not >> 1");
    if (model == MeasurementModel::continuous) {
        const double cap = 1.0 / (20.0 * v0);
        double target = (inner_dt > 0.0) ? inner_dt : cap;
        if (target > cap) throw validation_error("schedule: inner_dt must be <= 1/(20 V0)");
        if (target > delta_t) target = delta_t;
        const int nsub = static_cast<int>(std::ceil(delta_t / target - 1e-12));
        inner_dt = delta_t / nsub;
    }
    return warnings;
}

int MeasurementSchedule::substeps_per_bin() const {
    if (model != MeasurementModel::continuous || inner_dt <= 0.0) return 1;
    return static_cast<int>(std::llround(delta_t / inner_dt));
}

double DetectionRecord::mean_time() const {
    const double tot = std::accumulate(removed.begin(), removed.end(), 0.0);
    return moment1 / tot;
}

double project_left(WaveFunction& psi) {
    const NormSplit s = norm_split(psi);
    const int n = psi.grid->n_points;
    for (int i = psi.grid->split_index; i < n; ++i) psi.amplitudes[i] = 0.0;
    return s.right;
}

double kicked_step(WaveFunction& psi, double v0, double delta_t) {
    if (!(v0 > 0.0)) throw std::invalid_argument("kicked_step: V0 must be positive");
    const double removed = damp_right(psi, std::exp(-v0 * delta_t));
    free_evolve_inplace(psi, delta_t);
    return removed;
}

double continuous_step(WaveFunction& psi, double v0, double inner_dt) {
    if (v0 > 0.0 && inner_dt > 1.0 / (20.0 * v0) * (1.0 + 1e-12))
        throw std::invalid_argument("continuous_step: inner_dt must be <= 1/(20 V0)");
    const double half = std::exp(-0.5 * v0 * inner_dt);
    double removed = damp_right(psi, half);
    free_evolve_inplace(psi, inner_dt);
    removed += damp_right(psi, half);
    return removed;
}

DetectionRecord run_measurement(WaveFunction psi0, MeasurementSchedule schedule,
                                const StateSampler& sampler) {
    const double t_start = psi0.time;
    schedule.validate_and_resolve(t_start);

    DetectionRecord rec;
    rec.start_time = t_start;
    rec.start_norm = total_norm(psi0);
    rec.schedule = schedule;

    const double dt = schedule.delta_t;
    const int bins = static_cast<int>(std::ceil((schedule.t_end - t_start) / dt - 1e-9));
    if (bins < 1) throw validation_error("run_measurement: no full bin before t_end");
    rec.t_bins.resize(bins);
    rec.removed.assign(bins, 0.0);
    rec.survival.resize(bins);

    if (sampler) sampler(psi0, t_start);

    const double kick_factor = (schedule.model == MeasurementModel::kicked)
                                   ? std::exp(-schedule.v0 * dt)
                                   : 0.0;
    if (schedule.model == MeasurementModel::kicked) {
        // kick train includes the endpoint kick at t_start; its (negligible,
        // validated) removal is attributed to the first bin
        const double r0 = damp_right(psi0, kick_factor);
        rec.removed[0] += r0;
        rec.moment1 += r0 * t_start;
    }

    const int nsub = schedule.substeps_per_bin();
    const double h = (schedule.model == MeasurementModel::continuous) ? schedule.inner_dt : dt;
    const double half = std::exp(-0.5 * schedule.v0 * h);
    const FreeKernel kernel(*psi0.grid, h);

    for (int i = 0; i < bins; ++i) {
        const double t_right = t_start + dt * (i + 1);
        switch (schedule.model) {
            case MeasurementModel::projection: {
                kernel.apply(psi0);
                const double r = project_left(psi0);
                rec.removed[i] += r;
                rec.moment1 += r * t_right;
                break;
            }
            case MeasurementModel::kicked: {
                kernel.apply(psi0);
                const double r = damp_right(psi0, kick_factor);
                rec.removed[i] += r;
                rec.moment1 += r * t_right;
                break;
            }
            case MeasurementModel::continuous: {
                for (int s = 0; s < nsub; ++s) {
                    double r = damp_right(psi0, half);
                    kernel.apply(psi0);
                    r += damp_right(psi0, half);
                    rec.removed[i] += r;
                    rec.moment1 += r * (t_right - dt + (s + 0.5) * h);
                }
                break;
            }
        }
        rec.t_bins[i] = t_right;
        rec.survival[i] = total_norm(psi0);
        check_boundary(psi0);
        if (sampler) sampler(psi0, t_right);
    }

    rec.detected_fraction = 1.0 - rec.survival.back();
    rec.reflection_flag = rec.survival.back() > 0.01 &&
                          (schedule.arrival_window_end <= 0.0 ||
                           rec.t_bins.back() >= schedule.arrival_window_end);
    return rec;
}

OperatorNormalized operator_normalize(const WaveFunction& psi) {
    const auto diag = packet_diagnostics(psi);
    if (diag.neg_k_fraction >= kNegKLimit)
        throw validation_error("operator_normalize: negative-momentum fraction " +
                               std::to_string(diag.neg_k_fraction) + " >= 1e-6");
    auto kamps = to_momentum(psi);
    const auto& g = *psi.grid;
    double s = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        const double k = g.k_values[j];
        if (k < 0.0)
            kamps[j] = 0.0;
        else
            kamps[j] *= std::sqrt(k);
        s += std::norm(kamps[j]);
    }
    OperatorNormalized out;
    out.C = std::sqrt(s * g.dk);
    for (auto& a : kamps) a /= out.C;
    out.state = from_momentum(psi.grid, kamps, psi.time);
    // remove residual discretization drift so the norm is exactly 1
    const double n2 = total_norm(out.state);
    const double fix = 1.0 / std::sqrt(n2);
    for (auto& a : out.state.amplitudes) a *= fix;
    return out;
}

} // namespace ztoa
