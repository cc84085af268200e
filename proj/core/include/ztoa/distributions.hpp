#pragma once

#include "ztoa/measurement.hpp"
#include "ztoa/packets.hpp"

#include <string>
#include <vector>

namespace ztoa {

enum class DistributionKind { flux, kijowski, zeno_ideal, operational };

const char* to_string(DistributionKind k);

/// Density on a time axis with normalization metadata.
struct TimeDistribution {
    std::vector<double> t_values;
    std::vector<double> density;
    DistributionKind kind = DistributionKind::flux;
    double detected_fraction = 1.0;  // 1 for ideal kinds
    double raw_integral = 0.0;       // integral over the evaluation window as computed
    std::string label;
};

/// Analytic freely-moving reference state psi_f, sampled on the grid's
/// momentum nodes and restricted to the support window of the envelope.
/// All ideal arrival-time distributions are quadratures over it.
class FreeReference {
public:
    FreeReference(std::shared_ptr<const SpatialGrid> grid, std::vector<GaussianSpec> parts);

    double k0() const { return k0_; }
    double neg_k_fraction() const { return neg_k_; }
    const std::vector<GaussianSpec>& parts() const { return parts_; }
    double renorm() const { return renorm_; }

    struct Amps {
        cplx at_origin;      // psi_f(0, t)
        cplx k_weighted;     // (2 pi)^{-1/2} integral k psi~ dk
        cplx sqrtk_weighted; // (2 pi)^{-1/2} integral k^{1/2} psi~ dk, k<0 dropped
    };
    Amps amps_at(double t) const;

    double flux_at(double t) const;      // J(t) = Re[conj(psi(0)) (-i d_x psi)(0)] form
    double kijowski_at(double t) const;  // |k^{1/2}-weighted amplitude|^2
    double zeno_at(double t) const;      // |k-weighted amplitude|^2 / k0

private:
    std::shared_ptr<const SpatialGrid> grid_;
    std::vector<GaussianSpec> parts_;
    double renorm_ = 1.0;
    double k0_ = 0.0;
    double neg_k_ = 0.0;
    // window-restricted per-node tables
    std::vector<double> k_, energy_, sqrtk_;
    std::vector<cplx> base_;  // psi~(k, 0) / renorm
};

/// J(t): may be negative through interference.
TimeDistribution ideal_flux(const FreeReference& ref, std::vector<double> t_values);
/// Kijowski's distribution; requires negligible negative momenta.
TimeDistribution kijowski_distribution(const FreeReference& ref, std::vector<double> t_values);
/// Zeno-limit ideal distribution with the 1/k0 prefactor; requires k0 > 0.
TimeDistribution zeno_ideal_distribution(const FreeReference& ref, std::vector<double> t_values);

/// Operational density: removed[i]/(delta_t * detected_fraction) placed at
/// bin centers; its bin-sum integral is exactly 1.
TimeDistribution normalize_record(const DetectionRecord& rec);

/// Numerically renormalized copy (density scaled by 1/raw_integral).
TimeDistribution renormalized(const TimeDistribution& d);

/// Integral: bin sum for operational distributions, trapezoid otherwise.
double integral(const TimeDistribution& d);
/// First moment over the stored window.
double mean_arrival(const TimeDistribution& d);
/// Standard deviation over the stored window.
double stddev_arrival(const TimeDistribution& d);

/// L1 distance on the union grid of the overlap, by linear interpolation.
double l1_distance(const TimeDistribution& a, const TimeDistribution& b);

/// Evaluation window covering the classical arrival of every part plus
/// n_sigma arrival-time widths on both sides.
struct TimeWindow {
    double t_lo = 0.0, t_hi = 0.0;
};
TimeWindow default_time_window(std::span<const GaussianSpec> parts, double n_sigma = 8.0);

std::vector<double> linspace(double lo, double hi, int n);

} // namespace ztoa
