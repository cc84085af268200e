#pragma once

#include "ztoa/wavefunction.hpp"

#include <span>
#include <vector>

namespace ztoa {

/// Analytic free Gaussian specified by its focus: the place and time of
/// minimal uncertainty.  v_mean equals the mean momentum in internal units
/// (hbar = m = 1).  Momentum spread sigma_k = 1/(2 delta_x); the packet is
/// minimum-uncertainty at (x_focus, t_focus).
struct GaussianSpec {
    double x_focus = 0.0;
    double t_focus = 0.0;
    double delta_x = 1.0;
    double v_mean = 0.0;
    cplx weight = {1.0, 0.0};

    double sigma_k() const { return 0.5 / delta_x; }
    /// Position spread after free evolution to time t.
    double spread_at(double t) const;
    /// Packet center after free evolution to time t.
    double center_at(double t) const;
};

/// psi~(k, t) of one part, continuum-normalized:
/// (2 pi sigma_k^2)^{-1/4} exp(-(k-kbar)^2/(4 sigma_k^2))
///   * exp(-i k x_focus) * exp(-i k^2 (t - t_focus)/2) * weight.
cplx gaussian_momentum_amplitude(const GaussianSpec& spec, double k, double t);

/// Closed-form position amplitude of the same packet (independent route,
/// used as the analytic oracle in tests).
cplx gaussian_position_amplitude(const GaussianSpec& spec, double x, double t);

/// Normalization constant C of the grid-sampled superposition
/// sum_j psi~_j / C; time-independent.
double superposition_renorm(std::span<const GaussianSpec> parts, const SpatialGrid& grid);

/// Construct the normalized packet on the grid at time t.  Throws
/// validation_error if the +-6 spread support leaves the grid or the
/// boundary node mass exceeds 1e-10.
WaveFunction gaussian_packet(const GaussianSpec& spec,
                             std::shared_ptr<const SpatialGrid> grid, double t);

/// Weighted sum of analytic packets, renormalized to 1.
WaveFunction superpose(std::span<const GaussianSpec> parts,
                       std::shared_ptr<const SpatialGrid> grid, double t);

/// Moments of the momentum density p(k) = |psi~(k)|^2 dk / norm.
struct PacketDiagnostics {
    double k0 = 0.0;             // <k>
    double mean_H0 = 0.0;        // <k^2/2>
    double delta_H0 = 0.0;       // std of kinetic energy
    double neg_k_fraction = 0.0; // momentum mass at k < 0
    double e_max_99 = 0.0;       // 99th-percentile kinetic energy
};

PacketDiagnostics packet_diagnostics(const WaveFunction& psi);

} // namespace ztoa
