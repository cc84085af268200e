#pragma once

#include "ztoa/grid.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace ztoa {

using cplx = std::complex<double>;

/// Complex amplitudes on a grid at a time stamp.  Norms are plain Riemann
/// sums with weight dx per node, matching the unitary discrete transform.
struct WaveFunction {
    std::shared_ptr<const SpatialGrid> grid;
    std::vector<cplx> amplitudes;
    double time = 0.0;
};

struct NormSplit {
    double left = 0.0;   // x < 0 nodes
    double right = 0.0;  // x >= 0 nodes
};

/// One pass, two accumulators; total_norm() returns left + right so that
/// right_norm + left complement equals the total exactly.
NormSplit norm_split(const WaveFunction& psi);
double total_norm(const WaveFunction& psi);
double right_norm(const WaveFunction& psi);

/// Probability mass |psi|^2 dx on the two boundary nodes.
double boundary_node_mass(const WaveFunction& psi);

/// Unitary discrete Fourier transform implementing <k|psi> in the continuum
/// convention: psi~(k_j) = dx/sqrt(2 pi) * sum_m psi(x_m) exp(-i k_j x_m),
/// returned in the grid's k ordering.  Parseval holds: sum |psi~|^2 dk =
/// sum |psi|^2 dx.
std::vector<cplx> to_momentum(const WaveFunction& psi);

/// Inverse of to_momentum; stamps the given time.
WaveFunction from_momentum(std::shared_ptr<const SpatialGrid> grid,
                           const std::vector<cplx>& kamps, double time);

/// Multiply psi~(k) by exp(-i k^2 dt / 2) in place; exactly unitary.
void free_evolve_inplace(WaveFunction& psi, double dt);
WaveFunction free_evolve(const WaveFunction& psi, double dt);

/// Precomputed exp(-i k^2 dt / 2)/n multiplier for a fixed step, for hot
/// loops that take many identical steps.
class FreeKernel {
public:
    FreeKernel(const SpatialGrid& grid, double dt);
    void apply(WaveFunction& psi) const;
    double dt() const { return dt_; }

private:
    double dt_;
    std::vector<cplx> phase_over_n_;
};

} // namespace ztoa
