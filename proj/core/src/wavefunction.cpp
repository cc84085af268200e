#include "ztoa/wavefunction.hpp"

#include "ztoa/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ztoa {

NormSplit norm_split(const WaveFunction& psi) {
    NormSplit s;
    const int n = psi.grid->n_points;
    const int split = psi.grid->split_index;
    for (int i = 0; i < n; ++i) {
        const double w = std::norm(psi.amplitudes[i]);
        if (i < split)
            s.left += w;
        else
            s.right += w;
    }
    s.left *= psi.grid->dx;
    s.right *= psi.grid->dx;
    return s;
}

double total_norm(const WaveFunction& psi) {
    const NormSplit s = norm_split(psi);
    return s.left + s.right;
}

double right_norm(const WaveFunction& psi) {
    return norm_split(psi).right;
}

double boundary_node_mass(const WaveFunction& psi) {
    const auto& a = psi.amplitudes;
    return (std::norm(a.front()) + std::norm(a.back())) * psi.grid->dx;
}

std::vector<cplx> to_momentum(const WaveFunction& psi) {
    const auto& g = *psi.grid;
    std::vector<cplx> out = psi.amplitudes;
    SpectralEngine::for_size(g.n_points).forward(out.data());
    const double scale = g.dx / std::sqrt(2.0 * std::numbers::pi);
    for (int j = 0; j < g.n_points; ++j) {
        // shift by x_min so phases refer to absolute position
        const double ph = -g.k_values[j] * g.x_min;
        out[j] *= scale * cplx(std::cos(ph), std::sin(ph));
    }
    return out;
}

WaveFunction from_momentum(std::shared_ptr<const SpatialGrid> grid,
                           const std::vector<cplx>& kamps, double time) {
    const auto& g = *grid;
    if (static_cast<int>(kamps.size()) != g.n_points)
        throw std::invalid_argument("from_momentum: size mismatch");
    WaveFunction psi;
    psi.grid = std::move(grid);
    psi.time = time;
    psi.amplitudes.resize(g.n_points);
    for (int j = 0; j < g.n_points; ++j) {
        const double ph = g.k_values[j] * g.x_min;
        psi.amplitudes[j] = kamps[j] * cplx(std::cos(ph), std::sin(ph));
    }
    SpectralEngine::for_size(g.n_points).backward(psi.amplitudes.data());
    const double scale = g.dk / std::sqrt(2.0 * std::numbers::pi);
    for (auto& a : psi.amplitudes) a *= scale;
    return psi;
}

void free_evolve_inplace(WaveFunction& psi, double dt) {
    const auto& g = *psi.grid;
    auto& eng = SpectralEngine::for_size(g.n_points);
    eng.forward(psi.amplitudes.data());
    const double inv_n = 1.0 / static_cast<double>(g.n_points);
    for (int j = 0; j < g.n_points; ++j) {
        const double k = g.k_values[j];
        const double ph = -0.5 * k * k * dt;
        psi.amplitudes[j] *= cplx(std::cos(ph), std::sin(ph)) * inv_n;
    }
    eng.backward(psi.amplitudes.data());
    psi.time += dt;
}

WaveFunction free_evolve(const WaveFunction& psi, double dt) {
    WaveFunction out = psi;
    free_evolve_inplace(out, dt);
    return out;
}

FreeKernel::FreeKernel(const SpatialGrid& grid, double dt) : dt_(dt) {
    phase_over_n_.resize(grid.n_points);
    const double inv_n = 1.0 / static_cast<double>(grid.n_points);
    for (int j = 0; j < grid.n_points; ++j) {
        const double k = grid.k_values[j];
        const double ph = -0.5 * k * k * dt;
        phase_over_n_[j] = cplx(std::cos(ph), std::sin(ph)) * inv_n;
    }
}

void FreeKernel::apply(WaveFunction& psi) const {
    auto& eng = SpectralEngine::for_size(psi.grid->n_points);
    eng.forward(psi.amplitudes.data());
    const int n = psi.grid->n_points;
    for (int j = 0; j < n; ++j) psi.amplitudes[j] *= phase_over_n_[j];
    eng.backward(psi.amplitudes.data());
    psi.time += dt_;
}

} // namespace ztoa
