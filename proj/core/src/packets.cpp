#include "ztoa/packets.hpp"

#include "ztoa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ztoa {

namespace {
constexpr double kBoundaryMassAtConstruction = 1e-10;
}

double GaussianSpec::spread_at(double t) const {
    const double tau = t - t_focus;
    const double sk = sigma_k();
    return std::sqrt(delta_x * delta_x + sk * sk * tau * tau);
}

double GaussianSpec::center_at(double t) const {
    return x_focus + v_mean * (t - t_focus);
}

cplx gaussian_momentum_amplitude(const GaussianSpec& spec, double k, double t) {
    const double sk = spec.sigma_k();
    const double dk = k - spec.v_mean;
    const double amp = std::pow(2.0 * std::numbers::pi * sk * sk, -0.25) *
                       std::exp(-dk * dk / (4.0 * sk * sk));
    const double ph = -k * spec.x_focus - 0.5 * k * k * (t - spec.t_focus);
    return spec.weight * amp * cplx(std::cos(ph), std::sin(ph));
}

cplx gaussian_position_amplitude(const GaussianSpec& spec, double x, double t) {
    const double sk = spec.sigma_k();
    const double tau = t - spec.t_focus;
    const cplx A(1.0 / (4.0 * sk * sk), 0.5 * tau);
    const double xr = x - spec.x_focus;
    const double b = xr - spec.v_mean * tau;
    const cplx expo = cplx(0.0, spec.v_mean * xr - 0.5 * spec.v_mean * spec.v_mean * tau) -
                      b * b / (4.0 * A);
    const cplx pref = std::pow(2.0 * std::numbers::pi * sk * sk, -0.25) /
                      std::sqrt(2.0 * std::numbers::pi) * std::sqrt(std::numbers::pi / A);
    return spec.weight * pref * std::exp(expo);
}

double superposition_renorm(std::span<const GaussianSpec> parts, const SpatialGrid& grid) {
    double s = 0.0;
    for (int j = 0; j < grid.n_points; ++j) {
        cplx a = 0.0;
        for (const auto& p : parts) a += gaussian_momentum_amplitude(p, grid.k_values[j], 0.0);
        s += std::norm(a);
    }
    return std::sqrt(s * grid.dk);
}

namespace {

WaveFunction build_from_parts(std::span<const GaussianSpec> parts,
                              std::shared_ptr<const SpatialGrid> grid, double t) {
    const auto& g = *grid;
    std::vector<cplx> kamps(g.n_points);
    for (int j = 0; j < g.n_points; ++j) {
        cplx a = 0.0;
        for (const auto& p : parts) a += gaussian_momentum_amplitude(p, g.k_values[j], t);
        kamps[j] = a;
    }
    WaveFunction psi = from_momentum(std::move(grid), kamps, t);
    const double nrm = total_norm(psi);
    if (!(nrm > 0.0))
        throw validation_error("packet construction: state has zero norm (all weights zero?)");
    const double scale = 1.0 / std::sqrt(nrm);
    for (auto& a : psi.amplitudes) a *= scale;
    if (boundary_node_mass(psi) > kBoundaryMassAtConstruction)
        throw validation_error("packet construction: tail mass at boundary nodes exceeds 1e-10");
    return psi;
}

} // namespace

WaveFunction gaussian_packet(const GaussianSpec& spec,
                             std::shared_ptr<const SpatialGrid> grid, double t) {
    if (!(spec.delta_x > 0.0))
        throw validation_error("gaussian_packet: delta_x must be positive");
    const double c = spec.center_at(t);
    const double s = spec.spread_at(t);
    if (c - 6.0 * s < grid->x_min || c + 6.0 * s > grid->x_max)
        throw validation_error("gaussian_packet: +-6 spread support leaves the grid");
    const GaussianSpec one[] = {spec};
    return build_from_parts(one, std::move(grid), t);
}

WaveFunction superpose(std::span<const GaussianSpec> parts,
                       std::shared_ptr<const SpatialGrid> grid, double t) {
    if (parts.empty())
        throw validation_error("superpose: need at least one part");
    for (const auto& p : parts)
        if (!(p.delta_x > 0.0))
            throw validation_error("superpose: delta_x must be positive");
    if (std::all_of(parts.begin(), parts.end(),
                    [](const GaussianSpec& p) { return std::abs(p.weight) == 0.0; }))
        throw validation_error("superpose: all weights zero");
    return build_from_parts(parts, std::move(grid), t);
}

PacketDiagnostics packet_diagnostics(const WaveFunction& psi) {
    const auto kamps = to_momentum(psi);
    const auto& g = *psi.grid;
    double n = 0.0, k1 = 0.0, k2 = 0.0, k4 = 0.0, neg = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        const double p = std::norm(kamps[j]);
        const double k = g.k_values[j];
        n += p;
        k1 += k * p;
        k2 += k * k * p;
        k4 += k * k * k * k * p;
        if (k < 0.0) neg += p;
    }
    if (!(n > 0.0)) throw validation_error("packet_diagnostics: zero-norm state");
    PacketDiagnostics d;
    d.k0 = k1 / n;
    d.mean_H0 = 0.5 * k2 / n;
    const double var = 0.25 * k4 / n - d.mean_H0 * d.mean_H0;
    d.delta_H0 = std::sqrt(std::max(var, 0.0));
    d.neg_k_fraction = neg / n;

    // cumulative kinetic-energy mass: smallest E with cumulative >= 0.99
    std::vector<int> idx(g.n_points);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(g.k_values[a]) < std::abs(g.k_values[b]);
    });
    double cum = 0.0;
    d.e_max_99 = 0.5 * g.k_values[idx.back()] * g.k_values[idx.back()];
    for (int j : idx) {
        cum += std::norm(kamps[j]) / n;
        if (cum >= 0.99) {
            d.e_max_99 = 0.5 * g.k_values[j] * g.k_values[j];
            break;
        }
    }
    return d;
}

} // namespace ztoa
