#pragma once

namespace ztoa {

/// Pinned physical constants (SI).
namespace constants {
inline constexpr double hbar_J_s = 1.054571817e-34;
inline constexpr double atomic_mass_kg = 1.66053906660e-27;
inline constexpr double L0_meters = 1e-6;  // internal length unit: 1 micron
} // namespace constants

/// Conversion boundary between the SI-flavored scenario units
/// (um, cm/s, us/ns) and internal natural units (hbar = m = 1,
/// L0 = 1 um, T0 = m L0^2 / hbar).
struct UnitSystem {
    double mass_kg = 0.0;
    double T0_seconds = 0.0;

    static UnitSystem for_mass_u(double mass_u);

    double length_from_um(double x_um) const { return x_um; }
    double length_to_um(double x) const { return x; }
    double time_from_us(double t_us) const { return t_us * 1e-6 / T0_seconds; }
    double time_to_us(double t) const { return t * T0_seconds * 1e6; }
    double time_from_ns(double t_ns) const { return t_ns * 1e-9 / T0_seconds; }
    double velocity_from_cm_s(double v) const { return v * 1e-2 * T0_seconds / constants::L0_meters; }
    double velocity_to_cm_s(double v) const { return v * constants::L0_meters / (1e-2 * T0_seconds); }
    /// Energies stated as multiples of hbar per microsecond.
    double energy_from_hbar_per_us(double e) const { return e * T0_seconds * 1e6; }
    double energy_to_hbar_per_us(double e) const { return e / (T0_seconds * 1e6); }
};

} // namespace ztoa
