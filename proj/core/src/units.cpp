#include "ztoa/units.hpp"

#include <stdexcept>

namespace ztoa {

UnitSystem UnitSystem::for_mass_u(double mass_u) {
    if (!(mass_u > 0.0)) throw std::invalid_argument("UnitSystem: mass must be positive");
    UnitSystem u;
    u.mass_kg = mass_u * constants::atomic_mass_kg;
    u.T0_seconds = u.mass_kg * constants::L0_meters * constants::L0_meters / constants::hbar_J_s;
    return u;
}

} // namespace ztoa
