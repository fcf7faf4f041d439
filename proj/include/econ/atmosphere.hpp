#pragma once

#include <vector>

namespace econ {

/// Gravitational acceleration used throughout the library (m/s^2).
inline constexpr double kGravity = 9.81;

struct AtmosphereLayer {
    double base_altitude_m;
    double base_temperature_K;
    double lapse_rate_K_per_m;  // dT/dh, negative where temperature falls
};

/// Layered standard atmosphere. Density comes from the hydrostatic relation
/// integrated layer by layer, so it is continuous across layer boundaries.
struct AtmosphereModel {
    double sea_level_pressure_Pa;
    double sea_level_temperature_K;
    double gas_constant_J_per_kgK;
    double gravity_mps2;
    std::vector<AtmosphereLayer> layers;  // ascending bases, layers[0].base == 0
    double max_altitude_m;

    /// ISA troposphere (0-11 km, -6.5 K/km) plus tropopause (11-20 km, isothermal).
    static AtmosphereModel isa();

    /// Air density (kg/m^3) at geometric altitude. Throws std::domain_error
    /// outside [0, max_altitude_m].
    double density(double altitude_m) const;
};

/// density() on the default ISA model.
double isa_density(double altitude_m);

}  // namespace econ
