#include "econ/atmosphere.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace econ {

AtmosphereModel AtmosphereModel::isa() {
    AtmosphereModel m;
    m.sea_level_pressure_Pa = 101325.0;
    m.sea_level_temperature_K = 288.15;
    m.gas_constant_J_per_kgK = 287.053;
    m.gravity_mps2 = kGravity;
    m.layers = {
        {0.0, 288.15, -0.0065},   // troposphere
        {11000.0, 216.65, 0.0},   // tropopause
    };
    m.max_altitude_m = 20000.0;
    return m;
}

double AtmosphereModel::density(double altitude_m) const {
    if (!(altitude_m >= 0.0) || altitude_m > max_altitude_m) {
        throw std::domain_error("atmosphere: altitude " + std::to_string(altitude_m) +
                                " m outside [0, " + std::to_string(max_altitude_m) + "] m");
    }
    const double R = gas_constant_J_per_kgK;
    const double g = gravity_mps2;

    double p = sea_level_pressure_Pa;
    double T = sea_level_temperature_K;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const AtmosphereLayer& layer = layers[i];
        const double top = (i + 1 < layers.size()) ? layers[i + 1].base_altitude_m
                                                   : max_altitude_m;
        const double h = std::min(altitude_m, top) - layer.base_altitude_m;
        const double t_base = layer.base_temperature_K;
        if (layer.lapse_rate_K_per_m != 0.0) {
            T = t_base + layer.lapse_rate_K_per_m * h;
            p *= std::pow(T / t_base, -g / (R * layer.lapse_rate_K_per_m));
        } else {
            T = t_base;
            p *= std::exp(-g * h / (R * t_base));
        }
        if (altitude_m <= top) break;
    }
    return p / (R * T);
}

double isa_density(double altitude_m) {
    static const AtmosphereModel model = AtmosphereModel::isa();
    return model.density(altitude_m);
}

}  // namespace econ
