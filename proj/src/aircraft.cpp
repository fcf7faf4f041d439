#include "econ/aircraft.hpp"

namespace econ {

void FuelPowertrain::validate() const {
    if (!(sfc_kg_per_Ns > 0.0)) {
        throw std::domain_error("fuel powertrain: S_fc must be > 0");
    }
    if (!(heating_value_J_per_kg > 0.0)) {
        throw std::domain_error("fuel powertrain: heating value must be > 0");
    }
    if (!(initial_fuel_mass_kg > 0.0)) {
        throw std::domain_error("fuel powertrain: initial fuel mass must be > 0");
    }
    if (!(dry_mass_kg >= 0.0)) {
        throw std::domain_error("fuel powertrain: dry mass must be >= 0");
    }
}

void ElectricPowertrain::validate() const {
    if (!(voltage_v > 0.0)) throw std::domain_error("electric powertrain: voltage must be > 0");
    if (!(efficiency > 0.0) || efficiency > 1.0) {
        throw std::domain_error("electric powertrain: efficiency must be in (0, 1]");
    }
    if (!(initial_charge_c > 0.0)) {
        throw std::domain_error("electric powertrain: initial charge must be > 0");
    }
    if (!(mass_kg > 0.0)) throw std::domain_error("electric powertrain: mass must be > 0");
}

double EnergyState::weight_n() const {
    if (!fuel_) throw std::logic_error("energy state: not a fuel state");
    return value_;
}

double EnergyState::charge_c() const {
    if (fuel_) throw std::logic_error("energy state: not an electric state");
    return value_;
}

EnergyState AircraftModel::initial_energy_state() const {
    if (is_electric()) return EnergyState::battery_charge(electric().initial_charge_c);
    return EnergyState::fuel_weight(fuel().initial_weight_n());
}

void AircraftModel::validate() const {
    airframe.validate();
    if (is_electric()) {
        electric().validate();
    } else {
        fuel().validate();
    }
}

}  // namespace econ
