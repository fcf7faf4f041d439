#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "econ/airframe.hpp"
#include "econ/atmosphere.hpp"

namespace econ {

class FuelExhaustion : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BatteryDepleted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InfeasibleLeg : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No nonnegative cost index reaches the requested speed.
class FitInfeasible : public InfeasibleLeg {
public:
    using InfeasibleLeg::InfeasibleLeg;
};

class SolverFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Combustion powertrain. Spec sheets give S_fc as mass flow per unit thrust
/// (kg/(N s)); the steady-flight weight rate dW/dt = -S_fc_w D needs 1/s, so
/// the weight-specific value is g * sfc_kg_per_Ns.
struct FuelPowertrain {
    double sfc_kg_per_Ns;
    double heating_value_J_per_kg;
    double initial_fuel_mass_kg;
    double dry_mass_kg;

    double sfc_weight_per_s() const { return kGravity * sfc_kg_per_Ns; }
    double initial_weight_n() const { return (dry_mass_kg + initial_fuel_mass_kg) * kGravity; }
    double dry_weight_n() const { return dry_mass_kg * kGravity; }

    void validate() const;
};

/// Battery powertrain at constant voltage; aircraft mass constant in flight.
struct ElectricPowertrain {
    double voltage_v;
    double efficiency;
    double initial_charge_c;
    double mass_kg;

    double weight_n() const { return mass_kg * kGravity; }

    void validate() const;
};

/// Energy state of a cruise leg start: total weight (N) for fuel aircraft,
/// battery charge (C) for electric ones.
class EnergyState {
public:
    static EnergyState fuel_weight(double weight_n) { return EnergyState(true, weight_n); }
    static EnergyState battery_charge(double charge_c) { return EnergyState(false, charge_c); }

    bool is_fuel() const { return fuel_; }
    double weight_n() const;
    double charge_c() const;

private:
    EnergyState(bool fuel, double value) : fuel_(fuel), value_(value) {}
    bool fuel_;
    double value_;
};

/// Airframe plus exactly one powertrain.
struct AircraftModel {
    std::string name;
    AirframeParams airframe;
    std::variant<FuelPowertrain, ElectricPowertrain> powertrain;

    bool is_electric() const { return std::holds_alternative<ElectricPowertrain>(powertrain); }
    const FuelPowertrain& fuel() const { return std::get<FuelPowertrain>(powertrain); }
    const ElectricPowertrain& electric() const { return std::get<ElectricPowertrain>(powertrain); }

    EnergyState initial_energy_state() const;

    void validate() const;
};

}  // namespace econ
