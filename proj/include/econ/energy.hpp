#pragma once

#include "econ/aircraft.hpp"
#include "econ/airframe.hpp"

namespace econ {

// --- fuel powertrain (closed forms of the separable weight ODE) -------------
//
// W_f = k2 v^2 tan( -dx/(k1 v) + arctan(W0/(k2 v^2)) )
// k1 = 1 / (S_fc_w sqrt(C_D0 C_D2)),  k2 = (rho S / 2) sqrt(C_D0 / C_D2)
// E = (e/g) W, so every energy expression is the weight one scaled by e/g.

/// k1 (s) from the weight-specific fuel consumption S_fc_w = g * sfc_mass.
double k1(double sfc_kg_per_Ns, double cd0, double cd2);

/// k2 (N s^2/m^2).
double k2(double rho_kg_m3, const AirframeParams& airframe);

/// Total weight after flying dx at constant speed v. Throws FuelExhaustion
/// when the fuel runs out before dx (final weight would reach dry weight).
double final_weight(double v_mps, double dx_m, double w0_n, double rho_kg_m3,
                    const AirframeParams& airframe, const FuelPowertrain& fuel);

/// dW/dt = -S_fc_w * D(v, w). Validation-oracle right-hand side.
double weight_rate(double v_mps, double w_n, double rho_kg_m3,
                   const AirframeParams& airframe, const FuelPowertrain& fuel);

double final_energy_fuel(double v_mps, double dx_m, double w0_n, double rho_kg_m3,
                         const AirframeParams& airframe, const FuelPowertrain& fuel);

/// Analytic dE_f/dv for the fuel closed form.
double dEf_dv_fuel(double v_mps, double dx_m, double w0_n, double rho_kg_m3,
                   const AirframeParams& airframe, const FuelPowertrain& fuel);

/// Analytic d2E_f/dv2 for the fuel closed form.
double d2Ef_dv2_fuel(double v_mps, double dx_m, double w0_n, double rho_kg_m3,
                     const AirframeParams& airframe, const FuelPowertrain& fuel);

// --- electric powertrain -----------------------------------------------------
//
// Q_f = Q0 - dx D(v) / (U eta), E = Q U at constant voltage.

/// Battery charge after flying dx at constant speed v. Throws BatteryDepleted
/// when the result would be negative.
double final_charge(double v_mps, double dx_m, double q0_c, double weight_n,
                    double rho_kg_m3, const AirframeParams& airframe,
                    const ElectricPowertrain& elec);

/// i = D v / (U eta), the battery discharge current in steady flight.
double battery_current(double v_mps, double weight_n, double rho_kg_m3,
                       const AirframeParams& airframe, const ElectricPowertrain& elec);

double final_energy_electric(double v_mps, double dx_m, double q0_c, double weight_n,
                             double rho_kg_m3, const AirframeParams& airframe,
                             const ElectricPowertrain& elec);

/// dE_f/dv = -(dx/eta) (rho S C_D0 v - 4 C_D2 W^2 / (rho S v^3)).
double dEf_dv_electric(double v_mps, double dx_m, double weight_n, double rho_kg_m3,
                       const AirframeParams& airframe, const ElectricPowertrain& elec);

/// d2E_f/dv2 = -(dx/eta) (rho S C_D0 + 12 C_D2 W^2 / (rho S v^4)).
double d2Ef_dv2_electric(double v_mps, double dx_m, double weight_n, double rho_kg_m3,
                         const AirframeParams& airframe, const ElectricPowertrain& elec);

// --- powertrain dispatch ------------------------------------------------------

/// Energy available at the start of a leg: (e/g) W0 or Q0 U.
double initial_energy(const AircraftModel& aircraft, const EnergyState& state);

/// Final energy after dx at speed v; propagates FuelExhaustion/BatteryDepleted.
double final_energy(double v_mps, double dx_m, double rho_kg_m3,
                    const AircraftModel& aircraft, const EnergyState& state);

double dEf_dv(double v_mps, double dx_m, double rho_kg_m3,
              const AircraftModel& aircraft, const EnergyState& state);

double d2Ef_dv2(double v_mps, double dx_m, double rho_kg_m3,
                const AircraftModel& aircraft, const EnergyState& state);

/// Energy state after flying dx at speed v (weight or charge, same units as in).
EnergyState advance_energy_state(double v_mps, double dx_m, double rho_kg_m3,
                                 const AircraftModel& aircraft, const EnergyState& state);

}  // namespace econ
