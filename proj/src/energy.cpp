#include "econ/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace econ {

namespace {

void check_fuel_leg(double v_mps, double dx_m, double w0_n, const FuelPowertrain& fuel) {
    if (!(v_mps > 0.0)) throw std::domain_error("fuel energy: v must be > 0");
    if (!(dx_m >= 0.0)) throw std::domain_error("fuel energy: dx must be >= 0");
    if (!(w0_n > fuel.dry_weight_n())) {
        throw FuelExhaustion("fuel energy: start weight leaves no fuel");
    }
}

// tan argument of the closed-form weight solution.
double alpha_of(double v, double dx, double w0, double K1, double K2) {
    return -dx / (K1 * v) + std::atan(w0 / (K2 * v * v));
}

}  // namespace

double k1(double sfc_kg_per_Ns, double cd0, double cd2) {
    if (!(sfc_kg_per_Ns > 0.0) || !(cd0 > 0.0) || !(cd2 > 0.0)) {
        throw std::domain_error("k1: inputs must be > 0");
    }
    const double sfc_w = kGravity * sfc_kg_per_Ns;
    return 1.0 / (sfc_w * std::sqrt(cd0 * cd2));
}

double k2(double rho_kg_m3, const AirframeParams& airframe) {
    if (!(rho_kg_m3 > 0.0)) throw std::domain_error("k2: rho must be > 0");
    return 0.5 * rho_kg_m3 * airframe.wing_area_m2 * std::sqrt(airframe.cd0 / airframe.cd2);
}

double final_weight(double v_mps, double dx_m, double w0_n, double rho_kg_m3,
                    const AirframeParams& airframe, const FuelPowertrain& fuel) {
    check_fuel_leg(v_mps, dx_m, w0_n, fuel);
    const double K1 = k1(fuel.sfc_kg_per_Ns, airframe.cd0, airframe.cd2);
    const double K2 = k2(rho_kg_m3, airframe);
    const double alpha = alpha_of(v_mps, dx_m, w0_n, K1, K2);
    // The weight solution decreases monotonically with distance; the dry-weight
    // floor is reached while alpha is still above the tan branch singularity.
    const double alpha_dry = std::atan(fuel.dry_weight_n() / (K2 * v_mps * v_mps));
    if (!(alpha > alpha_dry)) {
        throw FuelExhaustion("fuel energy: fuel exhausted before covering dx");
    }
    return K2 * v_mps * v_mps * std::tan(alpha);
}

double weight_rate(double v_mps, double w_n, double rho_kg_m3,
                   const AirframeParams& airframe, const FuelPowertrain& fuel) {
    if (!(v_mps > 0.0)) throw std::domain_error("weight_rate: v must be > 0");
    return -fuel.sfc_weight_per_s() * drag(v_mps, w_n, rho_kg_m3, airframe);
}

double final_energy_fuel(double v_mps, double dx_m, double w0_n, double rho_kg_m3,
                         const AirframeParams& airframe, const FuelPowertrain& fuel) {
    return fuel.heating_value_J_per_kg / kGravity *
           final_weight(v_mps, dx_m, w0_n, rho_kg_m3, airframe, fuel);
}

double dEf_dv_fuel(double v_mps, double dx_m, double w0_n, double rho_kg_m3,
                   const AirframeParams& airframe, const FuelPowertrain& fuel) {
    check_fuel_leg(v_mps, dx_m, w0_n, fuel);
    const double K1 = k1(fuel.sfc_kg_per_Ns, airframe.cd0, airframe.cd2);
    const double K2 = k2(rho_kg_m3, airframe);
    const double v = v_mps;
    const double alpha = alpha_of(v, dx_m, w0_n, K1, K2);
    const double tan_a = std::tan(alpha);
    const double sec2_a = 1.0 + tan_a * tan_a;
    const double u = w0_n / K2;
    const double p = v * v * v * v + u * u;
    // d alpha/dv = dx/(k1 v^2) - 2 u v / (v^4 + u^2)
    const double dalpha = dx_m / (K1 * v * v) - 2.0 * u * v / p;
    const double eg = fuel.heating_value_J_per_kg / kGravity;
    return eg * K2 * (2.0 * v * tan_a + v * v * sec2_a * dalpha);
}

double d2Ef_dv2_fuel(double v_mps, double dx_m, double w0_n, double rho_kg_m3,
                     const AirframeParams& airframe, const FuelPowertrain& fuel) {
    check_fuel_leg(v_mps, dx_m, w0_n, fuel);
    const double K1 = k1(fuel.sfc_kg_per_Ns, airframe.cd0, airframe.cd2);
    const double K2 = k2(rho_kg_m3, airframe);
    const double v = v_mps;
    const double alpha = alpha_of(v, dx_m, w0_n, K1, K2);
    const double tan_a = std::tan(alpha);
    const double sec2_a = 1.0 + tan_a * tan_a;
    const double u = w0_n / K2;
    const double v4 = v * v * v * v;
    const double p = v4 + u * u;
    const double dalpha = dx_m / (K1 * v * v) - 2.0 * u * v / p;
    const double d2alpha = -2.0 * dx_m / (K1 * v * v * v) -
                           2.0 * u * (u * u - 3.0 * v4) / (p * p);
    const double eg = fuel.heating_value_J_per_kg / kGravity;
    return eg * K2 * (2.0 * tan_a + 4.0 * v * sec2_a * dalpha +
                      v * v * sec2_a * (2.0 * tan_a * dalpha * dalpha + d2alpha));
}

double final_charge(double v_mps, double dx_m, double q0_c, double weight_n,
                    double rho_kg_m3, const AirframeParams& airframe,
                    const ElectricPowertrain& elec) {
    if (!(v_mps > 0.0)) throw std::domain_error("final_charge: v must be > 0");
    if (!(dx_m >= 0.0)) throw std::domain_error("final_charge: dx must be >= 0");
    const double qf = q0_c - dx_m / (elec.voltage_v * elec.efficiency) *
                                 drag(v_mps, weight_n, rho_kg_m3, airframe);
    if (qf < 0.0) throw BatteryDepleted("electric energy: battery depleted before covering dx");
    return qf;
}

double battery_current(double v_mps, double weight_n, double rho_kg_m3,
                       const AirframeParams& airframe, const ElectricPowertrain& elec) {
    if (!(v_mps > 0.0)) throw std::domain_error("battery_current: v must be > 0");
    return drag(v_mps, weight_n, rho_kg_m3, airframe) * v_mps /
           (elec.voltage_v * elec.efficiency);
}

double final_energy_electric(double v_mps, double dx_m, double q0_c, double weight_n,
                             double rho_kg_m3, const AirframeParams& airframe,
                             const ElectricPowertrain& elec) {
    return final_charge(v_mps, dx_m, q0_c, weight_n, rho_kg_m3, airframe, elec) *
           elec.voltage_v;
}

double dEf_dv_electric(double v_mps, double dx_m, double weight_n, double rho_kg_m3,
                       const AirframeParams& airframe, const ElectricPowertrain& elec) {
    if (!(v_mps > 0.0)) throw std::domain_error("dEf_dv_electric: v must be > 0");
    const double rs = rho_kg_m3 * airframe.wing_area_m2;
    return -dx_m / elec.efficiency *
           (rs * airframe.cd0 * v_mps -
            4.0 * airframe.cd2 * weight_n * weight_n / (rs * v_mps * v_mps * v_mps));
}

double d2Ef_dv2_electric(double v_mps, double dx_m, double weight_n, double rho_kg_m3,
                         const AirframeParams& airframe, const ElectricPowertrain& elec) {
    if (!(v_mps > 0.0)) throw std::domain_error("d2Ef_dv2_electric: v must be > 0");
    const double rs = rho_kg_m3 * airframe.wing_area_m2;
    const double v4 = v_mps * v_mps * v_mps * v_mps;
    return -dx_m / elec.efficiency *
           (rs * airframe.cd0 + 12.0 * airframe.cd2 * weight_n * weight_n / (rs * v4));
}

double initial_energy(const AircraftModel& aircraft, const EnergyState& state) {
    if (aircraft.is_electric()) return state.charge_c() * aircraft.electric().voltage_v;
    return aircraft.fuel().heating_value_J_per_kg / kGravity * state.weight_n();
}

double final_energy(double v_mps, double dx_m, double rho_kg_m3,
                    const AircraftModel& aircraft, const EnergyState& state) {
    if (aircraft.is_electric()) {
        const ElectricPowertrain& e = aircraft.electric();
        return final_energy_electric(v_mps, dx_m, state.charge_c(), e.weight_n(),
                                     rho_kg_m3, aircraft.airframe, e);
    }
    return final_energy_fuel(v_mps, dx_m, state.weight_n(), rho_kg_m3,
                             aircraft.airframe, aircraft.fuel());
}

double dEf_dv(double v_mps, double dx_m, double rho_kg_m3,
              const AircraftModel& aircraft, const EnergyState& state) {
    if (aircraft.is_electric()) {
        const ElectricPowertrain& e = aircraft.electric();
        return dEf_dv_electric(v_mps, dx_m, e.weight_n(), rho_kg_m3, aircraft.airframe, e);
    }
    return dEf_dv_fuel(v_mps, dx_m, state.weight_n(), rho_kg_m3, aircraft.airframe,
                       aircraft.fuel());
}

double d2Ef_dv2(double v_mps, double dx_m, double rho_kg_m3,
                const AircraftModel& aircraft, const EnergyState& state) {
    if (aircraft.is_electric()) {
        const ElectricPowertrain& e = aircraft.electric();
        return d2Ef_dv2_electric(v_mps, dx_m, e.weight_n(), rho_kg_m3, aircraft.airframe, e);
    }
    return d2Ef_dv2_fuel(v_mps, dx_m, state.weight_n(), rho_kg_m3, aircraft.airframe,
                         aircraft.fuel());
}

EnergyState advance_energy_state(double v_mps, double dx_m, double rho_kg_m3,
                                 const AircraftModel& aircraft, const EnergyState& state) {
    if (aircraft.is_electric()) {
        const ElectricPowertrain& e = aircraft.electric();
        return EnergyState::battery_charge(final_charge(v_mps, dx_m, state.charge_c(),
                                                        e.weight_n(), rho_kg_m3,
                                                        aircraft.airframe, e));
    }
    return EnergyState::fuel_weight(final_weight(v_mps, dx_m, state.weight_n(), rho_kg_m3,
                                                 aircraft.airframe, aircraft.fuel()));
}

}  // namespace econ
