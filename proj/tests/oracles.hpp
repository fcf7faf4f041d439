// Test-only oracles and fixtures: finite differences, RK4 integration of the
// weight ODE, and deterministic random-leg generation. Everything here is kept
// independent of the analytic closed forms it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "econ/energy.hpp"
#include "econ/optimizer.hpp"

namespace testkit {

template <class F>
double central_diff(F f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Relative error with a scale floor so near-zero crossings of the quantity
/// under test do not register as large relative disagreements.
inline double rel_err(double a, double b, double scale_floor = 0.0) {
    const double denom = std::max({std::abs(a), std::abs(b), scale_floor});
    return denom == 0.0 ? 0.0 : std::abs(a - b) / denom;
}

/// Fixed-step RK4 integration of dW/dt = -S_fc_w D(v, W) over t_f = dx / v.
inline double rk4_final_weight(double v, double dx, double w0, double rho,
                               const econ::AirframeParams& airframe,
                               const econ::FuelPowertrain& fuel, double max_step_s = 1.0) {
    const double tf = dx / v;
    const int n = std::max(1, static_cast<int>(std::ceil(tf / max_step_s)));
    const double h = tf / n;
    double w = w0;
    for (int i = 0; i < n; ++i) {
        const double s1 = econ::weight_rate(v, w, rho, airframe, fuel);
        const double s2 = econ::weight_rate(v, w + 0.5 * h * s1, rho, airframe, fuel);
        const double s3 = econ::weight_rate(v, w + 0.5 * h * s2, rho, airframe, fuel);
        const double s4 = econ::weight_rate(v, w + h * s3, rho, airframe, fuel);
        w += h / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
    }
    return w;
}

// --- bundled reference models ---------------------------------------------------

inline econ::AirframeParams fuel_airframe() {
    return {88.26, 0.015, 0.08, 150.0 / 3.6, 890.0 / 3.6};
}

inline econ::FuelPowertrain fuel_powertrain(double dry_mass_kg = 0.0) {
    return {1.92e-5, 43e6, 10000.0, dry_mass_kg};
}

inline econ::AircraftModel fuel_aircraft(double dry_mass_kg = 0.0) {
    return {"fuel_test", fuel_airframe(), fuel_powertrain(dry_mass_kg)};
}

inline econ::AirframeParams electric_airframe() {
    return {11.37, 0.035, 0.009, 50.0 / 3.6, 161.0 / 3.6};
}

inline econ::ElectricPowertrain electric_powertrain(double q0_c = 3.6e5) {
    return {133.2, 0.7, q0_c, 472.0};
}

inline econ::AircraftModel electric_aircraft(double q0_c = 3.6e5) {
    return {"electric_test", electric_airframe(), electric_powertrain(q0_c)};
}

inline econ::CruiseLeg fuel_leg(double dx_m, double ci0_w, double ci_in_w, econ::Tau tau,
                                double rho = 0.4135, double w0_n = 98100.0) {
    return {dx_m, rho, fuel_aircraft(), econ::EnergyState::fuel_weight(w0_n),
            econ::CostIndexFilter{ci0_w, ci_in_w, tau}};
}

inline econ::CruiseLeg electric_leg(double dx_m, double ci0_w, double ci_in_w, econ::Tau tau,
                                    double rho = 1.112, double q0_c = 3.6e5) {
    return {dx_m, rho, electric_aircraft(q0_c), econ::EnergyState::battery_charge(q0_c),
            econ::CostIndexFilter{ci0_w, ci_in_w, tau}};
}

// --- deterministic random legs -------------------------------------------------

class LegSampler {
public:
    explicit LegSampler(unsigned seed) : rng_(seed) {}

    econ::CruiseLeg fuel(bool allow_clamped = true) {
        const double rho = uniform(0.35, 0.9);
        const double fuel_mass = uniform(4000.0, 10000.0);
        const double dry_mass = pick(3) == 0 ? uniform(5000.0, 20000.0) : 0.0;
        const double dx = uniform(5e4, 2.5e5);
        const double ci0 = allow_clamped ? log_uniform(1e4, 1e9) : log_uniform(1e5, 5e7);
        const double ci_in = ci0 * uniform(0.5, 2.5);
        const double tau = log_uniform(1.0, 5e3);
        econ::AircraftModel aircraft{"fuel_rand", fuel_airframe(),
                                     econ::FuelPowertrain{1.92e-5, 43e6, fuel_mass, dry_mass}};
        return {dx, rho, aircraft,
                econ::EnergyState::fuel_weight((fuel_mass + dry_mass) * econ::kGravity),
                econ::CostIndexFilter{ci0, ci_in, econ::Tau::seconds(tau)}};
    }

    econ::CruiseLeg electric(bool allow_clamped = true) {
        const double rho = uniform(0.9, 1.225);
        const double dx = uniform(2e4, 2e5);
        const double ci0 = allow_clamped ? log_uniform(1.0, 1e6) : log_uniform(100.0, 3e4);
        const double ci_in = ci0 * uniform(0.5, 2.5);
        const double tau = log_uniform(1.0, 5e3);
        const double q0 = 5e6;  // ample: keep sweeps away from depletion edges
        return {dx, rho, electric_aircraft(q0), econ::EnergyState::battery_charge(q0),
                econ::CostIndexFilter{ci0, ci_in, econ::Tau::seconds(tau)}};
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

private:
    std::mt19937 rng_;
};

}  // namespace testkit
