#pragma once

#include "econ/aircraft.hpp"
#include "econ/cost_index.hpp"
#include "econ/energy.hpp"

namespace econ {

/// One constant-speed cruise optimization instance.
struct CruiseLeg {
    double dx_m;
    double rho_kg_m3;
    AircraftModel aircraft;
    EnergyState energy_state;
    CostIndexFilter ci;

    void validate() const;
};

enum class Clamp { none, at_v_min, at_v_max };

/// Solver output for one leg.
struct Optimum {
    double v_star_mps;
    double t_f_star_s;        // dx / v_star
    double j_star;            // normalized total cost, J
    bool sufficiency_ok;      // second-derivative test at v_star
    Clamp clamped;
    int solver_iterations;
};

/// t_f = dx / v. Throws std::domain_error for v <= 0.
double flight_time(double dx_m, double v_mps);

/// Normalized total cost of flying the leg at constant speed v:
///   J = tau (CI0 - CI_in)(1 - e^(-dx/(tau v))) + CI_in dx / v + E0 - E_f(v)
/// (infinite tau: J = CI0 dx / v + E0 - E_f(v)).
double total_cost(double v_mps, const CruiseLeg& leg);

/// Analytic dJ/dv.
double cost_gradient(double v_mps, const CruiseLeg& leg);

/// Analytic d2J/dv2 (the sufficiency test quantity).
double cost_second_derivative(double v_mps, const CruiseLeg& leg);

/// Global minimizer of total_cost on [v_min, v_max]: 2048-point scan to
/// bracket, then safeguarded Newton/bisection on cost_gradient to 1e-6 m/s.
/// Throws InfeasibleLeg when no scan speed is flyable, SolverFailure when
/// refinement does not converge within 200 iterations.
Optimum solve_optimal(const CruiseLeg& leg);

/// FMS initialization: solve with tau = infinity at the leg's CI0.
Optimum solve_init(const CruiseLeg& leg);

/// Cost index (W) whose initialization optimum equals v_target, found by
/// monotone bisection on CI; the leg's own CI filter is ignored. Throws
/// FitInfeasible when no nonnegative CI reaches the target.
double fit_ci_for_speed(double v_target_mps, const CruiseLeg& leg_template);

/// Derivative-free check: 1e4-point scan plus golden-section refinement of
/// total_cost. Agrees with solve_optimal to well under 0.01 m/s.
Optimum oracle_minimize(const CruiseLeg& leg);

/// DOC = C_e * J (undoes the cost normalization).
double doc_from_j(double j, double energy_cost_per_j);

}  // namespace econ
