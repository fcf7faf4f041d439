#include "econ/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace econ {

namespace {

constexpr int kScanPoints = 2048;
constexpr int kOracleScanPoints = 10000;
constexpr double kSpeedTol = 1e-6;   // m/s, refinement stop
constexpr int kMaxIterations = 200;

struct ScanResult {
    std::vector<double> speeds;
    std::vector<double> costs;     // NaN where the leg is not flyable
    int best = -1;
};

ScanResult scan_costs(const CruiseLeg& leg, int n) {
    ScanResult scan;
    scan.speeds.resize(n);
    scan.costs.resize(n);
    const double lo = leg.aircraft.airframe.v_min_mps;
    const double hi = leg.aircraft.airframe.v_max_mps;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double v = lo + (hi - lo) * i / (n - 1);
        scan.speeds[i] = v;
        double j = std::numeric_limits<double>::quiet_NaN();
        try {
            j = total_cost(v, leg);
        } catch (const FuelExhaustion&) {
        } catch (const BatteryDepleted&) {
        }
        scan.costs[i] = j;
        if (std::isfinite(j) && j < best_cost) {
            best_cost = j;
            scan.best = i;
        }
    }
    return scan;
}

bool flyable(const CruiseLeg& leg, double v) {
    try {
        total_cost(v, leg);
        return true;
    } catch (const FuelExhaustion&) {
        return false;
    } catch (const BatteryDepleted&) {
        return false;
    }
}

// Bisects between a flyable and an unflyable speed; returns the flyable end.
double feasibility_edge(const CruiseLeg& leg, double v_flyable, double v_unflyable) {
    for (int i = 0; i < 80 && std::abs(v_unflyable - v_flyable) > 1e-9; ++i) {
        const double mid = 0.5 * (v_flyable + v_unflyable);
        (flyable(leg, mid) ? v_flyable : v_unflyable) = mid;
    }
    return v_flyable;
}

// Newton steps from a converged bracket midpoint; drives the gradient residual
// far below what the 1e-6 m/s bracket alone guarantees.
double polish_root(const CruiseLeg& leg, double v, int& iters) {
    for (int i = 0; i < 4; ++i) {
        const double g = cost_gradient(v, leg);
        const double h = cost_second_derivative(v, leg);
        if (!(h > 0.0)) break;
        const double step = g / h;
        if (!std::isfinite(step) || std::abs(step) > kSpeedTol) break;
        v -= step;
        ++iters;
        if (std::abs(step) < 1e-13 * v) break;
    }
    return v;
}

// Safeguarded Newton/bisection for the gradient root in [lo, hi] with
// grad(lo) <= 0 <= grad(hi). Returns the root and the iteration count.
double refine_gradient_root(const CruiseLeg& leg, double lo, double hi, int& iters) {
    double v = 0.5 * (lo + hi);
    for (iters = 0; iters < kMaxIterations; ++iters) {
        const double g = cost_gradient(v, leg);
        if (g > 0.0) {
            hi = v;
        } else {
            lo = v;
        }
        if (hi - lo < kSpeedTol) return polish_root(leg, 0.5 * (lo + hi), iters);
        const double h = cost_second_derivative(v, leg);
        double next = 0.5 * (lo + hi);
        if (h > 0.0) {
            const double newton = v - g / h;
            if (newton > lo && newton < hi) next = newton;
        }
        v = next;
    }
    throw SolverFailure("solve_optimal: gradient refinement did not converge");
}

// Golden-section minimization of total_cost on [lo, hi].
double golden_minimize(const CruiseLeg& leg, double lo, double hi, int& iters) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = total_cost(c, leg);
    double fd = total_cost(d, leg);
    for (iters = 0; iters < kMaxIterations && b - a > kSpeedTol; ++iters) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = total_cost(c, leg);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = total_cost(d, leg);
        }
    }
    return 0.5 * (a + b);
}

Optimum finish(const CruiseLeg& leg, double v, Clamp clamp, int iters) {
    Optimum opt;
    opt.v_star_mps = v;
    opt.t_f_star_s = leg.dx_m / v;
    opt.j_star = total_cost(v, leg);
    opt.sufficiency_ok = cost_second_derivative(v, leg) > 0.0;
    opt.clamped = clamp;
    opt.solver_iterations = iters;
    return opt;
}

Optimum minimize_on_envelope(const CruiseLeg& leg, int scan_points, bool use_gradient) {
    leg.validate();
    const ScanResult scan = scan_costs(leg, scan_points);
    if (scan.best < 0) {
        throw InfeasibleLeg("leg not flyable at any speed in the envelope");
    }
    const int i = scan.best;
    const int n = scan_points;
    const double v_min = leg.aircraft.airframe.v_min_mps;
    const double v_max = leg.aircraft.airframe.v_max_mps;

    // Bracket around the scan minimum, trimmed to the flyable region.
    double lo = scan.speeds[i];
    double hi = scan.speeds[i];
    bool lo_edge_infeasible = false, hi_edge_infeasible = false;
    if (i > 0) {
        if (std::isfinite(scan.costs[i - 1])) {
            lo = scan.speeds[i - 1];
        } else {
            lo_edge_infeasible = true;
        }
    }
    if (i + 1 < n) {
        if (std::isfinite(scan.costs[i + 1])) {
            hi = scan.speeds[i + 1];
        } else {
            hi_edge_infeasible = true;
        }
    }
    if (lo_edge_infeasible) {
        lo = feasibility_edge(leg, scan.speeds[i], scan.speeds[i - 1]);
    }
    if (hi_edge_infeasible) {
        hi = feasibility_edge(leg, scan.speeds[i], scan.speeds[i + 1]);
    }

    int iters = 0;

    if (use_gradient) {
        // Scan minimum on the envelope boundary: clamp when the cost keeps
        // improving toward the outside, refine inward otherwise.
        if (i == 0 && cost_gradient(lo, leg) >= 0.0) {
            return finish(leg, v_min, Clamp::at_v_min, 0);
        }
        if (i == n - 1 && cost_gradient(hi, leg) <= 0.0) {
            return finish(leg, v_max, Clamp::at_v_max, 0);
        }
        const double g_lo = cost_gradient(lo, leg);
        const double g_hi = cost_gradient(hi, leg);
        if (g_lo <= 0.0 && g_hi >= 0.0) {
            const double v = refine_gradient_root(leg, lo, hi, iters);
            return finish(leg, v, Clamp::none, iters);
        }
        // Minimum pinned against a feasibility edge (cost still falling there).
        if (g_hi < 0.0 && hi_edge_infeasible) return finish(leg, hi, Clamp::none, iters);
        if (g_lo > 0.0 && lo_edge_infeasible) return finish(leg, lo, Clamp::none, iters);
        // Fall through to a derivative-free search of the bracket.
    }

    double v = golden_minimize(leg, lo, hi, iters);
    // Snap onto an envelope bound when the search converged against it.
    if (v - v_min < 1e-5 && i == 0) return finish(leg, v_min, Clamp::at_v_min, iters);
    if (v_max - v < 1e-5 && i == n - 1) return finish(leg, v_max, Clamp::at_v_max, iters);
    return finish(leg, v, Clamp::none, iters);
}

}  // namespace

void CruiseLeg::validate() const {
    if (!(dx_m > 0.0)) throw std::domain_error("cruise leg: dx must be > 0");
    if (!(rho_kg_m3 > 0.0)) throw std::domain_error("cruise leg: rho must be > 0");
    aircraft.validate();
    ci.validate();
    if (aircraft.is_electric() == energy_state.is_fuel()) {
        throw std::domain_error("cruise leg: energy state does not match the powertrain");
    }
    if (energy_state.is_fuel()) {
        if (!(energy_state.weight_n() > aircraft.fuel().dry_weight_n())) {
            throw std::domain_error("cruise leg: start weight leaves no fuel");
        }
    } else if (!(energy_state.charge_c() > 0.0)) {
        throw std::domain_error("cruise leg: start charge must be > 0");
    }
}

double flight_time(double dx_m, double v_mps) {
    if (!(v_mps > 0.0)) throw std::domain_error("flight_time: v must be > 0");
    return dx_m / v_mps;
}

double total_cost(double v_mps, const CruiseLeg& leg) {
    if (!(v_mps > 0.0)) throw std::domain_error("total_cost: v must be > 0");
    const double e0 = initial_energy(leg.aircraft, leg.energy_state);
    const double ef = final_energy(v_mps, leg.dx_m, leg.rho_kg_m3, leg.aircraft,
                                   leg.energy_state);
    const CostIndexFilter& ci = leg.ci;
    double ci_term;
    if (ci.tau.is_infinite()) {
        ci_term = ci.ci0_w * leg.dx_m / v_mps;
    } else {
        const double tau = ci.tau.value_s();
        ci_term = tau * (ci.ci0_w - ci.ci_in_w) *
                      (1.0 - std::exp(-leg.dx_m / (tau * v_mps))) +
                  ci.ci_in_w * leg.dx_m / v_mps;
    }
    return ci_term + e0 - ef;
}

double cost_gradient(double v_mps, const CruiseLeg& leg) {
    if (!(v_mps > 0.0)) throw std::domain_error("cost_gradient: v must be > 0");
    const double def = dEf_dv(v_mps, leg.dx_m, leg.rho_kg_m3, leg.aircraft,
                              leg.energy_state);
    const CostIndexFilter& ci = leg.ci;
    const double v2 = v_mps * v_mps;
    if (ci.tau.is_infinite()) {
        return -ci.ci0_w * leg.dx_m / v2 - def;
    }
    const double tau = ci.tau.value_s();
    return -(ci.ci0_w - ci.ci_in_w) * leg.dx_m / v2 *
               std::exp(-leg.dx_m / (tau * v_mps)) -
           ci.ci_in_w * leg.dx_m / v2 - def;
}

double cost_second_derivative(double v_mps, const CruiseLeg& leg) {
    if (!(v_mps > 0.0)) throw std::domain_error("cost_second_derivative: v must be > 0");
    const double d2ef = d2Ef_dv2(v_mps, leg.dx_m, leg.rho_kg_m3, leg.aircraft,
                                 leg.energy_state);
    const CostIndexFilter& ci = leg.ci;
    const double v = v_mps;
    if (ci.tau.is_infinite()) {
        return 2.0 * ci.ci0_w * leg.dx_m / (v * v * v) - d2ef;
    }
    const double tau = ci.tau.value_s();
    return (ci.ci0_w - ci.ci_in_w) * leg.dx_m * std::exp(-leg.dx_m / (tau * v)) /
               (v * v * v * v) * (2.0 * v - leg.dx_m / tau) +
           2.0 * ci.ci_in_w * leg.dx_m / (v * v * v) - d2ef;
}

Optimum solve_optimal(const CruiseLeg& leg) {
    return minimize_on_envelope(leg, kScanPoints, /*use_gradient=*/true);
}

Optimum solve_init(const CruiseLeg& leg) {
    CruiseLeg init_leg = leg;
    init_leg.ci.tau = Tau::infinite();
    init_leg.ci.ci_in_w = leg.ci.ci0_w;
    return solve_optimal(init_leg);
}

double fit_ci_for_speed(double v_target_mps, const CruiseLeg& leg_template) {
    const AirframeParams& af = leg_template.aircraft.airframe;
    if (!(v_target_mps > af.v_min_mps) || !(v_target_mps < af.v_max_mps)) {
        throw std::domain_error("fit_ci_for_speed: target speed outside the envelope");
    }
    CruiseLeg leg = leg_template;
    leg.ci.tau = Tau::infinite();
    const auto speed_at = [&leg](double ci_w) {
        leg.ci.ci0_w = ci_w;
        leg.ci.ci_in_w = ci_w;
        return solve_optimal(leg).v_star_mps;
    };
    const double kFitTol = 1e-4;  // m/s, matches the op contract

    const double v_floor = speed_at(0.0);
    if (v_target_mps <= v_floor) {
        if (v_floor - v_target_mps <= kFitTol) return 0.0;
        throw FitInfeasible("fit_ci_for_speed: no nonnegative cost index reaches " +
                            std::to_string(v_target_mps * 3.6) + " km/h; CI = 0 already gives " +
                            std::to_string(v_floor * 3.6) + " km/h");
    }

    double ci_lo = 0.0;
    double ci_hi = 1.0;
    double v_hi = speed_at(ci_hi);
    int stagnant = 0;
    while (v_hi < v_target_mps) {
        ci_lo = ci_hi;
        ci_hi *= 4.0;
        const double v_next = speed_at(ci_hi);
        // No growth under a quadrupled CI means the speed has hit the leg's
        // energy-feasibility ceiling, below the requested target.
        stagnant = (v_next - v_hi < 1e-9) ? stagnant + 1 : 0;
        v_hi = v_next;
        if (stagnant >= 3) {
            throw FitInfeasible("fit_ci_for_speed: target " +
                                std::to_string(v_target_mps * 3.6) +
                                " km/h is above the fastest speed the leg can fly (" +
                                std::to_string(v_hi * 3.6) + " km/h under its energy budget)");
        }
        if (ci_hi > 1e18) throw SolverFailure("fit_ci_for_speed: bracketing failed");
    }
    double ci = ci_hi;
    for (int i = 0; i < kMaxIterations; ++i) {
        ci = 0.5 * (ci_lo + ci_hi);
        const double v = speed_at(ci);
        if (std::abs(v - v_target_mps) < 0.5 * kFitTol) return ci;
        (v < v_target_mps ? ci_lo : ci_hi) = ci;
        if (ci_hi - ci_lo < 1e-12 * ci_hi) break;
    }
    const double v = speed_at(ci);
    if (std::abs(v - v_target_mps) <= kFitTol) return ci;
    throw SolverFailure("fit_ci_for_speed: bisection did not reach the target speed");
}

Optimum oracle_minimize(const CruiseLeg& leg) {
    return minimize_on_envelope(leg, kOracleScanPoints, /*use_gradient=*/false);
}

double doc_from_j(double j, double energy_cost_per_j) {
    if (!(energy_cost_per_j > 0.0)) {
        throw std::domain_error("doc_from_j: energy cost rate must be > 0");
    }
    return energy_cost_per_j * j;
}

}  // namespace econ
