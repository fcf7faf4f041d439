#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "econ/optimizer.hpp"
#include "oracles.hpp"

using namespace econ;

namespace {

const double kWe = 472.0 * 9.81;

// Closed-form electric initialization CI for a target speed (inverts the
// stationarity condition; independent of the solver under test).
double electric_ci_closed_form(double v, double rho = 1.112) {
    const double rs = rho * 11.37;
    return (1.0 / 0.7) * (rs * 0.035 * v * v * v - 4.0 * 0.009 * kWe * kWe / (rs * v));
}

}  // namespace

TEST_CASE("flight_time") {
    CHECK(flight_time(160e3, 320.0 / 3.6) == doctest::Approx(1800.0).epsilon(1e-12));
    CHECK(std::abs(flight_time(160e3, 84.21 / 3.6) - 6840.0) < 1.0);
    CHECK(std::abs(flight_time(60e3, 90.42 / 3.6) - 2389.0) < 1.0);
    CHECK_THROWS_AS(flight_time(1000.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(flight_time(1000.0, -1.0), std::domain_error);
}

TEST_CASE("total_cost splits into time and energy terms") {
    const double ci = 4362.0;
    CruiseLeg leg = testkit::electric_leg(160e3, ci, ci, Tau::seconds(68.4));
    const double v = 23.392;

    const double time_term = ci * 160e3 / v;
    const double energy_term = 160e3 / 0.7 * drag(v, kWe, 1.112, leg.aircraft.airframe);
    CHECK(total_cost(v, leg) == doctest::Approx(time_term + energy_term).epsilon(1e-12));
    CHECK(time_term == doctest::Approx(29.8e6).epsilon(2e-3));
    CHECK(energy_term == doctest::Approx(40.4e6).epsilon(2e-3));
    CHECK(total_cost(v, leg) == doctest::Approx(70.3e6).epsilon(2e-3));

    SUBCASE("CI_in = CI0 reduces exactly to the constant-CI cost") {
        CruiseLeg roomy = testkit::electric_leg(160e3, ci, ci, Tau::seconds(68.4),
                                                1.112, 5e6);
        CruiseLeg constant = roomy;
        constant.ci = CostIndexFilter{ci, ci, Tau::infinite()};
        for (double vv : {16.0, 23.392, 30.0, 40.0}) {
            CHECK(total_cost(vv, roomy) == total_cost(vv, constant));
            CHECK(cost_gradient(vv, roomy) == cost_gradient(vv, constant));
        }
    }
}

TEST_CASE("cost_gradient matches finite differences for both aircraft") {
    SUBCASE("electric") {
        CruiseLeg leg = testkit::electric_leg(160e3, 4363.0, 2.0 * 4363.0,
                                              Tau::seconds(68.4), 1.112, 5e6);
        for (int i = 0; i <= 50; ++i) {
            const double v = 14.5 + (44.0 - 14.5) * i / 50;
            const double h = v * 5e-6;
            const double analytic = cost_gradient(v, leg);
            const double fd = testkit::central_diff(
                [&](double x) { return total_cost(x, leg); }, v, h);
            const double scale = 0.01 * (leg.ci.ci_in_w * leg.dx_m / (v * v) +
                                         std::abs(dEf_dv(v, leg.dx_m, leg.rho_kg_m3,
                                                         leg.aircraft, leg.energy_state)));
            CHECK(testkit::rel_err(analytic, fd, scale) < 1e-6);
        }
    }
    SUBCASE("fuel") {
        CruiseLeg leg = testkit::fuel_leg(160e3, 2.57e6, 2.0 * 2.57e6, Tau::seconds(20.4));
        for (int i = 0; i <= 50; ++i) {
            const double v = 46.0 + (240.0 - 46.0) * i / 50;
            const double h = v * 5e-6;
            const double analytic = cost_gradient(v, leg);
            const double fd = testkit::central_diff(
                [&](double x) { return total_cost(x, leg); }, v, h);
            const double scale = 0.01 * (leg.ci.ci_in_w * leg.dx_m / (v * v) +
                                         std::abs(dEf_dv(v, leg.dx_m, leg.rho_kg_m3,
                                                         leg.aircraft, leg.energy_state)));
            CHECK(testkit::rel_err(analytic, fd, scale) < 1e-6);
        }
    }
}

TEST_CASE("cost_second_derivative matches finite differences of the gradient") {
    CruiseLeg elec = testkit::electric_leg(160e3, 4363.0, 8726.0, Tau::seconds(68.4),
                                           1.112, 5e6);
    CruiseLeg fuel = testkit::fuel_leg(160e3, 2.57e6, 5.14e6, Tau::seconds(20.4));
    for (int i = 0; i <= 50; ++i) {
        {
            const double v = 14.5 + (44.0 - 14.5) * i / 50;
            const double analytic = cost_second_derivative(v, elec);
            const double fd = testkit::central_diff(
                [&](double x) { return cost_gradient(x, elec); }, v, v * 5e-6);
            const double scale = 0.01 * (2.0 * elec.ci.ci_in_w * elec.dx_m / (v * v * v));
            CHECK(testkit::rel_err(analytic, fd, scale) < 1e-5);
        }
        {
            const double v = 46.0 + (240.0 - 46.0) * i / 50;
            const double analytic = cost_second_derivative(v, fuel);
            const double fd = testkit::central_diff(
                [&](double x) { return cost_gradient(x, fuel); }, v, v * 5e-6);
            const double scale = 0.01 * (2.0 * fuel.ci.ci_in_w * fuel.dx_m / (v * v * v));
            CHECK(testkit::rel_err(analytic, fd, scale) < 1e-5);
        }
    }

    SUBCASE("electric with CI_in = CI0 is positive for all v (energy term concave)") {
        CruiseLeg leg = testkit::electric_leg(160e3, 4363.0, 4363.0, Tau::infinite());
        for (int i = 0; i <= 30; ++i) {
            const double v = 14.5 + (44.0 - 14.5) * i / 30;
            CHECK(cost_second_derivative(v, leg) > 0.0);
        }
    }
}

TEST_CASE("solve_init reproduces the reference electric initialization") {
    CruiseLeg leg = testkit::electric_leg(160e3, 4362.0, 4362.0, Tau::infinite());
    const Optimum opt = solve_init(leg);
    CHECK(opt.v_star_mps * 3.6 == doctest::Approx(84.21).epsilon(0.3 / 84.21));
    CHECK(opt.clamped == Clamp::none);
    CHECK(opt.sufficiency_ok);
    CHECK(opt.t_f_star_s * opt.v_star_mps == doctest::Approx(160e3).epsilon(1e-12));

    SUBCASE("independent of distance for the electric powertrain") {
        CruiseLeg other = testkit::electric_leg(60e3, 4362.0, 4362.0, Tau::infinite());
        CHECK(std::abs(solve_init(other).v_star_mps - opt.v_star_mps) < 2e-6);
    }
    SUBCASE("large finite tau agrees with the infinite-tau path") {
        CruiseLeg finite = testkit::electric_leg(160e3, 4362.0, 4362.0, Tau::seconds(1e9));
        CHECK(std::abs(solve_optimal(finite).v_star_mps - opt.v_star_mps) < 1e-6);
    }
}

TEST_CASE("solve_optimal reproduces the reference step-change optima") {
    CruiseLeg tmpl = testkit::electric_leg(160e3, 0.0, 0.0, Tau::infinite());
    const double ci0 = fit_ci_for_speed(84.21 / 3.6, tmpl);
    const double tf0 = flight_time(160e3, 84.21 / 3.6);

    CruiseLeg first = testkit::electric_leg(120e3, ci0, 2.0 * ci0,
                                            Tau::seconds(0.01 * tf0));
    const Optimum v1 = solve_optimal(first);
    CHECK(v1.v_star_mps * 3.6 == doctest::Approx(96.02).epsilon(0.5 / 96.02));
    CHECK(v1.sufficiency_ok);

    CruiseLeg second = testkit::electric_leg(60e3, ci0, 1.5 * ci0,
                                             Tau::seconds(0.01 * tf0));
    const Optimum v2 = solve_optimal(second);
    CHECK(v2.v_star_mps * 3.6 == doctest::Approx(90.42).epsilon(0.5 / 90.42));
    CHECK(v2.sufficiency_ok);
}

TEST_CASE("zero cost index recovers the minimum-drag speed (electric)") {
    CruiseLeg leg = testkit::electric_leg(160e3, 0.0, 0.0, Tau::infinite());
    const Optimum opt = solve_optimal(leg);
    const double vmd = min_drag_speed(kWe, 1.112, leg.aircraft.airframe);
    CHECK(std::abs(opt.v_star_mps - vmd) < 1e-5);
    CHECK(opt.clamped == Clamp::none);

    SUBCASE("clamps at v_min when the envelope floor sits above v_md") {
        CruiseLeg clamped_leg = leg;
        clamped_leg.aircraft.airframe.v_min_mps = vmd + 3.0;
        const Optimum clamped = solve_optimal(clamped_leg);
        CHECK(clamped.clamped == Clamp::at_v_min);
        CHECK(clamped.v_star_mps == clamped_leg.aircraft.airframe.v_min_mps);
    }
}

TEST_CASE("huge cost index clamps at v_max") {
    CruiseLeg leg = testkit::electric_leg(160e3, 5e6, 5e6, Tau::infinite(), 1.112, 5e6);
    const Optimum opt = solve_optimal(leg);
    CHECK(opt.clamped == Clamp::at_v_max);
    CHECK(opt.v_star_mps == leg.aircraft.airframe.v_max_mps);
}

TEST_CASE("exponential decay: step-change optimum equals the CI_in initialization") {
    CruiseLeg tmpl = testkit::electric_leg(160e3, 0.0, 0.0, Tau::infinite());
    const double ci0 = fit_ci_for_speed(84.21 / 3.6, tmpl);
    const double tf0 = flight_time(160e3, 84.21 / 3.6);

    CruiseLeg step = testkit::electric_leg(120e3, ci0, 2.0 * ci0, Tau::seconds(0.01 * tf0));
    CruiseLeg target = testkit::electric_leg(120e3, 2.0 * ci0, 2.0 * ci0, Tau::infinite());
    CHECK(std::abs(solve_optimal(step).v_star_mps - solve_init(target).v_star_mps) < 0.01);

    // the discarded exponential really is negligible at the optimum
    const Optimum opt = solve_optimal(step);
    const double decay = std::exp(-step.dx_m / (0.01 * tf0 * opt.v_star_mps));
    CHECK(decay < 1e-20);
}

TEST_CASE("fit_ci_for_speed") {
    CruiseLeg tmpl = testkit::electric_leg(160e3, 0.0, 0.0, Tau::infinite());

    SUBCASE("reference electric fit") {
        const double ci = fit_ci_for_speed(84.21 / 3.6, tmpl);
        CHECK(std::abs(ci - electric_ci_closed_form(84.21 / 3.6)) < 1.0);
        CHECK(ci / 1000.0 == doctest::Approx(4.36).epsilon(2e-3));
    }
    SUBCASE("target at v_md fits CI = 0") {
        const double vmd = min_drag_speed(kWe, 1.112, tmpl.aircraft.airframe);
        CHECK(fit_ci_for_speed(vmd, tmpl) == 0.0);
    }
    SUBCASE("target below v_md is infeasible") {
        const double vmd = min_drag_speed(kWe, 1.112, tmpl.aircraft.airframe);
        CHECK_THROWS_AS(fit_ci_for_speed(vmd - 0.5, tmpl), FitInfeasible);
    }
    SUBCASE("target above the leg's battery-feasibility ceiling is infeasible") {
        // with the stock 3.6e5 C pack, 160 km cannot be flown faster than ~28 m/s
        CHECK_THROWS_AS(fit_ci_for_speed(35.0, tmpl), FitInfeasible);
    }
    SUBCASE("target outside the envelope is a domain error") {
        CHECK_THROWS_AS(fit_ci_for_speed(tmpl.aircraft.airframe.v_max_mps + 1.0, tmpl),
                        std::domain_error);
    }
    SUBCASE("round trip: solve_init(fit(v)) returns v") {
        testkit::LegSampler sampler(53);
        CruiseLeg roomy = testkit::electric_leg(160e3, 0.0, 0.0, Tau::infinite(), 1.112, 5e6);
        for (int i = 0; i < 8; ++i) {
            const double target = sampler.uniform(21.0, 43.0);
            const double ci = fit_ci_for_speed(target, roomy);
            CruiseLeg leg = roomy;
            leg.ci = CostIndexFilter{ci, ci, Tau::infinite()};
            CHECK(std::abs(solve_init(leg).v_star_mps - target) < 1e-4);
        }
        CruiseLeg fuel_tmpl = testkit::fuel_leg(160e3, 0.0, 0.0, Tau::infinite());
        for (int i = 0; i < 5; ++i) {
            const double target = sampler.uniform(150.0, 240.0);
            const double ci = fit_ci_for_speed(target, fuel_tmpl);
            CruiseLeg leg = fuel_tmpl;
            leg.ci = CostIndexFilter{ci, ci, Tau::infinite()};
            CHECK(std::abs(solve_init(leg).v_star_mps - target) < 1e-4);
        }
    }
}

TEST_CASE("oracle agreement on structured cases") {
    SUBCASE("convex electric leg") {
        CruiseLeg leg = testkit::electric_leg(160e3, 4363.0, 4363.0, Tau::infinite());
        CHECK(std::abs(oracle_minimize(leg).v_star_mps - solve_optimal(leg).v_star_mps) <
              0.01);
    }
    SUBCASE("degenerate zero-CI leg lands on v_md in both") {
        CruiseLeg leg = testkit::electric_leg(160e3, 0.0, 0.0, Tau::infinite());
        const double vmd = min_drag_speed(kWe, 1.112, leg.aircraft.airframe);
        CHECK(std::abs(oracle_minimize(leg).v_star_mps - vmd) < 0.01);
        CHECK(std::abs(solve_optimal(leg).v_star_mps - vmd) < 0.01);
    }
    SUBCASE("random legs, both powertrains") {
        testkit::LegSampler sampler(59);
        for (int i = 0; i < 30; ++i) {
            const CruiseLeg leg = (i % 2 == 0) ? sampler.fuel() : sampler.electric();
            try {
                const Optimum a = solve_optimal(leg);
                const Optimum b = oracle_minimize(leg);
                CHECK(std::abs(a.v_star_mps - b.v_star_mps) < 0.01);
            } catch (const InfeasibleLeg&) {
                CHECK_THROWS_AS(oracle_minimize(leg), InfeasibleLeg);
            }
        }
    }
}

TEST_CASE("optimality certificate at interior optima") {
    SUBCASE("electric") {
        CruiseLeg leg = testkit::electric_leg(120e3, 4363.0, 8726.0, Tau::seconds(68.4));
        const Optimum opt = solve_optimal(leg);
        REQUIRE(opt.clamped == Clamp::none);
        const double certificate_scale = leg.ci.ci_in_w * leg.dx_m /
                                         (opt.v_star_mps * opt.v_star_mps);
        CHECK(std::abs(cost_gradient(opt.v_star_mps, leg)) < 1e-6 * certificate_scale);
        CHECK(cost_second_derivative(opt.v_star_mps, leg) > 0.0);
    }
    SUBCASE("fuel") {
        CruiseLeg leg = testkit::fuel_leg(160e3, 2.57e6, 5.14e6, Tau::seconds(20.4));
        const Optimum opt = solve_optimal(leg);
        REQUIRE(opt.clamped == Clamp::none);
        const double certificate_scale = leg.ci.ci_in_w * leg.dx_m /
                                         (opt.v_star_mps * opt.v_star_mps);
        CHECK(std::abs(cost_gradient(opt.v_star_mps, leg)) < 1e-6 * certificate_scale);
        CHECK(cost_second_derivative(opt.v_star_mps, leg) > 0.0);
        // the consumed-energy curve is convex at the optimum, so the final
        // energy's own second derivative is negative there
        CHECK(d2Ef_dv2_fuel(opt.v_star_mps, leg.dx_m, 98100.0, leg.rho_kg_m3,
                            leg.aircraft.airframe, leg.aircraft.fuel()) < 0.0);
    }
    SUBCASE("randomized legs") {
        testkit::LegSampler sampler(73);
        for (int i = 0; i < 20; ++i) {
            const CruiseLeg leg = (i % 2 == 0) ? sampler.fuel(false) : sampler.electric(false);
            const Optimum opt = solve_optimal(leg);
            if (opt.clamped != Clamp::none) continue;
            const double scale = leg.ci.ci_in_w * leg.dx_m /
                                 (opt.v_star_mps * opt.v_star_mps);
            CHECK(std::abs(cost_gradient(opt.v_star_mps, leg)) < 1e-6 * scale);
            CHECK(opt.sufficiency_ok);
        }
    }
}

TEST_CASE("optimal speed is nondecreasing in the cost index") {
    SUBCASE("electric") {
        double prev = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double ci = 500.0 + 6000.0 * i;
            CruiseLeg leg = testkit::electric_leg(160e3, ci, ci, Tau::infinite(), 1.112, 5e6);
            const double v = solve_optimal(leg).v_star_mps;
            CHECK(v >= prev - 1e-9);
            prev = v;
        }
    }
    SUBCASE("fuel") {
        double prev = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double ci = 2e5 + 2e6 * i;
            CruiseLeg leg = testkit::fuel_leg(160e3, ci, ci, Tau::infinite());
            const double v = solve_optimal(leg).v_star_mps;
            CHECK(v >= prev - 1e-9);
            prev = v;
        }
    }
}

TEST_CASE("doc_from_j") {
    CHECK(doc_from_j(0.0, 1e-8) == 0.0);
    CHECK(doc_from_j(42.5, 1.0) == 42.5);
    CHECK(doc_from_j(70.3e6, 2e-8) == doctest::Approx(1.406).epsilon(1e-12));
    CHECK_THROWS_AS(doc_from_j(1.0, 0.0), std::domain_error);
}

TEST_CASE("infeasible and invalid legs") {
    SUBCASE("battery too small at every speed") {
        CruiseLeg leg = testkit::electric_leg(160e3, 4363.0, 4363.0, Tau::infinite(),
                                              1.112, 10.0);
        CHECK_THROWS_AS(solve_optimal(leg), InfeasibleLeg);
    }
    SUBCASE("validation failures") {
        CruiseLeg leg = testkit::electric_leg(160e3, 4363.0, 4363.0, Tau::infinite());
        leg.dx_m = 0.0;
        CHECK_THROWS_AS(solve_optimal(leg), std::domain_error);

        CruiseLeg wrong_state = testkit::electric_leg(160e3, 1.0, 1.0, Tau::infinite());
        wrong_state.energy_state = EnergyState::fuel_weight(98100.0);
        CHECK_THROWS_AS(wrong_state.validate(), std::domain_error);
    }
}
