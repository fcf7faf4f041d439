#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "econ/atmosphere.hpp"
#include "econ/config.hpp"
#include "econ/csv.hpp"
#include "econ/optimizer.hpp"
#include "econ/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitInput = 3;

const char* kSeedDocs = R"(econ_cruise bundled reference recipe
====================================

Reference data ships under data/:
  data/gulfstream_g4.json            business-jet fuel model
  data/yuneec_e430.json              light electric two-seater model
  data/paper_electric.scenario.json  160 km electric flight, two ATC cost-index steps
  data/paper_fuel.scenario.json      fuel counterpart (see README: infeasible by design)

Initialization speed and schedule (electric):
  econ_cruise init --aircraft data/yuneec_e430.json --xf-km 160 --rho 1.112 \
      --fit-speed-kmh 84.21

Re-optimization after a doubled cost index, 120 km to go:
  econ_cruise optimize --aircraft data/yuneec_e430.json --xf-km 120 --rho 1.112 \
      --fit-speed-kmh 84.21 --ci-in-factor 2

Full multi-segment simulation with CSV output:
  econ_cruise simulate --scenario data/paper_electric.scenario.json --out out/

Cost sweep showing how the filter time constant moves the optimum:
  econ_cruise sweep --aircraft data/yuneec_e430.json --xf-km 160 --rho 1.112 \
      --fit-speed-kmh 84.21 --ci-in-factor 2 \
      --tau-list frac:0.001,frac:0.01,frac:0.1,frac:1 \
      --v-from-kmh 72 --v-to-kmh 140 --out out/
)";

struct RouteFlags {
    double x0_km = 0.0;
    double xf_km = 0.0;
    double altitude_m = -1.0;
    double rho = -1.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--x0-km", x0_km, "Start position (km)")->capture_default_str();
        cmd->add_option("--xf-km", xf_km, "Destination position (km)")->required();
        cmd->add_option("--altitude-m", altitude_m, "Cruise altitude (m), density from ISA");
        cmd->add_option("--rho", rho, "Air density override (kg/m3)");
    }

    double resolve_rho() const {
        if ((altitude_m >= 0.0) == (rho > 0.0)) {
            throw econ::InputError("route: give exactly one of --altitude-m or --rho");
        }
        return rho > 0.0 ? rho : econ::isa_density(altitude_m);
    }

    double dx_m() const {
        if (!(xf_km > x0_km)) throw econ::InputError("route: --xf-km must exceed --x0-km");
        return (xf_km - x0_km) * 1000.0;
    }
};

struct CiFlags {
    double ci_kjs = -1.0;
    double fit_speed_kmh = -1.0;
    double ci_frac = -1.0;
    double ci_max_kjs = -1.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--ci-kjs", ci_kjs, "Cost index (kJ/s)");
        cmd->add_option("--fit-speed-kmh", fit_speed_kmh,
                        "Back-solve the cost index from this initialization speed (km/h)");
        cmd->add_option("--ci-frac", ci_frac, "Cost index as a fraction of --ci-max-kjs");
        cmd->add_option("--ci-max-kjs", ci_max_kjs, "Maximum cost index (kJ/s)");
    }

    double resolve_w(const econ::CruiseLeg& init_template) const {
        const int given = (ci_kjs >= 0.0) + (fit_speed_kmh > 0.0) + (ci_frac >= 0.0);
        if (given != 1) {
            throw econ::InputError(
                "cost index: give exactly one of --ci-kjs, --fit-speed-kmh, --ci-frac");
        }
        if (ci_kjs >= 0.0) return ci_kjs * 1000.0;
        if (ci_frac >= 0.0) {
            if (ci_max_kjs <= 0.0) {
                throw econ::InputError("cost index: --ci-frac needs --ci-max-kjs");
            }
            return ci_frac * ci_max_kjs * 1000.0;
        }
        return econ::fit_ci_for_speed(fit_speed_kmh / 3.6, init_template);
    }
};

econ::Tau parse_tau(const std::string& text, double tf0_s) {
    if (text.rfind("frac:", 0) == 0) {
        const double frac = std::stod(text.substr(5));
        return econ::Tau::seconds(frac * tf0_s);
    }
    return econ::Tau::seconds(std::stod(text));
}

econ::CruiseLeg make_leg(const econ::AircraftModel& aircraft, double dx_m, double rho,
                         const econ::CostIndexFilter& ci) {
    return econ::CruiseLeg{dx_m, rho, aircraft, aircraft.initial_energy_state(), ci};
}

void print_optimum(const char* label, const econ::Optimum& opt, double dx_m) {
    std::printf("%s = %.2f km/h\n", label, opt.v_star_mps * 3.6);
    std::printf("t_f* = %s (%.1f s) over %.1f km\n", econ::format_hms(opt.t_f_star_s).c_str(),
                opt.t_f_star_s, dx_m / 1000.0);
    std::printf("J* = %.3f MJ\n", opt.j_star / 1e6);
    if (opt.clamped == econ::Clamp::at_v_min) {
        std::printf("note: clamped at v_min\n");
    } else if (opt.clamped == econ::Clamp::at_v_max) {
        std::printf("note: clamped at v_max\n");
    }
}

std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw econ::InputError("cannot write " + (dir / name).string());
    return out;
}

int cmd_init(const std::string& aircraft_file, const RouteFlags& route, const CiFlags& ci,
             const std::string& out_dir) {
    const econ::AircraftModel aircraft = econ::load_aircraft(aircraft_file);
    const double rho = route.resolve_rho();
    const double dx = route.dx_m();
    econ::CruiseLeg leg = make_leg(aircraft, dx, rho,
                                   econ::CostIndexFilter{0.0, 0.0, econ::Tau::infinite()});
    const double ci0 = ci.resolve_w(leg);
    leg.ci = econ::CostIndexFilter{ci0, ci0, econ::Tau::infinite()};
    const econ::Optimum opt = econ::solve_init(leg);
    std::printf("aircraft: %s   rho = %.4f kg/m3   CI0 = %.4f kJ/s\n",
                aircraft.name.c_str(), rho, ci0 / 1000.0);
    print_optimum("v0*", opt, dx);
    if (!out_dir.empty()) {
        auto out = open_out(out_dir, "init.csv");
        out << "v0_kmh,tf0_s,j_MJ,ci0_kJ_per_s\n";
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.4f,%.3f,%.6f,%.6f\n", opt.v_star_mps * 3.6,
                      opt.t_f_star_s, opt.j_star / 1e6, ci0 / 1000.0);
        out << buf;
    }
    return kExitOk;
}

int cmd_optimize(const std::string& aircraft_file, const RouteFlags& route, const CiFlags& ci,
                 double ci_in_kjs, double ci_in_factor, const std::string& tau_text) {
    const econ::AircraftModel aircraft = econ::load_aircraft(aircraft_file);
    const double rho = route.resolve_rho();
    const double dx = route.dx_m();
    econ::CruiseLeg leg = make_leg(aircraft, dx, rho,
                                   econ::CostIndexFilter{0.0, 0.0, econ::Tau::infinite()});
    const double ci0 = ci.resolve_w(leg);

    if ((ci_in_kjs >= 0.0) == (ci_in_factor > 0.0)) {
        throw econ::InputError("give exactly one of --ci-in-kjs or --ci-in-factor");
    }
    const double ci_in = ci_in_kjs >= 0.0 ? ci_in_kjs * 1000.0 : ci_in_factor * ci0;

    leg.ci = econ::CostIndexFilter{ci0, ci0, econ::Tau::infinite()};
    const econ::Optimum init = econ::solve_init(leg);

    econ::Tau tau = econ::Tau::infinite();
    if (tau_text.empty()) {
        tau = econ::Tau::seconds(0.01 * init.t_f_star_s);
        std::printf("tau defaulted to 0.01*t_f0* = %.3f s\n", tau.value_s());
    } else {
        tau = parse_tau(tau_text, init.t_f_star_s);
    }

    leg.ci = econ::CostIndexFilter{ci0, ci_in, tau};
    const econ::Optimum opt = econ::solve_optimal(leg);
    std::printf("aircraft: %s   rho = %.4f kg/m3\n", aircraft.name.c_str(), rho);
    std::printf("CI0 = %.4f kJ/s   CI_in = %.4f kJ/s   tau = %.3f s\n", ci0 / 1000.0,
                ci_in / 1000.0, tau.value_s());
    print_optimum("v*", opt, dx);
    std::printf("sufficiency_ok: %s\n", opt.sufficiency_ok ? "yes" : "no");
    return kExitOk;
}

int cmd_simulate(const std::string& scenario_file, const std::string& out_dir, bool plot) {
    const econ::Scenario scenario = econ::load_scenario(scenario_file);
    const econ::SimulationResult result = econ::simulate(scenario);

    {
        auto out = open_out(out_dir, "trajectory.csv");
        econ::write_trajectory_csv(out, result);
    }
    {
        auto out = open_out(out_dir, "summary.csv");
        econ::write_summary_csv(out, result.summary);
    }
    if (plot) {
        auto out = open_out(out_dir, "speed_trace.csv");
        econ::write_speed_trace_csv(out, econ::render_speed_trace(result, true));
    }

    std::printf("scheduled t_f0* = %s\n", econ::format_hms(result.summary.t_f0_star_s).c_str());
    for (const econ::SegmentSummary& seg : result.summary.segments) {
        std::printf("segment %d: v* = %.2f km/h, duration = %s, CI = %.4f kJ/s, "
                    "energy = %.3f MJ\n",
                    seg.index, seg.v_star_mps * 3.6, econ::format_hms(seg.duration_s).c_str(),
                    seg.ci_in_w / 1000.0, seg.energy_used_j / 1e6);
    }
    std::printf("dt_arrival = %s (%.1f s)\n", econ::format_hms(result.summary.dt_arrival_s).c_str(),
                result.summary.dt_arrival_s);
    std::printf("total energy = %.3f MJ\n", result.summary.total_energy_used_j / 1e6);
    std::printf("wrote %s and %s\n", (std::filesystem::path(out_dir) / "trajectory.csv").c_str(),
                (std::filesystem::path(out_dir) / "summary.csv").c_str());
    return kExitOk;
}

int cmd_sweep(const std::string& aircraft_file, const RouteFlags& route, const CiFlags& ci,
              double ci_in_kjs, double ci_in_factor, const std::string& tau_list,
              double v_from_kmh, double v_to_kmh, int v_steps, const std::string& out_dir) {
    const econ::AircraftModel aircraft = econ::load_aircraft(aircraft_file);
    const double rho = route.resolve_rho();
    const double dx = route.dx_m();
    econ::CruiseLeg leg = make_leg(aircraft, dx, rho,
                                   econ::CostIndexFilter{0.0, 0.0, econ::Tau::infinite()});
    const double ci0 = ci.resolve_w(leg);
    if ((ci_in_kjs >= 0.0) == (ci_in_factor > 0.0)) {
        throw econ::InputError("give exactly one of --ci-in-kjs or --ci-in-factor");
    }
    const double ci_in = ci_in_kjs >= 0.0 ? ci_in_kjs * 1000.0 : ci_in_factor * ci0;

    leg.ci = econ::CostIndexFilter{ci0, ci0, econ::Tau::infinite()};
    const double tf0 = econ::solve_init(leg).t_f_star_s;

    const double v_lo = v_from_kmh / 3.6;
    const double v_hi = v_to_kmh / 3.6;
    if (!(v_lo > 0.0) || !(v_hi > v_lo)) {
        throw econ::InputError("sweep: need 0 < --v-from-kmh < --v-to-kmh");
    }
    if (v_lo < aircraft.airframe.v_min_mps || v_hi > aircraft.airframe.v_max_mps) {
        throw econ::InputError("sweep: speed range outside the aircraft envelope");
    }
    if (v_steps < 2) throw econ::InputError("sweep: --v-steps must be at least 2");
    std::vector<double> speeds(v_steps);
    for (int i = 0; i < v_steps; ++i) {
        speeds[i] = v_lo + (v_hi - v_lo) * i / (v_steps - 1);
    }

    std::vector<econ::SweepColumn> columns;
    std::stringstream taus(tau_list);
    std::string item;
    while (std::getline(taus, item, ',')) {
        const econ::Tau tau = parse_tau(item, tf0);
        econ::CruiseLeg sweep_leg = leg;
        sweep_leg.ci = econ::CostIndexFilter{ci0, ci_in, tau};
        econ::SweepColumn col;
        col.label = "J_MJ_tau_" + item;
        for (double v : speeds) {
            double j = std::numeric_limits<double>::quiet_NaN();
            try {
                j = econ::total_cost(v, sweep_leg);
            } catch (const econ::FuelExhaustion&) {
            } catch (const econ::BatteryDepleted&) {
            }
            col.j_values.push_back(j);
        }
        columns.push_back(std::move(col));
    }
    {
        econ::CruiseLeg const_leg = leg;  // constant CI0 reference
        econ::SweepColumn col;
        col.label = "J_MJ_const_ci0";
        for (double v : speeds) {
            double j = std::numeric_limits<double>::quiet_NaN();
            try {
                j = econ::total_cost(v, const_leg);
            } catch (const econ::FuelExhaustion&) {
            } catch (const econ::BatteryDepleted&) {
            }
            col.j_values.push_back(j);
        }
        columns.push_back(std::move(col));
    }

    auto out = open_out(out_dir, "sweep.csv");
    econ::write_sweep_csv(out, speeds, columns);
    std::printf("wrote %s\n", (std::filesystem::path(out_dir) / "sweep.csv").c_str());
    return kExitOk;
}

int cmd_fit_ci(const std::string& aircraft_file, const RouteFlags& route, double target_kmh) {
    const econ::AircraftModel aircraft = econ::load_aircraft(aircraft_file);
    const double rho = route.resolve_rho();
    const double dx = route.dx_m();
    econ::CruiseLeg leg = make_leg(aircraft, dx, rho,
                                   econ::CostIndexFilter{0.0, 0.0, econ::Tau::infinite()});
    const double ci = econ::fit_ci_for_speed(target_kmh / 3.6, leg);
    leg.ci = econ::CostIndexFilter{ci, ci, econ::Tau::infinite()};
    const econ::Optimum check = econ::solve_init(leg);
    std::printf("CI = %.6f kJ/s\n", ci / 1000.0);
    std::printf("check: init speed at that CI = %.4f km/h (target %.4f km/h)\n",
                check.v_star_mps * 3.6, target_kmh);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* seed = std::getenv("ECON_CRUISE_SEED_DOCS"); seed && seed[0] == '1') {
        std::fputs(kSeedDocs, stdout);
        return kExitOk;
    }

    CLI::App app{"DOC-minimizing cruise speed calculator for fuel and electric aircraft"};
    app.require_subcommand(1);

    std::string aircraft_file, scenario_file, out_dir, tau_text, tau_list;
    RouteFlags route;
    CiFlags ci;
    double ci_in_kjs = -1.0, ci_in_factor = -1.0;
    double target_kmh = 0.0, v_from_kmh = 0.0, v_to_kmh = 0.0;
    int v_steps = 200;
    bool plot = false;

    CLI::App* init = app.add_subcommand("init", "Initialization optimum at a fixed cost index");
    init->add_option("--aircraft", aircraft_file, "Aircraft config file")->required();
    route.add_to(init);
    ci.add_to(init);
    init->add_option("--out", out_dir, "Directory for init.csv");

    CLI::App* optimize = app.add_subcommand("optimize", "Optimum after a cost-index step change");
    optimize->add_option("--aircraft", aircraft_file, "Aircraft config file")->required();
    route.add_to(optimize);
    ci.add_to(optimize);
    optimize->add_option("--ci-in-kjs", ci_in_kjs, "Commanded cost index (kJ/s)");
    optimize->add_option("--ci-in-factor", ci_in_factor, "Commanded cost index as multiple of CI0");
    optimize->add_option("--tau", tau_text, "Filter time constant: seconds or frac:X of t_f0*");

    CLI::App* simulate = app.add_subcommand("simulate", "Run a multi-segment scenario file");
    simulate->add_option("--scenario", scenario_file, "Scenario file")->required();
    simulate->add_option("--out", out_dir, "Output directory")->required();
    simulate->add_flag("--plot", plot, "Also write speed_trace.csv (smoothed display trace)");

    CLI::App* sweep = app.add_subcommand("sweep", "Tabulate J(v) for several time constants");
    sweep->add_option("--aircraft", aircraft_file, "Aircraft config file")->required();
    route.add_to(sweep);
    ci.add_to(sweep);
    sweep->add_option("--ci-in-kjs", ci_in_kjs, "Commanded cost index (kJ/s)");
    sweep->add_option("--ci-in-factor", ci_in_factor, "Commanded cost index as multiple of CI0");
    sweep->add_option("--tau-list", tau_list, "Comma list of tau values (seconds or frac:X)")
        ->required();
    sweep->add_option("--v-from-kmh", v_from_kmh, "Sweep start speed (km/h)")->required();
    sweep->add_option("--v-to-kmh", v_to_kmh, "Sweep end speed (km/h)")->required();
    sweep->add_option("--v-steps", v_steps, "Grid points")->capture_default_str();
    sweep->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* fit = app.add_subcommand("fit-ci", "Back-solve the cost index from a target speed");
    fit->add_option("--aircraft", aircraft_file, "Aircraft config file")->required();
    route.add_to(fit);
    fit->add_option("--target-kmh", target_kmh, "Target initialization speed (km/h)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (init->parsed()) return cmd_init(aircraft_file, route, ci, out_dir);
        if (optimize->parsed()) {
            return cmd_optimize(aircraft_file, route, ci, ci_in_kjs, ci_in_factor, tau_text);
        }
        if (simulate->parsed()) return cmd_simulate(scenario_file, out_dir, plot);
        if (sweep->parsed()) {
            return cmd_sweep(aircraft_file, route, ci, ci_in_kjs, ci_in_factor, tau_list,
                             v_from_kmh, v_to_kmh, v_steps, out_dir);
        }
        if (fit->parsed()) return cmd_fit_ci(aircraft_file, route, target_kmh);
        std::fprintf(stderr, "error: no subcommand\n");
        return kExitInput;
    } catch (const econ::InfeasibleLeg& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const econ::SolverFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const econ::FuelExhaustion& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const econ::BatteryDepleted& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
}
