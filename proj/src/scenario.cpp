#include "econ/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace econ {

namespace {

struct SegmentState {
    double start_t_s;
    double start_x_m;
    double v_mps;
    CostIndexFilter filter;
    EnergyState energy;
    Optimum optimum;
};

double available_energy(const AircraftModel& aircraft, const EnergyState& state) {
    if (aircraft.is_electric()) {
        return state.charge_c() * aircraft.electric().voltage_v;
    }
    const FuelPowertrain& f = aircraft.fuel();
    return f.heating_value_J_per_kg / kGravity * (state.weight_n() - f.dry_weight_n());
}

double state_scalar(const EnergyState& state) {
    return state.is_fuel() ? state.weight_n() : state.charge_c();
}

}  // namespace

SimulationResult simulate(const Scenario& scenario) {
    if (!(scenario.x0_m < scenario.xf_m)) {
        throw std::invalid_argument("scenario: x0 must be < xf");
    }
    if (!(scenario.sample_step_s > 0.0)) {
        throw std::invalid_argument("scenario: sample step must be > 0");
    }
    scenario.aircraft.validate();

    const double total_dx = scenario.xf_m - scenario.x0_m;

    // FMS initialization over the full route fixes the schedule.
    CruiseLeg leg{total_dx, scenario.rho_kg_m3, scenario.aircraft,
                  scenario.aircraft.initial_energy_state(),
                  CostIndexFilter{scenario.ci0_w, scenario.ci0_w, Tau::infinite()}};
    const Optimum init = solve_init(leg);
    const double tf0 = init.t_f_star_s;

    const double tau_s = scenario.tau_rule.kind == TauRule::Kind::seconds
                             ? scenario.tau_rule.value
                             : scenario.tau_rule.value * tf0;
    if (!(tau_s > 0.0)) throw std::invalid_argument("scenario: tau must resolve to > 0 s");

    std::vector<SegmentState> segments;
    segments.push_back({0.0, scenario.x0_m, init.v_star_mps,
                        CostIndexFilter{scenario.ci0_w, scenario.ci0_w, Tau::infinite()},
                        scenario.aircraft.initial_energy_state(), init});

    double prev_event_t = 0.0;
    for (const AtcEvent& event : scenario.events) {
        if (!(event.ci_in_w >= 0.0)) {
            throw std::invalid_argument("scenario: event CI_in must be >= 0");
        }
        const SegmentState& seg = segments.back();
        double t_e, x_e;
        if (event.trigger == AtcEvent::Trigger::at_position) {
            x_e = event.at;
            t_e = seg.start_t_s + (x_e - seg.start_x_m) / seg.v_mps;
        } else {
            t_e = event.at;
            x_e = seg.start_x_m + seg.v_mps * (t_e - seg.start_t_s);
        }
        if (!(x_e > scenario.x0_m) || !(x_e < scenario.xf_m)) {
            throw std::invalid_argument("scenario: event outside the route");
        }
        if (!(t_e > prev_event_t) || !(x_e > seg.start_x_m)) {
            throw std::invalid_argument("scenario: event triggers must be strictly increasing");
        }
        prev_event_t = t_e;

        const double flown = x_e - seg.start_x_m;
        const EnergyState state_at_event = advance_energy_state(
            seg.v_mps, flown, scenario.rho_kg_m3, scenario.aircraft, seg.energy);
        const double ci_at_event = ci_value(seg.filter, t_e - seg.start_t_s);

        CruiseLeg next{scenario.xf_m - x_e, scenario.rho_kg_m3, scenario.aircraft,
                       state_at_event,
                       CostIndexFilter{ci_at_event, event.ci_in_w, Tau::seconds(tau_s)}};
        const Optimum opt = solve_optimal(next);
        segments.push_back({t_e, x_e, opt.v_star_mps, next.ci, state_at_event, opt});
    }

    // Per-segment records and the arrival delta.
    FlightSummary summary;
    summary.t_f0_star_s = tf0;
    double t = 0.0;
    double total_energy = 0.0;
    std::vector<double> boundaries;
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const SegmentState& seg = segments[k];
        const double end_x = (k + 1 < segments.size()) ? segments[k + 1].start_x_m
                                                       : scenario.xf_m;
        const double dx = end_x - seg.start_x_m;
        const double duration = dx / seg.v_mps;
        const EnergyState end_state = advance_energy_state(
            seg.v_mps, dx, scenario.rho_kg_m3, scenario.aircraft, seg.energy);
        const double used = available_energy(scenario.aircraft, seg.energy) -
                            available_energy(scenario.aircraft, end_state);
        total_energy += used;
        summary.segments.push_back({static_cast<int>(k) + 1, seg.start_t_s, seg.start_x_m,
                                    seg.v_mps, duration, seg.filter.ci0_w,
                                    seg.filter.ci_in_w, seg.filter.tau, used,
                                    seg.optimum.sufficiency_ok, seg.optimum.clamped});
        t = seg.start_t_s + duration;
        if (k + 1 < segments.size()) boundaries.push_back(segments[k + 1].start_t_s);
    }
    const double arrival_t = t;
    summary.dt_arrival_s = arrival_t - tf0;
    summary.total_energy_used_j = total_energy;

    // Sample times: uniform grid plus segment boundaries plus arrival.
    std::vector<double> times;
    for (double ts = 0.0; ts < arrival_t; ts += scenario.sample_step_s) times.push_back(ts);
    times.push_back(arrival_t);
    times.insert(times.end(), boundaries.begin(), boundaries.end());
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                times.end());

    SimulationResult result;
    result.electric = scenario.aircraft.is_electric();
    result.summary = summary;
    result.samples.reserve(times.size());
    std::size_t k = 0;
    for (double ts : times) {
        while (k + 1 < segments.size() && ts >= segments[k + 1].start_t_s - 1e-12) ++k;
        const SegmentState& seg = segments[k];
        const double dt = std::max(0.0, ts - seg.start_t_s);
        const double ds = seg.v_mps * dt;
        const EnergyState st = advance_energy_state(seg.v_mps, ds, scenario.rho_kg_m3,
                                                    scenario.aircraft, seg.energy);
        result.samples.push_back({ts, seg.start_x_m + ds, seg.v_mps,
                                  ci_value(seg.filter, dt),
                                  available_energy(scenario.aircraft, st),
                                  state_scalar(st)});
    }
    return result;
}

std::vector<SpeedTraceSample> render_speed_trace(const SimulationResult& result,
                                                 bool smooth) {
    const std::vector<SegmentSummary>& segs = result.summary.segments;
    std::vector<SpeedTraceSample> trace;
    trace.reserve(result.samples.size());

    // Rendered speed entering each segment (continuous across boundaries).
    std::vector<double> entry_v(segs.size());
    entry_v[0] = segs[0].v_star_mps;
    for (std::size_t k = 1; k < segs.size(); ++k) {
        const SegmentSummary& prev = segs[k - 1];
        const double dt = segs[k].start_t_s - prev.start_t_s;
        entry_v[k] = prev.tau.is_infinite()
                         ? prev.v_star_mps
                         : prev.v_star_mps + (entry_v[k - 1] - prev.v_star_mps) *
                                                 std::exp(-dt / prev.tau.value_s());
    }

    for (const TrajectorySample& s : result.samples) {
        std::size_t k = 0;
        while (k + 1 < segs.size() && s.t_s >= segs[k + 1].start_t_s - 1e-12) ++k;
        double rendered = s.v_commanded_mps;
        if (smooth && !segs[k].tau.is_infinite()) {
            const double dt = std::max(0.0, s.t_s - segs[k].start_t_s);
            rendered = segs[k].v_star_mps + (entry_v[k] - segs[k].v_star_mps) *
                                                std::exp(-dt / segs[k].tau.value_s());
        }
        trace.push_back({s.t_s, s.v_commanded_mps, rendered});
    }
    return trace;
}

}  // namespace econ
