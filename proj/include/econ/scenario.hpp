#pragma once

#include <vector>

#include "econ/optimizer.hpp"

namespace econ {

/// Mid-flight cost-index command.
struct AtcEvent {
    enum class Trigger { at_position, at_time };
    Trigger trigger;
    double at;        // m or s depending on trigger
    double ci_in_w;
};

struct TauRule {
    enum class Kind { seconds, fraction_of_tf0 };
    Kind kind;
    double value;

    static TauRule seconds(double s) { return {Kind::seconds, s}; }
    static TauRule fraction_of_tf0(double f) { return {Kind::fraction_of_tf0, f}; }
};

/// Multi-segment cruise definition. rho is already resolved (from altitude or
/// an explicit override) by the config layer.
struct Scenario {
    AircraftModel aircraft;
    double rho_kg_m3;
    double x0_m;
    double xf_m;
    double ci0_w;
    std::vector<AtcEvent> events;
    TauRule tau_rule;
    double sample_step_s = 1.0;
};

struct TrajectorySample {
    double t_s;
    double x_m;
    double v_commanded_mps;
    double ci_w;
    double energy_available_j;
    double state;  // weight (N) for fuel, charge (C) for electric
};

struct SegmentSummary {
    int index;                 // 1-based
    double start_t_s;
    double start_x_m;
    double v_star_mps;
    double duration_s;
    double ci0_w;              // filter state at segment start
    double ci_in_w;            // commanded value (== ci0 for segment 1)
    Tau tau;
    double energy_used_j;
    bool sufficiency_ok;
    Clamp clamped;
};

struct FlightSummary {
    std::vector<SegmentSummary> segments;
    double t_f0_star_s;        // scheduled flight time from initialization
    double dt_arrival_s;       // actual - scheduled; negative means early
    double total_energy_used_j;
};

struct SimulationResult {
    std::vector<TrajectorySample> samples;
    FlightSummary summary;
    bool electric;
};

/// Chains constant-speed segments with energy-state continuity across ATC
/// events; samples every sample_step_s plus segment boundaries and arrival.
SimulationResult simulate(const Scenario& scenario);

struct SpeedTraceSample {
    double t_s;
    double v_commanded_mps;
    double v_rendered_mps;
};

/// Display-only speed trace: commanded steps, optionally relaxed toward each
/// segment's optimum with that segment's tau. Timing and energy accounting
/// always use the commanded (piecewise-constant) speeds.
std::vector<SpeedTraceSample> render_speed_trace(const SimulationResult& result,
                                                 bool smooth);

}  // namespace econ
