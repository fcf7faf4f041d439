#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "econ/scenario.hpp"

namespace econ {

/// trajectory.csv: t_s, x_m, v_mps, ci_W, energy_J, state
/// (state is weight in N for fuel aircraft, charge in C for electric ones).
void write_trajectory_csv(std::ostream& out, const SimulationResult& result);

/// summary.csv: segment, v_star_kmh, duration_s, ci_kJ_per_s, energy_used_MJ,
/// with a trailing dt_arrival_s row.
void write_summary_csv(std::ostream& out, const FlightSummary& summary);

/// speed_trace.csv: t_s, v_commanded_kmh, v_rendered_kmh.
void write_speed_trace_csv(std::ostream& out, const std::vector<SpeedTraceSample>& trace);

struct SweepColumn {
    std::string label;
    std::vector<double> j_values;  // NaN marks a speed the leg cannot fly
};

/// J(v) table, one column per tau plus the constant-CI reference.
void write_sweep_csv(std::ostream& out, const std::vector<double>& speeds_mps,
                     const std::vector<SweepColumn>& columns);

/// h:mm:ss (negative values prefixed with '-').
std::string format_hms(double seconds);

}  // namespace econ
