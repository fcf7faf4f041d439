#include "econ/csv.hpp"

#include <cmath>
#include <cstdio>

namespace econ {

namespace {

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const SimulationResult& result) {
    out << "t_s,x_m,v_mps,ci_W,energy_J,state\n";
    for (const TrajectorySample& s : result.samples) {
        out << fixed(s.t_s, 3) << ',' << fixed(s.x_m, 3) << ','
            << fixed(s.v_commanded_mps, 6) << ',' << fixed(s.ci_w, 6) << ','
            << fixed(s.energy_available_j, 3) << ',' << fixed(s.state, 6) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const FlightSummary& summary) {
    out << "segment,v_star_kmh,duration_s,ci_kJ_per_s,energy_used_MJ\n";
    for (const SegmentSummary& seg : summary.segments) {
        out << seg.index << ',' << fixed(seg.v_star_mps * 3.6, 4) << ','
            << fixed(seg.duration_s, 3) << ',' << fixed(seg.ci_in_w / 1000.0, 6) << ','
            << fixed(seg.energy_used_j / 1e6, 6) << '\n';
    }
    out << "dt_arrival_s," << fixed(summary.dt_arrival_s, 3) << ",,,\n";
}

void write_speed_trace_csv(std::ostream& out, const std::vector<SpeedTraceSample>& trace) {
    out << "t_s,v_commanded_kmh,v_rendered_kmh\n";
    for (const SpeedTraceSample& s : trace) {
        out << fixed(s.t_s, 3) << ',' << fixed(s.v_commanded_mps * 3.6, 4) << ','
            << fixed(s.v_rendered_mps * 3.6, 4) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<double>& speeds_mps,
                     const std::vector<SweepColumn>& columns) {
    out << "v_kmh";
    for (const SweepColumn& col : columns) out << ',' << col.label;
    out << '\n';
    for (std::size_t i = 0; i < speeds_mps.size(); ++i) {
        out << fixed(speeds_mps[i] * 3.6, 4);
        for (const SweepColumn& col : columns) {
            out << ',';
            if (i < col.j_values.size() && std::isfinite(col.j_values[i])) {
                out << fixed(col.j_values[i] / 1e6, 6);
            }
        }
        out << '\n';
    }
}

std::string format_hms(double seconds) {
    const bool negative = seconds < 0.0;
    long total = std::lround(std::abs(seconds));
    const long h = total / 3600;
    const long m = (total % 3600) / 60;
    const long s = total % 60;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%ld:%02ld:%02ld", negative ? "-" : "", h, m, s);
    return buf;
}

}  // namespace econ
