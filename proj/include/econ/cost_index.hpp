#pragma once

namespace econ {

/// Time constant of the cost-index filter. Infinity is a distinct mode (the
/// FMS-initialization case), not a large float, so that code path stays exact.
class Tau {
public:
    static Tau infinite() { return Tau(true, 0.0); }
    static Tau seconds(double s);

    bool is_infinite() const { return infinite_; }
    /// Finite value in seconds; throws std::logic_error in infinite mode.
    double value_s() const;

private:
    Tau(bool inf, double s) : infinite_(inf), seconds_(s) {}
    bool infinite_;
    double seconds_;
};

/// First-order CI dynamics: tau * dCI/dt = -CI + CI_in, CI(0) = CI0.
/// All CI values are in W (J/s); the CLI converts from/to kJ/s.
struct CostIndexFilter {
    double ci0_w;
    double ci_in_w;
    Tau tau;

    void validate() const;
};

/// CI(t) = e^(-t/tau) (CI0 - CI_in) + CI_in; CI0 for all t in infinite mode.
/// Throws std::domain_error for t < 0.
double ci_value(const CostIndexFilter& filter, double t_s);

/// Time-related vs energy-related operating cost rates.
struct CostRates {
    double time_cost_per_s;    // currency/s
    double energy_cost_per_j;  // currency/J
};

/// CI = C_t / C_e, in W. Throws std::domain_error for C_e <= 0.
double ci_from_rates(const CostRates& rates);

}  // namespace econ
