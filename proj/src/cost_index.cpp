#include "econ/cost_index.hpp"

#include <cmath>
#include <stdexcept>

namespace econ {

Tau Tau::seconds(double s) {
    if (!(s > 0.0)) throw std::domain_error("tau: time constant must be > 0 s");
    return Tau(false, s);
}

double Tau::value_s() const {
    if (infinite_) throw std::logic_error("tau: no finite value in infinite mode");
    return seconds_;
}

void CostIndexFilter::validate() const {
    if (!(ci0_w >= 0.0)) throw std::domain_error("cost index: CI0 must be >= 0");
    if (!(ci_in_w >= 0.0)) throw std::domain_error("cost index: CI_in must be >= 0");
}

double ci_value(const CostIndexFilter& filter, double t_s) {
    if (!(t_s >= 0.0)) throw std::domain_error("ci_value: t must be >= 0");
    if (filter.tau.is_infinite()) return filter.ci0_w;
    return std::exp(-t_s / filter.tau.value_s()) * (filter.ci0_w - filter.ci_in_w) +
           filter.ci_in_w;
}

double ci_from_rates(const CostRates& rates) {
    if (!(rates.energy_cost_per_j > 0.0)) {
        throw std::domain_error("ci_from_rates: energy cost rate must be > 0");
    }
    return rates.time_cost_per_s / rates.energy_cost_per_j;
}

}  // namespace econ
