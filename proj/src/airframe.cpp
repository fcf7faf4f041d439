#include "econ/airframe.hpp"

#include <cmath>
#include <stdexcept>

namespace econ {

void AirframeParams::validate() const {
    if (!(wing_area_m2 > 0.0)) throw std::domain_error("airframe: wing area must be > 0");
    if (!(cd0 > 0.0)) throw std::domain_error("airframe: C_D0 must be > 0");
    if (!(cd2 > 0.0)) throw std::domain_error("airframe: C_D2 must be > 0");
    if (!(v_min_mps > 0.0) || !(v_min_mps < v_max_mps)) {
        throw std::domain_error("airframe: need 0 < v_min < v_max");
    }
}

double lift_coefficient(double weight_n, double rho_kg_m3, double v_mps,
                        const AirframeParams& params) {
    if (!(weight_n > 0.0)) throw std::domain_error("lift_coefficient: weight must be > 0");
    if (!(rho_kg_m3 > 0.0)) throw std::domain_error("lift_coefficient: rho must be > 0");
    if (!(v_mps > 0.0)) throw std::domain_error("lift_coefficient: v must be > 0");
    return 2.0 * weight_n / (rho_kg_m3 * params.wing_area_m2 * v_mps * v_mps);
}

double drag_coefficient(double c_l, const AirframeParams& params) {
    return params.cd0 + params.cd2 * c_l * c_l;
}

double drag(double v_mps, double weight_n, double rho_kg_m3,
            const AirframeParams& params) {
    if (!(v_mps > 0.0)) throw std::domain_error("drag: v must be > 0");
    if (!(weight_n > 0.0)) throw std::domain_error("drag: weight must be > 0");
    if (!(rho_kg_m3 > 0.0)) throw std::domain_error("drag: rho must be > 0");
    const double rs = rho_kg_m3 * params.wing_area_m2;
    const double v2 = v_mps * v_mps;
    return 0.5 * rs * params.cd0 * v2 + 2.0 * params.cd2 * weight_n * weight_n / (rs * v2);
}

double min_drag_speed(double weight_n, double rho_kg_m3,
                      const AirframeParams& params) {
    if (!(weight_n > 0.0)) throw std::domain_error("min_drag_speed: weight must be > 0");
    if (!(rho_kg_m3 > 0.0)) throw std::domain_error("min_drag_speed: rho must be > 0");
    return std::sqrt(2.0 * weight_n / (rho_kg_m3 * params.wing_area_m2)) *
           std::pow(params.cd2 / params.cd0, 0.25);
}

}  // namespace econ
