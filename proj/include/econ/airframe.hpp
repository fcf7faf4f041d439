#pragma once

namespace econ {

/// Drag-polar airframe: C_D = C_D0 + C_D2 * C_L^2, plus the cruise envelope.
struct AirframeParams {
    double wing_area_m2;
    double cd0;
    double cd2;
    double v_min_mps;
    double v_max_mps;

    /// Throws std::domain_error on a non-physical parameter set.
    void validate() const;
};

/// C_L = 2 W / (rho S v^2), steady level flight (L = W).
double lift_coefficient(double weight_n, double rho_kg_m3, double v_mps,
                        const AirframeParams& params);

/// C_D = C_D0 + C_D2 * C_L^2.
double drag_coefficient(double c_l, const AirframeParams& params);

/// D = 1/2 rho S C_D0 v^2 + 2 C_D2 W^2 / (rho S v^2).
double drag(double v_mps, double weight_n, double rho_kg_m3,
            const AirframeParams& params);

/// Speed of minimum drag: sqrt(2 W / (rho S)) * (C_D2 / C_D0)^(1/4).
double min_drag_speed(double weight_n, double rho_kg_m3,
                      const AirframeParams& params);

}  // namespace econ
