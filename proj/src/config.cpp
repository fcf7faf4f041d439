#include "econ/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "econ/atmosphere.hpp"

namespace econ {

namespace {

using nlohmann::json;

/// JSON object wrapper that rejects unknown keys and reports full key paths.
class StrictObject {
public:
    StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw InputError(path_ + ": expected an object");
    }

    bool contains(const std::string& key) const { return j_.contains(key); }

    double number(const std::string& key) {
        const json& v = get(key);
        if (!v.is_number()) throw InputError(path_ + "." + key + ": expected a number");
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) {
        return contains(key) ? number(key) : fallback;
    }

    std::string string(const std::string& key) {
        const json& v = get(key);
        if (!v.is_string()) throw InputError(path_ + "." + key + ": expected a string");
        return v.get<std::string>();
    }

    StrictObject object(const std::string& key) {
        const json& v = get(key);
        return StrictObject(v, path_ + "." + key);
    }

    const json& raw(const std::string& key) { return get(key); }

    const std::string& path() const { return path_; }

    /// Call after consuming every expected key.
    void done() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) {
                throw InputError(path_ + "." + it.key() + ": unknown key");
            }
        }
    }

private:
    const json& get(const std::string& key) {
        auto it = j_.find(key);
        if (it == j_.end()) throw InputError(path_ + "." + key + ": missing required key");
        seen_.insert(key);
        return *it;
    }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

AirframeParams read_airframe(StrictObject obj) {
    AirframeParams p;
    p.wing_area_m2 = obj.number("S_m2");
    p.cd0 = obj.number("C_D0");
    p.cd2 = obj.number("C_D2");
    p.v_min_mps = obj.number("v_min_kmh") / 3.6;
    p.v_max_mps = obj.number("v_max_kmh") / 3.6;
    obj.done();
    return p;
}

AircraftModel read_aircraft(const json& j, const std::string& path) {
    StrictObject root(j, path);
    AircraftModel model;
    model.name = root.contains("name") ? root.string("name")
                                       : std::filesystem::path(path).stem().string();
    model.airframe = read_airframe(root.object("airframe"));

    StrictObject pw = root.object("powertrain");
    const bool has_fuel = pw.contains("fuel");
    const bool has_electric = pw.contains("electric");
    if (has_fuel == has_electric) {
        throw InputError(pw.path() + ": exactly one of 'fuel' or 'electric' is required");
    }
    if (has_fuel) {
        StrictObject f = pw.object("fuel");
        FuelPowertrain fuel;
        fuel.sfc_kg_per_Ns = f.number("sfc_kg_per_Ns");
        fuel.heating_value_J_per_kg = f.number("heating_value_J_per_kg");
        fuel.initial_fuel_mass_kg = f.number("fuel_mass_kg");
        fuel.dry_mass_kg = f.number("dry_mass_kg");
        f.done();
        if (fuel.heating_value_J_per_kg < 40e6 || fuel.heating_value_J_per_kg > 43e6) {
            std::fprintf(stderr,
                         "warning: %s: heating value %.3g J/kg outside the typical "
                         "jet-fuel range [40e6, 43e6]\n",
                         path.c_str(), fuel.heating_value_J_per_kg);
        }
        model.powertrain = fuel;
    } else {
        StrictObject e = pw.object("electric");
        ElectricPowertrain elec;
        elec.voltage_v = e.number("voltage_V");
        elec.efficiency = e.number("efficiency");
        elec.initial_charge_c = e.number("q0_C");
        elec.mass_kg = e.number("mass_kg");
        e.done();
        model.powertrain = elec;
    }
    pw.done();
    root.done();
    try {
        model.validate();
    } catch (const std::domain_error& e) {
        throw InputError(path + ": " + e.what());
    }
    return model;
}

/// One cost-index specification in any of the schema's accepted forms.
struct CiForm {
    enum class Kind { absolute, fraction, fit };
    Kind kind;
    double value = 0.0;             // W, fraction, or target m/s
    double as_fraction = 0.0;       // optional with fit: implied CI_max share
    double explicit_ci_max_w = -1;  // with fraction: explicit CI_max
};

CiForm read_ci_form(StrictObject obj, const char* absolute_key) {
    CiForm form;
    if (obj.contains(absolute_key)) {
        form.kind = CiForm::Kind::absolute;
        form.value = obj.number(absolute_key) * 1000.0;
    } else if (obj.contains("fit_to_speed_kmh")) {
        form.kind = CiForm::Kind::fit;
        form.value = obj.number("fit_to_speed_kmh") / 3.6;
        form.as_fraction = obj.number_or("as_fraction_of_ci_max", 0.0);
    } else if (obj.contains("fraction_of_ci_max")) {
        form.kind = CiForm::Kind::fraction;
        form.value = obj.number("fraction_of_ci_max");
        if (obj.contains("ci_max_kJ_per_s")) {
            form.explicit_ci_max_w = obj.number("ci_max_kJ_per_s") * 1000.0;
        }
    } else {
        throw InputError(obj.path() + ": expected one of '" + absolute_key +
                         "', 'fraction_of_ci_max', 'fit_to_speed_kmh'");
    }
    obj.done();
    return form;
}

/// Resolves a CI form to W. ci_max_w < 0 means "not known (yet)".
double resolve_ci_form(const CiForm& form, const CruiseLeg& init_template,
                       double& ci_max_w, const std::string& where) {
    switch (form.kind) {
        case CiForm::Kind::absolute:
            if (!(form.value >= 0.0)) throw InputError(where + ": CI must be >= 0");
            return form.value;
        case CiForm::Kind::fraction: {
            const double max_w = form.explicit_ci_max_w >= 0.0 ? form.explicit_ci_max_w
                                                               : ci_max_w;
            if (max_w < 0.0) {
                throw InputError(where + ": fraction_of_ci_max needs ci_max_kJ_per_s "
                                         "(explicit or implied by an earlier fit)");
            }
            if (form.explicit_ci_max_w >= 0.0) ci_max_w = form.explicit_ci_max_w;
            return form.value * max_w;
        }
        case CiForm::Kind::fit: {
            const double ci = fit_ci_for_speed(form.value, init_template);
            if (form.as_fraction > 0.0) ci_max_w = ci / form.as_fraction;
            return ci;
        }
    }
    throw InputError(where + ": unreachable CI form");
}

}  // namespace

AircraftModel load_aircraft(const std::string& path) {
    return read_aircraft(parse_file(path), path);
}

Scenario load_scenario(const std::string& path) {
    const json j = parse_file(path);
    StrictObject root(j, path);

    Scenario sc;

    const std::string aircraft_ref = root.string("aircraft");
    std::filesystem::path aircraft_path(aircraft_ref);
    if (aircraft_path.is_relative()) {
        aircraft_path = std::filesystem::path(path).parent_path() / aircraft_path;
    }
    sc.aircraft = load_aircraft(aircraft_path.string());

    StrictObject route = root.object("route");
    sc.x0_m = route.number("x0_km") * 1000.0;
    sc.xf_m = route.number("xf_km") * 1000.0;
    const bool has_alt = route.contains("altitude_m");
    const bool has_rho = route.contains("rho_override");
    if (has_alt == has_rho) {
        throw InputError(route.path() +
                         ": exactly one of 'altitude_m' or 'rho_override' is required");
    }
    try {
        sc.rho_kg_m3 = has_rho ? route.number("rho_override")
                               : isa_density(route.number("altitude_m"));
    } catch (const std::domain_error& e) {
        throw InputError(route.path() + ": " + e.what());
    }
    if (!(sc.rho_kg_m3 > 0.0)) throw InputError(route.path() + ": density must be > 0");
    route.done();

    if (!(sc.x0_m < sc.xf_m)) throw InputError(path + ": route.x0_km must be < route.xf_km");

    // Template leg for fit-based CI forms: full route, initial energy state.
    CruiseLeg init_template{sc.xf_m - sc.x0_m, sc.rho_kg_m3, sc.aircraft,
                            sc.aircraft.initial_energy_state(),
                            CostIndexFilter{0.0, 0.0, Tau::infinite()}};

    double ci_max_w = -1.0;
    sc.ci0_w = resolve_ci_form(read_ci_form(root.object("ci"), "ci0_kJ_per_s"),
                               init_template, ci_max_w, path + ".ci");

    StrictObject tau = root.object("tau");
    const bool tau_seconds = tau.contains("seconds");
    const bool tau_fraction = tau.contains("fraction_of_tf0");
    if (tau_seconds == tau_fraction) {
        throw InputError(tau.path() +
                         ": exactly one of 'seconds' or 'fraction_of_tf0' is required");
    }
    sc.tau_rule = tau_seconds ? TauRule::seconds(tau.number("seconds"))
                              : TauRule::fraction_of_tf0(tau.number("fraction_of_tf0"));
    if (!(sc.tau_rule.value > 0.0)) throw InputError(tau.path() + ": tau must be > 0");
    tau.done();

    if (root.contains("events")) {
        const json& events = root.raw("events");
        if (!events.is_array()) throw InputError(path + ".events: expected an array");
        for (std::size_t i = 0; i < events.size(); ++i) {
            const std::string epath = path + ".events[" + std::to_string(i) + "]";
            StrictObject ev(events[i], epath);
            AtcEvent event;
            const bool at_km = ev.contains("at_km");
            const bool at_s = ev.contains("at_s");
            if (at_km == at_s) {
                throw InputError(epath + ": exactly one of 'at_km' or 'at_s' is required");
            }
            if (at_km) {
                event.trigger = AtcEvent::Trigger::at_position;
                event.at = ev.number("at_km") * 1000.0;
            } else {
                event.trigger = AtcEvent::Trigger::at_time;
                event.at = ev.number("at_s");
            }
            event.ci_in_w = resolve_ci_form(read_ci_form(ev.object("ci_in"), "ci_in_kJ_per_s"),
                                            init_template, ci_max_w, epath + ".ci_in");
            ev.done();
            sc.events.push_back(event);
        }
    }

    if (root.contains("output")) {
        StrictObject out = root.object("output");
        sc.sample_step_s = out.number_or("sample_step_s", 1.0);
        out.done();
        if (!(sc.sample_step_s > 0.0)) {
            throw InputError(path + ".output.sample_step_s: must be > 0");
        }
    }

    root.done();
    return sc;
}

}  // namespace econ
