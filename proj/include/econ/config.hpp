#pragma once

#include <stdexcept>
#include <string>

#include "econ/scenario.hpp"

namespace econ {

/// Malformed or out-of-schema input file; message carries the offending key path.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Loads and validates an aircraft config file (JSON). Exactly one powertrain
/// block; unknown keys rejected.
AircraftModel load_aircraft(const std::string& path);

/// Loads a scenario file (JSON), resolving the referenced aircraft (path
/// relative to the scenario file), air density (altitude via ISA or explicit
/// rho_override), cost-index forms (absolute kJ/s, fraction of an explicit or
/// fit-implied CI_max, or fit-to-speed), and the tau rule.
Scenario load_scenario(const std::string& path);

}  // namespace econ
