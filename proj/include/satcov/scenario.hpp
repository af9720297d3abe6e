#pragma once

#include <optional>
#include <string>
#include <vector>

#include "satcov/params.hpp"

namespace satcov {

struct SweepSpec {
  std::string variable;
  std::vector<double> values;
};

struct Scenario {
  SystemParams params;
  std::optional<SweepSpec> sweep;
  std::string out_dir = ".";
};

// Flat `key = value` INI text with an optional [sweep] section. Aliases:
// altitude_km (for orbit_radius_km), mean_visible_sats (for
// sat_density_per_km2), theta_min_deg / phi_clu_deg, alpha, m. Angles are
// degrees in the file and radians in SystemParams. Unknown keys are rejected.
Scenario parse_scenario_text(const std::string& text);

Scenario load_scenario(const std::string& path);

// "1,2.5,7" or "lo:step:hi" (inclusive).
std::vector<double> parse_value_list(const std::string& text);

// Applies one sweep value to a copy of base; the variable names follow the
// scenario-file keys.
SystemParams apply_sweep_value(const SystemParams& base, const std::string& variable,
                               double value);

}  // namespace satcov
