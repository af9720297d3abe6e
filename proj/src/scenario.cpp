#include "satcov/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "satcov/errors.hpp"
#include "satcov/geometry.hpp"

namespace satcov {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find_first_of("#;");
  return pos == std::string::npos ? line : line.substr(0, pos);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for '" + key + "': " + text);
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size() || text.find('-') != std::string::npos)
      throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad unsigned integer for '" + key + "': " + text);
  }
}

const std::set<std::string> kMainKeys = {
    "earth_radius_km", "orbit_radius_km", "altitude_km",
    "min_elevation_deg", "theta_min_deg",
    "cluster_polar_angle_deg", "phi_clu_deg",
    "sat_density_per_km2", "mean_visible_sats",
    "path_loss_exponent", "alpha",
    "nakagami_m", "m",
    "gain_inside", "gain_outside",
    "thresholds_db", "trials", "seed", "output_dir",
};

const std::set<std::string> kSweepKeys = {"variable", "values"};

void reject_both(const std::map<std::string, std::string>& kv, const std::string& a,
                 const std::string& b) {
  if (kv.count(a) && kv.count(b))
    throw ConfigError("keys '" + a + "' and '" + b + "' are aliases; give one");
}

}  // namespace

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty value list");
  if (t.find(':') != std::string::npos) {
    std::istringstream ss(t);
    std::string lo_s, step_s, hi_s;
    if (!std::getline(ss, lo_s, ':') || !std::getline(ss, step_s, ':') ||
        !std::getline(ss, hi_s))
      throw ConfigError("range syntax is lo:step:hi, got: " + text);
    const double lo = parse_double("range", trim(lo_s));
    const double step = parse_double("range", trim(step_s));
    const double hi = parse_double("range", trim(hi_s));
    if (!(step > 0) || hi < lo) throw ConfigError("range needs step > 0 and hi >= lo");
    for (double v = lo; v <= hi + step * 1e-9; v += step) out.push_back(v);
    return out;
  }
  std::istringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double("list", trim(item)));
  if (out.empty()) throw ConfigError("empty value list");
  return out;
}

SystemParams apply_sweep_value(const SystemParams& base, const std::string& variable,
                               double value) {
  SystemParams p = base;
  if (variable == "earth_radius_km") {
    p.earth_radius_km = value;
  } else if (variable == "orbit_radius_km") {
    p.sat_orbit_radius_km = value;
  } else if (variable == "altitude_km") {
    p.sat_orbit_radius_km = p.earth_radius_km + value;
  } else if (variable == "min_elevation_deg" || variable == "theta_min_deg") {
    p.min_elevation_rad = value * kDegToRad;
  } else if (variable == "cluster_polar_angle_deg" || variable == "phi_clu_deg") {
    p.cluster_polar_angle_rad = value * kDegToRad;
  } else if (variable == "sat_density_per_km2") {
    p.sat_density_per_km2 = value;
  } else if (variable == "mean_visible_sats") {
    p.sat_density_per_km2 = 0;  // placeholder until dome area is known
    p.sat_density_per_km2 = value / dome_area(p);
  } else if (variable == "path_loss_exponent" || variable == "alpha") {
    p.path_loss_exponent = value;
  } else if (variable == "nakagami_m" || variable == "m") {
    p.nakagami_m = value;
  } else if (variable == "gain_inside") {
    p.gain_inside = value;
  } else if (variable == "gain_outside") {
    p.gain_outside = value;
  } else {
    throw ConfigError("unknown sweep variable '" + variable + "'");
  }
  return p;
}

Scenario parse_scenario_text(const std::string& text) {
  std::map<std::string, std::string> main_kv, sweep_kv;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "sweep")
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" +
                          section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    auto& kv = section == "sweep" ? sweep_kv : main_kv;
    const auto& allowed = section == "sweep" ? kSweepKeys : kMainKeys;
    if (!allowed.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = val;
  }

  reject_both(main_kv, "orbit_radius_km", "altitude_km");
  reject_both(main_kv, "min_elevation_deg", "theta_min_deg");
  reject_both(main_kv, "cluster_polar_angle_deg", "phi_clu_deg");
  reject_both(main_kv, "sat_density_per_km2", "mean_visible_sats");
  reject_both(main_kv, "path_loss_exponent", "alpha");
  reject_both(main_kv, "nakagami_m", "m");

  Scenario sc;
  SystemParams& p = sc.params;
  const auto get = [&](const char* key) -> const std::string* {
    const auto it = main_kv.find(key);
    return it == main_kv.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("earth_radius_km")) p.earth_radius_km = parse_double("earth_radius_km", *v);
  if (const auto* v = get("orbit_radius_km")) p.sat_orbit_radius_km = parse_double("orbit_radius_km", *v);
  if (const auto* v = get("altitude_km"))
    p.sat_orbit_radius_km = p.earth_radius_km + parse_double("altitude_km", *v);
  if (const auto* v = get("min_elevation_deg")) p.min_elevation_rad = parse_double("min_elevation_deg", *v) * kDegToRad;
  if (const auto* v = get("theta_min_deg")) p.min_elevation_rad = parse_double("theta_min_deg", *v) * kDegToRad;
  if (const auto* v = get("cluster_polar_angle_deg"))
    p.cluster_polar_angle_rad = parse_double("cluster_polar_angle_deg", *v) * kDegToRad;
  if (const auto* v = get("phi_clu_deg")) p.cluster_polar_angle_rad = parse_double("phi_clu_deg", *v) * kDegToRad;
  if (const auto* v = get("path_loss_exponent")) p.path_loss_exponent = parse_double("path_loss_exponent", *v);
  if (const auto* v = get("alpha")) p.path_loss_exponent = parse_double("alpha", *v);
  if (const auto* v = get("nakagami_m")) p.nakagami_m = parse_double("nakagami_m", *v);
  if (const auto* v = get("m")) p.nakagami_m = parse_double("m", *v);
  if (const auto* v = get("gain_inside")) p.gain_inside = parse_double("gain_inside", *v);
  if (const auto* v = get("gain_outside")) p.gain_outside = parse_double("gain_outside", *v);
  if (const auto* v = get("thresholds_db")) p.sir_thresholds_db = parse_value_list(*v);
  if (const auto* v = get("trials")) p.mc_trials = parse_uint("trials", *v);
  if (const auto* v = get("seed")) p.rng_seed = parse_uint("seed", *v);
  if (const auto* v = get("output_dir")) sc.out_dir = *v;
  // density last: the mean-count alias needs the final geometry
  if (const auto* v = get("sat_density_per_km2")) p.sat_density_per_km2 = parse_double("sat_density_per_km2", *v);
  if (const auto* v = get("mean_visible_sats"))
    p.sat_density_per_km2 = parse_double("mean_visible_sats", *v) / dome_area(p);

  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  }

  if (!sweep_kv.empty()) {
    if (!sweep_kv.count("variable") || !sweep_kv.count("values"))
      throw ConfigError("[sweep] needs both 'variable' and 'values'");
    SweepSpec sw;
    sw.variable = sweep_kv.at("variable");
    sw.values = parse_value_list(sweep_kv.at("values"));
    // validate every point now so failures happen at parse time
    for (const double v : sw.values) {
      try {
        apply_sweep_value(p, sw.variable, v).validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError("sweep value " + std::to_string(v) + ": " + e.what());
      }
    }
    sc.sweep = sw;
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

}  // namespace satcov
