#include "fsl/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fsl/errors.hpp"

namespace fsl::scn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw SchemaError(path + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

// Strict field set: typos surface as schema errors instead of silently
// falling back to defaults.
void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) fail(join(path, it.key()), "unknown field");
  }
}

double require_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "must be finite");
  return x;
}

double number_or(const json& j, const std::string& path, const char* key,
                 double fallback) {
  const json* v = find(j, key);
  return v ? require_number(*v, join(path, key)) : fallback;
}

double required_number(const json& j, const std::string& path,
                       const char* key) {
  const json* v = find(j, key);
  if (!v) fail(join(path, key), "missing required number");
  return require_number(*v, join(path, key));
}

void check_positive(double x, const std::string& path, const char* key) {
  if (!(x > 0.0)) fail(join(path, key), "must be > 0");
}

void check_nonnegative(double x, const std::string& path, const char* key) {
  if (!(x >= 0.0)) fail(join(path, key), "must be >= 0");
}

void check_unit_interval(double x, const std::string& path, const char* key) {
  if (!(x > 0.0) || x > 1.0) fail(join(path, key), "must be in (0, 1]");
}

bool bool_or(const json& j, const std::string& path, const char* key,
             bool fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_boolean()) fail(join(path, key), "expected a boolean");
  return v->get<bool>();
}

std::string string_or(const json& j, const std::string& path, const char* key,
                      const std::string& fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_string()) fail(join(path, key), "expected a string");
  return v->get<std::string>();
}

void parse_beam(const json& j, const std::string& path, Scenario& s) {
  expect_object(j, path);
  check_keys(j, path,
             {"waist_m", "wavelength_nm", "curvature_radius_m",
              "pointing_jitter_rad2"});
  s.beam.waist = number_or(j, path, "waist_m", s.beam.waist);
  check_positive(s.beam.waist, path, "waist_m");
  const double wl_nm =
      number_or(j, path, "wavelength_nm", s.beam.wavelength * 1e9);
  check_positive(wl_nm, path, "wavelength_nm");
  s.beam.wavelength = wl_nm * 1e-9;
  if (const json* v = find(j, "curvature_radius_m")) {
    const double r = require_number(*v, join(path, "curvature_radius_m"));
    if (r == 0.0) fail(join(path, "curvature_radius_m"), "must be nonzero");
    s.beam.inv_curvature = 1.0 / r;
  }
  s.pointing_jitter_rad2 = number_or(j, path, "pointing_jitter_rad2",
                                     s.pointing_jitter_rad2);
  check_nonnegative(s.pointing_jitter_rad2, path, "pointing_jitter_rad2");
}

void parse_turbulence(const json& j, const std::string& path, Scenario& s) {
  expect_object(j, path);
  check_keys(j, path,
             {"preset", "model", "cn2_m23", "wind_speed_mps",
              "ground_cn2_m23", "inner_scale_m", "outer_scale_m"});
  const std::string preset = string_or(j, path, "preset", "");
  if (preset == "constant_night") {
    s.profile = atm::TurbulenceProfile::constant_night();
  } else if (preset == "constant_day") {
    s.profile = atm::TurbulenceProfile::constant_day();
  } else if (preset == "hv_night") {
    s.profile = atm::TurbulenceProfile::hv_night();
  } else if (preset == "hv_day") {
    s.profile = atm::TurbulenceProfile::hv_day();
  } else if (!preset.empty()) {
    fail(join(path, "preset"),
         "expected constant_night, constant_day, hv_night or hv_day");
  }
  const std::string model = string_or(j, path, "model", "");
  if (model == "constant") {
    s.profile.model = atm::TurbulenceProfile::Model::Constant;
  } else if (model == "hufnagel_valley") {
    s.profile.model = atm::TurbulenceProfile::Model::HufnagelValley;
  } else if (!model.empty()) {
    fail(join(path, "model"), "expected constant or hufnagel_valley");
  }
  s.profile.cn2 = number_or(j, path, "cn2_m23", s.profile.cn2);
  check_positive(s.profile.cn2, path, "cn2_m23");
  s.profile.wind_speed =
      number_or(j, path, "wind_speed_mps", s.profile.wind_speed);
  check_nonnegative(s.profile.wind_speed, path, "wind_speed_mps");
  s.profile.ground_cn2 =
      number_or(j, path, "ground_cn2_m23", s.profile.ground_cn2);
  check_positive(s.profile.ground_cn2, path, "ground_cn2_m23");
  s.profile.inner_scale =
      number_or(j, path, "inner_scale_m", s.profile.inner_scale);
  check_positive(s.profile.inner_scale, path, "inner_scale_m");
  s.profile.outer_scale =
      number_or(j, path, "outer_scale_m", s.profile.outer_scale);
  check_positive(s.profile.outer_scale, path, "outer_scale_m");
}

void parse_sky(const json& j, const std::string& path, Scenario& s) {
  expect_object(j, path);
  check_keys(j, path, {"preset", "brightness_w_m2_nm_sr"});
  const std::string preset = string_or(j, path, "preset", "");
  if (preset == "night") {
    s.sky = atm::SkyRadiance::night();
  } else if (preset == "day") {
    s.sky = atm::SkyRadiance::day();
  } else if (!preset.empty()) {
    fail(join(path, "preset"), "expected night or day");
  }
  s.sky.brightness =
      number_or(j, path, "brightness_w_m2_nm_sr", s.sky.brightness);
  check_nonnegative(s.sky.brightness, path, "brightness_w_m2_nm_sr");
}

void parse_receiver(const json& j, const std::string& path, Scenario& s) {
  expect_object(j, path);
  check_keys(j, path,
             {"aperture_radius_m", "efficiency", "fov_sr",
              "filter_bandwidth_nm", "gate_time_s", "lo_mode",
              "lo_spot_radius_m", "eta_cd", "extra_photons",
              "background_photons"});
  auto& r = s.receiver;
  r.aperture_radius =
      number_or(j, path, "aperture_radius_m", r.aperture_radius);
  check_positive(r.aperture_radius, path, "aperture_radius_m");
  r.efficiency = number_or(j, path, "efficiency", r.efficiency);
  check_unit_interval(r.efficiency, path, "efficiency");
  r.fov = number_or(j, path, "fov_sr", r.fov);
  check_positive(r.fov, path, "fov_sr");
  r.filter_bandwidth_nm =
      number_or(j, path, "filter_bandwidth_nm", r.filter_bandwidth_nm);
  check_positive(r.filter_bandwidth_nm, path, "filter_bandwidth_nm");
  r.gate_time = number_or(j, path, "gate_time_s", r.gate_time);
  check_positive(r.gate_time, path, "gate_time_s");
  const std::string lo = string_or(j, path, "lo_mode", "");
  if (lo == "ideal") {
    r.lo_mode = chan::LoMode::Ideal;
  } else if (lo == "transmitted") {
    r.lo_mode = chan::LoMode::Transmitted;
  } else if (lo == "local") {
    r.lo_mode = chan::LoMode::Local;
  } else if (!lo.empty()) {
    fail(join(path, "lo_mode"), "expected ideal, transmitted or local");
  }
  r.lo_spot_radius = number_or(j, path, "lo_spot_radius_m", r.lo_spot_radius);
  check_positive(r.lo_spot_radius, path, "lo_spot_radius_m");
  if (find(j, "eta_cd")) {
    const double cd = required_number(j, path, "eta_cd");
    check_unit_interval(cd, path, "eta_cd");
    r.eta_cd_override = cd;
  }
  if (find(j, "extra_photons")) {
    const double nex = required_number(j, path, "extra_photons");
    check_nonnegative(nex, path, "extra_photons");
    r.extra_photons_override = nex;
  }
  if (find(j, "background_photons")) {
    const double nb = required_number(j, path, "background_photons");
    check_nonnegative(nb, path, "background_photons");
    s.background_override = nb;
  }
}

void parse_detector(const json& j, const std::string& path, Scenario& s) {
  expect_object(j, path);
  check_keys(j, path,
             {"det_snu", "nep_w_sqrthz", "bandwidth_hz", "lo_gate_time_s",
              "lo_power_w", "modulation_snu", "linewidth_hz", "clock_hz"});
  auto& d = s.detector;
  d.det_snu = number_or(j, path, "det_snu", d.det_snu);
  check_positive(d.det_snu, path, "det_snu");
  d.nep = number_or(j, path, "nep_w_sqrthz", d.nep);
  check_nonnegative(d.nep, path, "nep_w_sqrthz");
  d.bandwidth = number_or(j, path, "bandwidth_hz", d.bandwidth);
  check_positive(d.bandwidth, path, "bandwidth_hz");
  d.lo_gate_time = number_or(j, path, "lo_gate_time_s", d.lo_gate_time);
  check_positive(d.lo_gate_time, path, "lo_gate_time_s");
  d.lo_power = number_or(j, path, "lo_power_w", d.lo_power);
  check_positive(d.lo_power, path, "lo_power_w");
  d.modulation_snu = number_or(j, path, "modulation_snu", d.modulation_snu);
  check_nonnegative(d.modulation_snu, path, "modulation_snu");
  d.linewidth = number_or(j, path, "linewidth_hz", d.linewidth);
  check_nonnegative(d.linewidth, path, "linewidth_hz");
  d.clock = number_or(j, path, "clock_hz", d.clock);
  check_positive(d.clock, path, "clock_hz");
}

void parse_extinction(const json& j, const std::string& path, Scenario& s) {
  expect_object(j, path);
  check_keys(j, path, {"alpha0_per_m"});
  s.alpha0 = number_or(j, path, "alpha0_per_m", s.alpha0);
  check_nonnegative(s.alpha0, path, "alpha0_per_m");
}

void parse_link(const json& j, const std::string& path, Scenario& s) {
  expect_object(j, path);
  const std::string kind = string_or(j, path, "kind", "");
  if (kind == "terrestrial") {
    s.kind = LinkKind::Terrestrial;
    check_keys(j, path, {"kind", "distance_m", "ground_altitude_m"});
    s.distance_m = required_number(j, path, "distance_m");
    check_positive(s.distance_m, path, "distance_m");
    s.ground_altitude_m =
        number_or(j, path, "ground_altitude_m", s.ground_altitude_m);
    check_nonnegative(s.ground_altitude_m, path, "ground_altitude_m");
  } else if (kind == "downlink") {
    s.kind = LinkKind::Downlink;
    check_keys(j, path,
               {"kind", "satellite_altitude_m", "ground_altitude_m",
                "zenith_rad", "zenith_deg", "use_refraction",
                "elongation_factor"});
    s.satellite_altitude_m = required_number(j, path, "satellite_altitude_m");
    check_positive(s.satellite_altitude_m, path, "satellite_altitude_m");
    s.ground_altitude_m =
        number_or(j, path, "ground_altitude_m", s.ground_altitude_m);
    check_nonnegative(s.ground_altitude_m, path, "ground_altitude_m");
    if (!(s.satellite_altitude_m > s.ground_altitude_m)) {
      fail(join(path, "satellite_altitude_m"),
           "must exceed ground_altitude_m");
    }
    const bool has_rad = find(j, "zenith_rad") != nullptr;
    const bool has_deg = find(j, "zenith_deg") != nullptr;
    if (has_rad && has_deg) {
      fail(path, "give zenith_rad or zenith_deg, not both");
    }
    if (has_rad) {
      s.zenith_rad = required_number(j, path, "zenith_rad");
    } else if (has_deg) {
      s.zenith_rad = required_number(j, path, "zenith_deg") *
                     std::numbers::pi / 180.0;
    }
    if (!(s.zenith_rad >= 0.0) || !(s.zenith_rad < std::numbers::pi / 2.0)) {
      fail(path, "zenith angle must lie in [0, pi/2)");
    }
    s.use_refraction = bool_or(j, path, "use_refraction", s.use_refraction);
    if (find(j, "elongation_factor")) {
      const double ef = required_number(j, path, "elongation_factor");
      if (!(ef >= 1.0)) fail(join(path, "elongation_factor"), "must be >= 1");
      s.elongation_override = ef;
    }
  } else if (kind.empty()) {
    fail(join(path, "kind"), "missing required string");
  } else {
    fail(join(path, "kind"), "expected terrestrial or downlink");
  }
}

void parse_protocol(const json& j, const std::string& path, Scenario& s) {
  expect_object(j, path);
  check_keys(j, path,
             {"mu_snu", "beta", "pe_fraction", "digitization_levels",
              "ec_success", "confidence_w", "eps_smooth", "eps_hash",
              "eps_correct", "block_size"});
  qkd::ProtocolParams p;
  p.mu = number_or(j, path, "mu_snu", p.mu);
  if (!(p.mu > 1.0)) fail(join(path, "mu_snu"), "must be > 1");
  p.beta = number_or(j, path, "beta", p.beta);
  check_unit_interval(p.beta, path, "beta");
  p.pe_fraction = number_or(j, path, "pe_fraction", p.pe_fraction);
  if (!(p.pe_fraction > 0.0) || !(p.pe_fraction < 1.0)) {
    fail(join(path, "pe_fraction"), "must be in (0, 1)");
  }
  p.digitization = number_or(j, path, "digitization_levels", p.digitization);
  if (!(p.digitization >= 2.0)) {
    fail(join(path, "digitization_levels"), "must be >= 2");
  }
  p.ec_success = number_or(j, path, "ec_success", p.ec_success);
  check_unit_interval(p.ec_success, path, "ec_success");
  p.conf_w = number_or(j, path, "confidence_w", p.conf_w);
  check_positive(p.conf_w, path, "confidence_w");
  auto epsilon = [&](const char* key, double fallback) {
    const double e = number_or(j, path, key, fallback);
    if (!(e > 0.0) || !(e < 1.0)) fail(join(path, key), "must be in (0, 1)");
    return e;
  };
  p.eps_smooth = epsilon("eps_smooth", p.eps_smooth);
  p.eps_hash = epsilon("eps_hash", p.eps_hash);
  p.eps_correct = epsilon("eps_correct", p.eps_correct);
  s.block_size = number_or(j, path, "block_size", s.block_size);
  if (!(s.block_size >= 2.0) || !(s.block_size <= 9.0e18)) {
    fail(join(path, "block_size"), "must be in [2, 9e18]");
  }
  s.protocol = p;
}

std::vector<double> build_grid(const json& j, const std::string& path,
                               const char* values_key, const char* from_key,
                               const char* to_key) {
  const json* values = find(j, values_key);
  const json* from = find(j, from_key);
  if (values && from) {
    fail(path, std::string("give ") + values_key + " or a " + from_key +
                   " range, not both");
  }
  std::vector<double> grid;
  if (values) {
    if (!values->is_array() || values->empty()) {
      fail(join(path, values_key), "expected a nonempty array");
    }
    for (std::size_t i = 0; i < values->size(); ++i) {
      grid.push_back(require_number(
          (*values)[i], join(path, values_key) + "[" + std::to_string(i) +
                            "]"));
    }
  } else if (from) {
    const double a = required_number(j, path, from_key);
    const double b = required_number(j, path, to_key);
    const double pts = number_or(j, path, "points", 2.0);
    if (!(pts >= 1.0) || pts != std::floor(pts) || pts > 1e7) {
      fail(join(path, "points"), "must be an integer in [1, 1e7]");
    }
    const std::string spacing = string_or(j, path, "spacing", "linear");
    const int n = static_cast<int>(pts);
    if (n == 1) {
      if (a != b) fail(path, "single-point range needs from == to");
      grid.push_back(a);
    } else if (spacing == "linear") {
      for (int i = 0; i < n; ++i) {
        grid.push_back(a + (b - a) * i / (n - 1));
      }
    } else if (spacing == "log") {
      if (!(a > 0.0) || !(b > 0.0)) {
        fail(path, "log spacing needs positive endpoints");
      }
      const double la = std::log(a);
      const double lb = std::log(b);
      for (int i = 0; i < n; ++i) {
        grid.push_back(std::exp(la + (lb - la) * i / (n - 1)));
      }
      grid.front() = a;
      grid.back() = b;
    } else {
      fail(join(path, "spacing"), "expected linear or log");
    }
  } else {
    fail(path, std::string("missing ") + values_key + " or " + from_key);
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      fail(path, "grid must be strictly increasing");
    }
  }
  return grid;
}

void parse_sweep(const json& j, const std::string& path, Scenario& s) {
  expect_object(j, path);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string axis = it.key();
    const std::string axis_path = join(path, axis);
    const json& spec = it.value();
    expect_object(spec, axis_path);
    std::vector<double> grid;
    if (axis == "z" || axis == "h" || axis == "a_R") {
      check_keys(spec, axis_path,
                 {"values_m", "from_m", "to_m", "points", "spacing"});
      grid = build_grid(spec, axis_path, "values_m", "from_m", "to_m");
      for (double v : grid) {
        if (!(v > 0.0)) fail(axis_path, "values must be > 0");
      }
      if (axis == "z" && s.kind != LinkKind::Terrestrial) {
        fail(axis_path, "z sweep needs a terrestrial link");
      }
      if (axis == "h" && s.kind != LinkKind::Downlink) {
        fail(axis_path, "h sweep needs a downlink");
      }
    } else if (axis == "theta") {
      check_keys(spec, axis_path,
                 {"values_rad", "from_rad", "to_rad", "values_deg",
                  "from_deg", "to_deg", "points", "spacing"});
      const bool deg = find(spec, "values_deg") || find(spec, "from_deg");
      grid = deg ? build_grid(spec, axis_path, "values_deg", "from_deg",
                              "to_deg")
                 : build_grid(spec, axis_path, "values_rad", "from_rad",
                              "to_rad");
      if (deg) {
        for (double& v : grid) v *= std::numbers::pi / 180.0;
      }
      for (double v : grid) {
        if (!(v >= 0.0) || !(v < std::numbers::pi / 2.0)) {
          fail(axis_path, "zenith values must lie in [0, pi/2)");
        }
      }
      if (s.kind != LinkKind::Downlink) {
        fail(axis_path, "theta sweep needs a downlink");
      }
    } else if (axis == "N") {
      check_keys(spec, axis_path,
                 {"values", "from", "to", "points", "spacing"});
      grid = build_grid(spec, axis_path, "values", "from", "to");
      for (double v : grid) {
        if (!(v >= 2.0) || !(v <= 9.0e18)) {
          fail(axis_path, "block sizes must lie in [2, 9e18]");
        }
      }
      if (!s.protocol) fail(axis_path, "N sweep needs a protocol section");
    } else {
      fail(axis_path, "unknown sweep axis (expected z, h, theta, N or a_R)");
    }
    s.sweep.emplace(axis, SweepAxis{std::move(grid)});
  }
}

}  // namespace

const std::vector<std::string>& known_axes() {
  static const std::vector<std::string> axes{"z", "h", "theta", "N", "a_R"};
  return axes;
}

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "parse error at line L, column C: ..."
    throw SchemaError(e.what());
  }
  expect_object(j, "scenario");

  check_keys(j, "",
             {"schema_version", "name", "beam", "turbulence", "sky",
              "receiver", "detector", "extinction", "link", "protocol",
              "sweep"});

  Scenario s;
  if (const json* v = find(j, "schema_version")) {
    if (!v->is_number_integer() || v->get<int>() != 1) {
      fail("schema_version", "this build reads schema version 1");
    }
  }
  s.name = string_or(j, "", "name", "");

  if (const json* v = find(j, "beam")) parse_beam(*v, "beam", s);
  if (const json* v = find(j, "turbulence")) {
    parse_turbulence(*v, "turbulence", s);
  }
  if (const json* v = find(j, "sky")) parse_sky(*v, "sky", s);
  if (const json* v = find(j, "receiver")) parse_receiver(*v, "receiver", s);
  if (const json* v = find(j, "detector")) parse_detector(*v, "detector", s);
  if (const json* v = find(j, "extinction")) {
    parse_extinction(*v, "extinction", s);
  }
  const json* link = find(j, "link");
  if (!link) fail("link", "missing required object");
  parse_link(*link, "link", s);
  if (const json* v = find(j, "protocol")) parse_protocol(*v, "protocol", s);
  if (const json* v = find(j, "sweep")) parse_sweep(*v, "sweep", s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace fsl::scn
