#include "fsl/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fsl/atmosphere.hpp"
#include "fsl/beam.hpp"
#include "fsl/capacity.hpp"
#include "fsl/channel.hpp"
#include "fsl/cvqkd.hpp"
#include "fsl/errors.hpp"
#include "fsl/satellite.hpp"

namespace fsl::run {

namespace {

using nlohmann::ordered_json;

// Shortest round-trip formatting keeps CSV output byte-stable across runs.
std::string fmt(double x) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

num::QuadratureSpec scaled_spec(double tolerance, double rel = 1e-9,
                                double abs = 1e-12) {
  num::QuadratureSpec q;
  q.rel_tol = rel * tolerance;
  q.abs_tol = abs * tolerance;
  return q;
}

// Index-sharded worker pool; results keyed by index stay deterministic
// regardless of completion order.  fn must not throw.
void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& fn) {
  unsigned workers = jobs ? jobs : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, count ? count : 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// A derived quantity that may fail its own domain check without spoiling
// the rest of the result document.
struct Quantity {
  std::optional<double> value;
  std::string error;
};

Quantity guarded(const std::function<double()>& f) {
  Quantity q;
  try {
    q.value = f();
  } catch (const std::exception& e) {
    q.error = e.what();
  }
  return q;
}

std::string cell(const Quantity& q) { return q.value ? fmt(*q.value) : ""; }

struct PointResult {
  std::string link_kind;
  double propagation_distance = 0.0;  // terrestrial z or slant range, m
  std::optional<double> optical_length;
  std::optional<double> elongation;
  double rytov2 = 0.0;
  std::optional<double> scint_index;  // downlink only
  std::optional<double> zi;           // terrestrial only
  std::optional<double> rho0;         // terrestrial only
  std::string turb_regime;

  double spot_radius = 0.0;
  double long_term_waist = 0.0;
  std::string spread_branch;
  std::optional<double> sigma_pe2;
  Quantity sigma_tb2;  // terrestrial only

  chan::LinkBudget budget;

  Quantity pure_loss_upper;
  Quantity thermal_upper;
  Quantity rci_lower;
  Quantity rci_unfloored;

  bool has_protocol = false;
  Quantity mutual_information;
  Quantity holevo;
  Quantity asymptotic;
  Quantity comp_rate;
  std::optional<qkd::ComposableRate> comp;
  double block_size = 0.0;
  double clock_hz = 0.0;
};

const char* regime_name(atm::TurbulenceRegime r) {
  return r == atm::TurbulenceRegime::ModerateStrong ? "moderate_strong"
                                                    : "weak";
}

double coherent_detection_factor(const chan::ReceiverConfig& r) {
  if (r.eta_cd_override) return *r.eta_cd_override;
  if (r.lo_mode == chan::LoMode::Local) {
    return chan::eta_llo(r.aperture_radius, r.lo_spot_radius);
  }
  return 1.0;
}

double extra_photons(const scn::Scenario& s, double eta_total) {
  if (s.receiver.extra_photons_override) {
    return *s.receiver.extra_photons_override;
  }
  switch (s.receiver.lo_mode) {
    case chan::LoMode::Transmitted:
      return chan::extra_photons_tlo(s.detector, s.beam.wavelength, eta_total);
    case chan::LoMode::Local:
      return chan::extra_photons_llo(s.detector, s.beam.wavelength, eta_total);
    case chan::LoMode::Ideal:
      break;
  }
  return 0.0;
}

double background_photons(const scn::Scenario& s) {
  if (s.background_override) return *s.background_override;
  return atm::background_photons(s.sky, s.beam.wavelength,
                                 s.receiver.filter_bandwidth_nm,
                                 s.receiver.gate_time, s.receiver.fov,
                                 s.receiver.aperture_radius);
}

PointResult eval_point(const scn::Scenario& s, const RunOptions& opt) {
  PointResult r;
  const num::QuadratureSpec spec = scaled_spec(opt.tolerance);
  const double lambda = s.beam.wavelength;

  if (s.kind == scn::LinkKind::Terrestrial) {
    r.link_kind = "terrestrial";
    const double z = s.distance_m;
    r.propagation_distance = z;
    const double cn2 =
        s.profile.model == atm::TurbulenceProfile::Model::Constant
            ? s.profile.cn2
            : atm::cn2_hv(s.ground_altitude_m, s.profile.wind_speed,
                          s.profile.ground_cn2);
    r.rytov2 = atm::rytov(cn2, lambda, z, atm::WaveKind::Plane);
    r.turb_regime = regime_name(atm::classify(r.rytov2));
    const double zi =
        atm::coherence_length_zi(cn2, lambda, s.profile.inner_scale);
    r.zi = zi;
    r.rho0 =
        atm::spatial_coherence_radius(cn2, lambda, z, atm::WaveKind::Plane);
    const beam::SpreadRegime branch = beam::select_spread_regime(z, zi);
    r.spread_branch = branch == beam::SpreadRegime::WithinCoherence
                          ? "within_coherence"
                          : "beyond_coherence";
    r.spot_radius = beam::beam_parameters(s.beam, z).spot_radius;
    r.long_term_waist = beam::long_term_waist(s.beam, z, r.rytov2,
                                              s.profile.inner_scale, branch);
    r.sigma_pe2 = beam::wander_pointing(z, s.pointing_jitter_rad2);
    r.sigma_tb2 = guarded([&] {
      return beam::wander_turbulence(s.beam, z, cn2, r.rytov2,
                                     s.profile.outer_scale, spec);
    });

    const double eta_lt = chan::eta_longterm_analytic(
        r.long_term_waist, s.receiver.aperture_radius);
    const double eta_atm =
        chan::eta_atmospheric(s.alpha0, s.ground_altitude_m, z);
    const double eta_cd = coherent_detection_factor(s.receiver);
    const double eta_total =
        eta_lt * eta_atm * s.receiver.efficiency * eta_cd;
    r.budget = chan::assemble_budget(
        {.eta_longterm = eta_lt,
         .eta_atmosphere = eta_atm,
         .eta_efficiency = s.receiver.efficiency,
         .eta_coherent = eta_cd,
         .n_background = background_photons(s),
         .n_extra = extra_photons(s, eta_total)});
  } else {
    r.link_kind = "downlink";
    sat::SatelliteGeometry g{s.satellite_altitude_m, s.ground_altitude_m,
                             s.zenith_rad};
    sat::DownlinkConfig cfg;
    cfg.beam = s.beam;
    cfg.receiver = s.receiver;
    cfg.detector = s.detector;
    cfg.turbulence = s.profile;
    cfg.sky = s.sky;
    cfg.alpha0 = s.alpha0;
    cfg.background_override = s.background_override;
    cfg.use_refraction = s.use_refraction;
    cfg.elongation_override = s.elongation_override;
    cfg.quad = spec;
    const sat::DownlinkBudget db = sat::downlink_budget(g, cfg);
    r.propagation_distance = db.slant_range;
    r.optical_length = db.optical_length;
    r.elongation = db.elongation;
    r.rytov2 = db.rytov2_slant;
    r.scint_index = db.scintillation_index;
    r.turb_regime = regime_name(db.regime);
    r.spot_radius = beam::beam_parameters(s.beam, db.slant_range).spot_radius;
    r.long_term_waist = db.long_term_waist;
    r.spread_branch = "within_coherence";
    r.sigma_pe2 = beam::wander_pointing(db.slant_range,
                                        s.pointing_jitter_rad2);
    r.budget = db.budget;
  }

  const cap::ChannelPoint ch{r.budget.eta_total, r.budget.n_thermal};
  r.pure_loss_upper = guarded([&] { return cap::plob_pure_loss(ch.eta); });
  r.thermal_upper = guarded([&] { return cap::thermal_upper_bound(ch); });
  r.rci_lower = guarded([&] { return cap::rci_lower_bound(ch); });
  r.rci_unfloored =
      guarded([&] { return cap::rci_lower_bound_unfloored(ch); });

  if (s.protocol) {
    r.has_protocol = true;
    const qkd::ProtocolParams& p = *s.protocol;
    r.block_size = s.block_size;
    r.clock_hz = s.detector.clock;
    r.mutual_information =
        guarded([&] { return qkd::mutual_information(p.mu, ch.eta, ch.n_thermal); });
    r.holevo =
        guarded([&] { return qkd::holevo_bound(p.mu, ch.eta, ch.n_thermal); });
    r.asymptotic =
        guarded([&] { return qkd::asymptotic_rate(p, ch.eta, ch.n_thermal); });
    try {
      r.comp = qkd::composable_rate(p, ch.eta, ch.n_thermal, s.block_size);
      r.comp_rate.value = r.comp->rate;
    } catch (const std::exception& e) {
      r.comp_rate.error = e.what();
    }
  }
  return r;
}

void put(ordered_json& obj, const char* key, const Quantity& q) {
  if (q.value) {
    obj[key] = *q.value;
  } else {
    obj[key] = ordered_json{{"error", q.error}};
  }
}

}  // namespace

std::string evaluate_json(const scn::Scenario& s, const RunOptions& opt) {
  const PointResult r = eval_point(s, opt);

  ordered_json doc;
  doc["schema_version"] = 1;
  if (!s.name.empty()) doc["name"] = s.name;

  ordered_json link;
  link["kind"] = r.link_kind;
  link["propagation_distance_m"] = r.propagation_distance;
  if (r.optical_length) link["optical_length_m"] = *r.optical_length;
  if (r.elongation) link["elongation"] = *r.elongation;
  doc["link"] = link;

  ordered_json turb;
  turb["rytov2"] = r.rytov2;
  if (r.scint_index) turb["scintillation_index"] = *r.scint_index;
  turb["regime"] = r.turb_regime;
  if (r.zi) turb["coherence_distance_m"] = *r.zi;
  if (r.rho0) turb["spatial_coherence_radius_m"] = *r.rho0;
  doc["turbulence"] = turb;

  ordered_json bm;
  bm["spot_radius_m"] = r.spot_radius;
  bm["long_term_waist_m"] = r.long_term_waist;
  bm["spread_branch"] = r.spread_branch;
  if (r.sigma_pe2) bm["wander_pointing_m2"] = *r.sigma_pe2;
  if (r.link_kind == "terrestrial") {
    put(bm, "wander_turbulence_m2", r.sigma_tb2);
  }
  doc["beam"] = bm;

  ordered_json bud;
  bud["eta_longterm"] = r.budget.eta_longterm;
  bud["eta_atmosphere"] = r.budget.eta_atmosphere;
  bud["eta_efficiency"] = r.budget.eta_efficiency;
  bud["eta_coherent"] = r.budget.eta_coherent;
  bud["eta_total"] = r.budget.eta_total;
  bud["loss_db"] = r.budget.loss_db;
  bud["n_background"] = r.budget.n_background;
  bud["n_extra"] = r.budget.n_extra;
  bud["n_thermal"] = r.budget.n_thermal;
  bud["n_eve"] = r.budget.n_eve;
  doc["budget"] = bud;

  ordered_json bounds;
  put(bounds, "pure_loss_upper", r.pure_loss_upper);
  put(bounds, "thermal_upper", r.thermal_upper);
  put(bounds, "rci_lower", r.rci_lower);
  put(bounds, "rci_lower_unfloored", r.rci_unfloored);
  doc["bounds"] = bounds;

  if (r.has_protocol) {
    ordered_json q;
    put(q, "mutual_information", r.mutual_information);
    put(q, "holevo_bound", r.holevo);
    put(q, "asymptotic_rate", r.asymptotic);
    ordered_json comp;
    if (r.comp) {
      comp["block_size"] = r.comp->block_size;
      comp["m_pe"] = r.comp->m_pe;
      comp["n_key"] = r.comp->n_key;
      comp["rate_per_use"] = r.comp->rate;
      comp["rate_unclamped"] = r.comp->rate_unclamped;
      comp["rate_bits_per_second"] = r.comp->rate * r.clock_hz;
      comp["rate_pe"] = r.comp->rate_pe;
      comp["delta_aep"] = r.comp->delta_aep;
      comp["omega_terms"] = r.comp->omega_terms;
      comp["eps_total"] = r.comp->eps_total;
      comp["worst_case_eta"] = r.comp->worst.eta;
      comp["worst_case_photons"] = r.comp->worst.n_thermal;
      comp["eps_pe"] = r.comp->worst.eps_pe;
    } else {
      comp["error"] = r.comp_rate.error;
    }
    q["composable"] = comp;
    doc["cvqkd"] = q;
  }
  return doc.dump(2) + "\n";
}

namespace {

const char kSweepHeader[] =
    "axis,value,eta_longterm,eta_atmosphere,eta_efficiency,eta_coherent,"
    "eta_total,loss_db,n_background,n_extra,n_thermal,rytov2,"
    "scintillation_index,long_term_waist_m,spread_branch,pure_loss_upper,"
    "thermal_upper,rci_lower,mutual_information,holevo_bound,"
    "asymptotic_rate,composable_rate,composable_rate_hz,error";

void apply_axis(scn::Scenario& s, const std::string& axis, double v) {
  if (axis == "z") {
    s.distance_m = v;
  } else if (axis == "h") {
    s.satellite_altitude_m = v;
  } else if (axis == "theta") {
    s.zenith_rad = v;
  } else if (axis == "N") {
    s.block_size = v;
  } else if (axis == "a_R") {
    s.receiver.aperture_radius = v;
  } else {
    throw SchemaError("unknown sweep axis: " + axis);
  }
}

}  // namespace

std::string sweep_csv(const scn::Scenario& s, const std::string& axis,
                      const RunOptions& opt) {
  const auto it = s.sweep.find(axis);
  if (it == s.sweep.end()) {
    throw SchemaError("sweep axis not declared in the scenario: " + axis);
  }
  const std::vector<double>& grid = it->second.values;

  struct Slot {
    PointResult r;
    std::string fatal;
    bool ok = false;
  };
  std::vector<Slot> slots(grid.size());
  parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
    scn::Scenario point = s;
    apply_axis(point, axis, grid[i]);
    try {
      slots[i].r = eval_point(point, opt);
      slots[i].ok = true;
    } catch (const std::exception& e) {
      slots[i].fatal = e.what();
    }
  });

  std::string out = kSweepHeader;
  out += '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Slot& slot = slots[i];
    if (!slot.ok) {
      std::vector<std::string> cells(24, "");
      cells[0] = axis;
      cells[1] = fmt(grid[i]);
      cells[23] = csv_escape(slot.fatal);
      append_row(out, cells);
      continue;
    }
    const PointResult& r = slot.r;
    std::vector<std::string> cells;
    cells.reserve(24);
    cells.push_back(axis);
    cells.push_back(fmt(grid[i]));
    cells.push_back(fmt(r.budget.eta_longterm));
    cells.push_back(fmt(r.budget.eta_atmosphere));
    cells.push_back(fmt(r.budget.eta_efficiency));
    cells.push_back(fmt(r.budget.eta_coherent));
    cells.push_back(fmt(r.budget.eta_total));
    cells.push_back(fmt(r.budget.loss_db));
    cells.push_back(fmt(r.budget.n_background));
    cells.push_back(fmt(r.budget.n_extra));
    cells.push_back(fmt(r.budget.n_thermal));
    cells.push_back(fmt(r.rytov2));
    cells.push_back(r.scint_index ? fmt(*r.scint_index) : "");
    cells.push_back(fmt(r.long_term_waist));
    cells.push_back(r.spread_branch);
    cells.push_back(cell(r.pure_loss_upper));
    cells.push_back(cell(r.thermal_upper));
    cells.push_back(cell(r.rci_lower));
    cells.push_back(r.has_protocol ? cell(r.mutual_information) : "");
    cells.push_back(r.has_protocol ? cell(r.holevo) : "");
    cells.push_back(r.has_protocol ? cell(r.asymptotic) : "");
    cells.push_back(r.has_protocol ? cell(r.comp_rate) : "");
    cells.push_back(r.has_protocol && r.comp_rate.value
                        ? fmt(*r.comp_rate.value * r.clock_hz)
                        : "");
    cells.push_back("");
    append_row(out, cells);
  }
  return out;
}

namespace {

std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> g;
  g.reserve(n);
  const double la = std::log(a);
  const double lb = std::log(b);
  for (int i = 0; i < n; ++i) {
    g.push_back(std::exp(la + (lb - la) * i / (n - 1)));
  }
  g.front() = a;
  g.back() = b;
  return g;
}

std::vector<double> lin_grid(double a, double b, int n) {
  std::vector<double> g;
  g.reserve(n);
  for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * i / (n - 1));
  return g;
}

// Reference horizontal-link parameter set (collimated 5 cm beam, 800 nm,
// night-time constant Cn^2, 30 m station altitude).
scn::Scenario reference_terrestrial(bool day) {
  scn::Scenario s;
  s.beam = beam::BeamGeometry{0.05, 800e-9, 0.0};
  s.profile = day ? atm::TurbulenceProfile::constant_day()
                  : atm::TurbulenceProfile::constant_night();
  s.sky = day ? atm::SkyRadiance::day() : atm::SkyRadiance::night();
  s.kind = scn::LinkKind::Terrestrial;
  s.ground_altitude_m = 30.0;
  s.alpha0 = 5e-6;
  return s;
}

// Reference downlink parameter set (20 cm transmitter, night H-V profile,
// mask angle 4pi/9).
scn::Scenario reference_downlink() {
  scn::Scenario s;
  s.beam = beam::BeamGeometry{0.20, 800e-9, 0.0};
  s.profile = atm::TurbulenceProfile::hv_night();
  s.sky = atm::SkyRadiance::night();
  s.kind = scn::LinkKind::Downlink;
  s.ground_altitude_m = 30.0;
  s.alpha0 = 5e-6;
  s.zenith_rad = 4.0 * std::numbers::pi / 9.0;
  s.receiver.efficiency = 0.5;
  return s;
}

qkd::ProtocolParams reference_protocol() { return {}; }

std::vector<FigureFile> figure1(const RunOptions& opt) {
  const scn::Scenario s = reference_terrestrial(false);
  const num::QuadratureSpec spec = scaled_spec(opt.tolerance);
  const double cn2 = s.profile.cn2;
  const double zi = atm::coherence_length_zi(cn2, s.beam.wavelength,
                                             s.profile.inner_scale);
  const std::vector<double> grid = log_grid(1.4e3, 2.0e5, 50);
  std::vector<std::array<double, 3>> rows(grid.size());
  parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
    const double z = grid[i];
    const double r2 = atm::rytov(cn2, s.beam.wavelength, z);
    const double wlt = beam::long_term_waist(
        s.beam, z, r2, s.profile.inner_scale,
        beam::select_spread_regime(z, zi));
    rows[i] = {beam::wander_pointing(z, s.pointing_jitter_rad2),
               beam::wander_turbulence(s.beam, z, cn2, r2,
                                       s.profile.outer_scale, spec),
               wlt * wlt};
  });
  std::string csv = "z_m,sigma_pe2_m2,sigma_tb2_m2,wlt2_m2\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    append_row(csv, {fmt(grid[i]), fmt(rows[i][0]), fmt(rows[i][1]),
                     fmt(rows[i][2])});
  }
  return {{"fig1_wander.csv", csv}};
}

std::vector<FigureFile> figure2(const RunOptions& opt) {
  const scn::Scenario s = reference_terrestrial(false);
  // highly oscillatory Hankel transforms: looser relative tolerance, tight
  // absolute floor so the power-law irradiance wings stay resolved
  const num::QuadratureSpec spec = scaled_spec(opt.tolerance, 1e-7, 1e-12);
  const double cn2 = s.profile.cn2;
  const double a_rx = 0.05;
  const std::vector<double> refs{10.0, 20.0, 50.0, 100.0};
  const std::vector<double> grid = log_grid(1.0e3, 1.2e5, 30);
  std::vector<std::array<double, 5>> rows(grid.size());
  parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
    const double z = grid[i];
    const double r2 = atm::rytov(cn2, s.beam.wavelength, z);
    const double wlt = beam::long_term_waist(
        s.beam, z, r2, s.profile.inner_scale,
        beam::SpreadRegime::WithinCoherence);
    rows[i][0] = chan::eta_longterm_analytic(wlt, a_rx);
    for (std::size_t k = 0; k < refs.size(); ++k) {
      rows[i][k + 1] = chan::eta_longterm_numerical(
          s.beam, z, r2, s.profile.inner_scale, a_rx, refs[k], spec);
    }
  });
  std::string csv =
      "z_m,eta_analytic,eta_numerical_10m,eta_numerical_20m,"
      "eta_numerical_50m,eta_numerical_100m\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    append_row(csv, {fmt(grid[i]), fmt(rows[i][0]), fmt(rows[i][1]),
                     fmt(rows[i][2]), fmt(rows[i][3]), fmt(rows[i][4])});
  }
  return {{"fig2_transmissivity.csv", csv}};
}

FigureFile fig3_panel(const std::string& filename, bool day, double eta_eff,
                      double n_ex, const RunOptions& opt) {
  scn::Scenario s = reference_terrestrial(day);
  s.receiver.aperture_radius = 0.05;
  s.receiver.efficiency = eta_eff;
  s.receiver.extra_photons_override = n_ex;
  const std::vector<double> grid = log_grid(1.0e3, 2.0e5, 60);
  struct Row {
    double eta = 0.0, loss = 0.0;
    Quantity phi, kub, klb;
  };
  std::vector<Row> rows(grid.size());
  parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
    scn::Scenario point = s;
    point.distance_m = grid[i];
    const PointResult r = eval_point(point, opt);
    rows[i] = {r.budget.eta_total, r.budget.loss_db, r.pure_loss_upper,
               r.thermal_upper, r.rci_lower};
  });
  std::string csv =
      "z_m,eta_total,loss_db,pure_loss_upper,thermal_upper,rci_lower\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    append_row(csv, {fmt(grid[i]), fmt(rows[i].eta), fmt(rows[i].loss),
                     cell(rows[i].phi), cell(rows[i].kub),
                     cell(rows[i].klb)});
  }
  return {filename, csv};
}

std::vector<FigureFile> figure3(const RunOptions& opt) {
  std::vector<FigureFile> files;
  files.push_back(fig3_panel("fig3a_night.csv", false, 1.0, 0.0, opt));
  files.push_back(fig3_panel("fig3a_day.csv", true, 1.0, 0.0, opt));
  files.push_back(fig3_panel("fig3b_night.csv", false, 0.5, 0.01, opt));
  files.push_back(fig3_panel("fig3b_day.csv", true, 0.5, 0.01, opt));
  files.push_back(fig3_panel("fig3c_night.csv", false, 0.5, 0.05, opt));
  files.push_back(fig3_panel("fig3c_day.csv", true, 0.5, 0.05, opt));

  // branch junction at the coherence distance (night, ideal receiver)
  const scn::Scenario s = reference_terrestrial(false);
  const double cn2 = s.profile.cn2;
  const double zi = atm::coherence_length_zi(cn2, s.beam.wavelength,
                                             s.profile.inner_scale);
  const double r2 = atm::rytov(cn2, s.beam.wavelength, zi);
  const double eta_atm =
      chan::eta_atmospheric(s.alpha0, s.ground_altitude_m, zi);
  auto phi_for = [&](beam::SpreadRegime regime) {
    const double wlt = beam::long_term_waist(s.beam, zi, r2,
                                             s.profile.inner_scale, regime);
    return cap::plob_pure_loss(chan::eta_longterm_analytic(wlt, 0.05) *
                               eta_atm);
  };
  const double phi_beyond = phi_for(beam::SpreadRegime::BeyondCoherence);
  const double phi_within = phi_for(beam::SpreadRegime::WithinCoherence);
  const double jump = std::fabs(phi_within - phi_beyond) /
                      std::max(phi_within, phi_beyond);
  std::string csv = "zi_m,phi_within,phi_beyond,relative_jump\n";
  append_row(csv,
             {fmt(zi), fmt(phi_within), fmt(phi_beyond), fmt(jump)});
  files.push_back({"fig3_junction.csv", csv});
  return files;
}

scn::Scenario fig4_scenario(bool day) {
  scn::Scenario s = reference_terrestrial(day);
  s.distance_m = 1.0e4;
  s.receiver.aperture_radius = 0.30;
  s.receiver.efficiency = 0.5;
  s.receiver.eta_cd_override = 0.63;
  s.receiver.extra_photons_override = 1e-3;
  s.protocol = reference_protocol();
  return s;
}

FigureFile fig4_blocks(const std::string& filename, bool day,
                       const RunOptions& opt) {
  const scn::Scenario s = fig4_scenario(day);
  const std::vector<double> grid = log_grid(1.0e6, 1.0e12, 25);
  std::vector<std::array<double, 2>> rows(grid.size());
  parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
    scn::Scenario point = s;
    point.block_size = grid[i];
    const PointResult r = eval_point(point, opt);
    rows[i] = {r.comp ? r.comp->rate : 0.0,
               r.comp ? r.comp->rate_unclamped : 0.0};
  });
  std::string csv = "block_size,composable_rate,rate_unclamped\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    append_row(csv, {fmt(grid[i]), fmt(rows[i][0]), fmt(rows[i][1])});
  }
  return {filename, csv};
}

std::vector<FigureFile> figure4(const RunOptions& opt) {
  std::vector<FigureFile> files;
  files.push_back(fig4_blocks("fig4a_night.csv", false, opt));
  files.push_back(fig4_blocks("fig4a_day.csv", true, opt));

  const std::vector<double> blocks{1e8, 1e9, 1e12};
  const std::vector<double> grid = lin_grid(0.05, 1.0, 39);
  std::vector<std::array<double, 3>> rows(grid.size());
  parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      scn::Scenario point = fig4_scenario(false);
      point.receiver.aperture_radius = grid[i];
      point.block_size = blocks[k];
      const PointResult r = eval_point(point, opt);
      rows[i][k] = r.comp ? r.comp->rate : 0.0;
    }
  });
  std::string csv = "aperture_radius_m,rate_N1e8,rate_N1e9,rate_N1e12\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    append_row(csv, {fmt(grid[i]), fmt(rows[i][0]), fmt(rows[i][1]),
                     fmt(rows[i][2])});
  }
  files.push_back({"fig4b_night.csv", csv});
  return files;
}

std::vector<FigureFile> figure5(const RunOptions& opt) {
  const num::QuadratureSpec spec = scaled_spec(opt.tolerance);
  const double lambda = 800e-9;
  const double h0 = 30.0;
  const auto night = atm::TurbulenceProfile::hv_night();
  const auto day = atm::TurbulenceProfile::hv_day();
  std::vector<FigureFile> files;

  {  // scintillation vs zenith angle at 400 km altitude
    const std::vector<double> grid = lin_grid(0.0, 1.55, 63);
    std::vector<std::array<double, 2>> rows(grid.size());
    parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
      rows[i] = {atm::scintillation_index(atm::rytov_slant(
                     night, lambda, h0, 4.0e5, grid[i], spec)),
                 atm::scintillation_index(atm::rytov_slant(
                     day, lambda, h0, 4.0e5, grid[i], spec))};
    });
    std::string csv = "zenith_rad,scint_night,scint_day\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      append_row(csv, {fmt(grid[i]), fmt(rows[i][0]), fmt(rows[i][1])});
    }
    files.push_back({"fig5a_scintillation_vs_zenith.csv", csv});
  }

  {  // scintillation vs altitude at theta = 1 rad and the mask angle
    const double mask = 4.0 * std::numbers::pi / 9.0;
    const std::vector<double> grid = log_grid(5.0e4, 1.0e6, 40);
    std::vector<std::array<double, 4>> rows(grid.size());
    parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
      const double h = grid[i];
      rows[i] = {
          atm::scintillation_index(
              atm::rytov_slant(night, lambda, h0, h, 1.0, spec)),
          atm::scintillation_index(
              atm::rytov_slant(night, lambda, h0, h, mask, spec)),
          atm::scintillation_index(
              atm::rytov_slant(day, lambda, h0, h, 1.0, spec)),
          atm::scintillation_index(
              atm::rytov_slant(day, lambda, h0, h, mask, spec))};
    });
    std::string csv =
        "altitude_m,night_theta1,night_mask,day_theta1,day_mask\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      append_row(csv, {fmt(grid[i]), fmt(rows[i][0]), fmt(rows[i][1]),
                       fmt(rows[i][2]), fmt(rows[i][3])});
    }
    files.push_back({"fig5b_scintillation_vs_altitude.csv", csv});
  }

  {  // elongated vs straight loss at the mask angle
    scn::Scenario s = reference_downlink();
    s.receiver.aperture_radius = 0.40;
    const std::vector<double> grid = log_grid(2.0e5, 1.0e6, 30);
    std::vector<std::array<double, 3>> rows(grid.size());
    parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
      scn::Scenario bent = s;
      bent.satellite_altitude_m = grid[i];
      bent.use_refraction = true;
      const PointResult rb = eval_point(bent, opt);
      scn::Scenario straight = s;
      straight.satellite_altitude_m = grid[i];
      straight.use_refraction = false;
      const PointResult rs = eval_point(straight, opt);
      rows[i] = {rb.budget.loss_db, rs.budget.loss_db,
                 rb.elongation.value_or(1.0)};
    });
    std::string csv =
        "altitude_m,loss_elongated_db,loss_straight_db,elongation\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      append_row(csv, {fmt(grid[i]), fmt(rows[i][0]), fmt(rows[i][1]),
                       fmt(rows[i][2])});
    }
    files.push_back({"fig5c_loss_vs_altitude.csv", csv});
  }
  return files;
}

scn::Scenario fig6_scenario() {
  scn::Scenario s = reference_downlink();
  s.receiver.aperture_radius = 0.70;
  s.receiver.eta_cd_override = 0.63;
  s.receiver.extra_photons_override = 1e-3;
  s.background_override = 4.75e-10;
  s.detector.clock = 1e8;
  s.protocol = reference_protocol();
  return s;
}

std::vector<FigureFile> figure6(const RunOptions& opt) {
  std::vector<FigureFile> files;
  {
    const std::vector<double> blocks{1e10, 1e11, 1e12};
    const std::vector<double> grid = log_grid(2.0e5, 1.0e6, 30);
    std::vector<std::array<double, 4>> rows(grid.size());
    parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        scn::Scenario point = fig6_scenario();
        point.satellite_altitude_m = grid[i];
        point.block_size = blocks[k];
        const PointResult r = eval_point(point, opt);
        rows[i][k] = r.comp ? r.comp->rate : 0.0;
        if (k == 0) rows[i][3] = r.pure_loss_upper.value.value_or(0.0);
      }
    });
    std::string csv =
        "altitude_m,rate_N1e10,rate_N1e11,rate_N1e12,pure_loss_upper\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      append_row(csv, {fmt(grid[i]), fmt(rows[i][0]), fmt(rows[i][1]),
                       fmt(rows[i][2]), fmt(rows[i][3])});
    }
    files.push_back({"fig6a_rate_vs_altitude.csv", csv});
  }
  {
    const std::vector<double> alts{3e5, 4e5, 5e5};
    const std::vector<double> grid = log_grid(1.0e8, 1.0e13, 26);
    std::vector<std::array<double, 3>> rows(grid.size());
    parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
      for (std::size_t k = 0; k < alts.size(); ++k) {
        scn::Scenario point = fig6_scenario();
        point.satellite_altitude_m = alts[k];
        point.block_size = grid[i];
        const PointResult r = eval_point(point, opt);
        rows[i][k] = r.comp ? r.comp->rate : 0.0;
      }
    });
    std::string csv = "block_size,rate_h300km,rate_h400km,rate_h500km\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      append_row(csv, {fmt(grid[i]), fmt(rows[i][0]), fmt(rows[i][1]),
                       fmt(rows[i][2])});
    }
    files.push_back({"fig6b_rate_vs_block.csv", csv});
  }
  return files;
}

}  // namespace

std::vector<FigureFile> figure_data(const std::string& name,
                                    const RunOptions& opt) {
  if (name == "fig1") return figure1(opt);
  if (name == "fig2") return figure2(opt);
  if (name == "fig3") return figure3(opt);
  if (name == "fig4") return figure4(opt);
  if (name == "fig5") return figure5(opt);
  if (name == "fig6") return figure6(opt);
  throw SchemaError("unknown figure name (expected fig1..fig6): " + name);
}

}  // namespace fsl::run
