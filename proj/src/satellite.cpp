#include "fsl/satellite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fsl/constants.hpp"
#include "fsl/errors.hpp"

namespace fsl::sat {

namespace {

constexpr double kRe = constants::earth_radius_m;
constexpr double kExtScale = constants::extinction_scale_height_m;

void check_geometry(const SatelliteGeometry& g) {
  if (!(g.altitude > g.ground_altitude)) {
    throw DomainError("satellite: altitude must exceed ground altitude");
  }
  if (g.ground_altitude < 0.0) {
    throw DomainError("satellite: negative ground altitude");
  }
  if (!(g.zenith >= 0.0) || !(g.zenith < std::numbers::pi / 2.0)) {
    throw DomainError("satellite: zenith angle outside [0, pi/2)");
  }
}

}  // namespace

const LayeredAtmosphere& LayeredAtmosphere::standard() {
  // US Standard Atmosphere 1976 pressure/temperature converted to
  // (n - 1) = 2.7505e-4 (P/P0)(T0/T) at 800 nm, tabulated at the
  // standard lapse-rate boundaries.
  static const LayeredAtmosphere table{{
      {0.0, 1.0 + 2.750500000e-04},
      {2000.0, 1.0 + 2.259887950e-04},
      {4000.0, 1.0 + 1.839211679e-04},
      {7000.0, 1.0 + 1.323630503e-04},
      {11000.0, 1.0 + 8.171279678e-05},
      {20000.0, 1.0 + 1.976749187e-05},
      {32000.0, 1.0 + 2.969656974e-06},
      {47000.0, 1.0 + 3.205617132e-07},
      {51000.0, 1.0 + 1.934806313e-07},
      {71000.0, 1.0 + 1.441980291e-08},
      {85000.0, 1.0 + 1.523271065e-09},
  }};
  return table;
}

double LayeredAtmosphere::index_at(double altitude_m) const {
  if (nodes.empty()) return 1.0;
  if (altitude_m <= nodes.front().altitude) {
    return nodes.front().refractive_index;
  }
  if (altitude_m >= nodes.back().altitude) {
    // vacuum above the top node (the top-node residual is ~1.5e-9)
    return altitude_m == nodes.back().altitude ? nodes.back().refractive_index
                                               : 1.0;
  }
  auto hi = std::upper_bound(
      nodes.begin(), nodes.end(), altitude_m,
      [](double h, const Node& n) { return h < n.altitude; });
  auto lo = hi - 1;
  const double t =
      (altitude_m - lo->altitude) / (hi->altitude - lo->altitude);
  return lo->refractive_index +
         t * (hi->refractive_index - lo->refractive_index);
}

double slant_range(const SatelliteGeometry& g) {
  const double r0 = kRe + g.ground_altitude;
  const double rs = kRe + g.altitude;
  const double s = r0 * std::sin(g.zenith);
  return std::sqrt(rs * rs - s * s) - r0 * std::cos(g.zenith);
}

namespace {

// One linear-index shell [h_a, h_b].  The Snell invariant K = n r sin(zeta)
// is conserved, so ds = dh / cos(zeta) with
// cos^2(zeta) = (g - K)(g + K) / g^2, g(h) = n(h) (Re + h).
struct Shell {
  double h_a, h_b, n_a, n_b;

  double index(double h) const {
    return n_a + (n_b - n_a) * (h - h_a) / (h_b - h_a);
  }
  double g(double h) const { return index(h) * (kRe + h); }
  double g_prime(double h) const {
    return (n_b - n_a) / (h_b - h_a) * (kRe + h) + index(h);
  }
};

// Integrates ds and exp(-h/H) ds over one shell with the substitution
// u = sqrt(h - h_a), which absorbs the grazing-incidence singularity at the
// bottom of the first shell.  Cumulative samples are appended on the way.
void trace_shell(const Shell& sh, double invariant_k,
                 const num::QuadratureSpec& spec, double& arc_total,
                 double& ext_total, std::vector<chan::PathSample>& samples) {
  // g' is linear in h, so endpoint checks rule out ducting in the shell
  if (sh.g_prime(sh.h_a) <= 0.0 || sh.g_prime(sh.h_b) <= 0.0) {
    throw DomainError("elongated_path: ducting layer (n r not increasing)");
  }
  auto sec_zeta = [&](double u) {
    const double h = sh.h_a + u * u;
    const double gv = sh.g(h);
    const double c2 = (gv - invariant_k) * (gv + invariant_k) / (gv * gv);
    if (!(c2 > 0.0)) {
      throw DomainError("elongated_path: ray turns inside a layer");
    }
    return 1.0 / std::sqrt(c2);
  };

  const double u_max = std::sqrt(sh.h_b - sh.h_a);
  constexpr int kSub = 16;
  for (int i = 0; i < kSub; ++i) {
    const double u0 = u_max * i / kSub;
    const double u1 = u_max * (i + 1) / kSub;
    arc_total +=
        num::integrate_finite(
            [&](double u) { return 2.0 * u * sec_zeta(u); }, u0, u1, spec)
            .value;
    ext_total += num::integrate_finite(
                     [&](double u) {
                       const double h = sh.h_a + u * u;
                       return 2.0 * u * std::exp(-h / kExtScale) *
                              sec_zeta(u);
                     },
                     u0, u1, spec)
                     .value;
    samples.push_back({arc_total, sh.h_a + u1 * u1});
  }
}

}  // namespace

TracedPath elongated_path(const SatelliteGeometry& g,
                          const LayeredAtmosphere& atmosphere,
                          const num::QuadratureSpec& spec) {
  check_geometry(g);
  if (atmosphere.nodes.size() < 2) {
    throw DomainError("elongated_path: atmosphere needs at least two nodes");
  }
  for (std::size_t i = 1; i < atmosphere.nodes.size(); ++i) {
    if (!(atmosphere.nodes[i].altitude > atmosphere.nodes[i - 1].altitude)) {
      throw DomainError("elongated_path: atmosphere nodes not sorted");
    }
  }

  TracedPath out;
  out.geometric_range = slant_range(g);

  const double r0 = kRe + g.ground_altitude;
  const double rs = kRe + g.altitude;
  const double n0 = atmosphere.index_at(g.ground_altitude);
  const double invariant_k = n0 * r0 * std::sin(g.zenith);

  const double top = std::min(g.altitude, atmosphere.nodes.back().altitude);
  out.samples.push_back({0.0, g.ground_altitude});

  double arc = 0.0;
  double ext = 0.0;
  double h_cursor = g.ground_altitude;
  for (std::size_t i = 1; i < atmosphere.nodes.size() && h_cursor < top; ++i) {
    const double h_b = std::min(atmosphere.nodes[i].altitude, top);
    if (h_b <= h_cursor) continue;
    Shell sh{h_cursor, h_b, atmosphere.index_at(h_cursor),
             atmosphere.index_at(h_b)};
    trace_shell(sh, invariant_k, spec, arc, ext, out.samples);
    h_cursor = h_b;
  }

  if (g.altitude > top) {
    // straight vacuum continuation; r sin(zeta) = K there.  The extinction
    // above the top node (h > 85 km) is below 3e-6 of the total and dropped.
    const double r_top = kRe + top;
    const double vac = std::sqrt(rs * rs - invariant_k * invariant_k) -
                       std::sqrt(r_top * r_top - invariant_k * invariant_k);
    arc += vac;
    out.samples.push_back({arc, g.altitude});
  }

  out.optical_length = arc;
  out.extinction_integral = ext;
  out.elongation = arc / out.geometric_range;
  return out;
}

TracedPath straight_path(const SatelliteGeometry& g) {
  check_geometry(g);
  TracedPath out;
  out.geometric_range = slant_range(g);
  out.optical_length = out.geometric_range;
  out.elongation = 1.0;

  const double r0 = kRe + g.ground_altitude;
  const double cz = std::cos(g.zenith);
  auto altitude = [&](double s) {
    return std::sqrt(r0 * r0 + s * s + 2.0 * r0 * s * cz) - kRe;
  };
  out.extinction_integral =
      num::integrate_finite(
          [&](double s) { return std::exp(-altitude(s) / kExtScale); }, 0.0,
          out.geometric_range, {})
          .value;

  constexpr int kSamples = 1024;
  out.samples.reserve(kSamples + 1);
  for (int i = 0; i <= kSamples; ++i) {
    const double s = out.geometric_range * i / kSamples;
    out.samples.push_back({s, altitude(s)});
  }
  return out;
}

DownlinkBudget downlink_budget(const SatelliteGeometry& g,
                               const DownlinkConfig& cfg,
                               const LayeredAtmosphere& atmosphere) {
  check_geometry(g);
  DownlinkBudget out;
  out.slant_range = slant_range(g);
  const double lambda = cfg.beam.wavelength;

  out.rytov2_slant =
      atm::rytov_slant(cfg.turbulence, lambda, g.ground_altitude, g.altitude,
                       g.zenith, cfg.quad);
  out.scintillation_index = atm::scintillation_index(out.rytov2_slant);
  out.regime = atm::classify(out.scintillation_index);

  // Slant links use the general-purpose spreading form with the slant Rytov
  // variance; the inner-scale branch is a horizontal-path construct.
  out.long_term_waist = beam::long_term_waist(
      cfg.beam, out.slant_range, out.rytov2_slant, cfg.turbulence.inner_scale,
      beam::SpreadRegime::WithinCoherence);
  const double eta_lt = chan::eta_longterm_analytic(
      out.long_term_waist, cfg.receiver.aperture_radius);

  double extinction = 0.0;
  if (cfg.elongation_override) {
    if (!(*cfg.elongation_override >= 1.0)) {
      throw DomainError("downlink_budget: elongation override below 1");
    }
    out.elongation = *cfg.elongation_override;
    out.optical_length = out.elongation * out.slant_range;
    extinction = straight_path(g).extinction_integral * out.elongation;
  } else if (cfg.use_refraction) {
    const TracedPath path = elongated_path(g, atmosphere, cfg.quad);
    out.optical_length = path.optical_length;
    out.elongation = path.elongation;
    extinction = path.extinction_integral;
  } else {
    const TracedPath path = straight_path(g);
    out.optical_length = path.optical_length;
    out.elongation = 1.0;
    extinction = path.extinction_integral;
  }
  const double eta_atm = std::exp(-cfg.alpha0 * extinction);

  double eta_cd = 1.0;
  if (cfg.receiver.eta_cd_override) {
    eta_cd = *cfg.receiver.eta_cd_override;
  } else if (cfg.receiver.lo_mode == chan::LoMode::Local) {
    eta_cd = chan::eta_llo(cfg.receiver.aperture_radius,
                           cfg.receiver.lo_spot_radius);
  }

  const double n_background =
      cfg.background_override
          ? *cfg.background_override
          : atm::background_photons(cfg.sky, lambda,
                                    cfg.receiver.filter_bandwidth_nm,
                                    cfg.receiver.gate_time, cfg.receiver.fov,
                                    cfg.receiver.aperture_radius);

  const double eta_total =
      eta_lt * eta_atm * cfg.receiver.efficiency * eta_cd;
  double n_extra = 0.0;
  if (cfg.receiver.extra_photons_override) {
    n_extra = *cfg.receiver.extra_photons_override;
  } else if (cfg.receiver.lo_mode == chan::LoMode::Transmitted) {
    n_extra = chan::extra_photons_tlo(cfg.detector, lambda, eta_total);
  } else if (cfg.receiver.lo_mode == chan::LoMode::Local) {
    n_extra = chan::extra_photons_llo(cfg.detector, lambda, eta_total);
  }

  out.budget = chan::assemble_budget({.eta_longterm = eta_lt,
                                      .eta_atmosphere = eta_atm,
                                      .eta_efficiency = cfg.receiver.efficiency,
                                      .eta_coherent = eta_cd,
                                      .n_background = n_background,
                                      .n_extra = n_extra});
  return out;
}

qkd::ComposableRate downlink_key_rate(const SatelliteGeometry& g,
                                      const DownlinkConfig& cfg,
                                      const qkd::ProtocolParams& protocol,
                                      double block_size,
                                      const LayeredAtmosphere& atmosphere) {
  const DownlinkBudget b = downlink_budget(g, cfg, atmosphere);
  return qkd::composable_rate(protocol, b.budget.eta_total,
                              b.budget.n_thermal, block_size);
}

}  // namespace fsl::sat
