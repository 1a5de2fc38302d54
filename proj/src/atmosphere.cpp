#include "fsl/atmosphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fsl/constants.hpp"

namespace fsl::atm {

TurbulenceProfile TurbulenceProfile::constant_night() {
  TurbulenceProfile p;
  p.model = Model::Constant;
  p.cn2 = 1.28e-14;
  return p;
}

TurbulenceProfile TurbulenceProfile::constant_day() {
  TurbulenceProfile p;
  p.model = Model::Constant;
  p.cn2 = 2.06e-14;
  return p;
}

TurbulenceProfile TurbulenceProfile::hv_night() {
  TurbulenceProfile p;
  p.model = Model::HufnagelValley;
  p.wind_speed = 21.0;
  p.ground_cn2 = 1.7e-14;
  return p;
}

TurbulenceProfile TurbulenceProfile::hv_day() {
  TurbulenceProfile p;
  p.model = Model::HufnagelValley;
  p.wind_speed = 57.0;
  p.ground_cn2 = 2.75e-14;
  return p;
}

double cn2_hv(double altitude_m, double wind_speed_mps, double ground_cn2) {
  if (altitude_m < 0.0) throw DomainError("cn2_hv: negative altitude");
  const double h = altitude_m;
  const double v = wind_speed_mps;
  return 5.94e-53 * (v / 27.0) * (v / 27.0) * std::pow(h, 10) *
             std::exp(-h / 1000.0) +
         2.7e-16 * std::exp(-h / 1500.0) + ground_cn2 * std::exp(-h / 100.0);
}

namespace {
double wavenumber(double wavelength_m) {
  if (!(wavelength_m > 0.0)) throw DomainError("non-positive wavelength");
  return 2.0 * std::numbers::pi / wavelength_m;
}
}  // namespace

double rytov(double cn2, double wavelength_m, double distance_m,
             WaveKind kind) {
  if (cn2 < 0.0 || distance_m < 0.0) {
    throw DomainError("rytov: negative Cn2 or distance");
  }
  const double k = wavenumber(wavelength_m);
  const double plane =
      1.23 * cn2 * std::pow(k, 7.0 / 6.0) * std::pow(distance_m, 11.0 / 6.0);
  return kind == WaveKind::Plane ? plane : 0.4 * plane;
}

double coherence_length_zi(double cn2, double wavelength_m,
                           double inner_scale_m) {
  if (!(cn2 > 0.0) || !(inner_scale_m > 0.0)) {
    throw DomainError("coherence_length_zi: Cn2 and l0 must be positive");
  }
  const double k = wavenumber(wavelength_m);
  return 1.0 / (cn2 * k * k * std::pow(inner_scale_m, 5.0 / 3.0));
}

double spatial_coherence_radius(double cn2, double wavelength_m,
                                double distance_m, WaveKind kind) {
  if (!(cn2 > 0.0) || !(distance_m > 0.0)) {
    throw DomainError("spatial_coherence_radius: needs Cn2 > 0, z > 0");
  }
  const double iota = kind == WaveKind::Plane ? 0.55 : 1.46;
  const double k = wavenumber(wavelength_m);
  return std::pow(iota * cn2 * k * k * distance_m, -3.0 / 5.0);
}

double rytov_slant(const TurbulenceProfile& profile, double wavelength_m,
                   double ground_altitude_m, double top_altitude_m,
                   double zenith_rad, const num::QuadratureSpec& spec) {
  if (!(top_altitude_m > ground_altitude_m)) {
    throw DomainError("rytov_slant: satellite below ground station");
  }
  if (!(zenith_rad >= 0.0) || zenith_rad >= std::numbers::pi / 2.0) {
    throw DomainError("rytov_slant: zenith angle must be in [0, pi/2)");
  }
  const double k = wavenumber(wavelength_m);
  const double h0 = ground_altitude_m;

  auto cn2_at = [&](double h) {
    return profile.model == TurbulenceProfile::Model::Constant
               ? profile.cn2
               : cn2_hv(h, profile.wind_speed, profile.ground_cn2);
  };
  // Above ~120 km every profile term is zero to double precision; keep the
  // quadrature on the region that actually carries weight.
  const double top = std::min(top_altitude_m, h0 + 2e5);
  auto integrand = [&](double h) {
    return std::pow(h - h0, 5.0 / 6.0) * cn2_at(h);
  };
  num::QuadratureSpec s = spec;
  s.abs_tol = std::min(s.abs_tol, 1e-22);  // integral is ~1e-10 in SI units
  const double moment = num::integrate_finite(integrand, h0, top, s).value;
  const double sec = 1.0 / std::cos(zenith_rad);
  return 2.25 * std::pow(k, 7.0 / 6.0) * std::pow(sec, 11.0 / 6.0) * moment;
}

double scintillation_index(double rytov2) {
  if (rytov2 < 0.0) throw DomainError("scintillation_index: negative Rytov");
  if (rytov2 == 0.0) return 0.0;
  const double s65 = std::pow(rytov2, 6.0 / 5.0);  // sigma^(12/5)
  const double e =
      0.49 * rytov2 / std::pow(1.0 + 1.11 * s65, 7.0 / 6.0) +
      0.51 * rytov2 / std::pow(1.0 + 0.69 * s65, 5.0 / 6.0);
  return std::expm1(e);
}

TurbulenceRegime classify(double strength_parameter) {
  return strength_parameter >= 1.0 ? TurbulenceRegime::ModerateStrong
                                   : TurbulenceRegime::Weak;
}

double background_photons(const SkyRadiance& sky, double wavelength_m,
                          double filter_bandwidth_nm, double gate_time_s,
                          double fov_sr, double aperture_radius_m) {
  if (sky.brightness < 0.0 || filter_bandwidth_nm < 0.0 || gate_time_s < 0.0 ||
      fov_sr < 0.0 || aperture_radius_m < 0.0) {
    throw DomainError("background_photons: negative input");
  }
  const double gamma = filter_bandwidth_nm * gate_time_s * fov_sr *
                       aperture_radius_m * aperture_radius_m;
  return std::numbers::pi * gamma * sky.brightness * wavelength_m /
         constants::hc;
}

}  // namespace fsl::atm
