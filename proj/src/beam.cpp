#include "fsl/beam.hpp"

#include <cmath>
#include <numbers>

namespace fsl::beam {

double BeamGeometry::wavenumber() const {
  return 2.0 * std::numbers::pi / wavelength;
}

double BeamGeometry::rayleigh_range() const {
  return std::numbers::pi * waist * waist / wavelength;
}

SpreadRegime select_spread_regime(double distance_m, double z_i) {
  return distance_m < z_i ? SpreadRegime::WithinCoherence
                          : SpreadRegime::BeyondCoherence;
}

double diffraction_waist(const BeamGeometry& beam, double distance_m) {
  return beam_parameters(beam, distance_m).spot_radius;
}

BeamAtReceiver beam_parameters(const BeamGeometry& beam, double distance_m) {
  if (!(beam.waist > 0.0) || !(beam.wavelength > 0.0)) {
    throw DomainError("beam_parameters: waist and wavelength must be positive");
  }
  if (distance_m < 0.0) throw DomainError("beam_parameters: negative distance");
  BeamAtReceiver r;
  r.distance = distance_m;
  r.omega0 = 1.0 - distance_m * beam.inv_curvature;
  r.lambda0 = 2.0 * distance_m / (beam.wavenumber() * beam.waist * beam.waist);
  const double denom = r.omega0 * r.omega0 + r.lambda0 * r.lambda0;
  r.spot_radius = beam.waist * std::sqrt(denom);
  if (denom > 0.0) {
    r.omega = r.omega0 / denom;
    r.lambda = r.lambda0 / denom;
  } else {
    // z = 0 with collimated beam: receiver plane is the waist itself
    r.omega = 1.0;
    r.lambda = 0.0;
  }
  return r;
}

double long_term_waist(const BeamGeometry& beam, double distance_m,
                       double rytov2, double inner_scale_m,
                       SpreadRegime regime) {
  if (rytov2 < 0.0) throw DomainError("long_term_waist: negative Rytov");
  const BeamAtReceiver r = beam_parameters(beam, distance_m);
  double spread;
  if (regime == SpreadRegime::BeyondCoherence) {
    if (!(inner_scale_m > 0.0)) {
      throw DomainError("long_term_waist: inner scale required beyond z_i");
    }
    const double qm = 35.05 * distance_m /
                      (beam.wavenumber() * inner_scale_m * inner_scale_m);
    const double q = 0.74 * rytov2 * std::pow(qm, 1.0 / 6.0);
    spread = (4.0 / 3.0) * q * r.lambda;
  } else {
    spread = 1.63 * std::pow(rytov2, 6.0 / 5.0) * r.lambda;
  }
  return r.spot_radius * std::sqrt(1.0 + spread);
}

double wander_pointing(double distance_m, double jitter_rad2) {
  if (distance_m < 0.0 || jitter_rad2 < 0.0) {
    throw DomainError("wander_pointing: negative input");
  }
  return jitter_rad2 * distance_m * distance_m;
}

double wander_turbulence(const BeamGeometry& beam, double distance_m,
                         double cn2, double rytov2, double outer_scale_m,
                         const num::QuadratureSpec& spec) {
  if (cn2 < 0.0 || rytov2 < 0.0 || !(outer_scale_m > 0.0)) {
    throw DomainError("wander_turbulence: bad turbulence parameters");
  }
  const BeamAtReceiver r = beam_parameters(beam, distance_m);
  const double kappa0 = 2.0 * std::numbers::pi / outer_scale_m;
  const double w0 = beam.waist;
  const double kw = kappa0 * w0;
  const double strength = 1.63 * std::pow(rytov2, 6.0 / 5.0) * r.lambda0;
  auto f = [&](double xi) {
    const double base = r.omega0 + (1.0 - r.omega0) * xi;
    return base * base + strength * std::pow(1.0 - xi, 16.0 / 5.0);
  };
  auto integrand = [&](double xi) {
    const double fv = f(xi);
    return xi * xi *
           (std::pow(fv, -1.0 / 6.0) -
            std::cbrt(kw) / std::pow(1.0 + kw * kw * fv, 1.0 / 6.0));
  };
  const double integral =
      num::integrate_finite(integrand, 0.0, 1.0, spec).value;
  return 7.25 * cn2 * std::pow(w0, -1.0 / 3.0) * std::pow(distance_m, 3) *
         integral;
}

}  // namespace fsl::beam
