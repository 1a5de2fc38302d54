#pragma once

#include "fsl/numerics.hpp"

namespace fsl::beam {

// Transmitted Gaussian beam.  curvature 1/R0 is stored inverted so a
// collimated beam is the natural default (inv_curvature = 0).
struct BeamGeometry {
  double waist = 0.05;          // w0, m
  double wavelength = 800e-9;   // m
  double inv_curvature = 0.0;   // 1/R0, 1/m

  double wavenumber() const;      // k = 2 pi / lambda
  double rayleigh_range() const;  // z_R = pi w0^2 / lambda
};

// Beam descriptors in the receiver plane at distance z.
struct BeamAtReceiver {
  double distance = 0.0;     // z, m
  double omega0 = 1.0;       // 1 - z/R0
  double lambda0 = 0.0;      // 2z / (k w0^2)
  double omega = 1.0;        // omega0 / (omega0^2 + lambda0^2)
  double lambda = 0.0;       // lambda0 / (omega0^2 + lambda0^2) = 2z/(k w_z^2)
  double spot_radius = 0.0;  // w_z, m
};

// Long-term spreading has two published forms: one derived beyond the
// coherence distance z_i, one below it (the latter also serves as the
// general-purpose estimate).
enum class SpreadRegime { WithinCoherence, BeyondCoherence };

SpreadRegime select_spread_regime(double distance_m, double z_i);

// Free-space spot radius w_z = w0 sqrt((1 - z/R0)^2 + (z/z_R)^2).
double diffraction_waist(const BeamGeometry& beam, double distance_m);

BeamAtReceiver beam_parameters(const BeamGeometry& beam, double distance_m);

// Turbulence-broadened long-term waist.
//   BeyondCoherence: w_z sqrt(1 + (4/3) q Lambda), q = 0.74 s2 Qm^(1/6)
//   WithinCoherence: w_z sqrt(1 + 1.63 s2^(6/5) Lambda)
double long_term_waist(const BeamGeometry& beam, double distance_m,
                       double rytov2, double inner_scale_m,
                       SpreadRegime regime);

// Centroid wander from transmitter jitter: sigma_pe^2 = jitter * z^2.
// The default corresponds to ~1 urad rms off-tracking.
double wander_pointing(double distance_m, double jitter_rad2 = 1e-12);

// Turbulence-induced centroid wander variance (quadrature over the
// normalized path coordinate).
double wander_turbulence(const BeamGeometry& beam, double distance_m,
                         double cn2, double rytov2, double outer_scale_m,
                         const num::QuadratureSpec& spec = {});

}  // namespace fsl::beam
