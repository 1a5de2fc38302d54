#pragma once

#include "fsl/numerics.hpp"

namespace fsl::atm {

enum class WaveKind { Plane, Spherical };

enum class TurbulenceRegime { Weak, ModerateStrong };

// Refractive-index structure "constant": either genuinely constant (used on
// horizontal paths) or the Hufnagel-Valley altitude profile (slant paths).
struct TurbulenceProfile {
  enum class Model { Constant, HufnagelValley };
  Model model = Model::Constant;

  double cn2 = 1.28e-14;        // m^-2/3, Constant model
  double wind_speed = 21.0;     // m/s, H-V rms wind
  double ground_cn2 = 1.7e-14;  // m^-2/3, H-V ground-layer strength A
  double inner_scale = 1e-3;    // m, l0
  double outer_scale = 1.0;     // m, L0

  static TurbulenceProfile constant_night();  // Cn2 = 1.28e-14
  static TurbulenceProfile constant_day();    // Cn2 = 2.06e-14
  static TurbulenceProfile hv_night();        // v = 21,  A = 1.7e-14
  static TurbulenceProfile hv_day();          // v = 57,  A = 2.75e-14
};

// Diffuse sky brightness seen by the receiver, W m^-2 nm^-1 sr^-1.
// Defaults reproduce the reference background photon numbers at a 5 cm
// aperture (4.75e-12 night, 4.75e-7 day) to within a fraction of a percent.
struct SkyRadiance {
  double brightness = 1.5e-6;
  static SkyRadiance night() { return {1.5e-6}; }
  static SkyRadiance day() { return {1.5e-1}; }
};

// Hufnagel-Valley Cn^2(h); altitude in meters above sea level.
double cn2_hv(double altitude_m, double wind_speed_mps, double ground_cn2);

// Plane-wave Rytov variance 1.23 Cn2 k^(7/6) z^(11/6) (x0.4 for spherical).
double rytov(double cn2, double wavelength_m, double distance_m,
             WaveKind kind = WaveKind::Plane);

// Distance beyond which the transverse coherence length drops under the
// inner scale: z_i = (Cn2 k^2 l0^(5/3))^-1.
double coherence_length_zi(double cn2, double wavelength_m,
                           double inner_scale_m);

// Spatial coherence radius rho_0 = (iota Cn2 k^2 z)^(-3/5),
// iota = 0.55 (plane) or 1.46 (spherical).
double spatial_coherence_radius(double cn2, double wavelength_m,
                                double distance_m,
                                WaveKind kind = WaveKind::Plane);

// Slant-path Rytov variance through an altitude profile:
// 2.25 k^(7/6) sec^(11/6)(theta) * int (h'-h0)^(5/6) Cn2(h') dh'.
double rytov_slant(const TurbulenceProfile& profile, double wavelength_m,
                   double ground_altitude_m, double top_altitude_m,
                   double zenith_rad, const num::QuadratureSpec& spec = {});

// Saturation-corrected scintillation index as a function of the (slant)
// Rytov variance; tends to exp(0.51/0.69^(5/6)) - 1 ~ 1.0033 as s2 -> inf.
double scintillation_index(double rytov2);

// sigma^2 >= 1 marks the moderate-to-strong regime.  Horizontal links are
// classified on the Rytov variance, slant links on the scintillation index.
TurbulenceRegime classify(double strength_parameter);

// Mean thermal photons per mode collected from the sky:
// n_B = pi * Gamma * B_sky * lambda / (h c), with
// Gamma = filter_nm * gate_s * fov_sr * aperture_radius^2.
double background_photons(const SkyRadiance& sky, double wavelength_m,
                          double filter_bandwidth_nm, double gate_time_s,
                          double fov_sr, double aperture_radius_m);

}  // namespace fsl::atm
