#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fsl/beam.hpp"
#include "fsl/numerics.hpp"

namespace fsl::chan {

enum class LoMode {
  Ideal,        // eta_cd = 1, no receiver-generated photons
  Transmitted,  // TLO: eta_cd = 1, n_ex = Theta / eta
  Local,        // LLO: eta_cd = 1 - exp(-a_R^2 / W_L0^2), n_ex = Theta + phase term
};

struct ReceiverConfig {
  double aperture_radius = 0.05;     // a_R, m
  double efficiency = 1.0;           // eta_eff
  double fov = 1e-10;                // sr
  double filter_bandwidth_nm = 1e-4; // nm (0.1 pm)
  double gate_time = 1e-8;           // s
  LoMode lo_mode = LoMode::Ideal;
  double lo_spot_radius = 0.05;      // W_L0 at the receiver, m (LLO only)
  std::optional<double> eta_cd_override;   // e.g. the 0.63 reference value
  std::optional<double> extra_photons_override;  // fixed n_ex
};

// Homodyne receiver electronics; feeds the extra-photon models.
struct DetectorElectronics {
  double det_snu = 1.0;              // nu_det (1 homodyne, 2 heterodyne)
  double nep = 6e-12;                // W / sqrt(Hz)
  double bandwidth = 1e8;            // W, Hz
  double lo_gate_time = 1e-8;        // Delta t_LO, s
  double lo_power = 0.1;             // P_LO, W
  double modulation_snu = 8.0;       // V_A in the LLO phase-noise term, SNU
  double linewidth = 1.6e3;          // l_w, Hz
  double clock = 5e6;                // C, Hz
};

// One sample of an optical path: arc length from the receiver-side station
// and the altitude above sea level at that point.
struct PathSample {
  double arc_length = 0.0;  // s, m
  double altitude = 0.0;    // h(s), m
};

struct BudgetInputs {
  double eta_longterm = 1.0;
  double eta_atmosphere = 1.0;
  double eta_efficiency = 1.0;
  double eta_coherent = 1.0;
  double n_background = 0.0;
  double n_extra = 0.0;
};

struct LinkBudget {
  double eta_longterm = 1.0;
  double eta_atmosphere = 1.0;
  double eta_efficiency = 1.0;
  double eta_coherent = 1.0;
  double eta_total = 1.0;
  double loss_db = 0.0;
  double n_background = 0.0;
  double n_extra = 0.0;
  double n_thermal = 0.0;  // eta_eff * n_B + n_ex
  double n_eve = 0.0;      // n_thermal / (1 - eta_total)
};

// Pure diffraction aperture transmissivity 1 - exp(-2 a_R^2 / w_z^2).
double eta_diffraction(const beam::BeamGeometry& beam, double distance_m,
                       double aperture_radius_m);

// Same form evaluated with the long-term (turbulent) waist.
double eta_longterm_analytic(double long_term_waist_m,
                             double aperture_radius_m);

// Mean received irradiance profile (relative units).  BeyondCoherence is the
// Gaussian of the long-term waist; WithinCoherence evaluates the
// Huygens-Fresnel transform numerically.
double mean_irradiance(double radius_m, const beam::BeamGeometry& beam,
                       double distance_m, double rytov2, double inner_scale_m,
                       beam::SpreadRegime regime,
                       const num::QuadratureSpec& spec = {});

// Aperture-integral transmissivity: the irradiance collected inside a_R
// over the total collected inside a large reference aperture.
double eta_longterm_numerical(const beam::BeamGeometry& beam,
                              double distance_m, double rytov2,
                              double inner_scale_m, double aperture_radius_m,
                              double reference_aperture_m = 100.0,
                              const num::QuadratureSpec& spec = {});

// Beer-Lambert extinction at constant altitude h0 over range z.
double eta_atmospheric(double alpha0, double ground_altitude_m,
                       double distance_m);

// Beer-Lambert extinction along a sampled altitude profile h(s); the
// piecewise-linear interpolant is integrated in closed form per segment.
double eta_atmospheric_slant(double alpha0,
                             std::span<const PathSample> path);

// LLO mode-matching efficiency between the aperture and the LO spot.
double eta_llo(double aperture_radius_m, double lo_spot_radius_m);

// Receiver-generated thermal photons for each LO strategy.  eta_total is
// the assembled channel transmissivity (TLO referral divides by it).
double detector_photons(const DetectorElectronics& det, double wavelength_m);
double extra_photons_tlo(const DetectorElectronics& det, double wavelength_m,
                         double eta_total);
double extra_photons_llo(const DetectorElectronics& det, double wavelength_m,
                         double eta_total);

// Multiply out the transmissivity chain and attach photon numbers.  Throws
// DomainError when eta_total would reach 1 (thermal referral diverges).
LinkBudget assemble_budget(const BudgetInputs& in);

}  // namespace fsl::chan
