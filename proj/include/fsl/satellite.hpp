#pragma once

#include <optional>
#include <vector>

#include "fsl/atmosphere.hpp"
#include "fsl/beam.hpp"
#include "fsl/channel.hpp"
#include "fsl/cvqkd.hpp"

namespace fsl::sat {

struct SatelliteGeometry {
  double altitude = 5e5;         // h, m above sea level
  double ground_altitude = 30.0; // h0, m
  double zenith = 0.0;           // theta, rad
};

// Piecewise-linear refractive-index profile n(h).  Nodes must be sorted by
// altitude with n*r nondecreasing (no ducting), n -> 1 above the top node.
struct LayeredAtmosphere {
  struct Node {
    double altitude = 0.0;          // m above sea level
    double refractive_index = 1.0;
  };
  std::vector<Node> nodes;

  // US Standard Atmosphere 1976 evaluated at 800 nm on 10 intervals
  // (boundaries 0, 2, 4, 7, 11, 20, 32, 47, 51, 71, 85 km).
  static const LayeredAtmosphere& standard();

  double index_at(double altitude_m) const;
};

// Geometric (straight-line) range from ground station to satellite.
double slant_range(const SatelliteGeometry& g);

struct TracedPath {
  double geometric_range = 0.0;      // straight slant range, m
  double optical_length = 0.0;       // along the (possibly bent) ray, m
  double elongation = 1.0;           // optical_length / geometric_range
  double extinction_integral = 0.0;  // int exp(-h(s)/6600) ds, m
  std::vector<chan::PathSample> samples;  // h(s) along the path
};

// Refraction ray trace through the layered atmosphere using the spherical
// Snell invariant n(r) r sin(zeta) = const; straight line above the top
// layer.  Throws DomainError if the ray would duct (n*r not monotone).
TracedPath elongated_path(const SatelliteGeometry& g,
                          const LayeredAtmosphere& atmosphere,
                          const num::QuadratureSpec& spec = {});

// Straight slant path sampled for the extinction integral (refraction off).
TracedPath straight_path(const SatelliteGeometry& g);

struct DownlinkConfig {
  beam::BeamGeometry beam{0.20, 800e-9, 0.0};   // 20 cm transmitter
  chan::ReceiverConfig receiver{};
  chan::DetectorElectronics detector{};
  atm::TurbulenceProfile turbulence = atm::TurbulenceProfile::hv_night();
  atm::SkyRadiance sky = atm::SkyRadiance::night();
  double alpha0 = 5e-6;                         // extinction coefficient, 1/m
  std::optional<double> background_override;    // fixed n_B
  bool use_refraction = true;
  std::optional<double> elongation_override;    // fixed scalar elongation
  num::QuadratureSpec quad{};                   // slant/trace quadratures
};

struct DownlinkBudget {
  chan::LinkBudget budget;
  double slant_range = 0.0;        // geometric, m
  double optical_length = 0.0;     // bent, m
  double elongation = 1.0;
  double rytov2_slant = 0.0;
  double scintillation_index = 0.0;
  double long_term_waist = 0.0;    // m
  atm::TurbulenceRegime regime = atm::TurbulenceRegime::Weak;
};

// Full downlink chain: slant Rytov variance and scintillation index,
// beam spread at the geometric range, analytic long-term transmissivity,
// refraction-elongated extinction, receiver factors, photon numbers.
DownlinkBudget downlink_budget(const SatelliteGeometry& g,
                               const DownlinkConfig& cfg,
                               const LayeredAtmosphere& atmosphere =
                                   LayeredAtmosphere::standard());

// Composable key rate over the downlink at block size N.
qkd::ComposableRate downlink_key_rate(const SatelliteGeometry& g,
                                      const DownlinkConfig& cfg,
                                      const qkd::ProtocolParams& protocol,
                                      double block_size,
                                      const LayeredAtmosphere& atmosphere =
                                          LayeredAtmosphere::standard());

}  // namespace fsl::sat
