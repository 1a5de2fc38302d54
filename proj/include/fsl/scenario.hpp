#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fsl/atmosphere.hpp"
#include "fsl/beam.hpp"
#include "fsl/channel.hpp"
#include "fsl/cvqkd.hpp"

namespace fsl::scn {

enum class LinkKind { Terrestrial, Downlink };

// One sweep axis declared in the scenario; values are in the axis's
// canonical SI unit (m for z/h/a_R, rad for theta, count for N).
struct SweepAxis {
  std::vector<double> values;
};

// Fully validated scenario.  Field units follow the JSON schema
// (wavelength_nm, distance_m, ...) converted to SI on load.
struct Scenario {
  int schema_version = 1;
  std::string name;

  beam::BeamGeometry beam{0.05, 800e-9, 0.0};
  atm::TurbulenceProfile profile = atm::TurbulenceProfile::constant_night();
  atm::SkyRadiance sky = atm::SkyRadiance::night();
  chan::ReceiverConfig receiver{};
  chan::DetectorElectronics detector{};
  double alpha0 = 5e-6;              // sea-level extinction, 1/m
  double pointing_jitter_rad2 = 1e-12;
  std::optional<double> background_override;  // fixed n_B

  LinkKind kind = LinkKind::Terrestrial;
  double distance_m = 1e4;           // terrestrial range
  double ground_altitude_m = 30.0;
  double satellite_altitude_m = 5e5;
  double zenith_rad = 0.0;
  bool use_refraction = true;
  std::optional<double> elongation_override;

  std::optional<qkd::ProtocolParams> protocol;
  double block_size = 1e8;

  std::map<std::string, SweepAxis> sweep;
};

// Parses and validates a scenario document.  Throws SchemaError with a
// field path (or line/column for malformed JSON).
Scenario parse_scenario(const std::string& json_text);

// Reads the file and delegates to parse_scenario; file errors surface as
// SchemaError mentioning the path.
Scenario load_scenario(const std::string& path);

// Names of the sweep axes the engine understands.
const std::vector<std::string>& known_axes();

}  // namespace fsl::scn
