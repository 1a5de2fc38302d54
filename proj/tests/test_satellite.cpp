#include <cmath>
#include <numbers>

#include <doctest.h>

#include "fsl/errors.hpp"
#include "fsl/satellite.hpp"

using namespace fsl::sat;

namespace {
bool close(double x, double y, double rel, double abs = 0.0) {
  return std::fabs(x - y) <= std::max(abs, rel * std::fabs(y));
}
const double kMask = 4.0 * std::numbers::pi / 9.0;  // 80 degrees
}  // namespace

TEST_CASE("geometric slant range") {
  // vertical pass: range is just the altitude difference
  CHECK(close(slant_range({5e5, 30.0, 0.0}), 5e5 - 30.0, 1e-12));
  // independently computed at the 80-degree mask angle
  CHECK(close(slant_range({5e5, 30.0, kMask}), 1694422.372171927, 1e-12));
  // increases with angle
  CHECK(slant_range({5e5, 30.0, 1.0}) > slant_range({5e5, 30.0, 0.5}));
}

TEST_CASE("standard refractive-index profile") {
  const LayeredAtmosphere& atm = LayeredAtmosphere::standard();
  CHECK(close(atm.index_at(0.0), 1.0 + 2.750500000e-04, 1e-15));
  CHECK(close(atm.index_at(85000.0), 1.0 + 1.523271065e-09, 1e-15));
  CHECK(atm.index_at(200000.0) == 1.0);
  // linear interpolation inside a layer
  const double mid = atm.index_at(1000.0);
  CHECK(mid < atm.index_at(0.0));
  CHECK(mid > atm.index_at(2000.0));
  CHECK(close(mid, 0.5 * (atm.index_at(0.0) + atm.index_at(2000.0)), 1e-12));
  // monotone decrease with altitude
  double prev = 2.0;
  for (double h : {0.0, 1e3, 5e3, 1e4, 3e4, 6e4, 8.4e4}) {
    const double n = atm.index_at(h);
    CHECK(n < prev);
    prev = n;
  }
}

TEST_CASE("ray trace elongation against reference values") {
  const SatelliteGeometry vertical{5e5, 30.0, 0.0};
  const TracedPath straight_up = elongated_path(vertical,
                                                LayeredAtmosphere::standard());
  // no bending straight up
  CHECK(close(straight_up.elongation, 1.0, 0.0, 1e-14));
  CHECK(close(straight_up.optical_length, 5e5 - 30.0, 1e-12));

  const TracedPath p45 = elongated_path({5e5, 30.0, std::numbers::pi / 4.0},
                                        LayeredAtmosphere::standard());
  CHECK(close(p45.elongation, 1.000233315, 1e-8));

  const TracedPath p80 = elongated_path({5e5, 30.0, kMask},
                                        LayeredAtmosphere::standard());
  CHECK(close(p80.elongation, 1.003267155366082, 1e-9));

  const TracedPath p85 = elongated_path({5e5, 30.0, 85.0 * std::numbers::pi /
                                                        180.0},
                                        LayeredAtmosphere::standard());
  CHECK(close(p85.elongation, 1.006420794, 1e-8));

  // elongation grows with zenith angle
  CHECK(p85.elongation > p80.elongation);
  CHECK(p80.elongation > p45.elongation);
}

TEST_CASE("extinction integrals along bent and straight paths") {
  const SatelliteGeometry vertical{5e5, 30.0, 0.0};
  const TracedPath bent0 = elongated_path(vertical,
                                          LayeredAtmosphere::standard());
  const TracedPath straight0 = straight_path(vertical);
  CHECK(close(bent0.extinction_integral, 6570.051, 1e-6));
  CHECK(close(straight0.extinction_integral, 6570.068, 1e-6));

  const SatelliteGeometry slant{5e5, 30.0, kMask};
  const TracedPath bent80 = elongated_path(slant,
                                           LayeredAtmosphere::standard());
  const TracedPath straight80 = straight_path(slant);
  CHECK(close(bent80.extinction_integral, 36804.152, 3e-5));
  CHECK(close(straight80.extinction_integral, 36686.540, 3e-5));
  // the bent ray lingers longer in the dense layers
  CHECK(bent80.extinction_integral > straight80.extinction_integral);
}

TEST_CASE("ducting profiles are rejected") {
  LayeredAtmosphere inversion;
  inversion.nodes = {{0.0, 1.0003}, {100.0, 1.0002}, {50000.0, 1.0}};
  CHECK_THROWS_AS(elongated_path({5e5, 0.0, 0.5}, inversion),
                  fsl::DomainError);
}

TEST_CASE("downlink budget at the 500 km mask-angle reference") {
  SatelliteGeometry g{5e5, 30.0, kMask};
  DownlinkConfig cfg;
  cfg.receiver.aperture_radius = 0.40;
  cfg.receiver.efficiency = 0.5;
  const DownlinkBudget db = downlink_budget(g, cfg);

  CHECK(close(db.slant_range, 1694422.372171927, 1e-12));
  CHECK(close(db.rytov2_slant, 3.2221471857623527, 1e-7));
  CHECK(close(db.scintillation_index, 1.1260438189782884, 1e-7));
  CHECK(db.regime == fsl::atm::TurbulenceRegime::ModerateStrong);
  CHECK(close(db.long_term_waist, 2.74919525793764, 1e-7));
  CHECK(close(db.elongation, 1.003267155366082, 1e-9));
  CHECK(close(db.budget.eta_longterm, 0.041455053903671546, 1e-7));
  CHECK(close(db.budget.eta_atmosphere, 0.8319185333293824, 1e-6));
  CHECK(close(db.budget.eta_total, 0.01724361382131646, 1e-6));
  CHECK(close(db.budget.loss_db, 17.633717119344396, 1e-6));
}

TEST_CASE("downlink budget with the larger receiver and fixed overrides") {
  SatelliteGeometry g{5e5, 30.0, kMask};
  DownlinkConfig cfg;
  cfg.receiver.aperture_radius = 0.70;
  cfg.receiver.efficiency = 0.5;
  cfg.receiver.eta_cd_override = 0.63;
  cfg.receiver.extra_photons_override = 1e-3;
  cfg.background_override = 4.75e-10;
  const DownlinkBudget db = downlink_budget(g, cfg);
  CHECK(close(db.budget.eta_total, 0.03186798157388563, 1e-6));
  CHECK(close(db.budget.loss_db, 14.966454426161135, 1e-6));
  CHECK(close(db.budget.n_thermal, 0.5 * 4.75e-10 + 1e-3, 1e-12));
}

TEST_CASE("unit elongation override reproduces the straight-path budget") {
  SatelliteGeometry g{5e5, 30.0, kMask};
  DownlinkConfig a;
  a.receiver.aperture_radius = 0.40;
  a.use_refraction = false;
  DownlinkConfig b = a;
  b.use_refraction = true;
  b.elongation_override = 1.0;
  const DownlinkBudget da = downlink_budget(g, a);
  const DownlinkBudget db2 = downlink_budget(g, b);
  CHECK(close(da.budget.eta_atmosphere, db2.budget.eta_atmosphere, 1e-12));
  CHECK(da.elongation == 1.0);
  CHECK(db2.elongation == 1.0);
}

TEST_CASE("downlink key rate plumbs through the finite-size machinery") {
  SatelliteGeometry g{5e5, 30.0, kMask};
  DownlinkConfig cfg;
  cfg.receiver.aperture_radius = 0.70;
  cfg.receiver.efficiency = 0.5;
  cfg.receiver.eta_cd_override = 0.63;
  cfg.receiver.extra_photons_override = 1e-3;
  cfg.background_override = 4.75e-10;
  const fsl::qkd::ComposableRate r =
      downlink_key_rate(g, cfg, {}, 1e12);
  CHECK(close(r.rate, 0.00387858101743575, 1e-6));
  CHECK(r.block_size == 1000000000000ULL);
}
