#include <cmath>
#include <vector>

#include <doctest.h>

#include "fsl/atmosphere.hpp"
#include "fsl/channel.hpp"
#include "fsl/errors.hpp"

using namespace fsl::chan;

namespace {
bool close(double x, double y, double rel, double abs = 0.0) {
  return std::fabs(x - y) <= std::max(abs, rel * std::fabs(y));
}
const fsl::beam::BeamGeometry kRef{0.05, 800e-9, 0.0};
}  // namespace

TEST_CASE("analytic aperture transmissivity") {
  // w_lt = a_R collects 1 - exp(-2)
  CHECK(close(eta_longterm_analytic(0.05, 0.05), 1.0 - std::exp(-2.0),
              1e-15));
  // reference-chain values at 10 km (night constant Cn2, within-coherence)
  const double r2 = fsl::atm::rytov(1.28e-14, 800e-9, 1e4);
  const double wlt = fsl::beam::long_term_waist(
      kRef, 1e4, r2, 1e-3, fsl::beam::SpreadRegime::WithinCoherence);
  CHECK(close(eta_longterm_analytic(wlt, 0.05), 0.015172085748556552,
              1e-12));
  CHECK(close(eta_longterm_analytic(wlt, 0.30), 0.42326993044726136,
              1e-12));
  // tiny aperture limit: eta ~ 2 a^2 / w^2
  CHECK(close(eta_longterm_analytic(10.0, 1e-4), 2e-8 / 100.0, 1e-6));
}

TEST_CASE("numerical transmissivity tracks the analytic lower bound") {
  const double z = 1e4;
  const double r2 = fsl::atm::rytov(1.28e-14, 800e-9, z);
  const double wlt = fsl::beam::long_term_waist(
      kRef, z, r2, 1e-3, fsl::beam::SpreadRegime::WithinCoherence);
  const double analytic = eta_longterm_analytic(wlt, 0.05);
  fsl::num::QuadratureSpec spec;
  spec.rel_tol = 1e-7;
  spec.abs_tol = 1e-12;
  const double num100 =
      eta_longterm_numerical(kRef, z, r2, 1e-3, 0.05, 100.0, spec);
  const double num20 =
      eta_longterm_numerical(kRef, z, r2, 1e-3, 0.05, 20.0, spec);
  CHECK(analytic <= num100 * (1.0 + 1e-9) + 1e-12);
  // smaller reference aperture normalizes by less total power
  CHECK(num20 >= num100 * (1.0 - 1e-9));
  CHECK(num100 > 0.0);
  CHECK(num100 < 1.0);
}

TEST_CASE("mean irradiance profiles decay monotonically") {
  const double z = 1e4;
  const double r2 = fsl::atm::rytov(1.28e-14, 800e-9, z);
  fsl::num::QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  double prev = 1e300;
  for (double r : {0.0, 0.1, 0.3, 0.6, 1.2}) {
    const double i = mean_irradiance(r, kRef, z, r2, 1e-3,
                                     fsl::beam::SpreadRegime::WithinCoherence,
                                     spec);
    CHECK(i >= 0.0);
    CHECK(i < prev * (1.0 + 1e-9));
    prev = i;
  }
}

TEST_CASE("beer-lambert extinction") {
  // independently computed 5e-6 * exp(-30/6600) * 1e4
  CHECK(close(eta_atmospheric(5e-6, 30.0, 1e4), 0.9514451468697274, 1e-12));
  CHECK(eta_atmospheric(5e-6, 30.0, 0.0) == 1.0);
  // higher station altitude thins the extinction
  CHECK(eta_atmospheric(5e-6, 2000.0, 1e4) > eta_atmospheric(5e-6, 30.0, 1e4));
}

TEST_CASE("slant extinction over a sampled path") {
  // constant altitude: must agree with the closed horizontal form
  std::vector<PathSample> flat{{0.0, 30.0}, {5e3, 30.0}, {1e4, 30.0}};
  CHECK(close(eta_atmospheric_slant(5e-6, flat),
              eta_atmospheric(5e-6, 30.0, 1e4), 1e-12));
  // climbing path attenuates less than staying at the ground
  std::vector<PathSample> climb{{0.0, 30.0}, {5e3, 3000.0}, {1e4, 8000.0}};
  CHECK(eta_atmospheric_slant(5e-6, climb) >
        eta_atmospheric(5e-6, 30.0, 1e4));
}

TEST_CASE("local-oscillator mode matching") {
  CHECK(close(eta_llo(0.05, 0.05), 1.0 - std::exp(-1.0), 1e-15));
  CHECK(eta_llo(0.05, 1.0) < 0.01);
}

TEST_CASE("receiver-generated photons") {
  const DetectorElectronics det{};
  const double theta = detector_photons(det, 800e-9);
  CHECK(close(theta, 0.0007249127857261501, 1e-12));
  CHECK(close(extra_photons_tlo(det, 800e-9, 0.5), theta / 0.5, 1e-15));
  // LLO adds the phase-noise term on top of Theta
  const double llo = extra_photons_llo(det, 800e-9, 0.5);
  CHECK(llo > theta);
  CHECK_THROWS_AS(extra_photons_tlo(det, 800e-9, 0.0), fsl::DomainError);
}

TEST_CASE("budget assembly") {
  const LinkBudget b = assemble_budget({.eta_longterm = 0.2,
                                        .eta_atmosphere = 0.9,
                                        .eta_efficiency = 0.5,
                                        .eta_coherent = 0.63,
                                        .n_background = 1e-10,
                                        .n_extra = 1e-3});
  CHECK(close(b.eta_total, 0.2 * 0.9 * 0.5 * 0.63, 1e-15));
  CHECK(close(b.loss_db, -10.0 * std::log10(b.eta_total), 1e-15));
  CHECK(close(b.n_thermal, 0.5 * 1e-10 + 1e-3, 1e-15));
  CHECK(close(b.n_eve, b.n_thermal / (1.0 - b.eta_total), 1e-15));
  CHECK_THROWS_AS(assemble_budget({.eta_longterm = 1.0,
                                   .eta_atmosphere = 1.0,
                                   .eta_efficiency = 1.0,
                                   .eta_coherent = 1.0,
                                   .n_background = 0.0,
                                   .n_extra = 0.0}),
                  fsl::DomainError);
  CHECK_THROWS_AS(assemble_budget({.eta_longterm = 1.2,
                                   .eta_atmosphere = 1.0,
                                   .eta_efficiency = 1.0,
                                   .eta_coherent = 1.0,
                                   .n_background = 0.0,
                                   .n_extra = 0.0}),
                  fsl::DomainError);
}
