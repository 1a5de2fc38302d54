#include <cmath>

#include <doctest.h>

#include "fsl/cvqkd.hpp"
#include "fsl/errors.hpp"
#include "fsl/random.hpp"
#include "oracles.hpp"

using namespace fsl::qkd;

namespace {
bool close(double x, double y, double rel, double abs = 0.0) {
  return std::fabs(x - y) <= std::max(abs, rel * std::fabs(y));
}
}  // namespace

TEST_CASE("covariance triplet of the entangled picture") {
  const CovarianceTriplet t = covariance(10.0, 0.1, 0.01);
  CHECK(close(t.a, 10.0, 1e-15));
  CHECK(close(t.b, 1.92, 1e-15));
  CHECK(close(t.c, 3.146426544510455, 1e-14));
}

TEST_CASE("mutual information at the reference point") {
  CHECK(close(mutual_information(10.0, 0.1, 0.01), 0.4562685793748303,
              1e-13));
  // no transmissivity, no information
  CHECK(mutual_information(10.0, 0.0, 0.01) == 0.0);
}

TEST_CASE("Holevo bound at the reference point, both entry points") {
  CHECK(close(holevo_bound(10.0, 0.1, 0.01), 0.4760071575510145, 1e-12));
  CHECK(close(holevo_bound(covariance(10.0, 0.1, 0.01)),
              0.4760071575510145, 1e-12));
}

TEST_CASE("Holevo bound agrees with a dense symplectic eigensolver") {
  fsl::rng::Xoshiro256pp g(555);
  for (int i = 0; i < 500; ++i) {
    const double mu = 1.1 + 29.0 * g.uniform();
    const double eta = 0.01 + 0.98 * g.uniform();
    const double n = g.uniform();
    const CovarianceTriplet t = covariance(mu, eta, n);
    const double lib = holevo_bound(t);
    const double ref = oracle::holevo_bound(t.a, t.b, t.c);
    REQUIRE(std::fabs(lib - ref) < 1e-9);
  }
}

TEST_CASE("asymptotic rate composes beta * I - chi") {
  const ProtocolParams p{};
  const double i_ab = mutual_information(p.mu, 0.1, 0.01);
  const double chi = holevo_bound(p.mu, 0.1, 0.01);
  const double rate = asymptotic_rate(p, 0.1, 0.01);
  CHECK(close(rate, p.beta * i_ab - chi, 1e-14));
  CHECK(close(rate, -0.028863949763680, 1e-10, 1e-12));  // negative here
}

TEST_CASE("worst-case confidence box") {
  const WorstCase wc = worst_case(0.1, 0.01, 10.0, 1e4, 6.34);
  // var_x = mu - 1 = 9, var_z = 2 n + 1 = 1.02
  const double sd_eta =
      2.0 * std::sqrt((2.0 * 0.1 * 0.1 + 0.1 * 1.02 / 9.0) / 1e4);
  const double sd_n = 1.02 / std::sqrt(2.0 * 1e4);
  CHECK(close(wc.eta, 0.1 - 6.34 * sd_eta, 1e-13));
  CHECK(close(wc.n_thermal, 0.01 + 6.34 * sd_n, 1e-13));
  CHECK(close(wc.eps_pe, 1.1488258115603003e-10, 1e-12));
  // the box never produces a negative transmissivity
  const WorstCase tiny = worst_case(1e-6, 0.01, 10.0, 100.0, 6.34);
  CHECK(tiny.eta == 0.0);
}

TEST_CASE("channel estimation is deterministic and unbiased") {
  const ChannelEstimate e1 = simulate_estimation(0.1, 0.01, 10.0, 100000, 7);
  const ChannelEstimate e2 = simulate_estimation(0.1, 0.01, 10.0, 100000, 7);
  CHECK(e1.eta_hat == e2.eta_hat);
  CHECK(e1.n_hat == e2.n_hat);
  const ChannelEstimate e3 = simulate_estimation(0.1, 0.01, 10.0, 100000, 8);
  CHECK(e1.eta_hat != e3.eta_hat);
  // 5-sigma bands around the true values
  const double sd_eta =
      2.0 * std::sqrt((2.0 * 0.01 + 0.1 * 1.02 / 9.0) / 1e5);
  const double sd_n = 1.02 / std::sqrt(2e5);
  CHECK(std::fabs(e1.eta_hat - 0.1) < 5.0 * sd_eta);
  CHECK(std::fabs(e1.n_hat - 0.01) < 5.0 * sd_n);
}

TEST_CASE("composable rate over block sizes at the 10 km reference link") {
  ProtocolParams p{};
  const double eta = 0.42326993044726136 * 0.9514451468697274 * 0.5 * 0.63;
  const double n = 0.5 * 1.7080355115979388e-10 + 1e-3;

  const ComposableRate r7 = composable_rate(p, eta, n, 1e7);
  CHECK(r7.rate == 0.0);
  CHECK(close(r7.rate_unclamped, -0.0217619, 2e-5));

  const ComposableRate r8 = composable_rate(p, eta, n, 1e8);
  CHECK(close(r8.rate, 0.0259954, 2e-5));
  CHECK(r8.block_size == 100000000ULL);
  CHECK(r8.m_pe == 10000000ULL);
  CHECK(r8.n_key == 90000000ULL);
  CHECK(close(r8.eps_total, 5.06788646080854e-10, 1e-12));

  CHECK(close(composable_rate(p, eta, n, 3e8).rate, 0.0358036, 2e-5));
  CHECK(close(composable_rate(p, eta, n, 1e9).rate, 0.0419891, 2e-5));
  CHECK(close(composable_rate(p, eta, n, 1e12).rate, 0.0494062, 2e-5));

  // more signal exchanges never hurt
  double prev = 0.0;
  for (double block : {1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12}) {
    const double rate = composable_rate(p, eta, n, block).rate;
    CHECK(rate >= prev - 1e-12);
    prev = rate;
  }
}

TEST_CASE("composable rate input validation") {
  ProtocolParams p{};
  CHECK_THROWS_AS(composable_rate(p, 0.1, 0.01, 1.0), fsl::DomainError);
  ProtocolParams bad = p;
  bad.pe_fraction = 0.0;
  CHECK_THROWS_AS(composable_rate(bad, 0.1, 0.01, 1e8), fsl::DomainError);
  bad = p;
  bad.digitization = 1.0;
  CHECK_THROWS_AS(composable_rate(bad, 0.1, 0.01, 1e8), fsl::DomainError);
  bad = p;
  bad.mu = 1.0;
  CHECK_THROWS_AS(composable_rate(bad, 0.1, 0.01, 1e8), fsl::DomainError);
}
