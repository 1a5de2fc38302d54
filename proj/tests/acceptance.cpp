// Acceptance gate: fifteen end-to-end checks against reference values and
// structural properties of the link-budget and key-rate chain.  Each
// criterion prints exactly one PASS/FAIL line with the measured numbers;
// the process exit code is the number of hard failures.  Criterion 14 is a
// soft check (the reference number is order-of-magnitude only), so its
// verdict is recorded but does not affect the exit code.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "fsl/atmosphere.hpp"
#include "fsl/beam.hpp"
#include "fsl/capacity.hpp"
#include "fsl/channel.hpp"
#include "fsl/cvqkd.hpp"
#include "fsl/errors.hpp"
#include "fsl/numerics.hpp"
#include "fsl/random.hpp"
#include "fsl/satellite.hpp"
#include "oracles.hpp"

namespace {

using namespace fsl;

struct Verdict {
  int id = 0;
  bool pass = false;
  bool soft = false;
  std::string detail;
  double seconds = 0.0;
};

std::string fmt(const char* format, ...) {
  char buffer[1024];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

// Index-sharded pool; fn(i) must not throw (workers capture errors).
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  unsigned jobs = std::thread::hardware_concurrency();
  if (jobs == 0) jobs = 4;
  jobs = std::min<unsigned>(jobs, 16);
  jobs = std::min<std::size_t>(jobs, count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count;
           i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (n - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

constexpr double kNightCn2 = 1.28e-14;
constexpr double kDayCn2 = 2.06e-14;
constexpr double kLambda = 800e-9;
constexpr double kInnerScale = 1e-3;
constexpr double kAlpha0 = 5e-6;
constexpr double kGroundAlt = 30.0;

// --- 1: Rytov variance calibration ---------------------------------------
Verdict criterion01() {
  const double s1 = atm::rytov(kNightCn2, kLambda, 1384.0);
  const double s2n = atm::rytov(kNightCn2, kLambda, 1e4);
  const double s2d = atm::rytov(kDayCn2, kLambda, 1e4);
  const bool ok = std::abs(s1 - 1.0) <= 0.02 &&
                  std::abs(s2n - 37.56) <= 0.01 * 37.56 &&
                  std::abs(s2d - 60.45) <= 0.01 * 60.45;
  return {1, ok, false,
          fmt("rytov variance: sigma2(1.384 km)=%.6f (want 1.00 +/- 2%%), "
              "night(10 km)=%.4f (37.56 +/- 1%%), day(10 km)=%.4f "
              "(60.45 +/- 1%%)",
              s1, s2n, s2d)};
}

// --- 2: inner-scale coherence distance -----------------------------------
Verdict criterion02() {
  const double zi = atm::coherence_length_zi(kNightCn2, kLambda, kInnerScale);
  const bool ok = std::abs(zi - 126.7e3) <= 0.005 * 126.7e3;
  return {2, ok, false,
          fmt("coherence distance z_i=%.1f m (want 126700 +/- 0.5%%)", zi)};
}

// --- 3: analytic vs numerical long-term transmissivity -------------------
Verdict criterion03() {
  const beam::BeamGeometry b{0.05, kLambda, 0.0};
  const double zi = atm::coherence_length_zi(kNightCn2, kLambda, kInnerScale);
  const auto zs = log_grid(1e3, 120e3, 30);
  const double arefs[4] = {10.0, 20.0, 50.0, 100.0};
  num::QuadratureSpec spec;
  spec.rel_tol = 1e-7;
  spec.abs_tol = 1e-12;

  struct Row {
    double z = 0.0, analytic = 0.0;
    double numerical[4] = {0, 0, 0, 0};
    std::string error;
  };
  std::vector<Row> rows(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) {
    Row& r = rows[i];
    r.z = zs[i];
    try {
      const double s2 = atm::rytov(kNightCn2, kLambda, r.z);
      const auto regime = beam::select_spread_regime(r.z, zi);
      const double wlt =
          beam::long_term_waist(b, r.z, s2, kInnerScale, regime);
      r.analytic = chan::eta_longterm_analytic(wlt, 0.05);
      for (int a = 0; a < 4; ++a) {
        r.numerical[a] = chan::eta_longterm_numerical(
            b, r.z, s2, kInnerScale, 0.05, arefs[a], spec);
      }
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });

  int bound_ok = 0, mono_ok = 0;
  double worst_gap = 0.0, worst_z = 0.0;
  std::string error;
  for (const Row& r : rows) {
    if (!r.error.empty()) {
      error = fmt("z=%.0f m: %s", r.z, r.error.c_str());
      break;
    }
    bool bound = true;
    for (int a = 0; a < 4; ++a) {
      // 1e-9 relative slack absorbs roundoff only; the physical gaps when
      // the ordering genuinely breaks are 1e-3 .. 1e-2.
      if (r.analytic > r.numerical[a] * (1.0 + 1e-9) + 1e-12) bound = false;
      const double gap = r.numerical[a] - r.analytic;
      if (gap < worst_gap) {
        worst_gap = gap;
        worst_z = r.z;
      }
    }
    bound_ok += bound ? 1 : 0;
    bool mono = true;
    for (int a = 0; a + 1 < 4; ++a) {
      // genuine reference-aperture gaps are >= 1e-6 relative, quadrature
      // noise is ~2e-7, so 5e-7 relative slack separates the two cleanly
      if (r.numerical[a + 1] > r.numerical[a] * (1.0 + 5e-7)) mono = false;
    }
    mono_ok += mono ? 1 : 0;
  }
  if (!error.empty()) return {3, false, false, "quadrature failure: " + error};
  const bool ok = bound_ok == 30 && mono_ok == 30;
  return {3, ok, false,
          fmt("long-term transmissivity on 30-point grid 1..120 km: "
              "analytic <= numerical at %d/30 points (worst "
              "numerical-analytic gap %.3e at z=%.0f m); numerical "
              "nonincreasing in reference aperture at %d/30 points",
              bound_ok, worst_gap, worst_z, mono_ok)};
}

// --- 4: wander hierarchy --------------------------------------------------
Verdict criterion04() {
  const beam::BeamGeometry b{0.05, kLambda, 0.0};
  const double zi = atm::coherence_length_zi(kNightCn2, kLambda, kInnerScale);
  const auto zs = log_grid(1.4e3, 200e3, 50);
  int ok_count = 0;
  double min_ratio1 = 1e300, min_ratio2 = 1e300;
  for (double z : zs) {
    const double s2 = atm::rytov(kNightCn2, kLambda, z);
    const auto regime = beam::select_spread_regime(z, zi);
    const double wlt2 =
        std::pow(beam::long_term_waist(b, z, s2, kInnerScale, regime), 2);
    const double tb2 = beam::wander_turbulence(b, z, kNightCn2, s2, 1.0);
    const double pe2 = beam::wander_pointing(z);
    if (wlt2 > tb2 && tb2 > pe2) ++ok_count;
    min_ratio1 = std::min(min_ratio1, wlt2 / tb2);
    min_ratio2 = std::min(min_ratio2, tb2 / pe2);
  }
  return {4, ok_count == 50, false,
          fmt("wander hierarchy w_lt^2 > sigma_tb^2 > sigma_pe^2 at %d/50 "
              "points of 1.4..200 km (min ratios %.3g and %.3g)",
              ok_count, min_ratio1, min_ratio2)};
}

// --- 5: scintillation saturation and crossover ---------------------------
Verdict criterion05() {
  const auto night = atm::TurbulenceProfile::hv_night();
  const auto day = atm::TurbulenceProfile::hv_day();
  const double h_sat = 400e3;
  auto scint = [&](const atm::TurbulenceProfile& p, double zenith_rad) {
    const double s2 =
        atm::rytov_slant(p, kLambda, kGroundAlt, h_sat, zenith_rad);
    return atm::scintillation_index(s2);
  };
  const double deg = std::numbers::pi / 180.0;
  const double limit = atm::scintillation_index(1e12);
  const double near_graze = scint(night, 89.99 * deg);
  const double at_899 = scint(night, 89.9 * deg);

  auto crossing = [&](const atm::TurbulenceProfile& p, double lo, double hi) {
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      (scint(p, mid) < 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double cross_n = crossing(night, 0.8, 1.5);
  const double cross_d = crossing(day, 0.6, 1.3);

  const double target = 1.0033;
  const bool sat_ok = std::abs(limit - target) <= 0.005 * target &&
                      std::abs(near_graze - target) <= 0.005 * target;
  const bool cross_ok = std::abs(cross_n - 1.32) <= 0.05 &&
                        std::abs(cross_d - 1.00) <= 0.05;
  return {5, sat_ok && cross_ok, false,
          fmt("scintillation saturation: limit=%.6f, at 89.99 deg %.6f "
              "(want 1.0033 +/- 0.5%%; at 89.9 deg it is still %.4f); "
              "crossings night %.4f rad (1.32 +/- 0.05), day %.4f rad "
              "(1.00 +/- 0.05)",
              limit, near_graze, at_899, cross_n, cross_d)};
}

// --- 6: sky background photons -------------------------------------------
Verdict criterion06() {
  const auto sky = atm::SkyRadiance::night();
  const double n5 =
      atm::background_photons(sky, kLambda, 1e-4, 1e-8, 1e-10, 0.05);
  const double n30 =
      atm::background_photons(sky, kLambda, 1e-4, 1e-8, 1e-10, 0.30);
  const bool ok = std::abs(n5 - 4.75e-12) <= 0.01 * 4.75e-12 &&
                  std::abs(n30 - 1.71e-10) <= 0.01 * 1.71e-10 &&
                  std::abs(n30 / n5 - 36.0) <= 36.0 * 1e-12;
  return {6, ok, false,
          fmt("background photons: n_B(5 cm)=%.6e (4.75e-12 +/- 1%%), "
              "n_B(30 cm)=%.6e (1.71e-10 +/- 1%%), ratio=%.15f (exact 36)",
              n5, n30, n30 / n5)};
}

// --- 7: LLO mode-match loss ----------------------------------------------
Verdict criterion07() {
  const double eta = chan::eta_llo(0.05, 0.05);
  const double want = 1.0 - std::exp(-1.0);
  const bool ok = std::abs(eta - want) <= 1e-15;
  return {7, ok, false,
          fmt("eta_llo(a_R = W_L0) = %.17f vs 1 - 1/e = %.17f "
              "(|diff| = %.2e <= 1e-15)",
              eta, want, std::abs(eta - want))};
}

// --- 8: capacity bound ordering ------------------------------------------
Verdict criterion08() {
  rng::Xoshiro256pp gen(987654321ULL);
  int ok_count = 0;
  const int trials = 10000;
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double eta = 0.005 + 0.99 * gen.uniform();
    const double n = eta * gen.uniform();
    const cap::ChannelPoint p{eta, n};
    const double lb = cap::rci_lower_bound(p);
    const double ub = cap::thermal_upper_bound(p);
    const double phi = cap::plob_pure_loss(eta);
    const bool ok = lb >= 0.0 && lb <= ub + 1e-12 && ub <= phi + 1e-12;
    ok_count += ok ? 1 : 0;
    worst = std::max({worst, lb - ub, ub - phi});
  }
  // thermal-photon -> 0 limit: both bounds collapse onto the pure-loss
  // value, with the gap (dominated by h(n/(1-eta))) shrinking monotonically
  bool limit_ok = true;
  double worst_limit = 0.0;
  for (double eta : {0.1, 0.5, 0.77, 0.99}) {
    const double phi = cap::plob_pure_loss(eta);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double nbar : {1e-9, 1e-12, 1e-15}) {
      const cap::ChannelPoint p{eta, nbar};
      const double du = std::abs(cap::thermal_upper_bound(p) - phi);
      const double dl = std::abs(cap::rci_lower_bound(p) - phi);
      const double gap = std::max(du, dl);
      if (gap > prev_gap) limit_ok = false;
      prev_gap = gap;
    }
    worst_limit = std::max(worst_limit, prev_gap);
    if (prev_gap > 1e-10) limit_ok = false;
  }
  return {8, ok_count == trials && limit_ok, false,
          fmt("bound ordering 0 <= K_LB <= K_UB <= Phi at %d/%d random "
              "channels (worst violation %.2e); n->0 collapse onto Phi "
              "within %.2e bits at n=1e-15 (want <= 1e-10)",
              ok_count, trials, worst, worst_limit)};
}

// --- 9: Holevo bound vs symplectic oracle --------------------------------
Verdict criterion09() {
  rng::Xoshiro256pp gen(555000111ULL);
  const int trials = 1000;
  double max_diff = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double mu = 1.1 + 29.0 * gen.uniform();
    const double eta = 0.01 + 0.98 * gen.uniform();
    const double n = gen.uniform();
    const auto cov = qkd::covariance(mu, eta, n);
    const double lib = qkd::holevo_bound(cov);
    const double brute = oracle::holevo_bound(cov.a, cov.b, cov.c);
    max_diff = std::max(max_diff, std::abs(lib - brute));
  }
  return {9, max_diff <= 1e-9, false,
          fmt("holevo bound vs brute-force symplectic spectrum on %d random "
              "covariance triplets: max |diff| = %.3e bits (want <= 1e-9)",
              trials, max_diff)};
}

// --- 10: estimator consistency -------------------------------------------
Verdict criterion10() {
  const double eta = 0.1, n = 0.01, mu = 10.0;
  const std::uint64_t m = 100000;
  const std::size_t trials = 10000;
  std::vector<double> eta_hat(trials), n_hat(trials);
  parallel_for(trials, [&](std::size_t i) {
    const auto est = qkd::simulate_estimation(
        eta, n, mu, m, rng::derive_seed(20240817ULL, i));
    eta_hat[i] = est.eta_hat;
    n_hat[i] = est.n_hat;
  });
  double se = 0.0, sn = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    se += eta_hat[i];
    sn += n_hat[i];
  }
  const double mean_eta = se / trials;
  const double mean_n = sn / trials;
  double ss = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    ss += (eta_hat[i] - mean_eta) * (eta_hat[i] - mean_eta);
  }
  const double var_emp = ss / (trials - 1);

  const double sx2 = mu - 1.0, sz2 = 2.0 * n + 1.0;
  const double var_th =
      (4.0 / static_cast<double>(m)) * (2.0 * eta * eta + eta * sz2 / sx2);
  const double sd_n = sz2 / std::sqrt(2.0 * static_cast<double>(m));
  const double se_eta = std::sqrt(var_th / trials);
  const double se_n = sd_n / std::sqrt(static_cast<double>(trials));

  const double var_ratio = var_emp / var_th;
  const double bias_eta = mean_eta - eta;
  const double bias_n = mean_n - n;
  const bool ok = std::abs(var_ratio - 1.0) <= 0.10 &&
                  std::abs(bias_eta) <= 3.0 * se_eta &&
                  std::abs(bias_n) <= 3.0 * se_n;
  return {10, ok, false,
          fmt("estimators over %zu trials of m=1e5: Var(eta_hat) "
              "empirical/theory = %.4f (want 1 +/- 0.10); bias(eta_hat) = "
              "%.2e (%.2f sigma), bias(n_hat) = %.2e (%.2f sigma; want "
              "within 3)",
              trials, var_ratio, bias_eta, bias_eta / se_eta, bias_n,
              bias_n / se_n)};
}

// Shared 10 km reference link: night, w0=5 cm, a_R=30 cm, eta_eff=0.5,
// eta_cd=0.63, n_ex=1e-3.
chan::LinkBudget reference_10km_budget() {
  const beam::BeamGeometry b{0.05, kLambda, 0.0};
  const double z = 1e4;
  const double s2 = atm::rytov(kNightCn2, kLambda, z);
  const double zi = atm::coherence_length_zi(kNightCn2, kLambda, kInnerScale);
  const double wlt = beam::long_term_waist(
      b, z, s2, kInnerScale, beam::select_spread_regime(z, zi));
  chan::BudgetInputs in;
  in.eta_longterm = chan::eta_longterm_analytic(wlt, 0.30);
  in.eta_atmosphere = chan::eta_atmospheric(kAlpha0, kGroundAlt, z);
  in.eta_efficiency = 0.5;
  in.eta_coherent = 0.63;
  in.n_background = atm::background_photons(atm::SkyRadiance::night(),
                                            kLambda, 1e-4, 1e-8, 1e-10, 0.30);
  in.n_extra = 1e-3;
  return chan::assemble_budget(in);
}

// --- 11: composable rate vs block size -----------------------------------
Verdict criterion11() {
  const auto budget = reference_10km_budget();
  const qkd::ProtocolParams p;
  const double blocks[] = {1e6, 3e6, 1e7, 3e7, 1e8, 3e8, 1e9,
                           3e9, 1e10, 3e10, 1e11, 3e11, 1e12};
  std::vector<double> rates;
  for (double N : blocks) {
    rates.push_back(
        qkd::composable_rate(p, budget.eta_total, budget.n_thermal, N).rate);
  }
  const bool zero_at_small = rates.front() == 0.0;
  bool positive_by_1e9 = false;
  for (std::size_t i = 0; i < rates.size() && blocks[i] <= 1e9 + 0.5; ++i) {
    if (rates[i] > 0.0) positive_by_1e9 = true;
  }
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < rates.size(); ++i) {
    if (rates[i + 1] < rates[i] - 1e-15) monotone = false;
  }
  return {11, zero_at_small && positive_by_1e9 && monotone, false,
          fmt("composable rate on 10 km reference link (eta=%.4f, "
              "loss %.2f dB): rate(1e6)=%.3g, rate(1e8)=%.5g, "
              "rate(1e9)=%.5g, rate(1e12)=%.5g bits/use; zero at small N: "
              "%s, positive by N=1e9: %s, nondecreasing: %s",
              budget.eta_total, budget.loss_db, rates[0], rates[4], rates[6],
              rates[12], zero_at_small ? "yes" : "NO",
              positive_by_1e9 ? "yes" : "NO", monotone ? "yes" : "NO")};
}

// --- 12: composable security parameter -----------------------------------
Verdict criterion12() {
  const auto budget = reference_10km_budget();
  const qkd::ProtocolParams p;  // w=6.34, p_ec=0.9, eps_{s,h,cor}=1e-10
  const auto r =
      qkd::composable_rate(p, budget.eta_total, budget.n_thermal, 1e8);
  const bool ok = std::abs(r.eps_total - 4.5e-10) <= 0.2 * 4.5e-10;
  return {12, ok, false,
          fmt("security parameter eps = %.6e (want 4.5e-10 +/- 20%%, i.e. "
              "[3.6e-10, 5.4e-10]); eps_pe = %.4e",
              r.eps_total, r.worst.eps_pe)};
}

// --- 13: downlink loss at 500 km, 80 deg zenith --------------------------
Verdict criterion13() {
  sat::DownlinkConfig cfg;
  cfg.receiver.aperture_radius = 0.40;
  cfg.receiver.efficiency = 0.5;
  const sat::SatelliteGeometry g{5e5, kGroundAlt, 4.0 * std::numbers::pi / 9.0};
  const auto b = sat::downlink_budget(g, cfg);
  const double loss = b.budget.loss_db;
  const bool ok = std::abs(loss - 16.4) <= 1.5;
  return {13, ok, false,
          fmt("downlink 500 km / 80 deg zenith: total loss %.3f dB (want "
              "16.4 +/- 1.5); slant range %.1f km, elongation %.6f, "
              "scintillation index %.4f",
              loss, b.slant_range / 1e3, b.elongation,
              b.scintillation_index)};
}

// --- 14: downlink key rate at N=1e12 (soft) ------------------------------
Verdict criterion14() {
  sat::DownlinkConfig cfg;
  cfg.receiver.aperture_radius = 0.70;
  cfg.receiver.efficiency = 0.5;
  cfg.receiver.eta_cd_override = 0.63;
  cfg.receiver.extra_photons_override = 1e-3;
  cfg.background_override = 4.75e-10;
  cfg.detector.clock = 1e8;
  const sat::SatelliteGeometry g{5e5, kGroundAlt, 4.0 * std::numbers::pi / 9.0};
  const qkd::ProtocolParams p;
  const auto r = sat::downlink_key_rate(g, cfg, p, 1e12);
  const double bits_per_s = r.rate * cfg.detector.clock;
  const bool ok = std::abs(bits_per_s - 4.4e3) <= 0.5 * 4.4e3;
  return {14, ok, true,
          fmt("downlink key rate at 500 km / 80 deg / N=1e12 / 100 MHz "
              "clock: %.4e bit/s = %.4e bits/use (reference band 4.4e3 "
              "+/- 50%%); worst-case eta=%.5g, n=%.5g",
              bits_per_s, r.rate, r.worst.eta, r.worst.n_thermal)};
}

// --- 15: spread-branch junction ------------------------------------------
Verdict criterion15() {
  const beam::BeamGeometry b{0.05, kLambda, 0.0};
  const double zi = atm::coherence_length_zi(kNightCn2, kLambda, kInnerScale);
  const double s2 = atm::rytov(kNightCn2, kLambda, zi);
  const double eta_atm = chan::eta_atmospheric(kAlpha0, kGroundAlt, zi);
  auto phi_for = [&](beam::SpreadRegime regime) {
    const double wlt = beam::long_term_waist(b, zi, s2, kInnerScale, regime);
    return cap::plob_pure_loss(chan::eta_longterm_analytic(wlt, 0.05) *
                               eta_atm);
  };
  const double phi_within = phi_for(beam::SpreadRegime::WithinCoherence);
  const double phi_beyond = phi_for(beam::SpreadRegime::BeyondCoherence);
  const double jump = std::abs(phi_within - phi_beyond) /
                      std::max(phi_within, phi_beyond);
  return {15, jump < 0.05, false,
          fmt("pure-loss capacity jump between spread branches at z_i: "
              "Phi_within=%.6e, Phi_beyond=%.6e, relative jump %.4f%% "
              "(want < 5%%)",
              phi_within, phi_beyond, 100.0 * jump)};
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const std::function<Verdict()> criteria[] = {
      criterion01, criterion02, criterion03, criterion04, criterion05,
      criterion06, criterion07, criterion08, criterion09, criterion10,
      criterion11, criterion12, criterion13, criterion14, criterion15,
  };
  int hard_failures = 0;
  int soft_failures = 0;
  int index = 0;
  for (const auto& run : criteria) {
    ++index;
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.id = index;
      v.pass = false;
      v.detail = std::string("unexpected exception: ") + e.what();
    }
    v.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!v.pass) (v.soft ? soft_failures : hard_failures) += 1;
    std::printf("[%02d] %s%s  %s  [%.1f s]\n", v.id,
                v.pass ? "PASS" : "FAIL", v.soft ? " (soft)" : "",
                v.detail.c_str(), v.seconds);
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/14 hard criteria passed, %d/1 soft; "
              "exit code %d\n",
              14 - hard_failures, 1 - soft_failures, hard_failures);
  return hard_failures;
}
