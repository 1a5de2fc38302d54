#include "fsl/cvqkd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fsl/capacity.hpp"
#include "fsl/numerics.hpp"
#include "fsl/random.hpp"

namespace fsl::qkd {

namespace {

void check_channel(double eta, double n_thermal) {
  if (!(eta >= 0.0) || eta > 1.0) {
    throw DomainError("cvqkd: eta outside [0, 1]");
  }
  if (n_thermal < 0.0) throw DomainError("cvqkd: negative thermal photons");
}

void check_mu(double mu) {
  if (!(mu >= 1.0)) throw DomainError("cvqkd: modulation mu must be >= 1");
}

}  // namespace

CovarianceTriplet covariance(double mu, double eta, double n_thermal) {
  check_mu(mu);
  check_channel(eta, n_thermal);
  CovarianceTriplet cm;
  cm.a = mu;
  cm.b = eta * (mu - 1.0) + 2.0 * n_thermal + 1.0;
  cm.c = std::sqrt(eta * (mu * mu - 1.0));
  return cm;
}

double mutual_information(double mu, double eta, double n_thermal) {
  check_mu(mu);
  check_channel(eta, n_thermal);
  return 0.5 * std::log2(1.0 + eta * (mu - 1.0) / (2.0 * n_thermal + 1.0));
}

double holevo_bound(const CovarianceTriplet& cm) {
  const double a = cm.a;
  const double b = cm.b;
  const double c2 = cm.c * cm.c;
  const double disc = (a + b) * (a + b) - 4.0 * c2;
  if (disc < 0.0) throw DomainError("holevo_bound: unphysical covariance");
  const double s = std::sqrt(disc);
  const double nu_plus = 0.5 * (s + (b - a));
  const double nu_minus = 0.5 * (s - (b - a));
  const double det_cond = a * (a * b - c2) / b;
  if (det_cond < 0.0) throw DomainError("holevo_bound: unphysical covariance");
  const double nu_cond = std::sqrt(det_cond);
  // symplectic eigenvalues sit at >= 1 up to roundoff; clamp the photon
  // numbers so a pure-loss channel (nu = 1 exactly) cannot go negative
  auto photons = [](double nu) { return std::max(0.0, 0.5 * (nu - 1.0)); };
  return cap::entropy_h(photons(nu_plus)) + cap::entropy_h(photons(nu_minus)) -
         cap::entropy_h(photons(nu_cond));
}

double holevo_bound(double mu, double eta, double n_thermal) {
  return holevo_bound(covariance(mu, eta, n_thermal));
}

double asymptotic_rate(const ProtocolParams& p, double eta, double n_thermal) {
  return p.beta * mutual_information(p.mu, eta, n_thermal) -
         holevo_bound(p.mu, eta, n_thermal);
}

WorstCase worst_case(double eta, double n_thermal, double mu, double m_pe,
                     double w) {
  check_mu(mu);
  check_channel(eta, n_thermal);
  if (!(m_pe >= 1.0)) throw DomainError("worst_case: empty estimation sample");
  if (!(w > 0.0)) throw DomainError("worst_case: confidence width must be > 0");
  const double m = m_pe;
  const double var_x = mu - 1.0;
  const double var_z = 2.0 * n_thermal + 1.0;
  WorstCase wc;
  const double sd_eta =
      (var_x > 0.0)
          ? 2.0 * std::sqrt((2.0 * eta * eta + eta * var_z / var_x) / m)
          : 0.0;
  wc.eta = std::max(0.0, eta - w * sd_eta);
  wc.n_thermal = n_thermal + w * var_z / std::sqrt(2.0 * m);
  wc.eps_pe = 0.5 * num::erfc(w / std::numbers::sqrt2);
  return wc;
}

ChannelEstimate simulate_estimation(double eta, double n_thermal, double mu,
                                    std::uint64_t m, std::uint64_t seed) {
  check_mu(mu);
  check_channel(eta, n_thermal);
  if (m == 0) throw DomainError("simulate_estimation: empty sample");
  const double var_x = mu - 1.0;
  if (!(var_x > 0.0)) {
    throw DomainError("simulate_estimation: vacuum modulation");
  }
  const double sd_x = std::sqrt(var_x);
  const double sd_z = std::sqrt(2.0 * n_thermal + 1.0);
  const double sqrt_eta = std::sqrt(eta);

  rng::GaussianSampler gauss{seed};
  double sum_xy = 0.0;
  double sum_xx = 0.0;
  double sum_yy = 0.0;
  for (std::uint64_t i = 0; i < m; ++i) {
    const double x = sd_x * gauss.next();
    const double y = sqrt_eta * x + sd_z * gauss.next();
    sum_xy += x * y;
    sum_xx += x * x;
    sum_yy += y * y;
  }
  const double md = static_cast<double>(m);
  // transmissivity estimator with the modulation variance known a priori
  const double t_hat = sum_xy / (md * var_x);
  // residual power: sum (y - t x)^2 = yy - 2t xy + t^2 xx
  const double resid =
      (sum_yy - 2.0 * t_hat * sum_xy + t_hat * t_hat * sum_xx) / md;
  ChannelEstimate est;
  est.eta_hat = t_hat * t_hat;
  est.n_hat = 0.5 * (resid - 1.0);
  return est;
}

ComposableRate composable_rate(const ProtocolParams& p, double eta,
                               double n_thermal, double block_size) {
  check_channel(eta, n_thermal);
  if (!(block_size >= 2.0) || !(block_size <= 9.0e18)) {
    throw DomainError("composable_rate: block size outside [2, 9e18]");
  }
  if (!(p.pe_fraction > 0.0) || !(p.pe_fraction < 1.0)) {
    throw DomainError("composable_rate: pe_fraction outside (0, 1)");
  }
  if (!(p.mu > 1.0)) {
    throw DomainError("composable_rate: modulation mu must exceed 1 SNU");
  }
  if (!(p.ec_success > 0.0) || p.ec_success > 1.0) {
    throw DomainError("composable_rate: ec_success outside (0, 1]");
  }
  if (!(p.digitization >= 2.0)) {
    throw DomainError("composable_rate: digitization must be >= 2 levels");
  }
  if (!(p.eps_smooth > 0.0) || !(p.eps_hash > 0.0) || !(p.eps_correct > 0.0)) {
    throw DomainError("composable_rate: epsilons must be positive");
  }

  ComposableRate out;
  out.block_size = static_cast<std::uint64_t>(std::llround(block_size));
  const double nd = static_cast<double>(out.block_size);
  out.m_pe = static_cast<std::uint64_t>(std::llround(p.pe_fraction * nd));
  if (out.m_pe == 0 || out.m_pe >= out.block_size) {
    throw DomainError("composable_rate: estimation split leaves no data");
  }
  out.n_key = out.block_size - out.m_pe;
  const double n = static_cast<double>(out.n_key);

  out.worst = worst_case(eta, n_thermal, p.mu,
                         static_cast<double>(out.m_pe), p.conf_w);
  out.rate_pe = p.beta * mutual_information(p.mu, out.worst.eta,
                                            out.worst.n_thermal) -
                holevo_bound(p.mu, out.worst.eta, out.worst.n_thermal);

  // log2(18 pec^-2 eps_s^-4) expanded to avoid underflow of the product
  const double log_arg = std::log2(18.0) - 2.0 * std::log2(p.ec_success) -
                         4.0 * std::log2(p.eps_smooth);
  out.delta_aep =
      4.0 * std::log2(std::sqrt(p.digitization) + 2.0) * std::sqrt(log_arg);
  out.omega_terms =
      std::log2(p.ec_success * (1.0 - p.eps_smooth * p.eps_smooth / 3.0)) +
      2.0 * std::log2(std::numbers::sqrt2 * p.eps_hash);

  out.rate_unclamped =
      p.ec_success * (n / nd) *
      (out.rate_pe - out.delta_aep / std::sqrt(n) + out.omega_terms / n);
  out.rate = std::max(0.0, out.rate_unclamped);
  out.eps_total = p.eps_correct + p.eps_smooth + p.eps_hash +
                  2.0 * p.ec_success * out.worst.eps_pe;
  return out;
}

}  // namespace fsl::qkd
