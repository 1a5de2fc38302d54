#pragma once

#include <cstdint>

namespace fsl::qkd {

// Gaussian-modulated coherent-state protocol with homodyne detection and
// reverse reconciliation.  mu is the variance of Alice's output mode in
// shot-noise units (modulation variance + 1).
struct ProtocolParams {
  double mu = 10.0;            // SNU
  double beta = 0.98;          // reconciliation efficiency
  double pe_fraction = 0.1;    // r_pe, fraction of N spent on estimation
  double digitization = 32.0;  // d, discretization levels per symbol (2^5)
  double ec_success = 0.9;     // p_ec = 1 - FER
  double conf_w = 6.34;        // w, confidence parameter
  double eps_smooth = 1e-10;   // eps_s
  double eps_hash = 1e-10;     // eps_h
  double eps_correct = 1e-10;  // eps_cor
  double det_snu = 1.0;        // nu_det hook (homodyne formulas throughout)
};

// Covariance matrix of the Alice/Bob two-mode state in standard form
// diag(a,a), diag(b,b), off-diagonal diag(c,-c).
struct CovarianceTriplet {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
};

struct ChannelEstimate {
  double eta_hat = 0.0;
  double n_hat = 0.0;
};

struct WorstCase {
  double eta = 0.0;
  double n_thermal = 0.0;
  double eps_pe = 0.0;  // probability the true channel lies outside the box
};

struct ComposableRate {
  double rate = 0.0;            // bits/use, clamped at zero
  double rate_unclamped = 0.0;  // raw value, may be negative
  double rate_pe = 0.0;         // asymptotic rate at the worst-case channel
  double delta_aep = 0.0;       // finite-size AEP penalty (per sqrt(n))
  double omega_terms = 0.0;     // log-correction terms (per n)
  double eps_total = 0.0;       // composable security parameter
  WorstCase worst;
  std::uint64_t block_size = 0;  // N
  std::uint64_t m_pe = 0;        // rounded r_pe * N
  std::uint64_t n_key = 0;       // N - m_pe
};

CovarianceTriplet covariance(double mu, double eta, double n_thermal);

// I_AB = (1/2) log2(1 + eta (mu-1) / (2 n + 1)).
double mutual_information(double mu, double eta, double n_thermal);

// Eve's Holevo information against reverse reconciliation, from the
// symplectic spectra of the joint and conditional covariance matrices.
double holevo_bound(double mu, double eta, double n_thermal);
double holevo_bound(const CovarianceTriplet& cov);

// beta * I_AB - chi; can be negative (no key).
double asymptotic_rate(const ProtocolParams& p, double eta, double n_thermal);

// Pessimistic channel at confidence w from m_pe estimation samples.
WorstCase worst_case(double eta, double n_thermal, double mu, double m_pe,
                     double w);

// Draw m quadrature pairs through the true channel and run the estimators:
// T_hat from the x-y correlator with the known modulation variance,
// n_hat from the excess-noise variance.  Deterministic in (seed).
ChannelEstimate simulate_estimation(double eta, double n_thermal, double mu,
                                    std::uint64_t m, std::uint64_t seed);

// Finite-size composable key rate for block size N (bits per channel use).
ComposableRate composable_rate(const ProtocolParams& p, double eta,
                               double n_thermal, double block_size);

}  // namespace fsl::qkd
