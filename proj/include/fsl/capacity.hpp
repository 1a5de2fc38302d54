#pragma once

namespace fsl::cap {

// Transmissivity/thermal-photon pair describing a bosonic lossy channel.
struct ChannelPoint {
  double eta = 1.0;
  double n_thermal = 0.0;  // mean thermal photons referred to the channel
};

// Bosonic entropy function h(x) = (1+x)log2(1+x) - x log2 x,  h(0) = 0.
double entropy_h(double x);

// Ultimate repeaterless secret-key capacity of the pure-loss channel,
// Phi(eta) = -log2(1 - eta).
double plob_pure_loss(double eta);

// Thermal-loss upper bound, valid for n_thermal <= eta (the channel is
// entanglement breaking beyond that; throws DomainError there).
double thermal_upper_bound(const ChannelPoint& p);

// Reverse-coherent-information lower bound, floored at zero (an achievable
// key rate is nonnegative).  The raw value is available for diagnostics.
double rci_lower_bound(const ChannelPoint& p);
double rci_lower_bound_unfloored(const ChannelPoint& p);

}  // namespace fsl::cap
