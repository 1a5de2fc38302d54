#include "fsl/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fsl/errors.hpp"

namespace fsl::cap {

double entropy_h(double x) {
  if (x < 0.0) throw DomainError("entropy_h: negative argument");
  if (x == 0.0) return 0.0;
  // (x+1) log2(x+1) - x log2 x
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

double plob_pure_loss(double eta) {
  if (!(eta >= 0.0) || eta > 1.0) {
    throw DomainError("plob_pure_loss: eta outside [0, 1]");
  }
  if (eta == 1.0) return std::numeric_limits<double>::infinity();
  return -std::log2(1.0 - eta);
}

double thermal_upper_bound(const ChannelPoint& ch) {
  if (!(ch.eta > 0.0) || ch.eta >= 1.0) {
    throw DomainError("thermal_upper_bound: eta outside (0, 1)");
  }
  if (ch.n_thermal < 0.0) {
    throw DomainError("thermal_upper_bound: negative thermal photons");
  }
  if (ch.n_thermal > ch.eta) {
    throw DomainError(
        "thermal_upper_bound: entanglement-breaking channel (n > eta)");
  }
  const double ne = ch.n_thermal / (1.0 - ch.eta);
  return plob_pure_loss(ch.eta) - ne * std::log2(ch.eta) - entropy_h(ne);
}

double rci_lower_bound_unfloored(const ChannelPoint& ch) {
  if (!(ch.eta > 0.0) || ch.eta >= 1.0) {
    throw DomainError("rci_lower_bound: eta outside (0, 1)");
  }
  if (ch.n_thermal < 0.0) {
    throw DomainError("rci_lower_bound: negative thermal photons");
  }
  const double ne = ch.n_thermal / (1.0 - ch.eta);
  return plob_pure_loss(ch.eta) - entropy_h(ne);
}

double rci_lower_bound(const ChannelPoint& ch) {
  return std::max(0.0, rci_lower_bound_unfloored(ch));
}

}  // namespace fsl::cap
