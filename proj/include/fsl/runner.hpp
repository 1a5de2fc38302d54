#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsl/scenario.hpp"

namespace fsl::run {

struct RunOptions {
  unsigned jobs = 0;       // sweep/figure workers; 0 = hardware concurrency
  std::uint64_t seed = 1;  // base seed for any sampled quantity
  double tolerance = 1.0;  // scales quadrature tolerances (>1 looser)
};

// Single-point result document as JSON text with a stable key order.
// Physics failures of individual derived quantities (e.g. the thermal upper
// bound outside its validity region) appear as {"error": ...} members
// without aborting the rest; scenario-level failures throw.
std::string evaluate_json(const scn::Scenario& s, const RunOptions& opt = {});

// One CSV row per grid point of the named axis (declared in the scenario);
// fixed column set with a trailing error column, deterministic order and
// shortest round-trip number formatting.
std::string sweep_csv(const scn::Scenario& s, const std::string& axis,
                      const RunOptions& opt = {});

struct FigureFile {
  std::string filename;
  std::string csv;
};

// Data series behind the six reference figures; name is "fig1".."fig6".
std::vector<FigureFile> figure_data(const std::string& name,
                                    const RunOptions& opt = {});

}  // namespace fsl::run
