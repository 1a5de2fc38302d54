#include "fsolink.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "fsl/atmosphere.hpp"
#include "fsl/capacity.hpp"
#include "fsl/errors.hpp"
#include "fsl/runner.hpp"
#include "fsl/scenario.hpp"

struct fsl_scenario {
  fsl::scn::Scenario value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fsl_status fail(fsl_status code, const char* msg) {
  g_last_error = msg ? msg : "";
  return code;
}

// Maps C++ exceptions from the core onto the C status codes.
template <typename Fn>
fsl_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return FSL_OK;
  } catch (const fsl::SchemaError& e) {
    return fail(FSL_ERR_SCHEMA, e.what());
  } catch (const fsl::DomainError& e) {
    return fail(FSL_ERR_DOMAIN, e.what());
  } catch (const fsl::ConvergenceError& e) {
    return fail(FSL_ERR_CONVERGENCE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FSL_ERR_ARG, "out of memory");
  } catch (const std::exception& e) {
    return fail(FSL_ERR_ARG, e.what());
  }
}

fsl::run::RunOptions to_options(const fsl_options* opt) {
  fsl::run::RunOptions o;
  if (opt) {
    o.jobs = opt->jobs;
    o.seed = opt->seed;
    o.tolerance = opt->tolerance > 0.0 ? opt->tolerance : 1.0;
  }
  return o;
}

fsl_status out_string(const std::string& text, char** out) {
  *out = dup_string(text);
  if (!*out) return fail(FSL_ERR_ARG, "out of memory");
  return FSL_OK;
}

}  // namespace

extern "C" {

const char* fsl_version(void) { return "0.1.0"; }

const char* fsl_last_error(void) { return g_last_error.c_str(); }

void fsl_string_free(char* s) { std::free(s); }

fsl_status fsl_scenario_parse(const char* json_text, fsl_scenario** out) {
  if (!json_text || !out) return fail(FSL_ERR_ARG, "null argument");
  *out = nullptr;
  return guard([&] {
    auto* handle = new fsl_scenario{fsl::scn::parse_scenario(json_text)};
    *out = handle;
  });
}

fsl_status fsl_scenario_load(const char* path, fsl_scenario** out) {
  if (!path || !out) return fail(FSL_ERR_ARG, "null argument");
  *out = nullptr;
  return guard([&] {
    auto* handle = new fsl_scenario{fsl::scn::load_scenario(path)};
    *out = handle;
  });
}

void fsl_scenario_free(fsl_scenario* s) { delete s; }

fsl_status fsl_scenario_axes(const fsl_scenario* s, char** out_csv) {
  if (!s || !out_csv) return fail(FSL_ERR_ARG, "null argument");
  *out_csv = nullptr;
  return guard([&] {
    std::string joined;
    for (const auto& [axis, grid] : s->value.sweep) {
      if (!joined.empty()) joined += ',';
      joined += axis;
    }
    fsl_status st = out_string(joined, out_csv);
    if (st != FSL_OK) throw std::bad_alloc();
  });
}

fsl_status fsl_eval(const fsl_scenario* s, const fsl_options* opt,
                    char** out_json) {
  if (!s || !out_json) return fail(FSL_ERR_ARG, "null argument");
  *out_json = nullptr;
  return guard([&] {
    const std::string text = fsl::run::evaluate_json(s->value, to_options(opt));
    if (out_string(text, out_json) != FSL_OK) throw std::bad_alloc();
  });
}

fsl_status fsl_sweep_csv(const fsl_scenario* s, const char* axis,
                         const fsl_options* opt, char** out_csv) {
  if (!s || !axis || !out_csv) return fail(FSL_ERR_ARG, "null argument");
  *out_csv = nullptr;
  return guard([&] {
    const std::string text =
        fsl::run::sweep_csv(s->value, axis, to_options(opt));
    if (out_string(text, out_csv) != FSL_OK) throw std::bad_alloc();
  });
}

fsl_status fsl_figure(const char* name, const fsl_options* opt,
                      char*** out_names, char*** out_contents,
                      size_t* out_count) {
  if (!name || !out_names || !out_contents || !out_count) {
    return fail(FSL_ERR_ARG, "null argument");
  }
  *out_names = nullptr;
  *out_contents = nullptr;
  *out_count = 0;
  return guard([&] {
    const std::vector<fsl::run::FigureFile> files =
        fsl::run::figure_data(name, to_options(opt));
    const size_t n = files.size();
    char** names = static_cast<char**>(std::calloc(n, sizeof(char*)));
    char** contents = static_cast<char**>(std::calloc(n, sizeof(char*)));
    if (!names || !contents) {
      std::free(names);
      std::free(contents);
      throw std::bad_alloc();
    }
    for (size_t i = 0; i < n; ++i) {
      names[i] = dup_string(files[i].filename);
      contents[i] = dup_string(files[i].csv);
      if (!names[i] || !contents[i]) {
        fsl_figure_free(names, contents, n);
        throw std::bad_alloc();
      }
    }
    *out_names = names;
    *out_contents = contents;
    *out_count = n;
  });
}

void fsl_figure_free(char** names, char** contents, size_t count) {
  for (size_t i = 0; i < count; ++i) {
    if (names) std::free(names[i]);
    if (contents) std::free(contents[i]);
  }
  std::free(names);
  std::free(contents);
}

fsl_status fsl_rytov_plane(double cn2, double wavelength_m, double distance_m,
                           double* out) {
  if (!out) return fail(FSL_ERR_ARG, "null argument");
  return guard([&] {
    *out = fsl::atm::rytov(cn2, wavelength_m, distance_m,
                           fsl::atm::WaveKind::Plane);
  });
}

fsl_status fsl_plob_bound(double eta, double* out) {
  if (!out) return fail(FSL_ERR_ARG, "null argument");
  return guard([&] { *out = fsl::cap::plob_pure_loss(eta); });
}

fsl_status fsl_thermal_upper_bound(double eta, double n_thermal, double* out) {
  if (!out) return fail(FSL_ERR_ARG, "null argument");
  return guard([&] { *out = fsl::cap::thermal_upper_bound({eta, n_thermal}); });
}

fsl_status fsl_rci_lower_bound(double eta, double n_thermal, double* out) {
  if (!out) return fail(FSL_ERR_ARG, "null argument");
  return guard([&] { *out = fsl::cap::rci_lower_bound({eta, n_thermal}); });
}

}  // extern "C"
