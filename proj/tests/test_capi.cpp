#include <cmath>
#include <cstring>
#include <string>

#include <doctest.h>

#include "fsolink.h"

namespace {

const char* kScenario = R"({
  "schema_version": 1,
  "link": { "kind": "terrestrial", "distance_m": 10000 },
  "sweep": { "z": { "values_m": [5000, 10000, 20000] } }
})";

struct Handle {
  fsl_scenario* p = nullptr;
  ~Handle() { fsl_scenario_free(p); }
};

}  // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(fsl_version() != nullptr);
  CHECK(fsl_last_error() != nullptr);
}

TEST_CASE("scenario lifecycle and evaluation") {
  Handle h;
  REQUIRE(fsl_scenario_parse(kScenario, &h.p) == FSL_OK);
  REQUIRE(h.p != nullptr);

  char* axes = nullptr;
  REQUIRE(fsl_scenario_axes(h.p, &axes) == FSL_OK);
  CHECK(std::string(axes) == "z");
  fsl_string_free(axes);

  char* doc = nullptr;
  REQUIRE(fsl_eval(h.p, nullptr, &doc) == FSL_OK);
  CHECK(std::string(doc).find("\"eta_total\"") != std::string::npos);
  fsl_string_free(doc);
}

TEST_CASE("schema failures return code 2 with a message") {
  fsl_scenario* p = nullptr;
  CHECK(fsl_scenario_parse("{ not json", &p) == FSL_ERR_SCHEMA);
  CHECK(p == nullptr);
  CHECK(std::strlen(fsl_last_error()) > 0);

  CHECK(fsl_scenario_load("/nonexistent/file.json", &p) == FSL_ERR_SCHEMA);
  CHECK(p == nullptr);
}

TEST_CASE("sweep through the C boundary is deterministic") {
  Handle h;
  REQUIRE(fsl_scenario_parse(kScenario, &h.p) == FSL_OK);
  fsl_options serial{1, 1, 1.0};
  fsl_options parallel{4, 1, 1.0};
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(fsl_sweep_csv(h.p, "z", &serial, &a) == FSL_OK);
  REQUIRE(fsl_sweep_csv(h.p, "z", &parallel, &b) == FSL_OK);
  CHECK(std::string(a) == std::string(b));
  fsl_string_free(a);
  fsl_string_free(b);

  char* bad = nullptr;
  CHECK(fsl_sweep_csv(h.p, "theta", nullptr, &bad) == FSL_ERR_SCHEMA);
  CHECK(bad == nullptr);
}

TEST_CASE("figure names are validated") {
  char** names = nullptr;
  char** contents = nullptr;
  size_t count = 0;
  CHECK(fsl_figure("not_a_figure", nullptr, &names, &contents, &count) ==
        FSL_ERR_SCHEMA);
  CHECK(count == 0);
}

TEST_CASE("scalar helpers and domain errors") {
  double v = 0.0;
  REQUIRE(fsl_rytov_plane(1.28e-14, 800e-9, 1e4, &v) == FSL_OK);
  CHECK(v == doctest::Approx(37.55951214827061).epsilon(1e-12));

  REQUIRE(fsl_plob_bound(0.5, &v) == FSL_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  REQUIRE(fsl_thermal_upper_bound(0.5, 0.1, &v) == FSL_OK);
  CHECK(v == doctest::Approx(0.419973094021975).epsilon(1e-12));
  CHECK(fsl_thermal_upper_bound(0.5, 0.6, &v) == FSL_ERR_DOMAIN);

  REQUIRE(fsl_rci_lower_bound(0.5, 0.1, &v) == FSL_OK);
  CHECK(v == doctest::Approx(0.21997309402197507).epsilon(1e-12));

  CHECK(fsl_plob_bound(1.5, &v) == FSL_ERR_DOMAIN);
  CHECK(fsl_plob_bound(0.5, nullptr) == FSL_ERR_ARG);
}
