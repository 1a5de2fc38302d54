/* C interface to the free-space optical link-budget library.
 *
 * All entry points return a status code; data comes back through out
 * parameters.  Strings returned through `char**` are heap-allocated and
 * must be released with fsl_string_free.  A thread-local message for the
 * most recent failure is available via fsl_last_error.
 */
#ifndef FSOLINK_H_
#define FSOLINK_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fsl_status {
  FSL_OK = 0,
  FSL_ERR_ARG = 1,         /* null pointer / malformed call */
  FSL_ERR_SCHEMA = 2,      /* scenario text violates the schema */
  FSL_ERR_DOMAIN = 3,      /* physics-domain violation */
  FSL_ERR_CONVERGENCE = 4, /* numerical routine failed to converge */
  FSL_ERR_IO = 5           /* file could not be read */
} fsl_status;

typedef struct fsl_options {
  unsigned jobs;    /* worker threads; 0 = hardware concurrency */
  uint64_t seed;    /* base seed for stochastic helpers */
  double tolerance; /* quadrature tolerance scale; 1.0 = default */
} fsl_options;

/* Opaque parsed scenario. */
typedef struct fsl_scenario fsl_scenario;

const char* fsl_version(void);

/* Message describing the most recent error on this thread ("" if none). */
const char* fsl_last_error(void);

void fsl_string_free(char* s);

fsl_status fsl_scenario_parse(const char* json_text, fsl_scenario** out);
fsl_status fsl_scenario_load(const char* path, fsl_scenario** out);
void fsl_scenario_free(fsl_scenario* s);

/* Names of the sweep axes declared in the scenario, comma-separated. */
fsl_status fsl_scenario_axes(const fsl_scenario* s, char** out_csv);

/* Full single-point evaluation as a JSON document. */
fsl_status fsl_eval(const fsl_scenario* s, const fsl_options* opt,
                    char** out_json);

/* One CSV table over the named sweep axis. */
fsl_status fsl_sweep_csv(const fsl_scenario* s, const char* axis,
                         const fsl_options* opt, char** out_csv);

/* Reference figure data ("fig1".."fig6").  Returns the number of files;
 * names and contents are parallel arrays released with
 * fsl_figure_free. */
fsl_status fsl_figure(const char* name, const fsl_options* opt,
                      char*** out_names, char*** out_contents,
                      size_t* out_count);
void fsl_figure_free(char** names, char** contents, size_t count);

/* Scalar helpers (direct access to a few core quantities). */
fsl_status fsl_rytov_plane(double cn2, double wavelength_m, double distance_m,
                           double* out);
fsl_status fsl_plob_bound(double eta, double* out);
fsl_status fsl_thermal_upper_bound(double eta, double n_thermal, double* out);
fsl_status fsl_rci_lower_bound(double eta, double n_thermal, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FSOLINK_H_ */
