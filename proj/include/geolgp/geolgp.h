// Copyright 2026 The geolgp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the geolgp solver. All objects are opaque handles created
 * and released through this header. Functions return GEOLGP_OK or an error
 * status; the message of the last failure on the calling thread is
 * available from geolgp_last_error(). */
#ifndef GEOLGP_GEOLGP_H_
#define GEOLGP_GEOLGP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GEOLGP_API __declspec(dllexport)
#else
#define GEOLGP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum geolgp_status {
  GEOLGP_OK = 0,
  GEOLGP_ERR_INVALID_ARGUMENT = 1,
  GEOLGP_ERR_DOMAIN = 2,
  GEOLGP_ERR_NO_CONVERGENCE = 3,
  GEOLGP_ERR_CONVEXITY_VIOLATION = 4,
  GEOLGP_ERR_UNBALANCED = 5,
  GEOLGP_ERR_DEGENERATE = 6,
  GEOLGP_ERR_RAY_OUTSIDE_GRID = 7,
  GEOLGP_ERR_DUALITY_GAP = 8,
  GEOLGP_ERR_CROSSING_RAYS = 9,
  GEOLGP_ERR_SCHEMA = 10,
  GEOLGP_ERR_IO = 11,
  GEOLGP_ERR_INTERNAL = 100
} geolgp_status;

typedef struct geolgp_config geolgp_config;
typedef struct geolgp_weight geolgp_weight;
typedef struct geolgp_domain geolgp_domain;

GEOLGP_API const char* geolgp_version(void);
GEOLGP_API const char* geolgp_status_name(geolgp_status status);
/* Valid until the next failing call on the same thread. */
GEOLGP_API const char* geolgp_last_error(void);
/* Releases strings returned through char** out-parameters. */
GEOLGP_API void geolgp_string_free(char* s);

/* --- configuration and pipeline --- */

GEOLGP_API geolgp_status geolgp_config_load(const char* path, geolgp_config** out);
/* base_dir resolves relative paths inside the document; NULL means ".". */
GEOLGP_API geolgp_status geolgp_config_parse(const char* json_text, const char* base_dir,
                                             geolgp_config** out);
GEOLGP_API void geolgp_config_free(geolgp_config* config);
GEOLGP_API geolgp_status geolgp_config_set_out_dir(geolgp_config* config, const char* dir);
GEOLGP_API geolgp_status geolgp_config_hash(const geolgp_config* config, uint64_t* hash);

/* Writes a JSON array of schema problems (empty when the file is valid)
 * into *report. Returns GEOLGP_ERR_SCHEMA when problems were found and
 * GEOLGP_ERR_IO when the file cannot be read. */
GEOLGP_API geolgp_status geolgp_config_validate_file(const char* path, char** report);

/* Runs the pipeline and writes artifacts into the config's out_dir.
 * *checks_passed is 1 when every enabled check passed. A solver failure
 * returns its status after writing a partial report.json. */
GEOLGP_API geolgp_status geolgp_run(const geolgp_config* config, int* checks_passed);

/* --- geometry --- */

GEOLGP_API geolgp_status geolgp_domain_circle(double radius, geolgp_domain** out);
GEOLGP_API geolgp_status geolgp_domain_ellipse(double a, double b, geolgp_domain** out);
GEOLGP_API geolgp_status geolgp_domain_polar(const double* radii, size_t count,
                                             geolgp_domain** out);
GEOLGP_API void geolgp_domain_free(geolgp_domain* domain);
/* Boundary point at parameter theta. */
GEOLGP_API geolgp_status geolgp_domain_point(const geolgp_domain* domain, double theta,
                                             double* x, double* y);

GEOLGP_API geolgp_status geolgp_weight_constant(double a, geolgp_weight** out);
GEOLGP_API geolgp_status geolgp_weight_radial_bump(double a, double b, double cx, double cy,
                                                   double width, geolgp_weight** out);
GEOLGP_API geolgp_status geolgp_weight_load_csv(const char* path, geolgp_weight** out);
GEOLGP_API void geolgp_weight_free(geolgp_weight* weight);
GEOLGP_API geolgp_status geolgp_weight_eval(const geolgp_weight* weight, double x, double y,
                                            double* value, double* grad_x, double* grad_y);

/* Weighted geodesic distance between two points of the closed domain. */
GEOLGP_API geolgp_status geolgp_distance(const geolgp_weight* weight,
                                         const geolgp_domain* domain, double x0, double y0,
                                         double x1, double y1, double* out);

#ifdef __cplusplus
}
#endif

#endif /* GEOLGP_GEOLGP_H_ */
