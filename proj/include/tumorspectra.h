/* SPDX-License-Identifier: Apache-2.0 */
#ifndef TUMORSPECTRA_H
#define TUMORSPECTRA_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes (ts_run maps directly to CLI exit codes). */
#define TS_OK 0
#define TS_EVALIDATION 2 /* bad config or violated model assumptions */
#define TS_ESOLVER 3     /* a numerical solve failed */
#define TS_EINVAL 4      /* null handle / bad argument */

typedef struct ts_config ts_config;
typedef struct ts_stationary ts_stationary;

/* Message from the last failing call on this thread; empty string if none. */
const char* ts_last_error(void);

/* Strictly parsed run configuration (unknown keys rejected). NULL on error. */
ts_config* ts_config_load(const char* path);
ts_config* ts_config_parse(const char* json_text);
void ts_config_free(ts_config* cfg);

/* Run one command: stationary | spectrum | threshold | eps-spectrum |
 * simulate | sweep. Artifacts (CSV/JSON + manifest.json) land in out_dir. */
int ts_run(const ts_config* cfg, const char* command, const char* out_dir, int jobs);

/* Direct numeric access for embedding. */
ts_stationary* ts_stationary_solve(const ts_config* cfg);
void ts_stationary_free(ts_stationary* st);
double ts_stationary_radius(const ts_stationary* st);
double ts_stationary_sigma_prime(const ts_stationary* st);

/* Quasi-stationary spectral data: threshold gamma_star over 2 <= l <= l_max,
 * the attaining degree, and the l = 0 multiplier. Returns a status code. */
int ts_spectral_threshold(const ts_stationary* st, int l_max, double* gamma_star,
                          int* l_star, double* alpha0);

/* Slow spectral multiplier alpha_l(gamma); NaN on error. */
double ts_alpha_l(const ts_stationary* st, int l, double gamma);

#ifdef __cplusplus
}
#endif

#endif /* TUMORSPECTRA_H */
