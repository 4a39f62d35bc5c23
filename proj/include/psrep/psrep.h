#ifndef PSREP_PSREP_H
#define PSREP_PSREP_H

/* C interface to the certifier. Every call returns a psrep_status; on failure
   psrep_last_error() holds a one-line message for the calling thread.
   Strings returned through char** are malloc'd, release with psrep_string_free. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(PSREP_BUILDING_LIBRARY)
#define PSREP_API __attribute__((visibility("default")))
#else
#define PSREP_API
#endif

typedef enum psrep_status {
  PSREP_OK = 0,
  PSREP_E_INVALID_ARGUMENT = 1,
  PSREP_E_PARSE = 2,
  PSREP_E_DOMAIN = 3,
  PSREP_E_BUDGET = 4,
  PSREP_E_INCONSISTENT = 5,
  PSREP_E_IO = 6,
  PSREP_E_INTERNAL = 7
} psrep_status;

typedef enum psrep_verdict {
  PSREP_CERTIFIED = 0,
  PSREP_INCONCLUSIVE = 1,
  PSREP_FAILED = 2
} psrep_verdict;

typedef struct psrep_config psrep_config;
typedef struct psrep_rep psrep_rep;
typedef struct psrep_workspace psrep_workspace;

PSREP_API const char* psrep_version(void);
PSREP_API const char* psrep_last_error(void);
PSREP_API const char* psrep_status_name(psrep_status s);
PSREP_API void psrep_string_free(char* s);

/* -- config: closed key = value schema -- */
PSREP_API psrep_status psrep_config_new(psrep_config** out);
PSREP_API psrep_status psrep_config_parse(const char* text, psrep_config** out);
PSREP_API psrep_status psrep_config_load(const char* path, psrep_config** out);
PSREP_API psrep_status psrep_config_set(psrep_config* cfg, const char* key, const char* value);
PSREP_API psrep_status psrep_config_get(const psrep_config* cfg, const char* key, char** out);
PSREP_API psrep_status psrep_config_schema(char** out);
PSREP_API void psrep_config_free(psrep_config* cfg);

/* -- representations -- */
PSREP_API psrep_status psrep_rep_load(const char* path, psrep_rep** out);
PSREP_API psrep_status psrep_rep_parse(const char* text, psrep_rep** out);
/* Discrete faithful anchor of a named presentation. */
PSREP_API psrep_status psrep_rep_anchor(const char* presentation, psrep_rep** out);
/* Point of the configured family at parameter re + i im. */
PSREP_API psrep_status psrep_rep_family_point(const psrep_config* cfg, double re, double im, psrep_rep** out);
PSREP_API psrep_status psrep_rep_write(const psrep_rep* rep, char** out);
PSREP_API psrep_status psrep_rep_residual(const psrep_rep* rep, double* out);
PSREP_API void psrep_rep_free(psrep_rep* rep);

/* -- workspace: Cayley ball and primitive cache for the configured presentation -- */
PSREP_API psrep_status psrep_workspace_new(const psrep_config* cfg, psrep_workspace** out);
PSREP_API void psrep_workspace_free(psrep_workspace* ws);

/* -- pipelines; all tables are CSV -- */
PSREP_API psrep_status psrep_primitives(const psrep_workspace* ws, const psrep_config* cfg, char** csv);
PSREP_API psrep_status psrep_certify(const psrep_workspace* ws, const psrep_config* cfg, const psrep_rep* rep,
                                     psrep_verdict* verdict, char** csv);
/* ppm may be NULL. */
PSREP_API psrep_status psrep_scan(const psrep_workspace* ws, const psrep_config* cfg, char** csv, char** ppm);
/* automorphisms: file text, or NULL for the shipped set of the presentation. */
PSREP_API psrep_status psrep_orbit(const psrep_workspace* ws, const psrep_config* cfg, const psrep_rep* rep,
                                   const char* automorphisms, char** csv);
/* Tunes tune_word to tr^2 = 4 on the family path and certifies the result. */
PSREP_API psrep_status psrep_parabolic(const psrep_workspace* ws, const psrep_config* cfg, double* param,
                                       psrep_verdict* verdict, char** csv);
/* Tunes tune_word to 4 cos^2(k pi / n) and tests whether twist^n fixes the
   character. distance is the relative fingerprint distance. */
PSREP_API psrep_status psrep_elliptic(const psrep_config* cfg, double* param, double* distance, int* fixed,
                                      char** csv);
/* Small end-to-end checks; *passed is 1 when all hold. */
PSREP_API psrep_status psrep_selftest(int* passed, char** report);

#ifdef __cplusplus
}
#endif

#endif
