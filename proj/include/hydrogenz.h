/* C API for the hydrogenz library.
 *
 * All functions return hz_status; output strings are heap-allocated and must
 * be released with hz_string_free. On error, hz_last_error_message() returns
 * a description of the most recent failure on the calling thread.
 */
#ifndef HYDROGENZ_H
#define HYDROGENZ_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HZ_OK = 0,
  HZ_ERR_INVALID_ARGUMENT = 2,
  HZ_ERR_NUMERICAL = 3,
  HZ_ERR_IO = 4
} hz_status;

const char* hz_version(void);
const char* hz_last_error_message(void);
void hz_string_free(char* s);

/* conventions in effect (prefactor, phase convention, units), one line */
const char* hz_conventions(void);

/* ---- hydrogen bound states -------------------------------------------- */

/* E_n as "num/den" in units of 4 Ry */
hz_status hz_energy(int n, char** out);

/* exact radial function description (JSON); r < 0 skips point evaluation */
hz_status hz_radial(int n, int l, double r, char** out_json);

/* <u_{n2,l2,m2}| r_axis |u_{n1,l1,m1}>, axis in {'x','y','z'}; JSON with
 * exact terms and floating rendering */
hz_status hz_dipole(int n1, int l1, int m1, char axis, int n2, int l2, int m2,
                    char** out_json);
hz_status hz_momentum(int n1, int l1, int m1, char axis, int n2, int l2, int m2,
                      char** out_json);

/* Gordon radial integral R^{n1,l1}_{n2,l2}, JSON */
hz_status hz_gordon(int n1, int l1, int n2, int l2, char** out_json);

/* full dipole table between two levels, JSON */
hz_status hz_dipole_table(int from_level, int to_level, char** out_json);

/* ---- decay operator and lifetimes ------------------------------------- */

/* kappa: "one" | "quartic"; format: "exact" | "csv" | "json" */
hz_status hz_imz(int n, const char* kappa, const char* format, char** out);

/* lifetimes report; constants_path NULL uses built-in defaults.
 * format: "text" | "csv" */
hz_status hz_lifetimes(int n, const char* constants_path, const char* format, char** out);

/* ---- one-photon toy model --------------------------------------------- */

typedef struct hz_model hz_model;

/* config_text NULL or empty selects the built-in default two-level model */
hz_status hz_model_create(const char* config_text, hz_model** out);
hz_status hz_model_create_from_file(const char* path, hz_model** out);
void hz_model_free(hz_model* m);

hz_status hz_model_dimension(const hz_model* m, int* out);
hz_status hz_model_checksum(const hz_model* m, unsigned long long* out);

/* survival amplitude sampled on [0, s_max], CSV (s, Re A, Im A, |A|) */
hz_status hz_survival_csv(const hz_model* m, double s_max, int samples, char** out_csv);

/* toy-model Z matrix as structured text */
hz_status hz_zmatrix(const hz_model* m, char** out_text);

/* second-sheet resonance pole; g < 0 uses the model's configured g */
hz_status hz_pole(const hz_model* m, double g, char** out_text);

/* corollary comparison table, CSV (g, survival, predicted, deviation) */
hz_status hz_corollary_csv(const hz_model* m, double tau, const double* g_list,
                           int n_g, char** out_csv);

/* Feshbach/resolvent reconstruction check over random models */
hz_status hz_feshbach_check(unsigned seed, int count, double* max_residual,
                            char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* HYDROGENZ_H */
