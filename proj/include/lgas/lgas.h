/*
 * lgas.h - C interface to the D1Q3 lattice-gas library.
 *
 * Every function that can fail returns an lgas_status. On failure the
 * calling thread's lgas_last_error() holds a human-readable message; it is
 * left untouched on success. Objects are opaque handles owned by the caller
 * and released with the matching *_destroy function (NULL is accepted).
 *
 * Handles are not synchronized: one handle must not be used from two threads
 * at once. Distinct handles are independent.
 */
#ifndef LGAS_H
#define LGAS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LGAS_API __declspec(dllexport)
#else
#define LGAS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lgas_status {
  LGAS_OK = 0,
  LGAS_ERR_INVALID_ARGUMENT = 1,
  LGAS_ERR_NOT_POWER_OF_TWO = 2,
  LGAS_ERR_UNNORMALIZABLE = 3, /* all-zero field handed to the quantum engine */
  LGAS_ERR_CONSERVATION = 4,   /* decoded mass drifted from the conserved total */
  LGAS_ERR_POSTSELECTION = 5,  /* ancilla |0> branch vanished */
  LGAS_ERR_UNSTABLE = 6,       /* non-finite or negative (< -1e-9) population */
  LGAS_ERR_IO = 7,
  LGAS_ERR_INTERNAL = 8
} lgas_status;

typedef enum lgas_engine_kind {
  LGAS_ENGINE_ALGA_CONST = 0,
  LGAS_ENGINE_ALGA_ADAPTIVE = 1,
  LGAS_ENGINE_LBM = 2,
  LGAS_ENGINE_MCLGA = 3,
  LGAS_ENGINE_QALGA = 4
} lgas_engine_kind;

typedef struct lgas_field lgas_field;
typedef struct lgas_engine lgas_engine;

/* Populations of one site, ordered by velocity -1, 0, +1. */
typedef struct lgas_cell {
  double n_minus;
  double n_zero;
  double n_plus;
} lgas_cell;

LGAS_API const char* lgas_version(void);
LGAS_API const char* lgas_status_string(lgas_status status);
/* Message of the last failure on this thread; "" if none. */
LGAS_API const char* lgas_last_error(void);

/* Names: alga-const, alga-adaptive, lbm, mclga, qalga. */
LGAS_API lgas_status lgas_engine_kind_parse(const char* name, lgas_engine_kind* out);
LGAS_API const char* lgas_engine_kind_name(lgas_engine_kind kind);

/* ---- fields ------------------------------------------------------------ */

/* Half-sine bump: n_i(x) = w_i n_max p_i sin(pi x / n), p = ((1-U)/2, p0, (1+U)/2). */
LGAS_API lgas_status lgas_field_create_sine(size_t n, double n_max, double u_bias, double p0, lgas_field** out);
/* Periodic cosine wave peaking at n_max; contrast in [0, 1] (1 empties the trough). */
LGAS_API lgas_status lgas_field_create_cosine(size_t n, double n_max, double contrast, lgas_field** out);
LGAS_API lgas_status lgas_field_create_from_cells(const lgas_cell* cells, size_t n, lgas_field** out);
LGAS_API lgas_status lgas_field_clone(const lgas_field* field, lgas_field** out);
LGAS_API void lgas_field_destroy(lgas_field* field);

LGAS_API size_t lgas_field_size(const lgas_field* field);
/* Copies min(size, capacity) cells; fails when capacity < size. */
LGAS_API lgas_status lgas_field_get_cells(const lgas_field* field, lgas_cell* out, size_t capacity);
LGAS_API lgas_status lgas_field_totals(const lgas_field* field, double* mass, double* momentum);
/* Rounds every population to the nearest integer, ties to even. */
LGAS_API lgas_status lgas_field_round(lgas_field* field);

/* ---- engines ----------------------------------------------------------- */

typedef struct lgas_engine_config {
  lgas_engine_kind kind;
  double lambda_s;          /* alga-*, qalga */
  double lambda_c;          /* alga-const, qalga with adaptive = 0 */
  int adaptive;             /* qalga: 1 adapts lambda_c per cell */
  int integer_cast;         /* alga-* */
  double tau;               /* lbm */
  double mc_lambda;         /* mclga collision probability */
  size_t attempts_per_cell; /* mclga; 0 = ceil(mean density / 2) of the first field stepped */
  uint64_t seed;            /* mclga */
  unsigned threads;         /* mclga; 0 = 1 */
} lgas_engine_config;

LGAS_API void lgas_engine_config_default(lgas_engine_config* config);
LGAS_API lgas_status lgas_engine_create(const lgas_engine_config* config, lgas_engine** out);
LGAS_API void lgas_engine_destroy(lgas_engine* engine);

/*
 * Advances `field` one time step in place and bumps the engine clock. On
 * LGAS_ERR_UNSTABLE the field holds the offending state; on any other error
 * it is unchanged. mclga requires integer populations.
 */
LGAS_API lgas_status lgas_engine_step(lgas_engine* engine, lgas_field* field);
/* Number of completed steps. */
LGAS_API uint64_t lgas_engine_time(const lgas_engine* engine);
/*
 * Cells of the last step whose adapted lambda_c fell outside (0, 1]:
 * skipped by alga-adaptive, collided anyway by adaptive qalga. 0 otherwise.
 */
LGAS_API size_t lgas_engine_last_skip_count(const lgas_engine* engine);

/* ---- experiments ------------------------------------------------------- */

typedef struct lgas_sweep_config {
  lgas_engine_kind engine; /* alga-const, alga-adaptive or mclga */
  size_t lattice_size;
  double n_max;
  double p0;
  size_t points;
  double u_min;
  double u_max;
  size_t steps;
  size_t average_from;
  double lambda_s;
  double lambda_c;
  double mc_lambda;
  size_t attempts_per_cell; /* 0 = default */
  uint64_t seed;
  unsigned threads;
} lgas_sweep_config;

typedef struct lgas_sweep_row {
  double bias;
  double u_x;
  lgas_cell measured;
  lgas_cell standard_error;
  lgas_cell theory;
} lgas_sweep_row;

LGAS_API void lgas_sweep_config_default(lgas_sweep_config* config);
/* Writes config->points rows; *written receives the count. */
LGAS_API lgas_status lgas_equilibrium_sweep(const lgas_sweep_config* config, lgas_sweep_row* rows, size_t capacity,
                                            size_t* written);

typedef struct lgas_tau_scan_config {
  lgas_engine_kind engine; /* qalga or alga-adaptive */
  size_t lattice_size;
  double n_max;
  size_t steps;
  size_t compare_at;
  size_t lambda_points; /* grid (k+1)/lambda_points, used when lambda_s_grid is NULL */
  size_t tau_points;    /* grid (k+1) tau_max/tau_points, used when tau_grid is NULL */
  double tau_max;
  const double* lambda_s_grid;
  size_t lambda_s_count;
  const double* tau_grid;
  size_t tau_count;
  unsigned threads;
} lgas_tau_scan_config;

typedef struct lgas_tau_row {
  double lambda_s;
  double best_tau; /* NaN when the run broke down before compare_at */
  double distance_mass;
  double distance_momentum;
  int stable;
} lgas_tau_row;

LGAS_API void lgas_tau_scan_config_default(lgas_tau_scan_config* config);
LGAS_API lgas_status lgas_tau_scan(const lgas_tau_scan_config* config, lgas_tau_row* rows, size_t capacity,
                                   size_t* written);

/*
 * Text dump of one QALGA step circuit for an n-site lattice. Writes at most
 * capacity bytes including the terminating NUL; *required receives the full
 * length + 1 so callers can size a second call. A NULL buffer with zero
 * capacity is a pure size query and succeeds.
 */
LGAS_API lgas_status lgas_circuit_dump(size_t n, double lambda_s, char* buffer, size_t capacity, size_t* required);

#ifdef __cplusplus
}
#endif

#endif /* LGAS_H */
