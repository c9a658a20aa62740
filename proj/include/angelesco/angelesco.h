#ifndef ANGELESCO_H
#define ANGELESCO_H

/* C interface to the limit-curve library. All strings are UTF-8. Functions
   returning ang_status leave a message retrievable with ang_last_error() on
   failure. */

#include <stddef.h>

#if defined(_WIN32)
#  define ANG_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define ANG_API __attribute__((visibility("default")))
#else
#  define ANG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ang_status {
  ANG_OK = 0,
  ANG_VALIDATION_FAILED = 1,
  ANG_INPUT_ERROR = 2,
  ANG_NUMERICAL_FAILURE = 3,
  ANG_INTERNAL_ERROR = 4
} ang_status;

typedef enum ang_method {
  ANG_METHOD_DIS = 0,
  ANG_METHOD_ODE = 1,
  ANG_METHOD_SURFACE = 2
} ang_method;

typedef struct ang_config ang_config;
typedef struct ang_curve ang_curve;

typedef struct ang_point {
  double s;
  double A1;
  double A2;
  double B1;
  double B2;
} ang_point;

typedef struct ang_plateau_info {
  double c1;
  double c2;
  ang_point limits;
} ang_plateau_info;

ANG_API const char* ang_version(void);

/* Message of the last failing call on this thread; empty if none. */
ANG_API const char* ang_last_error(void);

ANG_API ang_status ang_config_create(ang_config** out);
ANG_API void ang_config_destroy(ang_config* cfg);
ANG_API ang_status ang_config_load_file(ang_config* cfg, const char* path);
ANG_API ang_status ang_config_set(ang_config* cfg, const char* key, const char* value);

/* Writes one CSV per method in the comma-separated list (NULL or "" keeps the
   configured methods) plus run.json to the output directory. */
ANG_API ang_status ang_run_compute(const ang_config* cfg, const char* methods);

/* Returns ANG_VALIDATION_FAILED when any check fails; the failing check names
   are copied, comma-separated, into `failures` when it is non-NULL. */
ANG_API ang_status ang_run_validate(const ang_config* cfg, char* failures, size_t failures_size);

/* `labels` may be NULL (file stems are used) or hold n_paths entries. */
ANG_API ang_status ang_run_plot(const char* const* csv_paths, const char* const* labels, size_t n_paths,
                                const char* out_path, const char* title);

ANG_API ang_status ang_curve_compute(const ang_config* cfg, ang_method method, size_t grid_points,
                                     ang_curve** out);
ANG_API size_t ang_curve_size(const ang_curve* curve);
ANG_API ang_status ang_curve_point(const ang_curve* curve, size_t index, ang_point* out);
ANG_API void ang_curve_destroy(ang_curve* curve);

ANG_API ang_status ang_plateau(const ang_config* cfg, ang_plateau_info* out);

#ifdef __cplusplus
}
#endif

#endif
