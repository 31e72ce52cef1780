#ifndef RECTSUB_H
#define RECTSUB_H

#include <stddef.h>
#include <stdint.h>

#if defined(RECTSUB_BUILDING_LIBRARY)
#define RS_API __attribute__((visibility("default")))
#else
#define RS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rs_scene rs_scene;
typedef struct rs_report rs_report;

typedef enum rs_status {
  RS_OK = 0,
  RS_ERR_INVALID_ARGUMENT = 1,
  RS_ERR_PARSE = 2,
  RS_ERR_SCHEMA = 3,
  RS_ERR_DIMENSION = 4,
  RS_ERR_DOMAIN = 5,
  RS_ERR_NUMERIC = 6,
  RS_ERR_IO = 7,
  RS_ERR_INTERNAL = 8
} rs_status;

typedef struct rs_run_options {
  const char* checks; /* comma-separated names; NULL or "" for the scene's list */
  int has_seed;
  uint64_t seed;
  int points;         /* 0 for the scene's default */
} rs_run_options;

/* Message of the last failing call on this thread; never NULL. */
RS_API const char* rs_last_error(void);
RS_API const char* rs_version(void);

RS_API rs_status rs_scene_from_json(const char* document, rs_scene** out);
RS_API rs_status rs_scene_from_file(const char* path, rs_scene** out);
RS_API rs_status rs_scene_builtin(const char* name, rs_scene** out);
RS_API const char* rs_scene_name(const rs_scene* scene);
RS_API void rs_scene_free(rs_scene* scene);

RS_API size_t rs_builtin_count(void);
RS_API const char* rs_builtin_name(size_t index);
/* JSON text of a built-in scene; NULL for unknown names. */
RS_API const char* rs_builtin_document(const char* name);

RS_API rs_status rs_run(const rs_scene* scene, const rs_run_options* options, rs_report** out);
RS_API const char* rs_report_json(const rs_report* report);
RS_API const char* rs_report_text(const rs_report* report);
/* 0 all pass, 1 any fail or n/a, 3 numeric errors without failures. */
RS_API int rs_report_exit_code(const rs_report* report);
RS_API void rs_report_free(rs_report* report);

/* Evaluates an expression over `n` named variables at `values`. gradient
   (n entries) and hessian (n*n, row-major) may be NULL. */
RS_API rs_status rs_eval(const char* expression, const char* const* names, const double* values, size_t n,
                         double* value, double* gradient, double* hessian);

#ifdef __cplusplus
}
#endif

#endif
