#ifndef QHDESCENT_H
#define QHDESCENT_H

/* C interface to the qhdescent engine.
 *
 * Handles are opaque and owned by the caller. Every function returns a
 * qhd_status; on failure qhd_last_error() describes the problem for the calling
 * thread. Strings returned through char** are heap-allocated and released with
 * qhd_string_free.
 *
 * Arguments named `doc` take JSON text, or "@path" to read the JSON from a file;
 * parse errors then cite the path with line and column. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(QHD_BUILDING_LIBRARY)
#define QHD_API __attribute__((visibility("default")))
#else
#define QHD_API
#endif

typedef enum {
  QHD_OK = 0,
  QHD_ERR_PARSE = 1,          /* malformed text or JSON */
  QHD_ERR_SCHEMA = 2,         /* input breaks a data invariant */
  QHD_ERR_PRECONDITION = 3,   /* operation outside its domain */
  QHD_ERR_NOT_INVERTIBLE = 4,
  QHD_ERR_UNSUPPORTED = 5,
  QHD_ERR_ARGUMENT = 6,       /* null or otherwise invalid argument */
  QHD_ERR_INTERNAL = 7
} qhd_status;

typedef struct qhd_manifold qhd_manifold;
typedef struct qhd_fibration qhd_fibration;
typedef struct qhd_complex qhd_complex;

/* Null strings select the defaults: k_max 50, floor "-100", delta "1/10". */
typedef struct {
  int k_max;
  const char* floor;
  const char* delta;
} qhd_options;

QHD_API const char* qhd_version(void);
QHD_API const char* qhd_last_error(void);
QHD_API void qhd_string_free(char* s);
QHD_API const char* qhd_status_name(qhd_status status);

/* Manifolds: a JSON document or a bundled name (cp1, cp2, cp2_undeformed,
 * blowup_cp2, blowup_t4, s2xs2, t2); delta applies to the blow-ups. */
QHD_API qhd_status qhd_manifold_load(const char* doc, qhd_manifold** out);
QHD_API qhd_status qhd_manifold_bundled(const char* name, const char* delta, qhd_manifold** out);
QHD_API qhd_status qhd_manifold_to_json(const qhd_manifold* m, char** out);
QHD_API void qhd_manifold_free(qhd_manifold* m);

QHD_API qhd_status qhd_fibration_load(const char* doc, qhd_fibration** out);
/* cp1_x_s2, cp2_x_s2, s2xs2_x_s2, blowup_cp2, blowup_t4. */
QHD_API qhd_status qhd_fibration_bundled(const char* name, const char* delta, qhd_fibration** out);
/* Trivial fibration M x S^2. */
QHD_API qhd_status qhd_fibration_product(const qhd_manifold* fiber, qhd_fibration** out);
QHD_API qhd_status qhd_fibration_to_json(const qhd_fibration* f, char** out);
QHD_API void qhd_fibration_free(qhd_fibration* f);

QHD_API qhd_status qhd_complex_load(const char* doc, qhd_complex** out);
QHD_API void qhd_complex_free(qhd_complex* c);

/* JSON form of a bundled object: "manifold:<name>", "fibration:<name>",
 * "elements:<manifold>", "complex:torus" or "cycles:torus". */
QHD_API qhd_status qhd_bundled_document(const char* name, const char* delta, char** out);

/* Reports are JSON objects {"outcome", "summary", "data"}. */
QHD_API qhd_status qhd_report_nu(const char* scalar_doc, char** out);
QHD_API qhd_status qhd_report_element_nu(const qhd_manifold* m, const char* elements_doc, char** out);
/* Product of the first two elements of the document. */
QHD_API qhd_status qhd_report_product(const qhd_manifold* m, const char* elements_doc, char** out);
QHD_API qhd_status qhd_report_invert(const qhd_manifold* m, const char* elements_doc, const qhd_options* opt,
                                     char** out);
QHD_API qhd_status qhd_report_classify(const qhd_manifold* m, const char* elements_doc, char** out);
QHD_API qhd_status qhd_report_descent(const qhd_manifold* m, const char* elements_doc, const qhd_options* opt,
                                      char** out);
QHD_API qhd_status qhd_report_asymptotic(const qhd_manifold* m, const char* elements_doc, const qhd_options* opt,
                                         char** out);
/* negate != 0: the cycle lives in the complex of -H and the result is c(a, phi^H). */
QHD_API qhd_status qhd_report_morse(const qhd_complex* c, const char* cycle_doc, int negate, char** out);
/* Growth on the grid s = 0, 1, ..., grid_size - 1. The manifold and elements are
 * optional (both null or both set) and supply the descent verdict. */
QHD_API qhd_status qhd_report_ostrover(const qhd_complex* c, const char* cycles_doc, const char* slope, int grid_size,
                                       const qhd_manifold* m, const char* elements_doc, const qhd_options* opt,
                                       char** out);
QHD_API qhd_status qhd_report_fibration(const qhd_fibration* f, char** out);
/* A gallery scenario by name, or "all". */
QHD_API qhd_status qhd_report_example(const char* name, const qhd_options* opt, char** out);
/* Newline-separated gallery names. */
QHD_API qhd_status qhd_example_names(char** out);

QHD_API qhd_status qhd_report_render_text(const char* report_json, char** out);
/* 0 ok/descend, 1 violation/not_descend, 3 undetermined; -1 on a malformed report. */
QHD_API int qhd_report_exit_code(const char* report_json);

#ifdef __cplusplus
}
#endif

#endif /* QHDESCENT_H */
