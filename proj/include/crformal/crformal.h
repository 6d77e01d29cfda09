#ifndef CRFORMAL_H
#define CRFORMAL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CRFORMAL_API __declspec(dllexport)
#else
#define CRFORMAL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes. Positive values mirror the library error codes. */
enum {
  CRFORMAL_OK = 0,
  CRFORMAL_E_ARITY_MISMATCH = 1,
  CRFORMAL_E_INDEX_OUT_OF_RANGE,
  CRFORMAL_E_NOT_POINTED,
  CRFORMAL_E_NOT_A_UNIT,
  CRFORMAL_E_DEGREE_REQUIRED,
  CRFORMAL_E_DEGREE_OVERFLOW,
  CRFORMAL_E_IMPLICIT_REWRITE_REQUIRED,
  CRFORMAL_E_DIVISION_UNCERTIFIABLE,
  CRFORMAL_E_NOT_SOLVABLE_AT_TRUNCATION,
  CRFORMAL_E_NON_SQUARE,
  CRFORMAL_E_NO_WITNESS,
  CRFORMAL_E_INCONSISTENT_DATA,
  CRFORMAL_E_MISSING_JET,
  CRFORMAL_E_FIELD_RESTRICTION,
  CRFORMAL_E_TYPE_MISMATCH,
  CRFORMAL_E_INVALID_ARGUMENT,
  CRFORMAL_E_CONSTRUCTION_FAILED,
  CRFORMAL_E_DIMENSION_MISMATCH,
  CRFORMAL_E_TRORD_UNDEFINED,
  CRFORMAL_E_SYNTAX,
  CRFORMAL_E_UNDECLARED_NAME,
  CRFORMAL_E_NON_GAUSSIAN_LITERAL,
  CRFORMAL_E_NULL_ARGUMENT = 100,
  CRFORMAL_E_INTERNAL = 101
};

enum { CRFORMAL_CONVENTION_DEFAULT = 0, CRFORMAL_CONVENTION_2I = 1, CRFORMAL_CONVENTION_I = 2 };

enum {
  CRFORMAL_TASKS_ALL = 0,
  CRFORMAL_TASKS_CLASSIFY,
  CRFORMAL_TASKS_CHECK_MAP,
  CRFORMAL_TASKS_PROLONG,
  CRFORMAL_TASKS_VERIFY,
  CRFORMAL_TASKS_EXAMPLES
};

typedef struct crformal_options {
  int degree;          /* < 0: keep the document value (default 10) */
  int convention;      /* CRFORMAL_CONVENTION_* */
  int has_seed;        /* nonzero: seed overrides the document */
  uint64_t seed;
} crformal_options;

typedef struct crformal_document crformal_document;
typedef struct crformal_report crformal_report;

CRFORMAL_API const char* crformal_version(void);
CRFORMAL_API const char* crformal_report_schema(void);
CRFORMAL_API const char* crformal_grammar(void);
CRFORMAL_API const char* crformal_error_name(int code);

/* Message, line and column of the last failure on this thread. */
CRFORMAL_API const char* crformal_last_error(void);
CRFORMAL_API int crformal_last_error_line(void);
CRFORMAL_API int crformal_last_error_column(void);

CRFORMAL_API void crformal_options_init(crformal_options* options);

CRFORMAL_API int crformal_document_parse(const char* text, size_t length, crformal_document** out);
/* Canonical text; free with crformal_string_free. */
CRFORMAL_API int crformal_document_print(const crformal_document* doc, char** out);
CRFORMAL_API void crformal_document_free(crformal_document* doc);

/* Task failures are recorded inside the report; the return code only
   reports argument or internal failures. */
CRFORMAL_API int crformal_run_text(const char* text, size_t length, int tasks, const crformal_options* options,
                                   crformal_report** out);
CRFORMAL_API int crformal_run_suites(const char* const* names, size_t count, const crformal_options* options,
                                     crformal_report** out);
CRFORMAL_API int crformal_run_examples(const crformal_options* options, crformal_report** out);

/* Both return "" for a NULL report. */
CRFORMAL_API const char* crformal_report_json(const crformal_report* report);
CRFORMAL_API const char* crformal_report_summary(const crformal_report* report);
/* 1 when nothing was falsified and no task failed. */
CRFORMAL_API int crformal_report_ok(const crformal_report* report);
CRFORMAL_API size_t crformal_report_falsified(const crformal_report* report);
CRFORMAL_API size_t crformal_report_errors(const crformal_report* report);
CRFORMAL_API void crformal_report_free(crformal_report* report);

CRFORMAL_API void crformal_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
