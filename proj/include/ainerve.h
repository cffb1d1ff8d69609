#ifndef AINERVE_H
#define AINERVE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ain_workspace ain_workspace;

typedef enum ain_status {
  AIN_OK = 0,           /* every check passed */
  AIN_DEFECTS = 1,      /* command ran and found defects */
  AIN_INPUT_ERROR = 2,  /* parse, schema or reference error; unknown id; cap exceeded */
  AIN_INTERNAL_ERROR = 3
} ain_status;

typedef enum ain_format { AIN_FORMAT_JSON = 0, AIN_FORMAT_TEXT = 1 } ain_format;

/* sign used by the Alexander-Whitney map */
typedef enum ain_sign_mode { AIN_SIGN_CLASSICAL = 0, AIN_SIGN_PAPER = 1 } ain_sign_mode;

typedef struct ain_options {
  uint64_t seed;
  int seed_set; /* 0: use the document's seed */
  int cap;      /* level / arity cap; 0: use the document's cap */
  ain_sign_mode sign_mode;
  ain_format format;
} ain_options;

void ain_default_options(ain_options* opts);
const char* ain_version(void);

/* "rational" or "fp:P" with P prime. Process-wide; call before loading. */
ain_status ain_set_field(const char* field);

ain_status ain_workspace_load(const char* json_text, ain_workspace** out);
ain_status ain_workspace_load_file(const char* path, ain_workspace** out);
/* as above, with seed and cap from opts overriding the document when set */
ain_status ain_workspace_load_ex(const char* json_text, const ain_options* opts, ain_workspace** out);
ain_status ain_workspace_load_file_ex(const char* path, const ain_options* opts, ain_workspace** out);
void ain_workspace_free(ain_workspace* ws);

/* message of the last failed call on this thread, "" if none */
const char* ain_last_error(void);

/* Commands write a newly allocated report to *report (release with
   ain_string_free). A report is produced for AIN_OK and AIN_DEFECTS and, when
   possible, for AIN_INPUT_ERROR. */
ain_status ain_cmd_validate(ain_workspace* ws, const ain_options* opts, char** report);
ain_status ain_cmd_fill_horn(ain_workspace* ws, const char* simplex_id, int p, const ain_options* opts,
                             char** report);
ain_status ain_cmd_compare(ain_workspace* ws, const char* big_simplex_id, const ain_options* opts, char** report);
ain_status ain_cmd_cube(int m, const ain_options* opts, char** report);
ain_status ain_cmd_dk_roundtrip(ain_workspace* ws, const char* complex_id, const ain_options* opts, char** report);
ain_status ain_cmd_stable(ain_workspace* ws, const char* category_id, int trials, const ain_options* opts,
                          char** report);
ain_status ain_cmd_self_test(const ain_options* opts, char** report);

void ain_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
