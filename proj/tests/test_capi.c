/* exercises the shared library through its C header only */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "ainerve.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static const char* doc =
    "{\"seed\": 5, \"cap\": 4,"
    " \"complexes\": {\"A\": {\"kind\": \"chain\", \"random\": {\"lo\": 0, \"hi\": 3, \"maxdim\": 2}}},"
    " \"categories\": {\"D\": {\"kind\": \"random_chain_dg\", \"objects\": 3, \"zero\": true},"
    "                  \"S\": {\"kind\": \"simplex\", \"n\": 3}},"
    " \"simplices\": {\"s\": {\"category\": \"D\", \"objects\": [0, 1, 2], \"random\": true}},"
    " \"big_simplices\": {\"b\": {\"category\": \"D\", \"objects\": [0, 1, 2], \"random\": true}}}";

int main(void) {
  ain_options o;
  ain_workspace* ws = NULL;
  char* r = NULL;
  char* r2 = NULL;
  ain_default_options(&o);
  EXPECT(strlen(ain_version()) > 0);

  EXPECT(ain_workspace_load(doc, &ws) == AIN_OK);
  EXPECT(ws != NULL);

  EXPECT(ain_cmd_validate(ws, &o, &r) == AIN_OK);
  EXPECT(r && strstr(r, "\"status\": \"pass\""));
  ain_string_free(r);

  EXPECT(ain_cmd_fill_horn(ws, "s", 1, &o, &r) == AIN_OK);
  ain_string_free(r);
  EXPECT(ain_cmd_fill_horn(ws, "s", 0, &o, &r) == AIN_INPUT_ERROR);
  EXPECT(strstr(ain_last_error(), "not inner") != NULL);
  ain_string_free(r);
  EXPECT(ain_cmd_fill_horn(ws, "nope", 1, &o, &r) == AIN_INPUT_ERROR);
  ain_string_free(r);

  EXPECT(ain_cmd_compare(ws, "b", &o, &r) == AIN_OK);
  ain_string_free(r);
  EXPECT(ain_cmd_dk_roundtrip(ws, "A", &o, &r) == AIN_OK);
  EXPECT(r && strstr(r, "N\xe2\x88\x98" "DK diff = 0"));
  ain_string_free(r);
  EXPECT(ain_cmd_stable(ws, "D", 10, &o, &r) == AIN_OK);
  EXPECT(r && strstr(r, "10/10"));
  ain_string_free(r);
  EXPECT(ain_cmd_stable(ws, "S", 10, &o, &r) == AIN_INPUT_ERROR);
  ain_string_free(r);

  /* identical inputs give identical reports */
  EXPECT(ain_cmd_stable(ws, "D", 5, &o, &r) == AIN_OK);
  EXPECT(ain_cmd_stable(ws, "D", 5, &o, &r2) == AIN_OK);
  EXPECT(r && r2 && strcmp(r, r2) == 0);
  ain_string_free(r);
  ain_string_free(r2);

  o.format = AIN_FORMAT_TEXT;
  EXPECT(ain_cmd_cube(4, &o, &r) == AIN_OK);
  EXPECT(r && strstr(r, "top=6 vertices=8 facets=6"));
  ain_string_free(r);
  EXPECT(ain_cmd_cube(9, &o, &r) == AIN_INPUT_ERROR);
  ain_string_free(r);
  ain_workspace_free(ws);

  /* schema and parse errors */
  ws = NULL;
  EXPECT(ain_workspace_load("{\"bogus\": 1}", &ws) == AIN_INPUT_ERROR);
  EXPECT(ws == NULL);
  EXPECT(strstr(ain_last_error(), "unknown section") != NULL);
  EXPECT(ain_workspace_load("{\n \"seed\": }", &ws) == AIN_INPUT_ERROR);
  EXPECT(strstr(ain_last_error(), "line 2") != NULL);
  EXPECT(ain_workspace_load_file("/nonexistent.json", &ws) == AIN_INPUT_ERROR);

  /* a perturbed m2 is located */
  EXPECT(ain_workspace_load("{\"categories\": {\"P\": {\"kind\": \"simplex\", \"n\": 3, \"overrides\":"
                            " [{\"n\": 2, \"objects\": [0, 1, 2], \"inputs\": [0, 0], \"output\": [[0, \"2\"]]}]}}}",
                            &ws) == AIN_OK);
  o.format = AIN_FORMAT_JSON;
  EXPECT(ain_cmd_validate(ws, &o, &r) == AIN_DEFECTS);
  EXPECT(r && strstr(r, "\"objects\": [") && strstr(r, "category P"));
  ain_string_free(r);
  ain_workspace_free(ws);

  EXPECT(ain_set_field("fp:6") == AIN_INPUT_ERROR);
  EXPECT(ain_set_field("fp:7") == AIN_OK);
  EXPECT(ain_workspace_load(doc, &ws) == AIN_OK);
  EXPECT(ain_cmd_validate(ws, &o, &r) == AIN_OK);
  ain_string_free(r);
  ain_workspace_free(ws);
  EXPECT(ain_set_field("rational") == AIN_OK);

  EXPECT(ain_cmd_self_test(&o, &r) == AIN_OK);
  ain_string_free(r);

  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("all C API checks passed\n");
  return failures ? 1 : 0;
}
