/* Compiles the public header as C and drives one document end to end. */
#include <crformal/crformal.h>

#include <stdio.h>
#include <string.h>

int main(void) {
  const char* text = "M = heisenberg(1)\nclassify M\n";
  crformal_options opts;
  crformal_report* report = NULL;
  int rc;

  crformal_options_init(&opts);
  rc = crformal_run_text(text, strlen(text), CRFORMAL_TASKS_ALL, &opts, &report);
  if (rc != CRFORMAL_OK) {
    fprintf(stderr, "run failed: %s\n", crformal_last_error());
    return 1;
  }
  if (!crformal_report_ok(report) || strstr(crformal_report_json(report), "\"type\": \"finite\"") == NULL) {
    fprintf(stderr, "%s", crformal_report_json(report));
    crformal_report_free(report);
    return 1;
  }
  crformal_report_free(report);
  printf("capi smoke ok (%s)\n", crformal_version());
  return 0;
}
