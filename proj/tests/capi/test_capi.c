/* Exercises the shared library through its C header only. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <sys/stat.h>

#include "wsmf/wsmf.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static void test_errors(void) {
  wsmf_report* report = NULL;
  EXPECT(wsmf_run("analyze", NULL, &report) == WSMF_ERR_INVALID_ARGUMENT);
  EXPECT(strlen(wsmf_last_error()) > 0);
  EXPECT(wsmf_config_create(NULL) == WSMF_ERR_INVALID_ARGUMENT);
  EXPECT(strcmp(wsmf_status_name(WSMF_ERR_IO), "i/o error") == 0);
  EXPECT(strcmp(wsmf_status_name(WSMF_ERR_COMPUTE), "compute error") == 0);
  EXPECT(wsmf_report_table_count(NULL) == 0);
  wsmf_config_destroy(NULL);
  wsmf_report_destroy(NULL);
  wsmf_signal_set_destroy(NULL);
  wsmf_pyramid_destroy(NULL);

  wsmf_config* cfg = NULL;
  EXPECT(wsmf_config_create(&cfg) == WSMF_OK);
  EXPECT(wsmf_config_set(cfg, "input.path", "/nonexistent/input.csv") == WSMF_OK);
  EXPECT(wsmf_run("analyze", cfg, &report) == WSMF_ERR_IO);
  EXPECT(report == NULL);
  EXPECT(wsmf_config_set(cfg, "analysis.bogus", "1") == WSMF_OK);
  EXPECT(wsmf_run("analyze", cfg, &report) == WSMF_ERR_VALIDATION);
  EXPECT(strstr(wsmf_last_error(), "analysis.bogus") != NULL);
  EXPECT(wsmf_config_load(cfg, "/nonexistent/config.ini") == WSMF_ERR_IO);
  wsmf_config_destroy(cfg);
}

static void test_pyramid(void) {
  enum { n = 1024 };
  double samples[n];
  unsigned state = 12345u;
  for (int i = 0; i < n; ++i) {
    state = state * 1103515245u + 12345u;
    samples[i] = ((double)(state >> 8) / (double)(1u << 24)) - 0.5;
  }
  wsmf_pyramid* p = NULL;
  EXPECT(wsmf_pyramid_decompose(samples, n, 3, 1, &p) == WSMF_OK);
  int jc = 0;
  int jf = 0;
  EXPECT(wsmf_pyramid_range(p, &jc, &jf) == WSMF_OK);
  EXPECT(jc == 1 && jf == 9);
  const double* coeffs = NULL;
  size_t count = 0;
  size_t interior = 0;
  EXPECT(wsmf_pyramid_level(p, 9, &coeffs, &count, &interior) == WSMF_OK);
  EXPECT(count == 512 && interior <= count && interior > 500);
  EXPECT(wsmf_pyramid_level(p, 10, &coeffs, &count, &interior) == WSMF_ERR_VALIDATION);

  wsmf_pyramid* q = NULL;
  EXPECT(wsmf_pyramid_integrate(p, 1.5, &q) == WSMF_OK);
  double h0 = 0.0;
  double h1 = 0.0;
  EXPECT(wsmf_pyramid_hmin(p, 4, 8, &h0) == WSMF_OK);
  EXPECT(wsmf_pyramid_hmin(q, 4, 8, &h1) == WSMF_OK);
  EXPECT(fabs(h1 - h0 - 1.5) < 1e-9);
  EXPECT(wsmf_pyramid_hmin(p, 4, 5, &h0) == WSMF_ERR_VALIDATION);
  wsmf_pyramid_destroy(q);
  wsmf_pyramid_destroy(p);

  samples[3] = NAN;
  EXPECT(wsmf_pyramid_decompose(samples, n, 3, 1, &p) == WSMF_ERR_VALIDATION);
  EXPECT(wsmf_pyramid_decompose(samples, n, 12, 1, &p) == WSMF_ERR_VALIDATION);
}

static void test_round_trip(const char* tmp) {
  char signal_path[1024];
  char json_path[1024];
  char tsv_dir[1024];
  snprintf(signal_path, sizeof signal_path, "%s/capi_fgn.raw", tmp);
  snprintf(json_path, sizeof json_path, "%s/capi_report.json", tmp);
  snprintf(tsv_dir, sizeof tsv_dir, "%s/capi_tsv", tmp);

  wsmf_config* synth = NULL;
  EXPECT(wsmf_config_create(&synth) == WSMF_OK);
  wsmf_config_set(synth, "synth.model", "fgn");
  wsmf_config_set(synth, "synth.alpha", "-0.25");
  wsmf_config_set(synth, "synth.length", "16384");
  wsmf_config_set(synth, "synth.seed", "9");
  wsmf_config_set(synth, "synth.channels", "2");
  wsmf_config_set(synth, "synth.output", signal_path);
  wsmf_report* sreport = NULL;
  EXPECT(wsmf_run("synth", synth, &sreport) == WSMF_OK);
  wsmf_report_destroy(sreport);
  wsmf_config_destroy(synth);

  wsmf_signal_set* set = NULL;
  EXPECT(wsmf_signal_set_read(signal_path, "auto", &set) == WSMF_OK);
  EXPECT(wsmf_signal_set_count(set) == 2);
  const double* samples = NULL;
  size_t length = 0;
  const char* label = NULL;
  EXPECT(wsmf_signal_set_get(set, 1, &samples, &length, &label) == WSMF_OK);
  EXPECT(length == 16384 && samples != NULL && label != NULL);
  EXPECT(wsmf_signal_set_get(set, 2, &samples, &length, &label) == WSMF_ERR_VALIDATION);
  wsmf_signal_set_destroy(set);

  wsmf_config* cfg = NULL;
  EXPECT(wsmf_config_create(&cfg) == WSMF_OK);
  wsmf_config_set(cfg, "input.path", signal_path);
  wsmf_report* report = NULL;
  EXPECT(wsmf_run("analyze", cfg, &report) == WSMF_OK);
  const char* json = NULL;
  size_t json_length = 0;
  EXPECT(wsmf_report_json(report, &json, &json_length) == WSMF_OK);
  EXPECT(json_length == strlen(json));
  EXPECT(strstr(json, "\"schema\": \"wsmf.analysis/1\"") != NULL);
  EXPECT(wsmf_report_table_count(report) == 2);
  EXPECT(wsmf_report_write(report, json_path, tsv_dir) == WSMF_OK);

  FILE* f = fopen(json_path, "rb");
  EXPECT(f != NULL);
  if (f != NULL) {
    char* buf = malloc(json_length + 1);
    const size_t got = fread(buf, 1, json_length + 1, f);
    EXPECT(got == json_length && memcmp(buf, json, json_length) == 0);
    free(buf);
    fclose(f);
  }
  wsmf_report_destroy(report);
  wsmf_config_destroy(cfg);
}

int main(int argc, char** argv) {
  const char* tmp = argc > 1 ? argv[1] : ".";
  mkdir(tmp, 0755);
  EXPECT(strcmp(wsmf_version(), "0.1.0") == 0);
  test_errors();
  test_pyramid();
  test_round_trip(tmp);
  if (failures != 0) {
    fprintf(stderr, "%d C API check(s) failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
