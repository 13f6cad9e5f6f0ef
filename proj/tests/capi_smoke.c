#include <stdio.h>
#include <string.h>

#include "upic/upic.h"

static int failures = 0;

static void expect_str(const char* what, char* got, const char* want) {
  if (!got || strcmp(got, want) != 0) {
    printf("FAIL %s: got '%s', want '%s'\n", what, got ? got : "(null)", want);
    ++failures;
  }
  upic_string_free(got);
}

static void expect_status(const char* what, upic_status got, upic_status want) {
  if (got != want) {
    printf("FAIL %s: status %d, want %d (%s)\n", what, (int)got, (int)want, upic_last_error());
    ++failures;
  }
}

int main(void) {
  upic_group* c3 = NULL;
  upic_module* xt = NULL;
  upic_module* zero = NULL;
  upic_map* res = NULL;
  char* s = NULL;
  char* t = NULL;

  expect_status("cyclic group", upic_group_cyclic(3, &c3), UPIC_OK);
  if (upic_group_order(c3) != 3) {
    printf("FAIL group order\n");
    ++failures;
  }
  expect_status("norm one", upic_module_norm_one(c3, &xt), UPIC_OK);
  expect_status("zero module", upic_module_create(c3, 0, NULL, 0, NULL, &zero), UPIC_OK);
  expect_status("map", upic_map_create(xt, zero, NULL, &res), UPIC_OK);

  upic_module_invariants(xt, &s);
  expect_str("invariants", s, "Z^2");
  upic_group_cohomology(xt, 1, 8, &s);
  expect_str("H^1", s, "Z/3");
  upic_pic(res, 8, &s);
  expect_str("pic", s, "Z/3");
  upic_brauer_a(res, 8, &s);
  expect_str("brauer", s, "0");
  expect_status("dual", upic_dual(res, &s, &t), UPIC_OK);
  expect_str("dual H0", s, "Z^2");
  expect_str("dual H-1", t, "0");

  {
    const int64_t bad_action[] = {2};
    upic_module* m = NULL;
    expect_status("bad action", upic_module_create(c3, 1, NULL, 0, bad_action, &m), UPIC_ERR_VALIDATION);
    if (strstr(upic_last_error(), "module") == NULL) {
      printf("FAIL validation message: %s\n", upic_last_error());
      ++failures;
    }
  }
  expect_status("zero order", upic_group_cyclic(0, &c3), UPIC_ERR_ARGUMENT);

  {
    upic_task* task = NULL;
    expect_status("parse error", upic_task_load_string("{", &task), UPIC_ERR_PARSE);
    expect_status("missing file", upic_task_load_file("/nonexistent/x.task", &task), UPIC_ERR_PARSE);
  }

  for (size_t i = 0; i < upic_fixture_count(); ++i) {
    upic_task* task = NULL;
    upic_result* r = NULL;
    upic_run_options opt;
    upic_run_options_init(&opt);
    expect_status(upic_fixture_name(i), upic_fixture_load(i, &task), UPIC_OK);
    expect_status(upic_fixture_name(i), upic_run(task, &opt, &r), UPIC_OK);
    if (r && strcmp(upic_result_joined(r), upic_fixture_expected(i)) != 0) {
      printf("FAIL fixture %s: %s\n", upic_fixture_name(i), upic_result_joined(r));
      ++failures;
    }
    upic_result_free(r);
    upic_task_free(task);
  }

  {
    const char* text =
        "{\"format\": \"upic-task/1\", \"name\": \"x\", \"group\": {\"table\": [[0]]},"
        " \"modules\": {\"Z\": {\"gens\": 1, \"action\": []}, \"zero\": {\"gens\": 0, \"action\": []}},"
        " \"maps\": {\"res\": {\"source\": \"Z\", \"target\": \"zero\", \"matrix\": []}},"
        " \"tasks\": [{\"op\": \"pic\", \"args\": {\"res\": \"res\"}, \"expect\": \"Z/7\"}]}";
    upic_task* task = NULL;
    upic_result* r = NULL;
    expect_status("load string", upic_task_load_string(text, &task), UPIC_OK);
    expect_status("expectation mismatch", upic_run(task, NULL, &r), UPIC_ERR_TASK);
    upic_task_free(task);
  }

  upic_map_free(res);
  upic_module_free(zero);
  upic_module_free(xt);
  upic_group_free(c3);
  printf("%s: %d failure(s)\n", upic_version(), failures);
  return failures == 0 ? 0 : 1;
}
