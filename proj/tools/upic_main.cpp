#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "upic/upic.h"

namespace {

int exit_code(upic_status s) {
  switch (s) {
    case UPIC_OK: return 0;
    case UPIC_ERR_PARSE: return 2;
    case UPIC_ERR_VALIDATION: return 3;
    case UPIC_ERR_TASK: return 4;
    default: return 1;
  }
}

const char* status_name(upic_status s) {
  switch (s) {
    case UPIC_ERR_PARSE: return "parse error";
    case UPIC_ERR_VALIDATION: return "validation error";
    case UPIC_ERR_TASK: return "task error";
    case UPIC_ERR_ARGUMENT: return "invalid argument";
    default: return "internal error";
  }
}

int report(upic_status s) {
  std::cerr << "upic: " << status_name(s) << ": " << upic_last_error() << "\n";
  return exit_code(s);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  upic_string_free(s);
  return out;
}

struct RunArgs {
  std::string file;
  std::string out;
  int degree_bound = -1;
  std::string oracle = "off";
  bool timing = false;
};

int cmd_run(const RunArgs& a) {
  upic_task* task = nullptr;
  if (upic_status s = upic_task_load_file(a.file.c_str(), &task); s != UPIC_OK) return report(s);
  upic_run_options opt;
  upic_run_options_init(&opt);
  if (a.degree_bound >= 0) opt.degree_bound = a.degree_bound;
  opt.oracle = a.oracle == "on";
  opt.timing = a.timing;
  upic_result* result = nullptr;
  const upic_status s = upic_run(task, &opt, &result);
  upic_task_free(task);
  if (s != UPIC_OK) return report(s);
  char* text = nullptr;
  upic_result_text(result, &text);
  std::cout << take(text);
  int rc = 0;
  if (!a.out.empty())
    if (upic_status w = upic_result_write(result, a.out.c_str()); w != UPIC_OK) rc = report(w);
  upic_result_free(result);
  return rc;
}

struct FixtureArgs {
  bool list = false;
  bool run_all = false;
  std::string export_dir;
  std::string oracle = "off";
};

int cmd_fixtures(const FixtureArgs& a) {
  const size_t n = upic_fixture_count();
  if (!a.export_dir.empty()) {
    std::filesystem::create_directories(a.export_dir);
    for (size_t i = 0; i < n; ++i) {
      upic_task* t = nullptr;
      if (upic_status s = upic_fixture_load(i, &t); s != UPIC_OK) return report(s);
      char* text = nullptr;
      const upic_status s = upic_task_serialize(t, &text);
      upic_task_free(t);
      if (s != UPIC_OK) return report(s);
      const auto path = std::filesystem::path(a.export_dir) / (std::string(upic_fixture_name(i)) + ".task");
      std::ofstream(path, std::ios::binary) << take(text);
      std::cout << path.string() << "\n";
    }
    return 0;
  }
  if (!a.run_all) {
    for (size_t i = 0; i < n; ++i)
      std::cout << upic_fixture_name(i) << "\n    " << upic_fixture_description(i) << "\n    expected: "
                << upic_fixture_expected(i) << "\n";
    return 0;
  }
  int failures = 0;
  upic_run_options opt;
  upic_run_options_init(&opt);
  opt.oracle = a.oracle == "on";
  for (size_t i = 0; i < n; ++i) {
    upic_task* t = nullptr;
    upic_result* r = nullptr;
    upic_status s = upic_fixture_load(i, &t);
    if (s == UPIC_OK) s = upic_run(t, &opt, &r);
    if (s == UPIC_OK) {
      std::cout << "PASS " << upic_fixture_name(i) << ": " << upic_result_joined(r) << "\n";
    } else {
      ++failures;
      std::cout << "FAIL " << upic_fixture_name(i) << ": " << upic_last_error() << "\n";
    }
    upic_result_free(r);
    upic_task_free(t);
  }
  std::cout << (n - failures) << "/" << n << " fixtures passed\n";
  return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of homogeneous spaces from character lattice data"};
  app.set_version_flag("--version", std::string(upic_version()));
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run the tasks of a task file");
  run->add_option("file", run_args.file, "task file")->required();
  run->add_option("--out", run_args.out, "write the JSON result here");
  run->add_option("--degree-bound", run_args.degree_bound, "highest cochain degree to compute")->check(CLI::NonNegativeNumber);
  run->add_option("--oracle", run_args.oracle, "cross-check cohomology against oracles")
      ->check(CLI::IsMember({"on", "off"}));
  run->add_flag("--timing", run_args.timing, "report per-task seconds");

  FixtureArgs fix_args;
  auto* fixtures = app.add_subcommand("fixtures", "list, run or export the bundled fixtures");
  auto* list = fixtures->add_flag("--list", fix_args.list, "list fixtures (default)");
  auto* run_all = fixtures->add_flag("--run-all", fix_args.run_all, "run every fixture");
  fixtures->add_option("--export", fix_args.export_dir, "write the fixtures as task files into a directory");
  fixtures->add_option("--oracle", fix_args.oracle, "cross-check cohomology against oracles")
      ->check(CLI::IsMember({"on", "off"}));
  list->excludes(run_all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }
  if (*run) return cmd_run(run_args);
  return cmd_fixtures(fix_args);
}
