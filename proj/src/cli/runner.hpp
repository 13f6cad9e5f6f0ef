#pragma once

// Task dispatch and result rendering.
//
// Operations and their argument roles:
//   invariants                module
//   group_cohomology          module, degree
//   cyclic_oracle             module, degree
//   bruteforce                module, degree
//   hypercohomology           map, degree           (of [source -> target>)
//   hyper_les_check           map, degree
//   upic_complex              res                   (H0 and H1)
//   pic, brauer_a, upic_dual  res
//   topological_report        res                   flags stabilizer_connected, condition_H1
//   verify_torus_comparison   res, gprime_to_tprime, tprime_to_m, tprime_to_tsc, t_to_tprime, rho
// Every operation taking `res` also reads the flag pic_gbar_trivial
// (default true).

#include <map>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "error.hpp"
#include "taskfile.hpp"

namespace upic {

inline constexpr const char* kResultFormat = "upic-result/1";

const char* tool_version();

struct RunOptions {
  int degree_bound = kDefaultDegreeBound;
  bool oracle = false;
  bool timing = false;
};

struct ResultRecord {
  std::size_t index = 0;
  TaskSpec task;
  std::string summary;
  /// Named outputs in a fixed order, e.g. {"H0", "Z/2"}, {"H-1", "0"}.
  std::vector<std::pair<std::string, std::string>> values;
  std::string caveat;
  std::map<std::string, bool> flags;
  /// Oracle checks that ran and agreed.
  std::vector<std::string> checks;
  double seconds = 0;
};

struct RunResult {
  std::string name;
  std::vector<ResultRecord> records;

  /// Summaries joined by "; ".
  std::string summary() const;
};

/// A failed operation; keeps the code of the underlying error.
class TaskError : public Error {
 public:
  TaskError(std::size_t index, const std::string& op, const Error& cause);
  std::size_t index() const { return index_; }
  ErrorCode cause() const { return cause_; }

 private:
  std::size_t index_;
  ErrorCode cause_;
};

/// Unknown operations, missing or dangling arguments and unknown flags;
/// throws ValidationError naming the task.
void validate_tasks(const TaskFile& t, const Workspace& ws);

/// Builds and validates the workspace, then runs every task in order.
/// Throws ParseError/ValidationError before any task runs and TaskError
/// for the first failing task (including a mismatch with `expect`).
RunResult run(const TaskFile& t, const RunOptions& options = {});

std::string render_text(const RunResult& r, bool timing = false);
/// Deterministic unless `timing` adds per-task seconds.
std::string render_json(const RunResult& r, bool timing = false);

/// Writes to a temporary file beside `path`, then renames it over `path`.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace upic
