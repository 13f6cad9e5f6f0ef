#pragma once

// Task files: a group, named modules and maps, and a list of operations,
// stored as JSON with exact integers (numbers, or strings for values
// beyond 64 bits). Matrices are arrays of rows; relation matrices have
// one row per generator and one column per relator.
//
//   {
//     "format": "upic-task/1",
//     "name": "norm_one_3",
//     "group": {"permutations": {"degree": 3, "generators": [[1, 2, 0]]}},
//     "modules": {"XT": {"gens": 2, "relations": [], "action": [[[0, -1], [1, -1]]]}},
//     "maps": {"res": {"source": "XT", "target": "zero", "matrix": []}},
//     "tasks": [{"op": "pic", "args": {"res": "res"}, "expect": "Z/3"}]
//   }
//
// Module actions are listed for the group generators only: the permutation
// generators in the given order, or the "generators" of a table group.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "module.hpp"

namespace upic {

inline constexpr const char* kTaskFormat = "upic-task/1";

struct GroupSpec {
  /// Exactly one of table or permutations is used.
  FiniteGroup::Table table;
  std::vector<std::size_t> generators;  // table groups; empty derives a set
  std::size_t degree = 0;
  std::vector<std::vector<std::size_t>> permutations;

  bool is_table() const { return !table.empty(); }
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct ModuleSpec {
  std::size_t gens = 0;
  IntMatrix relations;
  std::vector<IntMatrix> action;  // one per group generator

  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

struct MapSpec {
  std::string source;
  std::string target;
  IntMatrix matrix;

  friend bool operator==(const MapSpec&, const MapSpec&) = default;
};

struct TaskSpec {
  std::string op;
  std::map<std::string, std::string> args;
  std::optional<int> degree;
  std::map<std::string, bool> flags;
  /// Frozen expected summary; a mismatch fails the task.
  std::optional<std::string> expect;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

struct TaskFile {
  std::string name;
  std::string description;
  GroupSpec group;
  std::map<std::string, ModuleSpec> modules;
  std::map<std::string, MapSpec> maps;
  std::vector<TaskSpec> tasks;

  friend bool operator==(const TaskFile&, const TaskFile&) = default;
};

/// Throws ParseError with a JSON pointer (or byte offset) as position.
TaskFile parse_task_file(const std::string& text);
TaskFile load_task_file(const std::string& path);
/// Canonical text: two-space indentation, keys sorted, trailing newline.
std::string serialize_task_file(const TaskFile& t);

/// The objects a task file describes, validated.
struct Workspace {
  GroupPtr group;
  std::map<std::string, PresentedModule> modules;
  std::map<std::string, ModuleMap> maps;
};

/// Throws ValidationError naming the offending group, module, map or task.
Workspace build_workspace(const TaskFile& t);

/// Inverse direction, for writing fixtures: the module's action on the
/// group generators.
ModuleSpec module_spec(const PresentedModule& m);
GroupSpec permutation_group_spec(std::size_t degree, std::vector<std::vector<std::size_t>> permutations);

}  // namespace upic
