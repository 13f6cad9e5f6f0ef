#include "taskfile.hpp"

#include <fstream>
#include <sstream>

#include "error.hpp"
#include "json.hpp"

namespace upic {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ParseError(path.empty() ? "/" : path, msg); }

const json& field(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void expect_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::size_t get_count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Integer get_integer(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    bool ok = s.size() > start;
    for (std::size_t i = start; i < s.size(); ++i) ok = ok && s[i] >= '0' && s[i] <= '9';
    if (!ok) fail(path, "malformed integer \"" + s + "\"");
    return Integer(s);
  }
  fail(path, "expected an integer");
}

ordered_json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return ordered_json(x.get_si());
  return ordered_json(x.get_str());
}

std::vector<std::size_t> get_index_list(const json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_count(j[i], path + "/" + std::to_string(i)));
  return out;
}

/// Rows as given; an empty array is 0 x 0. Ragged rows are rejected with
/// the owner named.
IntMatrix get_matrix(const json& j, const std::string& path, const std::string& owner) {
  expect_array(j, path);
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Integer> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    expect_array(j[r], rp);
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols)
      throw ValidationError(owner, {"ragged matrix at " + path + ": row " + std::to_string(r) + " has " +
                                        std::to_string(j[r].size()) + " entries, expected " + std::to_string(cols)});
    for (std::size_t c = 0; c < cols; ++c) entries.push_back(get_integer(j[r][c], rp + "/" + std::to_string(c)));
  }
  return IntMatrix(rows, cols, std::move(entries));
}

ordered_json matrix_json(const IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string escape_key(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

GroupSpec parse_group(const json& j, const std::string& path) {
  expect_object(j, path);
  GroupSpec g;
  const bool has_table = j.contains("table");
  const bool has_perm = j.contains("permutations");
  if (has_table == has_perm) fail(path, "expected exactly one of \"table\" or \"permutations\"");
  if (has_table) {
    const json& t = j["table"];
    expect_array(t, path + "/table");
    if (t.empty()) fail(path + "/table", "empty multiplication table");
    for (std::size_t r = 0; r < t.size(); ++r) g.table.push_back(get_index_list(t[r], path + "/table/" + std::to_string(r)));
    if (j.contains("generators")) g.generators = get_index_list(j["generators"], path + "/generators");
  } else {
    const std::string pp = path + "/permutations";
    const json& p = j["permutations"];
    expect_object(p, pp);
    g.degree = get_count(field(p, pp, "degree"), pp + "/degree");
    const json& gens = field(p, pp, "generators");
    expect_array(gens, pp + "/generators");
    for (std::size_t i = 0; i < gens.size(); ++i)
      g.permutations.push_back(get_index_list(gens[i], pp + "/generators/" + std::to_string(i)));
  }
  return g;
}

ordered_json group_json(const GroupSpec& g) {
  ordered_json out = ordered_json::object();
  if (g.is_table()) {
    out["table"] = g.table;
    if (!g.generators.empty()) out["generators"] = g.generators;
  } else {
    ordered_json p = ordered_json::object();
    p["degree"] = g.degree;
    p["generators"] = g.permutations;
    out["permutations"] = p;
  }
  return out;
}

}  // namespace

TaskFile parse_task_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  expect_object(j, "");
  const std::string format = get_string(field(j, "", "format"), "/format");
  if (format != kTaskFormat) fail("/format", "unsupported format \"" + format + "\"");

  TaskFile t;
  if (j.contains("name")) t.name = get_string(j["name"], "/name");
  if (j.contains("description")) t.description = get_string(j["description"], "/description");
  t.group = parse_group(field(j, "", "group"), "/group");

  if (j.contains("modules")) {
    expect_object(j["modules"], "/modules");
    for (const auto& [name, m] : j["modules"].items()) {
      const std::string path = "/modules/" + escape_key(name);
      const std::string owner = "module " + name;
      expect_object(m, path);
      ModuleSpec spec;
      spec.gens = get_count(field(m, path, "gens"), path + "/gens");
      if (m.contains("relations")) spec.relations = get_matrix(m["relations"], path + "/relations", owner);
      if (m.contains("action")) {
        expect_array(m["action"], path + "/action");
        for (std::size_t i = 0; i < m["action"].size(); ++i)
          spec.action.push_back(get_matrix(m["action"][i], path + "/action/" + std::to_string(i), owner));
      }
      t.modules.emplace(name, std::move(spec));
    }
  }

  if (j.contains("maps")) {
    expect_object(j["maps"], "/maps");
    for (const auto& [name, m] : j["maps"].items()) {
      const std::string path = "/maps/" + escape_key(name);
      expect_object(m, path);
      MapSpec spec;
      spec.source = get_string(field(m, path, "source"), path + "/source");
      spec.target = get_string(field(m, path, "target"), path + "/target");
      spec.matrix = get_matrix(field(m, path, "matrix"), path + "/matrix", "map " + name);
      t.maps.emplace(name, std::move(spec));
    }
  }

  const json& tasks = field(j, "", "tasks");
  expect_array(tasks, "/tasks");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string path = "/tasks/" + std::to_string(i);
    const json& tj = tasks[i];
    expect_object(tj, path);
    TaskSpec task;
    task.op = get_string(field(tj, path, "op"), path + "/op");
    if (tj.contains("args")) {
      expect_object(tj["args"], path + "/args");
      for (const auto& [role, name] : tj["args"].items())
        task.args[role] = get_string(name, path + "/args/" + escape_key(role));
    }
    if (tj.contains("degree")) {
      if (!tj["degree"].is_number_integer()) fail(path + "/degree", "expected an integer");
      task.degree = tj["degree"].get<int>();
    }
    if (tj.contains("flags")) {
      expect_object(tj["flags"], path + "/flags");
      for (const auto& [flag, value] : tj["flags"].items()) {
        if (!value.is_boolean()) fail(path + "/flags/" + escape_key(flag), "expected true or false");
        task.flags[flag] = value.get<bool>();
      }
    }
    if (tj.contains("expect")) task.expect = get_string(tj["expect"], path + "/expect");
    t.tasks.push_back(std::move(task));
  }
  return t;
}

TaskFile load_task_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_task_file(buf.str());
}

namespace {

bool is_flat(const ordered_json& j) {
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

/// Like dump(2), but arrays of scalars stay on one line.
void pretty(const ordered_json& j, int indent, std::string& out) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  if (j.is_array() && (j.empty() || is_flat(j))) {
    out += j.dump();
  } else if (j.is_array()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += inner;
      pretty(j[i], indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += inner + ordered_json(it.key()).dump() + ": ";
      pretty(it.value(), indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string serialize_task_file(const TaskFile& t) {
  ordered_json j = ordered_json::object();
  j["format"] = kTaskFormat;
  if (!t.name.empty()) j["name"] = t.name;
  if (!t.description.empty()) j["description"] = t.description;
  j["group"] = group_json(t.group);
  ordered_json modules = ordered_json::object();
  for (const auto& [name, m] : t.modules) {
    ordered_json a = ordered_json::array();
    for (const IntMatrix& x : m.action) a.push_back(matrix_json(x));
    ordered_json mj = ordered_json::object();
    mj["gens"] = m.gens;
    mj["relations"] = matrix_json(m.relations);
    mj["action"] = a;
    modules[name] = mj;
  }
  j["modules"] = modules;
  ordered_json maps = ordered_json::object();
  for (const auto& [name, m] : t.maps) {
    ordered_json mj = ordered_json::object();
    mj["source"] = m.source;
    mj["target"] = m.target;
    mj["matrix"] = matrix_json(m.matrix);
    maps[name] = mj;
  }
  j["maps"] = maps;
  ordered_json tasks = ordered_json::array();
  for (const TaskSpec& task : t.tasks) {
    ordered_json tj = ordered_json::object();
    tj["op"] = task.op;
    if (!task.args.empty()) tj["args"] = task.args;
    if (task.degree) tj["degree"] = *task.degree;
    if (!task.flags.empty()) tj["flags"] = task.flags;
    if (task.expect) tj["expect"] = *task.expect;
    tasks.push_back(std::move(tj));
  }
  j["tasks"] = tasks;
  std::string out;
  pretty(j, 0, out);
  return out + "\n";
}

Workspace build_workspace(const TaskFile& t) {
  Workspace ws;
  try {
    if (t.group.is_table())
      ws.group = make_group(FiniteGroup::from_table(t.group.table, t.group.generators));
    else
      ws.group = make_group(FiniteGroup::from_permutations(t.group.degree, t.group.permutations));
  } catch (const ValidationError& e) {
    throw ValidationError("group", e.violations());
  }
  const std::size_t ngens = ws.group->generators().size();

  for (const auto& [name, spec] : t.modules) {
    std::vector<std::string> v;
    IntMatrix rel = spec.relations;
    if (rel.rows() == 0 && rel.cols() == 0) rel = IntMatrix(spec.gens, 0);
    if (rel.rows() != spec.gens)
      v.push_back("relations have " + std::to_string(rel.rows()) + " rows, expected " + std::to_string(spec.gens));
    if (spec.action.size() != ngens)
      v.push_back(std::to_string(spec.action.size()) + " action matrices given, the group has " + std::to_string(ngens) +
                  " generators");
    for (std::size_t i = 0; i < spec.action.size(); ++i) {
      const IntMatrix& a = spec.action[i];
      if (a.rows() != spec.gens || a.cols() != spec.gens) {
        if (!(spec.gens == 0 && a.rows() == 0)) v.push_back("action " + std::to_string(i) + " is not gens x gens");
      }
    }
    if (!v.empty()) throw ValidationError("module " + name, std::move(v));
    std::vector<IntMatrix> action = spec.action;
    for (IntMatrix& a : action)
      if (spec.gens == 0) a = IntMatrix(0, 0);
    const auto m = PresentedModule::from_generator_action(ws.group, spec.gens, rel, action);
    require_valid(m, "module " + name);
    ws.modules.emplace(name, m);
  }

  for (const auto& [name, spec] : t.maps) {
    std::vector<std::string> v;
    auto s = ws.modules.find(spec.source);
    auto g = ws.modules.find(spec.target);
    if (s == ws.modules.end()) v.push_back("unknown source module \"" + spec.source + "\"");
    if (g == ws.modules.end()) v.push_back("unknown target module \"" + spec.target + "\"");
    if (!v.empty()) throw ValidationError("map " + name, std::move(v));
    IntMatrix matrix = spec.matrix;
    const std::size_t rows = g->second.gens(), cols = s->second.gens();
    if (matrix.rows() == 0 && matrix.cols() == 0) matrix = IntMatrix(rows, cols);
    if (matrix.rows() != rows || matrix.cols() != cols)
      throw ValidationError("map " + name, {"matrix is " + std::to_string(matrix.rows()) + " x " +
                                               std::to_string(matrix.cols()) + ", expected " + std::to_string(rows) +
                                               " x " + std::to_string(cols)});
    const ModuleMap f(s->second, g->second, matrix);
    require_valid(f, "map " + name);
    ws.maps.emplace(name, f);
  }
  return ws;
}

ModuleSpec module_spec(const PresentedModule& m) {
  ModuleSpec out;
  out.gens = m.gens();
  if (m.relations().cols() > 0) out.relations = m.relations();
  for (std::size_t g : m.group().generators()) out.action.push_back(m.action(g));
  return out;
}

GroupSpec permutation_group_spec(std::size_t degree, std::vector<std::vector<std::size_t>> permutations) {
  GroupSpec g;
  g.degree = degree;
  g.permutations = std::move(permutations);
  return g;
}

}  // namespace upic
