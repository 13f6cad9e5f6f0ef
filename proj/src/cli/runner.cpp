#include "runner.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "homspace.hpp"
#include "json.hpp"

#ifndef UPIC_VERSION
#define UPIC_VERSION "0.0.0"
#endif

namespace upic {

const char* tool_version() { return "upic " UPIC_VERSION; }

namespace {

struct OpInfo {
  std::vector<std::string> roles;
  bool degree = false;
  std::vector<std::string> flags;
};

const std::map<std::string, OpInfo>& operations() {
  static const std::map<std::string, OpInfo> ops = {
      {"invariants", {{"module"}, false, {}}},
      {"group_cohomology", {{"module"}, true, {}}},
      {"cyclic_oracle", {{"module"}, true, {}}},
      {"bruteforce", {{"module"}, true, {}}},
      {"hypercohomology", {{"map"}, true, {}}},
      {"hyper_les_check", {{"map"}, true, {}}},
      {"upic_complex", {{"res"}, false, {"pic_gbar_trivial"}}},
      {"pic", {{"res"}, false, {"pic_gbar_trivial"}}},
      {"brauer_a", {{"res"}, false, {"pic_gbar_trivial"}}},
      {"upic_dual", {{"res"}, false, {"pic_gbar_trivial"}}},
      {"topological_report", {{"res"}, false, {"pic_gbar_trivial", "stabilizer_connected", "condition_H1"}}},
      {"verify_torus_comparison",
       {{"res", "gprime_to_tprime", "tprime_to_m", "tprime_to_tsc", "t_to_tprime", "rho"}, false, {}}},
  };
  return ops;
}

bool flag(const TaskSpec& t, const std::string& name, bool fallback) {
  auto it = t.flags.find(name);
  return it == t.flags.end() ? fallback : it->second;
}

std::string task_label(std::size_t i, const TaskSpec& t) { return "task " + std::to_string(i) + " (" + t.op + ")"; }

void oracle_mismatch(const std::string& what, const AbelianInvariants& a, const AbelianInvariants& b) {
  throw Error(ErrorCode::kOracleMismatch, what + ": cochains give " + a.to_string() + ", oracle gives " + b.to_string());
}

class Runner {
 public:
  Runner(const Workspace& ws, const RunOptions& options) : ws_(ws), opt_(options) {}

  void execute(ResultRecord& r) {
    const TaskSpec& t = r.task;
    const int deg = t.degree.value_or(0);
    if (t.op == "invariants") {
      single(r, module(t).invariants());
    } else if (t.op == "group_cohomology") {
      const auto h = group_cohomology(module(t), deg, opt_.degree_bound);
      if (opt_.oracle) check_module(r, module(t), deg, h);
      single(r, h);
    } else if (t.op == "cyclic_oracle") {
      const auto h = cyclic_oracle(module(t), deg);
      if (opt_.oracle) compare(r, "cochains", group_cohomology(module(t), deg, opt_.degree_bound), h);
      single(r, h);
    } else if (t.op == "bruteforce") {
      const auto h = finite_coeff_bruteforce(module(t), deg);
      if (opt_.oracle) compare(r, "cochains", group_cohomology(module(t), deg, opt_.degree_bound), h);
      single(r, h);
    } else if (t.op == "hypercohomology") {
      const ModuleMap& f = map(t, "map");
      const auto h = hypercohomology(two_term(f), deg, opt_.degree_bound);
      if (opt_.oracle) check_two_term(r, f, deg, h);
      single(r, h);
    } else if (t.op == "hyper_les_check") {
      const LesCheck c = hyper_les_check(map(t, "map"), deg, opt_.degree_bound);
      r.summary = c.ok ? "ok" : "violated";
      r.values = {{"H", c.hk.to_string()}, {"coker", c.coker.to_string()}, {"ker", c.ker.to_string()}};
      if (!c.ok) throw Error(ErrorCode::kExactnessViolation, c.to_string());
    } else if (t.op == "upic_complex") {
      const auto k = upic_complex(data(t));
      const auto h0 = cohomology(k, 0).invariants, h1 = cohomology(k, 1).invariants;
      r.values = {{"H0", h0.to_string()}, {"H1", h1.to_string()}};
      r.summary = "H0=" + h0.to_string() + ", H1=" + h1.to_string();
      r.flags["assumes_pic_gbar_trivial"] = flag(t, "pic_gbar_trivial", true);
    } else if (t.op == "pic" || t.op == "brauer_a") {
      const HomSpaceData d = data(t);
      const ArithmeticInvariant a = t.op == "pic" ? pic(d, opt_.degree_bound) : brauer_a(d, opt_.degree_bound);
      if (opt_.oracle) check_two_term(r, d.res, t.op == "pic" ? 1 : 2, a.value);
      single(r, a.value);
      r.caveat = a.caveat;
      r.flags["assumes_pic_gbar_trivial"] = a.assumes_pic_gbar_trivial;
      r.flags["finite_level"] = true;
      r.flags["level_sensitive"] = a.level_sensitive;
    } else if (t.op == "upic_dual") {
      const DualResult d = upic_dual(data(t));
      r.values = {{"H0", d.h0.to_string()}, {"H-1", d.hminus1.to_string()}};
      r.summary = "H0=" + d.h0.to_string() + ", H-1=" + d.hminus1.to_string();
      r.checks.push_back("five-term sequence");
      r.flags["assumes_pic_gbar_trivial"] = flag(t, "pic_gbar_trivial", true);
    } else if (t.op == "topological_report") {
      const TopologicalReport rep =
          topological_report(data(t), flag(t, "stabilizer_connected", false), flag(t, "condition_H1", false));
      const std::string h0 = rep.h0.to_string(), h1 = rep.hminus1.to_string();
      r.values = {{rep.pi1_labeled ? "pi1" : "H0", h0}, {rep.pi2_labeled ? "pi2/tors" : "H-1", h1}};
      r.summary = (rep.pi1_labeled ? "pi1=" : "H0=") + h0 + ", " + (rep.pi2_labeled ? "pi2/tors=" : "H-1=") + h1;
      if (!rep.pi1_labeled || !rep.pi2_labeled) r.summary += " (hypotheses not asserted)";
      r.flags["pi1_labeled"] = rep.pi1_labeled;
      r.flags["pi2_labeled"] = rep.pi2_labeled;
      r.flags["assumes_pic_gbar_trivial"] = rep.assumes_pic_gbar_trivial;
    } else if (t.op == "verify_torus_comparison") {
      const TorusComparisonReport rep = verify_torus_comparison(torus_data(t));
      r.summary = rep.ok ? "true" : "false";
      const char* names[] = {"upper", "middle", "lower"};
      const AbelianInvariants* groups[] = {rep.upper, rep.middle, rep.lower};
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 2; ++i) r.values.push_back({std::string(names[k]) + ".H" + std::to_string(i), groups[k][i].to_string()});
      for (const std::string& p : rep.problems) r.values.push_back({"problem", p});
    } else {
      throw Error(ErrorCode::kUnknownTask, "unknown operation " + t.op);
    }
  }

 private:
  const PresentedModule& module(const TaskSpec& t) const { return ws_.modules.at(t.args.at("module")); }
  const ModuleMap& map(const TaskSpec& t, const std::string& role) const { return ws_.maps.at(t.args.at(role)); }

  HomSpaceData data(const TaskSpec& t) const {
    const ModuleMap& res = map(t, "res");
    return HomSpaceData{ws_.group, res.source(), res.target(), res, flag(t, "pic_gbar_trivial", true)};
  }

  TorusComparisonData torus_data(const TaskSpec& t) const {
    const ModuleMap& res = map(t, "res");
    const ModuleMap& g_tp = map(t, "gprime_to_tprime");
    const ModuleMap& tp_m = map(t, "tprime_to_m");
    const ModuleMap& tp_sc = map(t, "tprime_to_tsc");
    const ModuleMap& t_tp = map(t, "t_to_tprime");
    const ModuleMap& rho = map(t, "rho");
    std::vector<std::string> v;
    auto same = [&v](const PresentedModule& a, const PresentedModule& b, const std::string& what) {
      if (!(a == b)) v.push_back(what);
    };
    same(res.source(), g_tp.source(), "res and gprime_to_tprime have different sources");
    same(g_tp.target(), tp_m.source(), "gprime_to_tprime does not land in the source of tprime_to_m");
    same(tp_m.source(), tp_sc.source(), "tprime_to_m and tprime_to_tsc have different sources");
    same(t_tp.target(), tp_m.source(), "t_to_tprime does not land in X(T')");
    same(res.target(), tp_m.target(), "res and tprime_to_m have different targets");
    same(rho.source(), t_tp.source(), "rho and t_to_tprime have different sources");
    same(rho.target(), tp_sc.target(), "rho and tprime_to_tsc have different targets");
    if (!v.empty()) throw ValidationError("torus comparison diagram", std::move(v));
    return TorusComparisonData{ws_.group,        res.source(),    res.target(),     rho.source(),
                               tp_m.source(),    rho.target(),    res.matrix(),     g_tp.matrix(),
                               tp_m.matrix(),    tp_sc.matrix(),  t_tp.matrix(),    rho.matrix()};
  }

  static void single(ResultRecord& r, const AbelianInvariants& a) {
    r.summary = a.to_string();
    r.values = {{"value", r.summary}};
  }

  static void compare(ResultRecord& r, const std::string& name, const AbelianInvariants& computed,
                      const AbelianInvariants& oracle) {
    if (!(computed == oracle)) oracle_mismatch(name, computed, oracle);
    r.checks.push_back(name);
  }

  void check_module(ResultRecord& r, const PresentedModule& m, int deg, const AbelianInvariants& h) {
    if (deg == 0) compare(r, "fixed points", h, subquotient_invariants(fixed_points(m)));
    if (deg >= 1 && m.group().cyclic_generator()) compare(r, "cyclic oracle", h, cyclic_oracle(m, deg));
    if (deg <= 2 && m.invariants().is_finite()) {
      try {
        compare(r, "brute force", h, finite_coeff_bruteforce(m, deg));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kBudgetExceeded) throw;
      }
    }
  }

  void check_two_term(ResultRecord& r, const ModuleMap& f, int deg, const AbelianInvariants& h) {
    const LesCheck c = hyper_les_check(f, deg, opt_.degree_bound);
    if (!(c.hk == h)) oracle_mismatch("long exact sequence", h, c.hk);
    if (!c.ok) throw Error(ErrorCode::kOracleMismatch, "long exact sequence bookkeeping: " + c.to_string());
    r.checks.push_back("long exact sequence");
    // With one side zero the complex is a shifted module.
    if (f.target().gens() == 0 && deg >= 0) check_module(r, f.source(), deg, h);
    else if (f.source().gens() == 0 && deg >= 1) check_module(r, f.target(), deg - 1, h);
  }

  const Workspace& ws_;
  const RunOptions& opt_;
};

}  // namespace

std::string RunResult::summary() const {
  std::string out;
  for (const ResultRecord& r : records) out += (out.empty() ? "" : "; ") + r.summary;
  return out;
}

TaskError::TaskError(std::size_t index, const std::string& op, const Error& cause)
    : Error(cause.code(), "task " + std::to_string(index) + " (" + op + "): " + cause.what()),
      index_(index),
      cause_(cause.code()) {}

void validate_tasks(const TaskFile& t, const Workspace& ws) {
  for (std::size_t i = 0; i < t.tasks.size(); ++i) {
    const TaskSpec& task = t.tasks[i];
    std::vector<std::string> v;
    auto it = operations().find(task.op);
    if (it == operations().end()) throw ValidationError(task_label(i, task), {"unknown operation"});
    const OpInfo& info = it->second;
    for (const std::string& role : info.roles) {
      auto a = task.args.find(role);
      if (a == task.args.end()) {
        v.push_back("missing argument \"" + role + "\"");
        continue;
      }
      const bool found = role == "module" ? ws.modules.count(a->second) > 0 : ws.maps.count(a->second) > 0;
      if (!found) v.push_back("argument \"" + role + "\" names unknown " + (role == "module" ? "module" : "map") + " \"" + a->second + "\"");
    }
    for (const auto& [role, name] : task.args)
      if (std::find(info.roles.begin(), info.roles.end(), role) == info.roles.end())
        v.push_back("unexpected argument \"" + role + "\"");
    if (info.degree && !task.degree) v.push_back("missing degree");
    if (!info.degree && task.degree) v.push_back("degree is not used by this operation");
    for (const auto& [name, value] : task.flags)
      if (std::find(info.flags.begin(), info.flags.end(), name) == info.flags.end())
        v.push_back("unknown flag \"" + name + "\"");
    if (!v.empty()) throw ValidationError(task_label(i, task), std::move(v));
  }
}

RunResult run(const TaskFile& t, const RunOptions& options) {
  const Workspace ws = build_workspace(t);
  validate_tasks(t, ws);
  Runner runner(ws, options);
  RunResult out;
  out.name = t.name;
  for (std::size_t i = 0; i < t.tasks.size(); ++i) {
    ResultRecord r;
    r.index = i;
    r.task = t.tasks[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      runner.execute(r);
      if (r.task.expect && *r.task.expect != r.summary)
        throw Error(ErrorCode::kExpectationMismatch, "expected \"" + *r.task.expect + "\", got \"" + r.summary + "\"");
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw TaskError(i, r.task.op, e);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.records.push_back(std::move(r));
  }
  return out;
}

std::string render_text(const RunResult& r, bool timing) {
  std::ostringstream os;
  if (!r.name.empty()) os << r.name << "\n";
  for (const ResultRecord& rec : r.records) {
    os << "  [" << rec.index << "] " << rec.task.op;
    if (rec.task.degree) os << " degree " << *rec.task.degree;
    os << ": " << rec.summary;
    if (timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " (%.3f s)", rec.seconds);
      os << buf;
    }
    os << "\n";
    if (rec.values.size() > 1)
      for (const auto& [k, v] : rec.values) os << "      " << k << " = " << v << "\n";
    if (!rec.caveat.empty()) os << "      caveat: " << rec.caveat << "\n";
    if (rec.flags.count("assumes_pic_gbar_trivial") && rec.flags.at("assumes_pic_gbar_trivial"))
      os << "      assuming Pic(G) = 0\n";
    if (rec.flags.count("level_sensitive") && rec.flags.at("level_sensitive"))
      os << "      computed at the finite level of the given group\n";
    if (!rec.checks.empty()) {
      os << "      checked: " << rec.checks.front();
      for (std::size_t i = 1; i < rec.checks.size(); ++i) os << "; " << rec.checks[i];
      os << "\n";
    }
  }
  os << "result: " << r.summary() << "\n";
  return os.str();
}

std::string render_json(const RunResult& r, bool timing) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["format"] = kResultFormat;
  j["tool"] = tool_version();
  j["name"] = r.name;
  ordered_json records = ordered_json::array();
  for (const ResultRecord& rec : r.records) {
    ordered_json x;
    x["index"] = rec.index;
    x["op"] = rec.task.op;
    x["args"] = rec.task.args;
    if (rec.task.degree) x["degree"] = *rec.task.degree;
    if (!rec.task.flags.empty()) x["task_flags"] = rec.task.flags;
    x["summary"] = rec.summary;
    ordered_json values = ordered_json::object();
    for (const auto& [k, v] : rec.values) values[k] = v;
    x["values"] = values;
    if (!rec.caveat.empty()) x["caveat"] = rec.caveat;
    if (!rec.flags.empty()) x["flags"] = rec.flags;
    if (!rec.checks.empty()) x["checks"] = rec.checks;
    if (rec.task.expect) x["expect"] = *rec.task.expect;
    if (timing) x["seconds"] = rec.seconds;
    records.push_back(std::move(x));
  }
  j["results"] = records;
  return j.dump(2) + "\n";
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::kInvalidArgument, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kInvalidArgument, "cannot replace " + path);
  }
}

}  // namespace upic
