#include "upic/upic.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "error.hpp"
#include "fixtures.hpp"
#include "homspace.hpp"
#include "runner.hpp"

struct upic_group {
  upic::GroupPtr g;
};
struct upic_module {
  upic::PresentedModule m;
};
struct upic_map {
  upic::ModuleMap f;
};
struct upic_task {
  upic::TaskFile t;
};
struct upic_result {
  upic::RunResult r;
  upic::RunOptions options;
  std::string joined;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* msg) { g_last_error = msg; }

template <class F>
upic_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return UPIC_OK;
  } catch (const upic::ParseError& e) {
    set_error(e.what());
    return UPIC_ERR_PARSE;
  } catch (const upic::ValidationError& e) {
    set_error(e.what());
    return UPIC_ERR_VALIDATION;
  } catch (const upic::TaskError& e) {
    set_error(e.what());
    return UPIC_ERR_TASK;
  } catch (const upic::Error& e) {
    set_error(e.what());
    return e.code() == upic::ErrorCode::kInvalidArgument ? UPIC_ERR_ARGUMENT : UPIC_ERR_TASK;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return UPIC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return UPIC_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw upic::Error(upic::ErrorCode::kInvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

upic::IntMatrix matrix(const int64_t* data, std::size_t rows, std::size_t cols) {
  upic::IntMatrix m(rows, cols);
  if (rows * cols > 0) require(data != nullptr, "matrix data is null");
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(data[r * cols + c]);
  return m;
}

upic::HomSpaceData homspace(const upic_map* res) {
  require(res != nullptr, "map is null");
  return upic::HomSpaceData{res->f.source().group_ptr(), res->f.source(), res->f.target(), res->f, true};
}

const upic::Fixture* fixture(size_t index) {
  const auto& all = upic::bundled_fixtures();
  return index < all.size() ? &all[index] : nullptr;
}

}  // namespace

extern "C" {

const char* upic_version(void) { return upic::tool_version(); }

const char* upic_last_error(void) { return g_last_error.c_str(); }

void upic_string_free(char* s) { std::free(s); }

upic_status upic_group_cyclic(size_t n, upic_group** out) {
  return guard([&] {
    require(out != nullptr && n >= 1, "invalid arguments");
    *out = new upic_group{upic::make_group(upic::FiniteGroup::cyclic(n))};
  });
}

upic_status upic_group_from_table(size_t order, const size_t* table, const size_t* generators, size_t generator_count,
                                  upic_group** out) {
  return guard([&] {
    require(out != nullptr && table != nullptr && order >= 1, "invalid arguments");
    upic::FiniteGroup::Table t(order, std::vector<std::size_t>(order));
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b) t[a][b] = table[a * order + b];
    std::vector<std::size_t> gens;
    if (generators) gens.assign(generators, generators + generator_count);
    *out = new upic_group{upic::make_group(upic::FiniteGroup::from_table(std::move(t), std::move(gens)))};
  });
}

upic_status upic_group_from_permutations(size_t degree, const size_t* perms, size_t count, upic_group** out) {
  return guard([&] {
    require(out != nullptr && (perms != nullptr || count == 0), "invalid arguments");
    std::vector<std::vector<std::size_t>> p(count);
    for (std::size_t i = 0; i < count; ++i) p[i].assign(perms + i * degree, perms + (i + 1) * degree);
    *out = new upic_group{upic::make_group(upic::FiniteGroup::from_permutations(degree, p))};
  });
}

size_t upic_group_order(const upic_group* g) { return g ? g->g->order() : 0; }

size_t upic_group_generator_count(const upic_group* g) { return g ? g->g->generators().size() : 0; }

void upic_group_free(upic_group* g) { delete g; }

upic_status upic_module_create(const upic_group* g, size_t gens, const int64_t* relations, size_t relation_count,
                               const int64_t* actions, upic_module** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "invalid arguments");
    const std::size_t k = g->g->generators().size();
    std::vector<upic::IntMatrix> act;
    for (std::size_t i = 0; i < k; ++i) act.push_back(matrix(actions ? actions + i * gens * gens : nullptr, gens, gens));
    auto m = upic::PresentedModule::from_generator_action(g->g, gens, matrix(relations, gens, relation_count), act);
    upic::require_valid(m, "module");
    *out = new upic_module{std::move(m)};
  });
}

upic_status upic_module_norm_one(const upic_group* g, upic_module** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "invalid arguments");
    *out = new upic_module{upic::norm_one_lattice(g->g)};
  });
}

upic_status upic_module_induced(const upic_group* g, const size_t* subgroup, size_t size, upic_module** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr && subgroup != nullptr, "invalid arguments");
    std::vector<std::size_t> h(subgroup, subgroup + size);
    *out = new upic_module{upic::induced_module(g->g, h)};
  });
}

upic_status upic_module_invariants(const upic_module* m, char** out) {
  return guard([&] {
    require(m != nullptr && out != nullptr, "invalid arguments");
    *out = dup(m->m.invariants().to_string());
  });
}

upic_status upic_group_cohomology(const upic_module* m, int degree, int bound, char** out) {
  return guard([&] {
    require(m != nullptr && out != nullptr, "invalid arguments");
    *out = dup(upic::group_cohomology(m->m, degree, bound).to_string());
  });
}

void upic_module_free(upic_module* m) { delete m; }

upic_status upic_map_create(const upic_module* source, const upic_module* target, const int64_t* data,
                            upic_map** out) {
  return guard([&] {
    require(source != nullptr && target != nullptr && out != nullptr, "invalid arguments");
    upic::ModuleMap f(source->m, target->m, matrix(data, target->m.gens(), source->m.gens()));
    upic::require_valid(f, "map");
    *out = new upic_map{std::move(f)};
  });
}

void upic_map_free(upic_map* f) { delete f; }

upic_status upic_pic(const upic_map* res, int bound, char** out) {
  return guard([&] {
    require(out != nullptr, "output is null");
    *out = dup(upic::pic(homspace(res), bound).value.to_string());
  });
}

upic_status upic_brauer_a(const upic_map* res, int bound, char** out) {
  return guard([&] {
    require(out != nullptr, "output is null");
    *out = dup(upic::brauer_a(homspace(res), bound).value.to_string());
  });
}

upic_status upic_dual(const upic_map* res, char** h0, char** hminus1) {
  return guard([&] {
    require(h0 != nullptr && hminus1 != nullptr, "output is null");
    const upic::DualResult d = upic::upic_dual(homspace(res));
    *h0 = dup(d.h0.to_string());
    *hminus1 = dup(d.hminus1.to_string());
  });
}

const char* upic_pic_caveat(void) { return upic::kPicCaveat; }

const char* upic_brauer_caveat(void) { return upic::kBrauerCaveat; }

void upic_run_options_init(upic_run_options* o) {
  if (!o) return;
  o->degree_bound = upic::kDefaultDegreeBound;
  o->oracle = 0;
  o->timing = 0;
}

upic_status upic_task_load_file(const char* path, upic_task** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "invalid arguments");
    *out = new upic_task{upic::load_task_file(path)};
  });
}

upic_status upic_task_load_string(const char* text, upic_task** out) {
  return guard([&] {
    require(text != nullptr && out != nullptr, "invalid arguments");
    *out = new upic_task{upic::parse_task_file(text)};
  });
}

upic_status upic_task_serialize(const upic_task* t, char** out) {
  return guard([&] {
    require(t != nullptr && out != nullptr, "invalid arguments");
    *out = dup(upic::serialize_task_file(t->t));
  });
}

void upic_task_free(upic_task* t) { delete t; }

upic_status upic_run(const upic_task* t, const upic_run_options* o, upic_result** out) {
  return guard([&] {
    require(t != nullptr && out != nullptr, "invalid arguments");
    upic::RunOptions options;
    if (o) {
      require(o->degree_bound >= 0, "degree bound must be nonnegative");
      options.degree_bound = o->degree_bound;
      options.oracle = o->oracle != 0;
      options.timing = o->timing != 0;
    }
    auto* r = new upic_result{upic::run(t->t, options), options, {}};
    r->joined = r->r.summary();
    *out = r;
  });
}

size_t upic_result_count(const upic_result* r) { return r ? r->r.records.size() : 0; }

const char* upic_result_summary(const upic_result* r, size_t index) {
  if (!r || index >= r->r.records.size()) return nullptr;
  return r->r.records[index].summary.c_str();
}

const char* upic_result_joined(const upic_result* r) { return r ? r->joined.c_str() : nullptr; }

upic_status upic_result_text(const upic_result* r, char** out) {
  return guard([&] {
    require(r != nullptr && out != nullptr, "invalid arguments");
    *out = dup(upic::render_text(r->r, r->options.timing));
  });
}

upic_status upic_result_json(const upic_result* r, char** out) {
  return guard([&] {
    require(r != nullptr && out != nullptr, "invalid arguments");
    *out = dup(upic::render_json(r->r, r->options.timing));
  });
}

upic_status upic_result_write(const upic_result* r, const char* path) {
  return guard([&] {
    require(r != nullptr && path != nullptr, "invalid arguments");
    upic::write_atomically(path, upic::render_json(r->r, r->options.timing));
  });
}

void upic_result_free(upic_result* r) { delete r; }

size_t upic_fixture_count(void) { return upic::bundled_fixtures().size(); }

const char* upic_fixture_name(size_t index) {
  const auto* f = fixture(index);
  return f ? f->name.c_str() : nullptr;
}

const char* upic_fixture_description(size_t index) {
  const auto* f = fixture(index);
  return f ? f->description.c_str() : nullptr;
}

const char* upic_fixture_expected(size_t index) {
  static const std::vector<std::string> expected = [] {
    std::vector<std::string> v;
    for (const auto& f : upic::bundled_fixtures()) v.push_back(f.expected());
    return v;
  }();
  return index < expected.size() ? expected[index].c_str() : nullptr;
}

upic_status upic_fixture_load(size_t index, upic_task** out) {
  return guard([&] {
    require(out != nullptr, "output is null");
    const auto* f = fixture(index);
    require(f != nullptr, "fixture index out of range");
    *out = new upic_task{f->task};
  });
}

}  // extern "C"
