#include "fixtures.hpp"

#include "module.hpp"

namespace upic {

namespace {

struct Builder {
  Fixture f;
  GroupPtr group;

  Builder(std::string name, std::string description, const GroupSpec& spec) {
    f.name = std::move(name);
    f.description = std::move(description);
    f.task.name = f.name;
    f.task.description = f.description;
    f.task.group = spec;
    group = spec.is_table() ? make_group(FiniteGroup::from_table(spec.table, spec.generators))
                            : make_group(FiniteGroup::from_permutations(spec.degree, spec.permutations));
  }

  Builder& module(const std::string& name, const PresentedModule& m) {
    f.task.modules[name] = module_spec(m);
    return *this;
  }

  Builder& map(const std::string& name, const std::string& source, const std::string& target, IntMatrix matrix) {
    if (matrix.rows() == 0) matrix = IntMatrix();
    f.task.maps[name] = MapSpec{source, target, std::move(matrix)};
    return *this;
  }

  Builder& task(std::string op, std::map<std::string, std::string> args, std::string expect,
                std::optional<int> degree = std::nullopt, std::map<std::string, bool> flags = {}) {
    f.task.tasks.push_back(TaskSpec{std::move(op), std::move(args), degree, std::move(flags), std::move(expect)});
    return *this;
  }

  PresentedModule z_mod(long n) const {
    return PresentedModule(group, 1, IntMatrix::from_rows({{n}}), std::vector<IntMatrix>(group->order(), IntMatrix::identity(1)));
  }
};

GroupSpec trivial_group() {
  GroupSpec g;
  g.table = {{0}};
  return g;
}

std::vector<std::size_t> cycle(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

std::string free_name(std::size_t r) { return r == 1 ? "Z" : "Z^" + std::to_string(r); }

Fixture norm_one(std::size_t n) {
  Builder b("norm_one_" + std::to_string(n), "norm-one torus of a cyclic extension of degree " + std::to_string(n),
            permutation_group_spec(n, {cycle(n)}));
  b.module("XT", norm_one_lattice(b.group))
      .module("zero", PresentedModule::zero(b.group))
      .map("res", "XT", "zero", IntMatrix(0, n - 1))
      .task("pic", {{"res", "res"}}, "Z/" + std::to_string(n))
      .task("brauer_a", {{"res", "res"}}, "0")
      .task("upic_dual", {{"res", "res"}}, "H0=" + free_name(n - 1) + ", H-1=0");
  return b.f;
}

Fixture sln_normalizer() {
  Builder b("sln_normalizer", "SL_n modulo the normalizer of a maximal torus: X(H) = Z/2, X(G) = 0",
            trivial_group());
  b.module("XG", PresentedModule::zero(b.group))
      .module("XH", b.z_mod(2))
      .map("res", "XG", "XH", IntMatrix(1, 0))
      .task("pic", {{"res", "res"}}, "Z/2")
      .task("upic_dual", {{"res", "res"}}, "H0=Z/2, H-1=0");
  return b.f;
}

Fixture pgl2_torsor() {
  Builder b("pgl2_torsor", "PGL_2 torsor through the m-extension SL_2, stabilizer mu_2 (not connected)",
            trivial_group());
  b.module("XGp", PresentedModule::zero(b.group))
      .module("XM", b.z_mod(2))
      .map("res", "XGp", "XM", IntMatrix(1, 0))
      .task("upic_complex", {{"res", "res"}}, "H0=0, H1=Z/2")
      .task("pic", {{"res", "res"}}, "Z/2")
      .task("topological_report", {{"res", "res"}}, "H0=Z/2, H-1=0 (hypotheses not asserted)", std::nullopt,
            {{"stabilizer_connected", false}, {"condition_H1", false}});
  return b.f;
}

Fixture sl2_pgl2_comparison() {
  Builder b("sl2_pgl2_comparison", "maximal torus comparison for the m-extension SL_2 -> PGL_2", trivial_group());
  const auto z = PresentedModule::trivial(b.group);
  b.module("XGp", PresentedModule::zero(b.group))
      .module("XM", b.z_mod(2))
      .module("XT", z)
      .module("XTp", z)
      .module("XTsc", z)
      .map("res", "XGp", "XM", IntMatrix(1, 0))
      .map("gprime_to_tprime", "XGp", "XTp", IntMatrix(1, 0))
      .map("tprime_to_m", "XTp", "XM", IntMatrix::from_rows({{1}}))
      .map("tprime_to_tsc", "XTp", "XTsc", IntMatrix::from_rows({{1}}))
      .map("t_to_tprime", "XT", "XTp", IntMatrix::from_rows({{2}}))
      .map("rho", "XT", "XTsc", IntMatrix::from_rows({{2}}))
      .task("verify_torus_comparison",
            {{"res", "res"},
             {"gprime_to_tprime", "gprime_to_tprime"},
             {"tprime_to_m", "tprime_to_m"},
             {"tprime_to_tsc", "tprime_to_tsc"},
             {"t_to_tprime", "t_to_tprime"},
             {"rho", "rho"}},
            "true")
      .task("pic", {{"res", "res"}}, "Z/2")
      .task("pic", {{"res", "rho"}}, "Z/2")
      .task("brauer_a", {{"res", "rho"}}, "0");
  return b.f;
}

Fixture biquadratic_norm_one() {
  Builder b("biquadratic_norm_one", "norm-one torus of a biquadratic extension, Galois group (Z/2)^2",
            permutation_group_spec(4, {{1, 0, 3, 2}, {2, 3, 0, 1}}));
  b.module("XT", norm_one_lattice(b.group))
      .module("zero", PresentedModule::zero(b.group))
      .module("Z", PresentedModule::trivial(b.group))
      .module("Z4", b.z_mod(4))
      .map("res", "XT", "zero", IntMatrix(0, 3))
      .task("pic", {{"res", "res"}}, "Z/2 x Z/2")
      .task("brauer_a", {{"res", "res"}}, "Z/2")
      .task("group_cohomology", {{"module", "Z"}}, "Z/2", 3)
      .task("bruteforce", {{"module", "Z4"}}, "Z/2 x Z/2", 1)
      .task("bruteforce", {{"module", "Z4"}}, "Z/2 x Z/2 x Z/2", 2);
  return b.f;
}

Fixture quasi_trivial_c2() {
  Builder b("quasi_trivial_c2", "quasi-trivial torus R_{L/k} G_m for a quadratic extension",
            permutation_group_spec(2, {{1, 0}}));
  b.module("XT", induced_module(b.group, std::vector<std::size_t>{b.group->identity()}))
      .module("zero", PresentedModule::zero(b.group))
      .map("res", "XT", "zero", IntMatrix(0, 2))
      .task("pic", {{"res", "res"}}, "0")
      .task("brauer_a", {{"res", "res"}}, "0");
  return b.f;
}

Fixture quasi_trivial_s3() {
  Builder b("quasi_trivial_s3", "quasi-trivial torus R_{L/k} G_m for a non-Galois cubic extension, Galois closure S_3",
            permutation_group_spec(3, {{1, 0, 2}, {1, 2, 0}}));
  // The stabilizer of the point 2 has order 2.
  const auto h = b.group->subgroup_generated(std::vector<std::size_t>{b.group->generators()[0]});
  b.module("XT", induced_module(b.group, h))
      .module("zero", PresentedModule::zero(b.group))
      .map("res", "XT", "zero", IntMatrix(0, 3))
      .task("pic", {{"res", "res"}}, "0")
      .task("brauer_a", {{"res", "res"}}, "Z/2");
  return b.f;
}

Fixture split_torus() {
  Builder b("split_torus", "split torus of rank 2 as a homogeneous space of itself", trivial_group());
  b.module("XT", PresentedModule::trivial(b.group, 2))
      .module("zero", PresentedModule::zero(b.group))
      .map("res", "XT", "zero", IntMatrix(0, 2))
      .task("pic", {{"res", "res"}}, "0")
      .task("topological_report", {{"res", "res"}}, "pi1=Z^2, pi2/tors=0", std::nullopt,
            {{"stabilizer_connected", true}});
  return b.f;
}

}  // namespace

std::string Fixture::expected() const {
  std::string out;
  for (const TaskSpec& t : task.tasks) out += (out.empty() ? "" : "; ") + t.expect.value_or("?");
  return out;
}

const std::vector<Fixture>& bundled_fixtures() {
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> v;
    for (std::size_t n = 2; n <= 6; ++n) v.push_back(norm_one(n));
    v.push_back(sln_normalizer());
    v.push_back(pgl2_torsor());
    v.push_back(sl2_pgl2_comparison());
    v.push_back(biquadratic_norm_one());
    v.push_back(quasi_trivial_c2());
    v.push_back(quasi_trivial_s3());
    v.push_back(split_torus());
    return v;
  }();
  return all;
}

const Fixture* find_fixture(const std::string& name) {
  for (const Fixture& f : bundled_fixtures())
    if (f.name == name) return &f;
  return nullptr;
}

}  // namespace upic
