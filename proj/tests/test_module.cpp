#include <random>

#include "doctest.h"
#include "error.hpp"
#include "module.hpp"
#include "support.hpp"

using namespace upic;
using testing::cyclic;

TEST_CASE("group construction") {
  const auto s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  CHECK(s3.identity() == 0);
  for (std::size_t a = 0; a < 6; ++a) CHECK(s3.multiply(a, s3.inverse(a)) == s3.identity());
  CHECK_FALSE(s3.cyclic_generator().has_value());
  CHECK(FiniteGroup::cyclic(6).cyclic_generator() == 1u);
  const auto v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(v4.order() == 4);
  CHECK_FALSE(v4.cyclic_generator().has_value());

  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1}}), ValidationError);
  CHECK_THROWS_AS(FiniteGroup::from_permutations(3, {{0, 0, 1}}), ValidationError);
  CHECK_THROWS_AS(FiniteGroup::from_permutations(6, {{1, 2, 3, 4, 5, 0}, {1, 0, 2, 3, 4, 5}}), ValidationError);
}

TEST_CASE("validate module examples") {
  const GroupPtr c2 = cyclic(2);
  CHECK(validate_module(PresentedModule::trivial(c2)).empty());
  const PresentedModule bad(c2, 1, IntMatrix(1, 0), {IntMatrix::identity(1), IntMatrix::from_rows({{2}})});
  CHECK_FALSE(validate_module(bad).empty());
  const PresentedModule z2(c2, 1, IntMatrix::from_rows({{2}}), {IntMatrix::identity(1), IntMatrix::from_rows({{-1}})});
  CHECK(validate_module(z2).empty());
  CHECK_THROWS_AS(require_valid(bad, "bad"), ValidationError);
}

TEST_CASE("from generator action") {
  const GroupPtr c4 = cyclic(4);
  const auto m = PresentedModule::from_generator_action(c4, 2, IntMatrix(2, 0), {IntMatrix::from_rows({{0, -1}, {1, 0}})});
  CHECK(validate_module(m).empty());
  CHECK(m.action(2) == IntMatrix::from_rows({{-1, 0}, {0, -1}}));
  const auto sign = PresentedModule::from_generator_action(c4, 1, IntMatrix(1, 0), {IntMatrix::from_rows({{-1}})});
  CHECK(validate_module(sign).empty());
  const auto broken = PresentedModule::from_generator_action(c4, 1, IntMatrix(1, 0), {IntMatrix::from_rows({{2}})});
  CHECK_FALSE(validate_module(broken).empty());
}

TEST_CASE("induced modules") {
  const GroupPtr s3 = testing::s3();
  const std::vector<std::size_t> whole{0, 1, 2, 3, 4, 5};
  const auto triv = induced_module(s3, whole);
  CHECK(triv.gens() == 1);
  CHECK(triv == PresentedModule::trivial(s3));

  const std::vector<std::size_t> e{0};
  for (const GroupPtr& g : {cyclic(2), cyclic(5), s3}) {
    const auto reg = induced_module(g, e);
    CHECK(reg.gens() == g->order());
    CHECK(validate_module(reg).empty());
    for (std::size_t x = 0; x < g->order(); ++x) {
      const IntMatrix& p = reg.action(x);
      CHECK((p * p.transpose()).is_identity());
      for (std::size_t k = 0; k < g->order(); ++k) CHECK(p(g->multiply(x, k), k) == 1);
    }
  }

  std::vector<std::size_t> order2;
  for (std::size_t x = 0; x < 6; ++x)
    if (x != s3->identity() && s3->element_order(x) == 2) {
      order2 = s3->subgroup_generated(std::vector<std::size_t>{x});
      break;
    }
  const auto perm3 = induced_module(s3, order2);
  CHECK(perm3.gens() == 3);
  CHECK(validate_module(perm3).empty());
  CHECK(perm3.is_torsion_free());

  const std::vector<std::size_t> not_subgroup{0, 1};
  CHECK_THROWS_AS(induced_module(cyclic(3), not_subgroup), Error);
}

TEST_CASE("norm one lattice") {
  const auto n2 = norm_one_lattice(2);
  CHECK(n2.gens() == 1);
  CHECK(n2.action(1) == IntMatrix::from_rows({{-1}}));
  CHECK(n2.invariants() == AbelianInvariants::free(1));
  const auto n3 = norm_one_lattice(3);
  CHECK(n3.gens() == 2);
  CHECK(n3.action(1) == IntMatrix::from_rows({{0, -1}, {1, -1}}));
  for (std::size_t n = 2; n <= 6; ++n) CHECK(validate_module(norm_one_lattice(n)).empty());
  CHECK(validate_module(norm_one_lattice(testing::s3())).empty());
}

TEST_CASE("dual lattice") {
  const GroupPtr c2 = cyclic(2);
  CHECK(dual_lattice(PresentedModule::trivial(c2)) == PresentedModule::trivial(c2));
  const PresentedModule sign(c2, 1, IntMatrix(1, 0), {IntMatrix::identity(1), IntMatrix::from_rows({{-1}})});
  CHECK(dual_lattice(sign) == sign);
  const auto reg = induced_module(c2, std::vector<std::size_t>{0});
  CHECK(dual_lattice(reg) == reg);
  const PresentedModule z2(c2, 1, IntMatrix::from_rows({{2}}), {IntMatrix::identity(1), IntMatrix::identity(1)});
  CHECK_THROWS_AS(dual_lattice(z2), Error);

  std::mt19937 rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto g = t % 2 ? testing::s3() : cyclic(4);
    const auto m = testing::free_version(testing::random_module(rng, g, 4, false));
    const auto dd = dual_lattice(dual_lattice(m));
    CHECK(dd.actions() == m.actions());
    CHECK(validate_module(dual_lattice(m)).empty());
  }
}

TEST_CASE("random modules and maps are valid") {
  std::mt19937 rng(21);
  for (int t = 0; t < 30; ++t) {
    const GroupPtr g = t % 3 == 0 ? testing::s3() : cyclic(2 + t % 5);
    const auto m = testing::random_module(rng, g, 4, t % 2 == 0);
    CHECK(validate_module(m).empty());
    const auto src = testing::free_version(testing::random_module(rng, g, 3, false));
    const auto f = testing::random_map(rng, src, m);
    CHECK(validate_map(f).empty());
  }
}

TEST_CASE("normalize torsion free") {
  const GroupPtr c3 = cyclic(3);
  IntMatrix norm(3, 1);
  for (int i = 0; i < 3; ++i) norm(i, 0) = 1;
  const auto reg = induced_module(c3, std::vector<std::size_t>{0});
  const PresentedModule q(c3, 3, norm, reg.actions());
  const auto n = normalize_torsion_free(q);
  CHECK(n.module.gens() == 2);
  CHECK(validate_module(n.module).empty());
  CHECK(q.columns_vanish(n.from_free * n.to_free - IntMatrix::identity(3)));
  CHECK((n.to_free * n.from_free).is_identity());
}

TEST_CASE("kernels, cokernels, exactness") {
  const GroupPtr c2 = cyclic(2);
  const auto z = PresentedModule::trivial(c2);
  const ModuleMap two(z, z, IntMatrix::from_rows({{2}}));
  CHECK(is_injective(two));
  CHECK_FALSE(is_surjective(two));
  CHECK(cokernel_module(two).invariants() == AbelianInvariants::cyclic(2));
  const ModuleMap proj = cokernel_projection(two);
  CHECK(is_exact_at(two, proj));
  CHECK(is_surjective(proj));
  const auto fixed = fixed_points(induced_module(c2, std::vector<std::size_t>{0}));
  CHECK(subquotient_invariants(fixed) == AbelianInvariants::free(1));
  CHECK(stabilizer(induced_module(c2, std::vector<std::size_t>{0}), IntVector{1, 1}).size() == 2);
  CHECK(stabilizer(induced_module(c2, std::vector<std::size_t>{0}), IntVector{1, 0}).size() == 1);
}
