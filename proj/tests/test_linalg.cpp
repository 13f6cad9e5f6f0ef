#include <random>

#include "doctest.h"
#include "error.hpp"
#include "linalg.hpp"
#include "support.hpp"

using namespace upic;

namespace {

void check_smith(const IntMatrix& a) {
  const auto s = smith_normal_form(a, SmithOptions{true, true, true});
  CHECK(s.U * a * s.V == s.D);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  CHECK((s.U * s.U_inverse).is_identity());
  CHECK((s.V * s.V_inverse).is_identity());
  for (std::size_t r = 0; r < s.D.rows(); ++r)
    for (std::size_t c = 0; c < s.D.cols(); ++c)
      if (r != c) CHECK(s.D(r, c) == 0);
  const auto d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (i + 1 < d.size() && d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
    if (d[i] == 0 && i + 1 < d.size()) CHECK(d[i + 1] == 0);
  }
}

}  // namespace

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}}));
  CHECK(s.D == IntMatrix::from_rows({{2, 0}, {0, 4}}));
  check_smith(IntMatrix::from_rows({{2, 4}, {6, 8}}));

  s = smith_normal_form(IntMatrix::identity(3));
  CHECK(s.D == IntMatrix::identity(3));
  CHECK(s.U == IntMatrix::identity(3));
  CHECK(s.V == IntMatrix::identity(3));

  s = smith_normal_form(IntMatrix(1, 1));
  CHECK(s.D == IntMatrix(1, 1));
}

TEST_CASE("smith normal form on empty shapes") {
  for (auto [r, c] : {std::pair{0, 3}, {3, 0}, {0, 0}}) {
    const IntMatrix a(r, c);
    const auto s = smith_normal_form(a, SmithOptions{true, true, true});
    CHECK(s.U.rows() == static_cast<std::size_t>(r));
    CHECK(s.V.cols() == static_cast<std::size_t>(c));
    CHECK(s.rank == 0);
  }
  CHECK(cokernel_invariants(IntMatrix(0, 4)) == AbelianInvariants::trivial());
  CHECK(cokernel_invariants(IntMatrix(3, 0)) == AbelianInvariants::free(3));
}

TEST_CASE("smith normal form laws on random matrices") {
  std::mt19937 rng(17);
  for (int t = 0; t < 60; ++t) {
    std::uniform_int_distribution<std::size_t> dim(0, 9);
    check_smith(testing::random_matrix(rng, dim(rng), dim(rng), 9));
  }
}

TEST_CASE("smith diagonal matches full decomposition") {
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    const IntMatrix a = testing::random_matrix(rng, 6, 8, 5);
    const auto s = smith_normal_form(a, SmithOptions{false, false, false});
    std::vector<Integer> nonzero;
    for (const auto& d : s.diagonal())
      if (d != 0) nonzero.push_back(d);
    CHECK(smith_diagonal(a) == nonzero);
  }
}

TEST_CASE("cokernel invariants") {
  CHECK(cokernel_invariants(IntMatrix::from_rows({{2}})) == AbelianInvariants::cyclic(2));
  CHECK(cokernel_invariants(IntMatrix(1, 0)) == AbelianInvariants::free(1));
  CHECK(cokernel_invariants(IntMatrix::from_rows({{2, 0}, {0, 1}})) == AbelianInvariants::cyclic(2));
  CHECK(cokernel_invariants(IntMatrix::from_rows({{2, 0}, {0, 3}})).to_string() == "Z/6");
}

TEST_CASE("cokernel invariants are invariant under unimodular change") {
  std::mt19937 rng(99);
  for (int t = 0; t < 25; ++t) {
    const IntMatrix a = testing::random_matrix(rng, 5, 4, 6);
    const IntMatrix p = testing::random_unimodular(rng, 5);
    const IntMatrix q = testing::random_unimodular(rng, 4);
    CHECK(cokernel_invariants(p * a * q) == cokernel_invariants(a));
  }
}

TEST_CASE("subquotient invariants") {
  Subquotient s{2, IntMatrix::identity(2), IntMatrix::from_rows({{2, 0}, {0, 3}})};
  CHECK(subquotient_invariants(s).to_string() == "Z/6");

  const IntMatrix z = IntMatrix::from_rows({{1, 0}, {1, 2}, {0, 1}});
  CHECK(subquotient_invariants({3, z, z}).is_trivial());
  CHECK(subquotient_invariants({1, IntMatrix::identity(1), IntMatrix(1, 0)}) == AbelianInvariants::free(1));

  Subquotient bad{2, IntMatrix::from_rows({{2}, {0}}), IntMatrix::from_rows({{1}, {0}})};
  CHECK_THROWS_AS(subquotient_invariants(bad), Error);

  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    const IntMatrix b = testing::random_matrix(rng, 4, 3, 5);
    CHECK(subquotient_invariants({4, IntMatrix::identity(4), b}) == cokernel_invariants(b));
  }
}

TEST_CASE("subquotient presentation and canonical generators") {
  // Z = span{(2,0,0),(0,1,1)}, B = span{(4,0,0),(0,3,3)}: Z/B = Z/2 x Z/3.
  Subquotient s{3, IntMatrix::from_rows({{2, 0}, {0, 1}, {0, 1}}), IntMatrix::from_rows({{4, 0}, {0, 3}, {0, 3}})};
  const auto p = present_subquotient(s);
  CHECK(p.basis.cols() == 2);
  CHECK(cokernel_invariants(p.relations).to_string() == "Z/6");
  const auto g = canonical_generators(s);
  REQUIRE(g.orders.size() == 1);
  CHECK(g.orders[0] == 6);
  const IntVector lift = g.lifts.column(0);
  CHECK(solve_integer(s.cycles, lift).has_value());
  IntVector six = lift;
  for (auto& x : six) x *= 6;
  CHECK(solve_integer(s.boundaries, six).has_value());
  IntVector three = lift;
  for (auto& x : three) x *= 3;
  CHECK_FALSE(solve_integer(s.boundaries, three).has_value());
}

TEST_CASE("solve integer") {
  CHECK(solve_integer(IntMatrix::from_rows({{2}}), IntVector{4}) == IntVector{2});
  CHECK_FALSE(solve_integer(IntMatrix::from_rows({{2}}), IntVector{3}).has_value());
  CHECK(solve_integer(IntMatrix::from_rows({{1, 1}, {0, 2}}), IntVector{3, 4}) == IntVector{1, 2});
  CHECK(solve_integer(IntMatrix(0, 2), IntVector{}).has_value());
  CHECK_FALSE(solve_integer(IntMatrix(2, 0), IntVector{0, 1}).has_value());
}

TEST_CASE("kernel and echelon") {
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    const IntMatrix a = testing::random_matrix(rng, 4, 7, 4);
    const IntMatrix k = kernel_basis(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == 7 - rank(a));
    const auto h = hermite_normal_form(a);
    CHECK(a * h.transform == h.form);
    CHECK(abs(determinant(h.transform)) == 1);
  }
}

TEST_CASE("induced map invariants") {
  // Z --x2--> Z: kernel 0, cokernel Z/2.
  Subquotient z{1, IntMatrix::identity(1), IntMatrix(1, 0)};
  auto r = induced_map_invariants(z, z, IntMatrix::from_rows({{2}}));
  CHECK(r.kernel.is_trivial());
  CHECK(r.cokernel == AbelianInvariants::cyclic(2));
  // Z/4 --x2--> Z/4: kernel Z/2, cokernel Z/2.
  Subquotient z4{1, IntMatrix::identity(1), IntMatrix::from_rows({{4}})};
  r = induced_map_invariants(z4, z4, IntMatrix::from_rows({{2}}));
  CHECK(r.kernel == AbelianInvariants::cyclic(2));
  CHECK(r.cokernel == AbelianInvariants::cyclic(2));
}

TEST_CASE("abelian invariants canonical form and parsing") {
  const auto a = AbelianInvariants::from_cyclic_orders(2, {2, 3, 4, 1, 0});
  CHECK(a.free_rank() == 3);
  CHECK(a.to_string() == "Z^3 x Z/2 x Z/12");
  CHECK(AbelianInvariants::parse(a.to_string()) == a);
  CHECK(AbelianInvariants::trivial().to_string() == "0");
  CHECK(AbelianInvariants::parse("0") == AbelianInvariants::trivial());
  CHECK(AbelianInvariants::parse("Z") == AbelianInvariants::free(1));
  CHECK_FALSE(AbelianInvariants::parse("Z/1x").has_value());
}

TEST_CASE("large entries stay exact") {
  IntMatrix a(2, 2);
  a(0, 0) = Integer("123456789012345678901234567890");
  a(1, 1) = Integer("987654321098765432109876543210");
  const auto s = smith_normal_form(a, SmithOptions{true, true, true});
  CHECK(s.U * a * s.V == s.D);
  CHECK(s.D(0, 0) * s.D(1, 1) == a(0, 0) * a(1, 1));
}
