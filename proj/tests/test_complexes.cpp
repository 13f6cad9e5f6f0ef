#include <random>

#include "complexes.hpp"
#include "doctest.h"
#include "error.hpp"
#include "support.hpp"

using namespace upic;
using testing::cyclic;

namespace {

PresentedModule z_mod(const GroupPtr& g, long n) {
  return PresentedModule(g, 1, IntMatrix::from_rows({{n}}), std::vector<IntMatrix>(g->order(), IntMatrix::identity(1)));
}

BoundedComplex times(const GroupPtr& g, long n) {
  const auto z = PresentedModule::trivial(g);
  return two_term(ModuleMap(z, z, IntMatrix::from_rows({{n}})));
}

}  // namespace

TEST_CASE("two-term complexes and cohomology") {
  const GroupPtr e = cyclic(1);
  const auto zero = PresentedModule::zero(e);
  const auto z2 = z_mod(e, 2);
  const auto k = two_term(ModuleMap::zero(zero, z2));
  CHECK(cohomology(k, 0).invariants.is_trivial());
  CHECK(cohomology(k, 1).invariants == AbelianInvariants::cyclic(2));
  CHECK(k.trimmed().lowest() == 1);

  const auto t = times(e, 2);
  CHECK(cohomology(t, 0).invariants.is_trivial());
  CHECK(cohomology(t, 1).invariants == AbelianInvariants::cyclic(2));

  const auto z = PresentedModule::trivial(e);
  const auto c0 = two_term(ModuleMap::zero(z, zero));
  CHECK(cohomology(c0, 0).invariants == AbelianInvariants::free(1));
  CHECK(c0.trimmed().highest() == 0);

  const auto cone_style = two_term(ModuleMap(z, z, IntMatrix::from_rows({{2}})), false);
  CHECK(cone_style.lowest() == -1);
  CHECK(cone_style.differential(-1) == IntMatrix::from_rows({{-2}}));
}

TEST_CASE("d o d is checked on construction") {
  const GroupPtr e = cyclic(1);
  const auto z = PresentedModule::trivial(e);
  CHECK_THROWS_AS(BoundedComplex(e, 0, {z, z, z}, {IntMatrix::from_rows({{1}}), IntMatrix::from_rows({{1}})}),
                  ValidationError);
  const auto z2 = z_mod(e, 2);
  CHECK_NOTHROW(BoundedComplex(e, 0, {z, z, z2}, {IntMatrix::from_rows({{2}}), IntMatrix::from_rows({{1}})}));
}

TEST_CASE("cone examples") {
  const GroupPtr e = cyclic(1);
  const auto z = PresentedModule::trivial(e);
  const auto z0 = BoundedComplex::concentrated(z, 0);
  CHECK(is_acyclic(cone(ComplexMap::identity(z0))));

  const auto c = cone(ComplexMap::zero(z0, z0));
  CHECK(cohomology(c, -1).invariants == AbelianInvariants::free(1));
  CHECK(cohomology(c, 0).invariants == AbelianInvariants::free(1));
  CHECK(cohomology(c, 1).invariants.is_trivial());

  const auto k = two_term(ModuleMap::zero(PresentedModule::zero(e), z_mod(e, 2)));
  CHECK(same_complex(cone(ComplexMap::zero(BoundedComplex::zero(e), k)), k));

  // <P -> Q] for P = Q = Z, f = 2: Q in degree 0, differential -2.
  const auto p = BoundedComplex::concentrated(z, 0);
  const auto two = ComplexMap(p, p, 0, {IntMatrix::from_rows({{2}})});
  const auto cp = cone(two);
  CHECK(cp.lowest() == -1);
  CHECK(cp.differential(-1) == IntMatrix::from_rows({{-2}}));
  CHECK(same_complex(fibre(two), times(e, 2)));
}

TEST_CASE("cone-shift law on random maps") {
  std::mt19937 rng(4);
  for (int t = 0; t < 25; ++t) {
    const GroupPtr g = cyclic(1 + t % 4);
    const auto x = testing::random_complex(rng, g, 3, false);
    const Integer c = static_cast<long>(rng() % 5) - 2;
    std::vector<IntMatrix> comps;
    for (int i = x.lowest(); i <= x.highest(); ++i) comps.push_back(c * IntMatrix::identity(x.term(i).gens()));
    const ComplexMap f(x, x, x.lowest(), comps);
    CHECK(same_complex(fibre(f), cone(f).shift(-1)));
    CHECK(fibre(f).shift(1) == cone(f));
    CHECK(is_acyclic(cone(ComplexMap::identity(x))));
  }
}

TEST_CASE("quasi-isomorphism examples") {
  const GroupPtr e = cyclic(1);
  const auto t = times(e, 2);
  CHECK(is_quasi_iso(ComplexMap::identity(t)).quasi_iso);

  const auto k = two_term(ModuleMap::zero(PresentedModule::zero(e), z_mod(e, 2)));
  const ComplexMap reduce(t, k, 0, {IntMatrix(0, 1), IntMatrix::from_rows({{1}})});
  const auto report = is_quasi_iso(reduce);
  CHECK(report.quasi_iso);
  CHECK_FALSE(report.to_string().empty());

  CHECK_FALSE(is_quasi_iso(ComplexMap::zero(k, k)).quasi_iso);
}

TEST_CASE("collapse examples") {
  const GroupPtr e = cyclic(1);
  const auto z = PresentedModule::trivial(e);
  const auto zero = PresentedModule::zero(e);

  SUBCASE("A = 0 over [Z -2-> Z>") {
    const auto b = times(e, 2);
    const auto a = BoundedComplex::concentrated(zero, 1);
    const ShortExactSequence s{ComplexMap(a, b, 0, {}), ComplexMap::identity(b)};
    const auto r = collapse(s);
    CHECK(r.epsilon_report.quasi_iso);
    CHECK(r.lambda_report.quasi_iso);
    CHECK(cohomology(r.collapsed, 1).invariants == AbelianInvariants::cyclic(2));
    CHECK(cohomology(r.collapsed, 0).invariants.is_trivial());
  }

  SUBCASE("A = Z into [Z -id-> Z>") {
    const auto b = times(e, 1);
    const auto a = BoundedComplex::concentrated(z, 1);
    const auto c = two_term(ModuleMap::zero(z, zero));
    const ShortExactSequence s{ComplexMap(a, b, 1, {IntMatrix::identity(1)}),
                               ComplexMap(b, c, 0, {IntMatrix::identity(1), IntMatrix(0, 1)})};
    const auto r = collapse(s);
    CHECK(cohomology(r.collapsed, 0).invariants == AbelianInvariants::free(1));
    CHECK(cohomology(r.collapsed, 1).invariants.is_trivial());
    CHECK(r.epsilon_report.quasi_iso);
    CHECK(r.lambda_report.quasi_iso);
  }

  SUBCASE("preconditions") {
    const auto b = times(e, 0);
    const auto a = BoundedComplex::concentrated(zero, 1);
    CHECK_THROWS_AS(collapse({ComplexMap(a, b, 0, {}), ComplexMap::identity(b)}), Error);
    try {
      collapse({ComplexMap(a, b, 0, {}), ComplexMap::identity(b)});
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::kPreconditionH0);
    }
    const auto t = times(e, 2);
    try {
      collapse({ComplexMap(a, t, 0, {}), ComplexMap::zero(t, t)});
      CHECK(false);
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::kNotExact);
    }
  }
}

TEST_CASE("resolution examples") {
  const GroupPtr e = cyclic(1);
  const auto k = two_term(ModuleMap::zero(PresentedModule::zero(e), z_mod(e, 2)));
  const auto r = resolve_torsion_free(k);
  CHECK(r.report.quasi_iso);
  const auto& m = r.complex();
  CHECK(same_complex(m, times(e, 2)));
  CHECK(r.iterations <= 3);

  const auto t = times(e, 3);
  const auto rt = resolve_torsion_free(t);
  CHECK(rt.report.quasi_iso);
  for (int i = -2; i <= 2; ++i) CHECK(cohomology(rt.complex(), i).invariants == cohomology(t, i).invariants);

  const auto rz = resolve_torsion_free(BoundedComplex::zero(e));
  CHECK(rz.complex().trimmed().empty());
  CHECK(rz.report.quasi_iso);
}

TEST_CASE("resolution of random complexes with torsion") {
  std::mt19937 rng(31);
  for (int t = 0; t < 12; ++t) {
    const GroupPtr g = t % 4 == 0 ? testing::s3() : cyclic(2 + t % 3);
    const auto y = testing::random_complex(rng, g, 3, true);
    const auto r = resolve_torsion_free(y);
    CHECK(r.report.quasi_iso);
    CHECK(r.iterations <= static_cast<std::size_t>(y.trimmed().highest() - y.trimmed().lowest() + 2));
    const auto& m = r.complex();
    for (int i = m.lowest(); i <= m.highest(); ++i) {
      CHECK(m.term(i).relations().cols() == 0);
      CHECK(validate_module(m.term(i)).empty());
    }
    CHECK(validate_complex(m).empty());
    CHECK(validate_complex_map(r.psi).empty());
    CHECK(resolutions_agree(r, resolve_torsion_free(y)));
  }
}

TEST_CASE("dual complex") {
  const GroupPtr e = cyclic(1);
  const auto d = dual_complex(times(e, 2));
  CHECK(d.lowest() == -1);
  CHECK(d.highest() == 0);
  CHECK(d.differential(-1) == IntMatrix::from_rows({{2}}));
  CHECK(dual_complex(BoundedComplex::zero(e)).empty());

  const GroupPtr c2 = cyclic(2);
  const auto reg = induced_module(c2, std::vector<std::size_t>{0});
  const auto rd = dual_complex(two_term(ModuleMap::zero(reg, PresentedModule::zero(c2))));
  CHECK(rd.trimmed().lowest() == 0);
  CHECK(rd.trimmed().highest() == 0);
  CHECK(rd.term(0) == reg);

  std::mt19937 rng(2);
  for (int t = 0; t < 10; ++t) {
    const GroupPtr g = cyclic(2 + t % 3);
    const auto y = testing::random_complex(rng, g, 3, false);
    const auto m = resolve_torsion_free(y).complex();
    CHECK(same_complex(dual_complex(dual_complex(m)), m));
    CHECK(validate_complex(dual_complex(m)).empty());
  }

  for (long n : {2, 3, 4}) {
    const auto m = resolve_torsion_free(two_term(ModuleMap::zero(PresentedModule::zero(e), z_mod(e, n)))).complex();
    const auto dm = dual_complex(m);
    CHECK(cohomology(dm, 0).invariants == AbelianInvariants::cyclic(n));
    CHECK(cohomology(dm, -1).invariants.is_trivial());
  }
  CHECK_THROWS_AS(dual_complex(BoundedComplex::concentrated(z_mod(e, 2), 0)), Error);
}
