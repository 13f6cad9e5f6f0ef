// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cohomology.hpp"
#include "complexes.hpp"
#include "fixtures.hpp"
#include "homspace.hpp"
#include "runner.hpp"
#include "support.hpp"
#include "taskfile.hpp"

using namespace upic;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

GroupPtr cyclic(std::size_t n) { return testing::cyclic(n); }

PresentedModule z_mod(const GroupPtr& g, long n, long sign = 1) {
  std::vector<IntMatrix> act(g->generators().size(), IntMatrix::from_rows({{sign}}));
  return PresentedModule::from_generator_action(g, 1, IntMatrix::from_rows({{n}}), act);
}

HomSpaceData torus(const PresentedModule& xt) {
  const auto zero = PresentedModule::zero(xt.group_ptr());
  return HomSpaceData{xt.group_ptr(), xt, zero, ModuleMap::zero(xt, zero), true};
}

HomSpaceData from_map(const ModuleMap& f) { return HomSpaceData{f.source().group_ptr(), f.source(), f.target(), f, true}; }

bool divides(const Integer& a, const Integer& b) {
  if (a == 0) return b == 0;
  return b % a == 0;
}

// 1
void snf_laws(Outcome& o) {
  std::mt19937 rng(1);
  const auto start = Clock::now();
  const int count = 220;
  for (int t = 0; t < count; ++t) {
    const std::size_t rows = 1 + rng() % 30, cols = 1 + rng() % 30;
    const IntMatrix a = testing::random_matrix(rng, rows, cols, 9);
    const SmithDecomposition s = smith_normal_form(a);
    o.require(s.U * a * s.V == s.D, "U A V = D");
    const Integer du = determinant(s.U), dv = determinant(s.V);
    o.require(du == 1 || du == -1, "U unimodular");
    o.require(dv == 1 || dv == -1, "V unimodular");
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (r != c) o.require(s.D(r, c) == 0, "D diagonal");
    const std::size_t k = std::min(rows, cols);
    for (std::size_t i = 0; i < k; ++i) {
      o.require(s.D(i, i) >= 0, "nonnegative diagonal");
      if (i + 1 < k) o.require(divides(s.D(i, i), s.D(i + 1, i + 1)), "divisibility chain");
    }
    o.require(s.rank == rank(a), "rank");
  }
  const double secs = since(start);
  o.require(secs < 10.0, "under 10 s");
  o.detail << count << " matrices up to 30x30 in " << secs << " s";
}

// 2
void shapiro(Outcome& o) {
  std::vector<std::pair<std::string, GroupPtr>> groups;
  for (std::size_t n = 2; n <= 6; ++n) groups.emplace_back("C" + std::to_string(n), cyclic(n));
  groups.emplace_back("S3", testing::s3());
  double worst = 0;
  for (const auto& [name, g] : groups) {
    const auto start = Clock::now();
    const auto zg = induced_module(g, std::vector<std::size_t>{g->identity()});
    o.require(zg.gens() == g->order(), name + " regular module");
    o.require(group_cohomology(zg, 1).is_trivial(), "H^1(" + name + ", Z[G]) = 0");
    o.require(group_cohomology(zg, 2).is_trivial(), "H^2(" + name + ", Z[G]) = 0");
    const double secs = since(start);
    o.require(secs < 5.0, name + " under 5 s");
    worst = std::max(worst, secs);
  }
  o.detail << "C2..C6, S3; slowest case " << worst << " s";
}

// 3
void cyclic_oracle_equivalence(Outcome& o) {
  std::mt19937 rng(3);
  int modules = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    const GroupPtr g = cyclic(n);
    for (int t = 0; t < 12; ++t) {
      const auto m = testing::random_module(rng, g, 4, t % 2 == 1);
      o.require(validate_module(m).empty(), "valid random module");
      for (int d = 1; d <= 2; ++d)
        o.require(group_cohomology(m, d) == cyclic_oracle(m, d),
                  "H^" + std::to_string(d) + " of a C" + std::to_string(n) + " module");
      ++modules;
    }
  }
  o.detail << modules << " random modules, H^1 and H^2";
}

// 4
void norm_one_tori(Outcome& o) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto d = torus(norm_one_lattice(cyclic(n)));
    const auto p = pic(d).value;
    o.require(p == AbelianInvariants::cyclic(static_cast<long>(n)), "pic = Z/" + std::to_string(n) + ", got " + p.to_string());
    o.require(brauer_a(d).value.is_trivial(), "brauer_a = 0 for n = " + std::to_string(n));
  }
  o.detail << "pic = Z/n and brauer_a = 0 for n = 2..6";
}

// 5
void biquadratic(Outcome& o) {
  const auto start = Clock::now();
  const GroupPtr v4 = testing::klein();
  const auto br = brauer_a(torus(norm_one_lattice(v4))).value;

  // LES path: 0 -> Z -> Z[G] -> J -> 0 gives H^2(G, J) = H^3(G, Z).
  const auto h3 = group_cohomology(PresentedModule::trivial(v4), 3);
  o.require(br == h3, "brauer_a = H^3(G, Z)");

  // Brute force: |H^3(G, Z)[4]| = |H^2(G, Z/4)| / |H^1(G, Z/4)| and 4 H^3 = 0.
  const auto z4 = z_mod(v4, 4);
  const auto b1 = finite_coeff_bruteforce(z4, 1);
  const auto b2 = finite_coeff_bruteforce(z4, 2);
  const Integer order = b2.torsion_order() / b1.torsion_order();
  o.require(b2.torsion_order() % b1.torsion_order() == 0, "orders divide");
  o.require(h3.free_rank() == 0 && h3.torsion_order() == order, "H^3 order matches the brute-force count");
  for (const Integer& t : h3.torsion()) o.require(Integer(4) % t == 0, "H^3 killed by 4");

  o.require(br == AbelianInvariants::cyclic(2), "frozen value Z/2");
  const double secs = since(start);
  o.require(secs < 60.0, "under 60 s");
  o.detail << "brauer_a = " << br.to_string() << ", brute-force order " << order.get_str() << ", " << secs << " s";
}

// 6
void dual_of_torsion(Outcome& o) {
  std::vector<std::pair<std::string, PresentedModule>> cases;
  for (long n = 2; n <= 4; ++n) {
    cases.emplace_back("trivial group, Z/" + std::to_string(n), z_mod(cyclic(1), n));
    cases.emplace_back("C2 trivial on Z/" + std::to_string(n), z_mod(cyclic(2), n));
  }
  cases.emplace_back("C2 acting by -1 on Z/3", z_mod(cyclic(2), 3, -1));
  cases.emplace_back("C2 acting by -1 on Z/4", z_mod(cyclic(2), 4, -1));
  for (const auto& [name, m] : cases) {
    const auto zero = PresentedModule::zero(m.group_ptr());
    const auto r = upic_dual(from_map(ModuleMap::zero(zero, m)));
    o.require(r.h0 == m.invariants(), name + ": H^0 = " + r.h0.to_string());
    o.require(r.hminus1.is_trivial(), name + ": H^-1 = 0");
  }
  o.detail << cases.size() << " cases, H^0 = Z/n and H^-1 = 0";
}

// 7
void homogeneous_space_fixtures(Outcome& o) {
  const Fixture* sln = find_fixture("sln_normalizer");
  const Fixture* cmp = find_fixture("sl2_pgl2_comparison");
  o.require(sln && cmp, "fixtures present");
  if (!o.pass) return;

  const Workspace ws = build_workspace(sln->task);
  const HomSpaceData d = from_map(ws.maps.at("res"));
  o.require(d.group->order() == 1, "trivial Galois group");
  o.require(pic(d).value == AbelianInvariants::cyclic(2), "SL_n/N: pic = Z/2");
  const auto dual = upic_dual(d);
  o.require(dual.h0 == AbelianInvariants::cyclic(2), "SL_n/N: H^0 = Z/2");
  o.require(dual.hminus1.is_trivial(), "SL_n/N: H^-1 = 0");
  o.require(run(sln->task).summary() == sln->expected(), "sln_normalizer task file");

  const Workspace w = build_workspace(cmp->task);
  const TorusComparisonData t{w.group,
                              w.modules.at("XGp"),
                              w.modules.at("XM"),
                              w.modules.at("XT"),
                              w.modules.at("XTp"),
                              w.modules.at("XTsc"),
                              w.maps.at("res").matrix(),
                              w.maps.at("gprime_to_tprime").matrix(),
                              w.maps.at("tprime_to_m").matrix(),
                              w.maps.at("tprime_to_tsc").matrix(),
                              w.maps.at("t_to_tprime").matrix(),
                              w.maps.at("rho").matrix()};
  const auto rep = verify_torus_comparison(t);
  o.require(rep.ok, "torus comparison holds");
  const auto z2 = AbelianInvariants::cyclic(2);
  o.require(rep.upper[1] == z2 && rep.middle[1] == z2 && rep.lower[1] == z2, "H^1 = Z/2 everywhere");
  o.require(run(cmp->task).summary() == cmp->expected(), "sl2_pgl2_comparison task file");
  o.detail << "SL_n/N pic = Z/2, upic_dual = (Z/2, 0); PGL_2 comparison true, H^1 = Z/2";
}

void check_dual(Outcome& o, const HomSpaceData& d, const std::string& name) {
  try {
    const auto r = upic_dual(d);
    o.require(r.sequence.ok(), name + ": five-term bookkeeping");
    o.require(r.hminus1.torsion().empty(), name + ": H^-1 torsion-free");
  } catch (const Error& e) {
    o.require(false, name + ": " + e.what());
  }
}

// 8
void five_term(Outcome& o) {
  int instances = 0;
  for (const Fixture& f : bundled_fixtures()) {
    const Workspace ws = build_workspace(f.task);
    std::set<std::string> seen;
    for (const TaskSpec& t : f.task.tasks) {
      auto it = t.args.find("res");
      if (it == t.args.end() || !seen.insert(it->second).second) continue;
      check_dual(o, from_map(ws.maps.at(it->second)), f.name + "/" + it->second);
      ++instances;
    }
  }
  const int fixture_instances = instances;
  std::mt19937 rng(8);
  const std::vector<GroupPtr> groups{cyclic(1), cyclic(2), cyclic(3), cyclic(4), testing::klein(), testing::s3()};
  for (int t = 0; t < 60; ++t) {
    check_dual(o, testing::random_homspace(rng, groups[t % groups.size()]), "random " + std::to_string(t));
    ++instances;
  }
  o.detail << fixture_instances << " fixture instances and " << instances - fixture_instances << " random";
}

using RandomSes = std::optional<ShortExactSequence>;

// 0 -> A[-1] -> [B0 -d-> B1> -> [B0 -> B1 / mu(A)> -> 0 with d and mu injective.
RandomSes random_ses(std::mt19937& rng, const GroupPtr& g) {
  using testing::free_version;
  using testing::random_module;
  const auto b0 = free_version(random_module(rng, g, 2, false));
  const auto b1 = free_version(random_module(rng, g, 3, false));
  const auto a1 = free_version(random_module(rng, g, 2, false));
  for (int attempt = 0; attempt < 20; ++attempt) {
    const ModuleMap d = testing::random_map(rng, b0, b1);
    const ModuleMap mu = testing::random_map(rng, a1, b1);
    if (!is_injective(d) || !is_injective(mu)) continue;
    const ModuleMap proj = cokernel_projection(mu);
    const BoundedComplex b = two_term(d);
    const BoundedComplex a = BoundedComplex::concentrated(a1, 1);
    const BoundedComplex c = two_term(compose(proj, d));
    return ShortExactSequence{ComplexMap(a, b, 1, {mu.matrix()}),
                              ComplexMap(b, c, 0, {IntMatrix::identity(b0.gens()), proj.matrix()})};
  }
  return std::nullopt;
}

// 9
void cone_laws(Outcome& o) {
  std::mt19937 rng(9);
  const std::vector<GroupPtr> groups{cyclic(1), cyclic(2), cyclic(3), cyclic(4), testing::s3()};
  int shifts = 0, collapses = 0;
  for (int t = 0; t < 200 && collapses < 30; ++t) {
    const GroupPtr& g = groups[t % groups.size()];
    const auto p = testing::free_version(testing::random_module(rng, g, 3, false));
    const auto q = testing::random_module(rng, g, 3, t % 2 == 0);
    const ModuleMap f = testing::random_map(rng, p, q);
    o.require(two_term(f, true) == two_term(f, false).shift(-1), "[P -> Q> = <P -> Q][-1]");

    const auto x = testing::random_complex(rng, g, 3, t % 2 == 0);
    const Integer c = static_cast<long>(rng() % 5) - 2;
    std::vector<IntMatrix> comps;
    for (int i = x.lowest(); i <= x.highest(); ++i) comps.push_back(c * IntMatrix::identity(x.term(i).gens()));
    const ComplexMap m(x, x, x.lowest(), comps);
    o.require(same_complex(fibre(m), cone(m).shift(-1)), "fibre = cone[-1]");
    o.require(is_acyclic(cone(ComplexMap::identity(x))), "cone of the identity is acyclic");
    ++shifts;

    const RandomSes r = random_ses(rng, g);
    if (!r) continue;
    o.require(is_degreewise_exact(*r), "constructed sequence is exact");
    const CollapseResult cr = collapse(*r);
    o.require(cr.lambda_report.quasi_iso, "lambda quasi-isomorphism");
    o.require(cr.epsilon_report.quasi_iso, "epsilon quasi-isomorphism");
    o.require(is_acyclic(cone(cr.lambda)) && is_acyclic(cone(cr.epsilon)), "cones acyclic");
    ++collapses;
  }
  o.require(collapses >= 30, "enough collapse instances");
  o.detail << shifts << " shift instances, " << collapses << " collapse instances";
}

// 10
void resolutions(Outcome& o) {
  std::mt19937 rng(10);
  const auto start = Clock::now();
  const std::vector<GroupPtr> groups{cyclic(1), cyclic(2), cyclic(3), cyclic(4), cyclic(5), cyclic(6), testing::s3(),
                                     testing::klein()};
  int count = 0, with_torsion = 0;
  for (int t = 0; t < 400 && with_torsion < 32; ++t) {
    const auto y = testing::random_complex(rng, groups[t % groups.size()], 3, true);
    bool torsion = false;
    for (int i = y.lowest(); i <= y.highest(); ++i) torsion = torsion || !y.term(i).invariants().torsion().empty();
    with_torsion += torsion;
    const Resolution r = resolve_torsion_free(y);
    const auto& m = r.complex();
    for (int i = m.lowest(); i <= m.highest(); ++i) o.require(m.term(i).relations().cols() == 0, "torsion-free terms");
    o.require(r.report.quasi_iso, "psi quasi-isomorphism");
    o.require(is_acyclic(cone(r.psi)), "cone of psi acyclic");
    ++count;
  }
  const double secs = since(start);
  o.require(with_torsion >= 30, "at least 30 complexes with torsion");
  o.require(secs < 120.0, "under 120 s");
  o.detail << count << " complexes (" << with_torsion << " with torsion) in " << secs << " s";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"smith normal form laws", snf_laws},
      {"Shapiro vanishing", shapiro},
      {"cyclic oracle equivalence", cyclic_oracle_equivalence},
      {"norm-one tori", norm_one_tori},
      {"biquadratic norm-one torus", biquadratic},
      {"dual of [0 -> Z/n>", dual_of_torsion},
      {"SL_n/N and PGL_2 fixtures", homogeneous_space_fixtures},
      {"five-term sequence", five_term},
      {"cone, fibre and collapse laws", cone_laws},
      {"torsion-free resolutions", resolutions},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("%s %zu %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), since(start),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
