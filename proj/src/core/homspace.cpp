#include "homspace.hpp"

#include <sstream>

#include "error.hpp"

namespace upic {

std::vector<std::string> validate_homspace(const HomSpaceData& d) {
  std::vector<std::string> out;
  if (!d.group) return {"group missing"};
  for (const std::string& v : validate_module(d.xg)) out.push_back("XG: " + v);
  for (const std::string& v : validate_module(d.xh)) out.push_back("XH: " + v);
  if (!same_group(d.xg.group(), *d.group) || !same_group(d.xh.group(), *d.group))
    out.push_back("modules are over a different group");
  if (!(d.res.source() == d.xg)) out.push_back("res: source is not XG");
  if (!(d.res.target() == d.xh)) out.push_back("res: target is not XH");
  if (out.empty()) {
    if (!d.xg.is_torsion_free()) out.push_back("XG has torsion");
    for (const std::string& v : validate_map(d.res)) out.push_back("res: " + v);
  }
  return out;
}

void require_valid(const HomSpaceData& d) {
  auto v = validate_homspace(d);
  if (!v.empty()) throw ValidationError("homogeneous space data", std::move(v));
}

BoundedComplex upic_complex(const HomSpaceData& d) {
  require_valid(d);
  return two_term(d.res);
}

namespace {

ArithmeticInvariant arithmetic(const HomSpaceData& d, int degree, int bound, const char* caveat) {
  ArithmeticInvariant out;
  out.value = hypercohomology(upic_complex(d), degree, bound);
  out.caveat = caveat;
  out.assumes_pic_gbar_trivial = d.pic_gbar_trivial;
  out.level_sensitive = !d.xh.is_torsion_free();
  return out;
}

/// Columns form a basis of {phi : phi^T R = 0}, i.e. of Hom(Z^n / im R, Z).
IntMatrix functionals(const PresentedModule& m) { return kernel_basis(m.relations().transpose()); }

}  // namespace

ArithmeticInvariant pic(const HomSpaceData& d, int bound) { return arithmetic(d, 1, bound, kPicCaveat); }

ArithmeticInvariant brauer_a(const HomSpaceData& d, int bound) { return arithmetic(d, 2, bound, kBrauerCaveat); }

DualSequence dual_sequence(const HomSpaceData& d) {
  require_valid(d);
  const IntMatrix kg = functionals(d.xg);
  const IntMatrix kh = functionals(d.xh);
  // phi -> phi o res, written in the bases kh and kg.
  const auto x = solve_integer(kg, d.res.matrix().transpose() * kh);
  if (!x) throw Error(ErrorCode::kInternal, "restriction of a functional on XH is not a functional on XG");
  DualSequence s;
  const std::size_t r = rank(*x);
  s.kernel = AbelianInvariants::free(kh.cols() - r);
  s.cokernel = cokernel_invariants(*x);
  s.ext = AbelianInvariants::from_cyclic_orders(0, d.xh.invariants().torsion());
  return s;
}

void check_dual_sequence(DualSequence& s, const AbelianInvariants& h0, const AbelianInvariants& hminus1) {
  auto& v = s.violations;
  if (!hminus1.is_torsion_free()) v.push_back("H^-1 has torsion: " + hminus1.to_string());
  if (!(hminus1 == s.kernel))
    v.push_back("H^-1 = " + hminus1.to_string() + " but the kernel is " + s.kernel.to_string());
  if (h0.free_rank() != s.cokernel.free_rank())
    v.push_back("rank H^0 = " + std::to_string(h0.free_rank()) + " but the cokernel has rank " +
                std::to_string(s.cokernel.free_rank()));
  // 0 -> coker -> H^0 -> Ext -> 0 with Ext finite.
  const Integer tc = s.cokernel.torsion_order();
  const Integer th = h0.torsion_order();
  const Integer bound = tc * s.ext.torsion_order();
  if (th % tc != 0) v.push_back("torsion of the cokernel (" + tc.get_str() + ") does not divide that of H^0");
  if (bound % th != 0) v.push_back("torsion of H^0 (" + th.get_str() + ") exceeds the extension bound " + bound.get_str());
  if (s.cokernel.is_finite() && th != bound)
    v.push_back("|H^0| = " + th.get_str() + " but the sequence forces " + bound.get_str());
}

DualResult upic_dual(const HomSpaceData& d) {
  const Resolution r = resolve_torsion_free(upic_complex(d));
  if (!r.report.quasi_iso) throw Error(ErrorCode::kInternal, "resolution is not a quasi-isomorphism");
  const BoundedComplex dual = dual_complex(r.complex());
  DualResult out;
  out.h0 = cohomology(dual, 0).invariants;
  out.hminus1 = cohomology(dual, -1).invariants;
  out.resolution_iterations = r.iterations;
  out.sequence = dual_sequence(d);
  check_dual_sequence(out.sequence, out.h0, out.hminus1);
  if (!out.sequence.ok()) {
    std::string msg = "five-term sequence check failed:";
    for (const std::string& v : out.sequence.violations) msg += " " + v + ";";
    throw Error(ErrorCode::kExactnessViolation, msg);
  }
  return out;
}

std::string TopologicalReport::to_string() const {
  std::ostringstream os;
  if (pi1_labeled)
    os << "pi_1(X(C)) = " << h0.to_string() << "\n";
  else
    os << "H^0(UPic^D) = " << h0.to_string() << " (hypotheses not asserted)\n";
  if (pi2_labeled)
    os << "pi_2(X(C))/torsion = " << hminus1.to_string() << "\n";
  else
    os << "H^-1(UPic^D) = " << hminus1.to_string() << " (hypotheses not asserted)\n";
  if (assumes_pic_gbar_trivial) os << "assuming Pic(G) = 0\n";
  return os.str();
}

TopologicalReport topological_report(const HomSpaceData& d, bool stabilizer_connected, bool condition_h1) {
  const DualResult dual = upic_dual(d);
  TopologicalReport out;
  out.h0 = dual.h0;
  out.hminus1 = dual.hminus1;
  out.pi1_labeled = stabilizer_connected;
  out.pi2_labeled = stabilizer_connected || condition_h1;
  out.assumes_pic_gbar_trivial = d.pic_gbar_trivial;
  return out;
}

std::string TorusComparisonReport::to_string() const {
  std::ostringstream os;
  os << (ok ? "quasi-isomorphic" : "not quasi-isomorphic") << "\n";
  os << "[X(G') -> X(M)>:          H0 = " << upper[0].to_string() << ", H1 = " << upper[1].to_string() << "\n";
  os << "[X(T') -> X(M) + X(Tsc)>: H0 = " << middle[0].to_string() << ", H1 = " << middle[1].to_string() << "\n";
  os << "[X(T) -> X(Tsc)>:         H0 = " << lower[0].to_string() << ", H1 = " << lower[1].to_string() << "\n";
  for (const std::string& p : problems) os << "  " << p << "\n";
  return os.str();
}

TorusComparisonReport verify_torus_comparison(const TorusComparisonData& t) {
  const std::pair<const PresentedModule*, const char*> modules[] = {
      {&t.xg_prime, "XG'"}, {&t.xm, "XM"}, {&t.xt, "XT"}, {&t.xt_prime, "XT'"}, {&t.xtsc, "XTsc"}};
  for (const auto& [m, name] : modules) {
    require_valid(*m, name);
    if (!same_group(m->group(), *t.group)) throw Error(ErrorCode::kMismatchedGroup, std::string(name));
  }
  const ModuleMap res(t.xg_prime, t.xm, t.res);
  const ModuleMap g_tp(t.xg_prime, t.xt_prime, t.gprime_to_tprime);
  const ModuleMap tp_m(t.xt_prime, t.xm, t.tprime_to_m);
  const ModuleMap tp_sc(t.xt_prime, t.xtsc, t.tprime_to_tsc);
  const ModuleMap t_tp(t.xt, t.xt_prime, t.t_to_tprime);
  const ModuleMap rho(t.xt, t.xtsc, t.rho);
  require_valid(res, "X(G') -> X(M)");
  require_valid(g_tp, "X(G') -> X(T')");
  require_valid(tp_m, "X(T') -> X(M)");
  require_valid(tp_sc, "X(T') -> X(Tsc)");
  require_valid(t_tp, "X(T) -> X(T')");
  require_valid(rho, "X(T) -> X(Tsc)");

  const PresentedModule sum = direct_sum(t.xm, t.xtsc);
  const BoundedComplex upper = two_term(res);
  const BoundedComplex middle = two_term(ModuleMap(t.xt_prime, sum, IntMatrix::vcat(t.tprime_to_m, t.tprime_to_tsc)));
  const BoundedComplex lower = two_term(rho);

  TorusComparisonReport out;
  for (int i = 0; i < 2; ++i) {
    out.upper[i] = cohomology(upper, i).invariants;
    out.middle[i] = cohomology(middle, i).invariants;
    out.lower[i] = cohomology(lower, i).invariants;
  }

  const IntMatrix inc_m = summand_inclusion(t.xm, t.xtsc, 0).matrix();
  const IntMatrix inc_sc = summand_inclusion(t.xm, t.xtsc, 1).matrix();
  try {
    const ComplexMap f(upper, middle, 0, {t.gprime_to_tprime, inc_m});
    out.upper_quasi_iso = is_quasi_iso(f).quasi_iso;
    if (!out.upper_quasi_iso) out.problems.push_back("upper map is not a quasi-isomorphism");
  } catch (const ValidationError&) {
    out.problems.push_back("upper square does not commute");
  }
  try {
    const ComplexMap g(lower, middle, 0, {t.t_to_tprime, inc_sc});
    out.lower_quasi_iso = is_quasi_iso(g).quasi_iso;
    if (!out.lower_quasi_iso) out.problems.push_back("lower map is not a quasi-isomorphism");
  } catch (const ValidationError&) {
    out.problems.push_back("lower square does not commute");
  }
  out.ok = out.upper_quasi_iso && out.lower_quasi_iso;
  return out;
}

}  // namespace upic
