#include "complexes.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace upic {

namespace {

IntMatrix zero_matrix(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

// [[a, b], [c, d]] for blocks with consistent shapes.
IntMatrix block2(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c, const IntMatrix& d) {
  return IntMatrix::vcat(IntMatrix::hcat(a, b), IntMatrix::hcat(c, d));
}

}  // namespace

// ---------------------------------------------------------------------------
// BoundedComplex

BoundedComplex::BoundedComplex(GroupPtr group, int lowest, std::vector<PresentedModule> terms,
                               std::vector<IntMatrix> differentials)
    : group_(std::move(group)),
      lowest_(lowest),
      terms_(std::move(terms)),
      differentials_(std::move(differentials)),
      zero_(PresentedModule::zero(group_)) {
  const std::size_t expected = terms_.empty() ? 0 : terms_.size() - 1;
  if (differentials_.size() != expected) {
    throw Error(ErrorCode::kInvalidArgument, "complex with " + std::to_string(terms_.size()) + " terms needs " +
                                                 std::to_string(expected) + " differentials");
  }
  std::vector<std::string> violations;
  for (std::size_t k = 0; k < terms_.size(); ++k)
    if (!same_group(terms_[k].group(), *group_))
      violations.push_back("term in degree " + std::to_string(lowest_ + static_cast<int>(k)) +
                           " is over a different group");
  if (!violations.empty()) throw Error(ErrorCode::kMismatchedGroup, violations.front());
  for (std::size_t k = 0; k < differentials_.size(); ++k) {
    const int deg = lowest_ + static_cast<int>(k);
    IntMatrix& d = differentials_[k];
    const std::size_t rows = terms_[k + 1].gens(), cols = terms_[k].gens();
    if (d.rows() != rows || d.cols() != cols) {
      if (d.entries().empty() && (rows == 0 || cols == 0)) d = zero_matrix(rows, cols);
      else
        violations.push_back("differential in degree " + std::to_string(deg) + " must be " + std::to_string(rows) +
                             " x " + std::to_string(cols));
    }
  }
  if (!violations.empty()) throw ValidationError("complex", std::move(violations));
  for (std::size_t k = 0; k + 1 < differentials_.size(); ++k)
    if (!terms_[k + 2].columns_vanish(differentials_[k + 1] * differentials_[k]))
      violations.push_back("d o d != 0 in degree " + std::to_string(lowest_ + static_cast<int>(k)));
  if (!violations.empty()) throw ValidationError("complex", std::move(violations));
}

BoundedComplex BoundedComplex::zero(GroupPtr group) { return BoundedComplex(std::move(group), 0, {}, {}); }

BoundedComplex BoundedComplex::concentrated(const PresentedModule& m, int degree) {
  return BoundedComplex(m.group_ptr(), degree, {m}, {});
}

const PresentedModule& BoundedComplex::term(int degree) const {
  if (degree < lowest_ || degree > highest()) return zero_;
  return terms_[static_cast<std::size_t>(degree - lowest_)];
}

IntMatrix BoundedComplex::differential(int degree) const {
  if (degree >= lowest_ && degree < highest()) return differentials_[static_cast<std::size_t>(degree - lowest_)];
  return zero_matrix(term(degree + 1).gens(), term(degree).gens());
}

ModuleMap BoundedComplex::differential_map(int degree) const {
  return ModuleMap(term(degree), term(degree + 1), differential(degree));
}

BoundedComplex BoundedComplex::shift(int k) const {
  std::vector<IntMatrix> d = differentials_;
  if (k % 2 != 0)
    for (auto& m : d) m = -m;
  return BoundedComplex(group_, lowest_ - k, terms_, std::move(d));
}

BoundedComplex BoundedComplex::trimmed() const {
  int lo = lowest_, hi = highest();
  while (lo <= hi && term(lo).gens() == 0) ++lo;
  while (hi >= lo && term(hi).gens() == 0) --hi;
  if (lo > hi) return zero(group_);
  std::vector<PresentedModule> terms;
  std::vector<IntMatrix> d;
  for (int i = lo; i <= hi; ++i) {
    terms.push_back(term(i));
    if (i < hi) d.push_back(differential(i));
  }
  return BoundedComplex(group_, lo, std::move(terms), std::move(d));
}

bool operator==(const BoundedComplex& a, const BoundedComplex& b) {
  return same_group(*a.group_, *b.group_) && a.lowest_ == b.lowest_ && a.terms_ == b.terms_ &&
         a.differentials_ == b.differentials_;
}

std::vector<std::string> validate_complex(const BoundedComplex& c) {
  std::vector<std::string> out;
  for (int i = c.lowest(); i <= c.highest(); ++i) {
    for (auto& v : validate_module(c.term(i))) out.push_back("term " + std::to_string(i) + ": " + v);
    if (i < c.highest())
      for (auto& v : validate_map(c.differential_map(i))) out.push_back("d" + std::to_string(i) + ": " + v);
  }
  return out;
}

void require_valid(const BoundedComplex& c, const std::string& what) {
  auto v = validate_complex(c);
  if (!v.empty()) throw ValidationError("complex '" + what + "'", std::move(v));
}

BoundedComplex two_term(const ModuleMap& f, bool source_in_degree0) {
  if (source_in_degree0) return BoundedComplex(f.source().group_ptr(), 0, {f.source(), f.target()}, {f.matrix()});
  return BoundedComplex(f.source().group_ptr(), -1, {f.source(), f.target()}, {-f.matrix()});
}

// ---------------------------------------------------------------------------
// ComplexMap

ComplexMap::ComplexMap(BoundedComplex source, BoundedComplex target, int lowest, std::vector<IntMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), lowest_(lowest), components_(std::move(components)) {
  if (!same_group(source_.group(), target_.group()))
    throw Error(ErrorCode::kMismatchedGroup, "complex map between complexes over different groups");
  std::vector<std::string> violations;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const int deg = lowest_ + static_cast<int>(k);
    IntMatrix& m = components_[k];
    const std::size_t rows = target_.term(deg).gens(), cols = source_.term(deg).gens();
    if (m.rows() != rows || m.cols() != cols) {
      if (m.entries().empty() && (rows == 0 || cols == 0)) m = zero_matrix(rows, cols);
      else
        violations.push_back("component in degree " + std::to_string(deg) + " must be " + std::to_string(rows) +
                             " x " + std::to_string(cols));
    }
  }
  if (!violations.empty()) throw ValidationError("complex map", std::move(violations));
  for (int i = this->lowest() - 1; i <= this->highest(); ++i) {
    const IntMatrix lhs = target_.differential(i) * component(i);
    const IntMatrix rhs = component(i + 1) * source_.differential(i);
    if (!target_.term(i + 1).columns_vanish(lhs - rhs))
      violations.push_back("does not commute with the differentials in degree " + std::to_string(i));
  }
  if (!violations.empty()) throw ValidationError("complex map", std::move(violations));
}

ComplexMap ComplexMap::identity(const BoundedComplex& c) {
  std::vector<IntMatrix> comps;
  for (int i = c.lowest(); i <= c.highest(); ++i) comps.push_back(IntMatrix::identity(c.term(i).gens()));
  return ComplexMap(c, c, c.lowest(), std::move(comps));
}

ComplexMap ComplexMap::zero(const BoundedComplex& source, const BoundedComplex& target) {
  return ComplexMap(source, target, 0, {});
}

IntMatrix ComplexMap::component(int degree) const {
  const int k = degree - lowest_;
  if (k >= 0 && k < static_cast<int>(components_.size())) return components_[static_cast<std::size_t>(k)];
  return zero_matrix(target_.term(degree).gens(), source_.term(degree).gens());
}

ModuleMap ComplexMap::component_map(int degree) const {
  return ModuleMap(source_.term(degree), target_.term(degree), component(degree));
}

int ComplexMap::lowest() const {
  int lo = std::min(source_.lowest(), target_.lowest());
  if (!components_.empty()) lo = std::min(lo, lowest_);
  return lo;
}

int ComplexMap::highest() const {
  int hi = std::max(source_.highest(), target_.highest());
  if (!components_.empty()) hi = std::max(hi, lowest_ + static_cast<int>(components_.size()) - 1);
  return hi;
}

std::vector<std::string> validate_complex_map(const ComplexMap& f) {
  std::vector<std::string> out;
  for (int i = f.lowest(); i <= f.highest(); ++i)
    for (auto& v : validate_map(f.component_map(i))) out.push_back("degree " + std::to_string(i) + ": " + v);
  return out;
}

ComplexMap compose(const ComplexMap& g, const ComplexMap& f) {
  const int lo = std::min(f.lowest(), g.lowest()), hi = std::max(f.highest(), g.highest());
  std::vector<IntMatrix> comps;
  for (int i = lo; i <= hi; ++i) comps.push_back(g.component(i) * f.component(i));
  return ComplexMap(f.source(), g.target(), lo, std::move(comps));
}

BoundedComplex cone(const ComplexMap& f) {
  const BoundedComplex& x = f.source();
  const BoundedComplex& y = f.target();
  if (x.empty() && y.empty()) return BoundedComplex::zero(x.group_ptr());
  int lo = std::min(x.empty() ? y.lowest() : x.lowest() - 1, y.empty() ? x.lowest() - 1 : y.lowest());
  int hi = std::max(x.empty() ? y.highest() : x.highest() - 1, y.empty() ? x.highest() - 1 : y.highest());
  std::vector<PresentedModule> terms;
  std::vector<IntMatrix> d;
  for (int i = lo; i <= hi; ++i) {
    terms.push_back(direct_sum(x.term(i + 1), y.term(i)));
    if (i < hi) {
      d.push_back(block2(-x.differential(i + 1), zero_matrix(x.term(i + 2).gens(), y.term(i).gens()),
                         -f.component(i + 1), y.differential(i)));
    }
  }
  return BoundedComplex(x.group_ptr(), lo, std::move(terms), std::move(d));
}

BoundedComplex fibre(const ComplexMap& f) {
  const BoundedComplex& x = f.source();
  const BoundedComplex& y = f.target();
  if (x.empty() && y.empty()) return BoundedComplex::zero(x.group_ptr());
  int lo = std::min(x.empty() ? y.lowest() + 1 : x.lowest(), y.empty() ? x.lowest() : y.lowest() + 1);
  int hi = std::max(x.empty() ? y.highest() + 1 : x.highest(), y.empty() ? x.highest() : y.highest() + 1);
  std::vector<PresentedModule> terms;
  std::vector<IntMatrix> d;
  for (int i = lo; i <= hi; ++i) {
    terms.push_back(direct_sum(x.term(i), y.term(i - 1)));
    if (i < hi) {
      d.push_back(block2(x.differential(i), zero_matrix(x.term(i + 1).gens(), y.term(i - 1).gens()),
                         f.component(i), -y.differential(i - 1)));
    }
  }
  return BoundedComplex(x.group_ptr(), lo, std::move(terms), std::move(d));
}

bool same_complex(const BoundedComplex& a, const BoundedComplex& b) { return a.trimmed() == b.trimmed(); }

// ---------------------------------------------------------------------------
// Cohomology

CohomologyGroup cohomology(const BoundedComplex& c, int degree) {
  const PresentedModule& here = c.term(degree);
  const PresentedModule& next = c.term(degree + 1);
  const std::size_t n = here.gens();
  CohomologyGroup out;
  out.group.ambient_rank = n;
  const IntMatrix system = IntMatrix::hcat(c.differential(degree), next.relations());
  out.group.cycles = column_echelon(system, true, n).kernel();
  out.group.boundaries = IntMatrix::hcat(c.differential(degree - 1), here.relations());
  out.invariants = subquotient_invariants(out.group);
  return out;
}

bool is_acyclic(const BoundedComplex& c) {
  for (int i = c.lowest(); i <= c.highest(); ++i)
    if (!cohomology(c, i).invariants.is_trivial()) return false;
  return true;
}

std::string QuasiIsoReport::to_string() const {
  std::ostringstream os;
  os << (quasi_iso ? "quasi-isomorphism" : "not a quasi-isomorphism");
  for (const auto& d : degrees) {
    os << "\n  H^" << d.degree << ": " << d.source.to_string() << " -> " << d.target.to_string()
       << ", cone " << d.cone.to_string();
  }
  return os.str();
}

QuasiIsoReport is_quasi_iso(const ComplexMap& f) {
  const BoundedComplex c = cone(f);
  QuasiIsoReport report;
  const int lo = std::min(f.lowest(), c.lowest()), hi = std::max(f.highest(), c.highest());
  for (int i = lo; i <= hi; ++i) {
    QuasiIsoReport::Degree d{i, cohomology(f.source(), i).invariants, cohomology(f.target(), i).invariants,
                             cohomology(c, i).invariants};
    if (!d.cone.is_trivial()) report.quasi_iso = false;
    report.degrees.push_back(std::move(d));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Collapse

bool is_degreewise_exact(const ShortExactSequence& s) {
  const int lo = std::min(s.mu.lowest(), s.nu.lowest()), hi = std::max(s.mu.highest(), s.nu.highest());
  for (int i = lo; i <= hi; ++i) {
    const ModuleMap mu = s.mu.component_map(i);
    const ModuleMap nu = s.nu.component_map(i);
    if (!is_injective(mu) || !is_surjective(nu) || !is_exact_at(mu, nu)) return false;
  }
  return true;
}

PresentedModule top_cohomology_module(const BoundedComplex& b) { return cokernel_module(b.differential_map(0)); }

CollapseResult collapse(const ShortExactSequence& s) {
  const BoundedComplex& a = s.mu.source();
  const BoundedComplex& b = s.mu.target();
  if (!same_complex(b, s.nu.source()))
    throw Error(ErrorCode::kInvalidArgument, "collapse: mu and nu do not share the middle complex");
  const BoundedComplex bt = b.trimmed(), at = a.trimmed();
  if (!bt.empty() && (bt.lowest() < 0 || bt.highest() > 1))
    throw Error(ErrorCode::kInvalidArgument, "collapse: B must be concentrated in degrees 0 and 1");
  if (!at.empty() && (at.lowest() != 1 || at.highest() != 1))
    throw Error(ErrorCode::kInvalidArgument, "collapse: A must be concentrated in degree 1");
  const AbelianInvariants h0 = cohomology(b, 0).invariants;
  if (!h0.is_trivial()) throw Error(ErrorCode::kPreconditionH0, "collapse: H^0(B) = " + h0.to_string() + " is not zero");
  if (!is_degreewise_exact(s)) throw Error(ErrorCode::kNotExact, "collapse: sequence is not exact in every degree");

  const PresentedModule& a1 = a.term(1);
  const PresentedModule h1 = top_cohomology_module(b);
  const ModuleMap sigma(a1, h1, -s.mu.component(1));

  CollapseResult out{two_term(sigma), cone(s.mu), ComplexMap::identity(b), ComplexMap::identity(b), {}, {}};
  const BoundedComplex& c = out.cone;
  const std::size_t b0 = b.term(0).gens();
  out.epsilon = ComplexMap(c, out.collapsed, 0,
                           {IntMatrix::hcat(IntMatrix::identity(a1.gens()), zero_matrix(a1.gens(), b0)),
                            IntMatrix::identity(b.term(1).gens())});
  std::vector<IntMatrix> lambda;
  for (int i = c.lowest(); i <= c.highest(); ++i) {
    const IntMatrix nu = s.nu.component(i);
    lambda.push_back(IntMatrix::hcat(zero_matrix(nu.rows(), a.term(i + 1).gens()), nu));
  }
  out.lambda = ComplexMap(c, s.nu.target(), c.lowest(), std::move(lambda));
  out.epsilon_report = is_quasi_iso(out.epsilon);
  out.lambda_report = is_quasi_iso(out.lambda);
  if (!out.epsilon_report.quasi_iso || !out.lambda_report.quasi_iso)
    throw Error(ErrorCode::kInternal, "collapse: witness maps are not quasi-isomorphisms");
  return out;
}

// ---------------------------------------------------------------------------
// Resolution

namespace {

struct KillingStep {
  PresentedModule module;  // direct sum of permutation modules
  IntMatrix map;           // into the current complex at the same degree
};

// Permutation modules on the orbits of canonical generators of H^j(c).
KillingStep killing_step(const BoundedComplex& c, int j) {
  const GroupPtr& group = c.group_ptr();
  const PresentedModule& term = c.term(j);
  const CohomologyGroup h = cohomology(c, j);
  KillingStep step{PresentedModule::zero(group), IntMatrix(term.gens(), 0)};
  if (h.invariants.is_trivial()) return step;
  const CanonicalGenerators gens = canonical_generators(h.group);
  IntMatrix span = h.group.boundaries;
  std::vector<PresentedModule> parts;
  IntMatrix map(term.gens(), 0);
  for (std::size_t t = 0; t < gens.orders.size(); ++t) {
    const IntVector y = gens.lifts.column(t);
    if (solve_integer(span, y)) continue;
    const auto stab = stabilizer(term, y);
    const auto reps = coset_representatives(c.group(), stab);
    IntMatrix images(term.gens(), reps.size());
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const IntVector gy = term.action(reps[k]) * y;
      for (std::size_t r = 0; r < gy.size(); ++r) images(r, k) = gy[r];
    }
    parts.push_back(induced_module(group, stab));
    map = IntMatrix::hcat(map, images);
    span = IntMatrix::hcat(span, images);
  }
  step.module = direct_sum(std::span<const PresentedModule>(parts), group);
  step.map = std::move(map);
  return step;
}

}  // namespace

Resolution resolve_torsion_free(const BoundedComplex& y_in) {
  const BoundedComplex y = y_in.trimmed();
  const GroupPtr& group = y.group_ptr();
  if (y.empty()) {
    const BoundedComplex z = BoundedComplex::zero(group);
    Resolution r{ComplexMap::zero(z, y_in), 0, {}};
    r.report = is_quasi_iso(r.psi);
    return r;
  }
  const int lo = y.lowest(), hi = y.highest();
  // a[j - lo] is the module A^j killing H^j; phi[j - lo] its map into
  // A^{j+1} (+) Y^j.
  std::vector<PresentedModule> a(static_cast<std::size_t>(hi - lo + 1), PresentedModule::zero(group));
  std::vector<IntMatrix> phi(a.size());
  BoundedComplex current = y;
  std::size_t iterations = 0;
  for (int j = hi; j >= lo; --j) {
    KillingStep step = killing_step(current, j);
    const auto idx = static_cast<std::size_t>(j - lo);
    a[idx] = step.module;
    phi[idx] = step.map;
    const ComplexMap into(BoundedComplex::concentrated(step.module, j), current, j, {step.map});
    current = cone(into);
    ++iterations;
  }
  // The remaining cohomology sits in degree lo - 1 as the kernel of A^lo -> current^lo.
  const PresentedModule& bottom = a[0];
  const Subquotient ker = kernel_subquotient(current.differential_map(lo - 1));
  const IntMatrix k = lattice_basis(ker.cycles);
  std::vector<IntMatrix> action;
  for (std::size_t g = 0; g < group->order(); ++g) {
    auto x = solve_integer(k, bottom.action(g) * k);
    if (!x) throw Error(ErrorCode::kInternal, "resolution: kernel is not stable under the group");
    action.push_back(std::move(*x));
  }
  const PresentedModule a_prime(group, k.cols(), IntMatrix(k.cols(), 0), std::move(action));
  ++iterations;

  std::vector<PresentedModule> terms{a_prime};
  std::vector<IntMatrix> d{k};
  std::vector<IntMatrix> psi{IntMatrix(0, a_prime.gens())};
  for (int j = lo; j <= hi; ++j) {
    const auto idx = static_cast<std::size_t>(j - lo);
    const std::size_t above = j < hi ? a[idx + 1].gens() : 0;
    terms.push_back(a[idx]);
    if (j < hi) d.push_back(phi[idx].select_rows(0, above));
    psi.push_back(phi[idx].select_rows(above, phi[idx].rows() - above));
  }
  BoundedComplex m(group, lo - 1, std::move(terms), std::move(d));
  Resolution r{ComplexMap(std::move(m), y, lo - 1, std::move(psi)), iterations, {}};
  r.report = is_quasi_iso(r.psi);
  if (!r.report.quasi_iso) throw Error(ErrorCode::kInternal, "resolution is not a quasi-isomorphism:\n" + r.report.to_string());
  return r;
}

bool resolutions_agree(const Resolution& a, const Resolution& b) {
  const BoundedComplex& x = a.complex();
  const BoundedComplex& y = b.complex();
  const int lo = std::min(x.lowest(), y.lowest()), hi = std::max(x.highest(), y.highest());
  for (int i = lo; i <= hi; ++i)
    if (!(cohomology(x, i).invariants == cohomology(y, i).invariants)) return false;
  return true;
}

BoundedComplex dual_complex(const BoundedComplex& m) {
  if (m.empty()) return m;
  const int lo = m.lowest(), hi = m.highest();
  std::vector<FreeNormalization> free;
  for (int i = lo; i <= hi; ++i) free.push_back(normalize_torsion_free(m.term(i)));
  std::vector<PresentedModule> terms;
  std::vector<IntMatrix> d;
  for (int i = hi; i >= lo; --i) {
    const auto idx = static_cast<std::size_t>(i - lo);
    terms.push_back(dual_lattice(free[idx].module));
    if (i > lo) {
      const IntMatrix di = free[idx].to_free * m.differential(i - 1) * free[idx - 1].from_free;
      d.push_back(di.transpose());
    }
  }
  return BoundedComplex(m.group_ptr(), -hi, std::move(terms), std::move(d));
}

}  // namespace upic
