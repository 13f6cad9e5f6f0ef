#include "module.hpp"

#include <algorithm>

#include "error.hpp"

namespace upic {

namespace {

std::shared_ptr<const ColumnEchelon> echelon_of(const IntMatrix& relations) {
  return std::make_shared<const ColumnEchelon>(column_echelon(relations, false));
}

std::string matrix_label(const std::string& what, std::size_t g) {
  return what + "(" + std::to_string(g) + ")";
}

// Cycles of x -> (stack of blocks) x modulo (block diagonal of relations).
IntMatrix preimage_of_relations(const IntMatrix& map_stack, const IntMatrix& relations, std::size_t copies) {
  const std::size_t n = map_stack.cols();
  const std::size_t r = relations.cols();
  IntMatrix system(map_stack.rows(), n + copies * r);
  system.set_block(0, 0, map_stack);
  for (std::size_t k = 0; k < copies; ++k) system.set_block(k * relations.rows(), n + k * r, relations);
  return column_echelon(system, true, n).kernel();
}

}  // namespace

// ---------------------------------------------------------------------------
// PresentedModule

PresentedModule::PresentedModule(GroupPtr group, std::size_t gens, IntMatrix relations,
                                 std::vector<IntMatrix> action)
    : group_(std::move(group)), gens_(gens), relations_(std::move(relations)), action_(std::move(action)) {
  if (!group_) throw Error(ErrorCode::kInvalidArgument, "module without a group");
  if (relations_.rows() != gens_) {
    if (relations_.rows() == 0 && relations_.cols() == 0) relations_ = IntMatrix(gens_, 0);
    else throw Error(ErrorCode::kInvalidArgument, "relation matrix must have one row per generator");
  }
  if (action_.size() != group_->order()) {
    throw Error(ErrorCode::kInvalidArgument, "module needs one action matrix per group element");
  }
  for (const auto& a : action_)
    if (a.rows() != gens_ || a.cols() != gens_)
      throw Error(ErrorCode::kInvalidArgument, "action matrices must be gens x gens");
  relation_echelon_ = echelon_of(relations_);
}

PresentedModule PresentedModule::zero(GroupPtr group) {
  std::vector<IntMatrix> action(group->order(), IntMatrix(0, 0));
  return PresentedModule(std::move(group), 0, IntMatrix(0, 0), std::move(action));
}

PresentedModule PresentedModule::trivial(GroupPtr group, std::size_t rank) {
  std::vector<IntMatrix> action(group->order(), IntMatrix::identity(rank));
  return PresentedModule(std::move(group), rank, IntMatrix(rank, 0), std::move(action));
}

PresentedModule PresentedModule::from_generator_action(GroupPtr group, std::size_t gens, IntMatrix relations,
                                                       const std::vector<IntMatrix>& generator_action) {
  const auto& gen_list = group->generators();
  if (generator_action.size() != gen_list.size()) {
    throw Error(ErrorCode::kInvalidArgument, "expected " + std::to_string(gen_list.size()) +
                                                 " generator action matrices, got " +
                                                 std::to_string(generator_action.size()));
  }
  for (const auto& a : generator_action)
    if (a.rows() != gens || a.cols() != gens)
      throw Error(ErrorCode::kInvalidArgument, "action matrices must be gens x gens");
  const std::size_t n = group->order();
  std::vector<IntMatrix> action(n);
  std::vector<bool> known(n, false);
  std::vector<std::size_t> queue{group->identity()};
  action[group->identity()] = IntMatrix::identity(gens);
  known[group->identity()] = true;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t y = queue[q];
    for (std::size_t i = 0; i < gen_list.size(); ++i) {
      const std::size_t x = group->multiply(gen_list[i], y);
      if (known[x]) continue;
      known[x] = true;
      action[x] = generator_action[i] * action[y];
      queue.push_back(x);
    }
  }
  return PresentedModule(std::move(group), gens, std::move(relations), std::move(action));
}

bool PresentedModule::is_zero(const IntVector& v) const { return relation_echelon_->solve_form(v).has_value(); }

bool PresentedModule::columns_vanish(const IntMatrix& m) const {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_zero(m.column(c))) return false;
  return true;
}

AbelianInvariants PresentedModule::invariants() const { return cokernel_invariants(relations_); }

bool PresentedModule::is_torsion_free() const { return invariants().is_torsion_free(); }

bool operator==(const PresentedModule& a, const PresentedModule& b) {
  return same_group(*a.group_, *b.group_) && a.gens_ == b.gens_ && a.relations_ == b.relations_ &&
         a.action_ == b.action_;
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) { return &a == &b || a == b; }

std::vector<std::string> validate_module(const PresentedModule& m) {
  std::vector<std::string> violations;
  const FiniteGroup& g = m.group();
  const std::size_t n = m.gens();
  if (!m.columns_vanish(m.action(g.identity()) - IntMatrix::identity(n))) {
    violations.push_back("action of the identity is not the identity modulo relations");
  }
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (!m.columns_vanish(m.action(a) * m.relations()))
      violations.push_back(matrix_label("action", a) + " does not preserve the relation lattice");
  }
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (!m.columns_vanish(m.action(a) * m.action(b) - m.action(g.multiply(a, b)))) {
        violations.push_back(matrix_label("action", a) + " * " + matrix_label("action", b) + " != " +
                             matrix_label("action", g.multiply(a, b)) + " modulo relations");
      }
  return violations;
}

void require_valid(const PresentedModule& m, const std::string& what) {
  auto v = validate_module(m);
  if (!v.empty()) throw ValidationError("module '" + what + "'", std::move(v));
}

// ---------------------------------------------------------------------------
// ModuleMap

ModuleMap::ModuleMap(PresentedModule source, PresentedModule target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!same_group(source_.group(), target_.group())) {
    throw Error(ErrorCode::kMismatchedGroup, "map between modules over different groups");
  }
  if (matrix_.rows() != target_.gens() || matrix_.cols() != source_.gens()) {
    if (matrix_.entries().empty() && (target_.gens() == 0 || source_.gens() == 0))
      matrix_ = IntMatrix(target_.gens(), source_.gens());
    else
      throw Error(ErrorCode::kInvalidArgument,
                  "map matrix must be " + std::to_string(target_.gens()) + " x " + std::to_string(source_.gens()));
  }
}

ModuleMap ModuleMap::identity(const PresentedModule& m) { return ModuleMap(m, m, IntMatrix::identity(m.gens())); }

ModuleMap ModuleMap::zero(const PresentedModule& source, const PresentedModule& target) {
  return ModuleMap(source, target, IntMatrix(target.gens(), source.gens()));
}

std::vector<std::string> validate_map(const ModuleMap& f) {
  std::vector<std::string> violations;
  const auto& s = f.source();
  const auto& t = f.target();
  if (!t.columns_vanish(f.matrix() * s.relations()))
    violations.push_back("map does not send source relations into target relations");
  for (std::size_t g = 0; g < s.group().order(); ++g)
    if (!t.columns_vanish(f.matrix() * s.action(g) - t.action(g) * f.matrix()))
      violations.push_back("map is not equivariant for element " + std::to_string(g));
  return violations;
}

void require_valid(const ModuleMap& f, const std::string& what) {
  auto v = validate_map(f);
  if (!v.empty()) throw ValidationError("map '" + what + "'", std::move(v));
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (!(f.target().gens() == g.source().gens())) {
    throw Error(ErrorCode::kInvalidArgument, "compose: incompatible maps");
  }
  return ModuleMap(f.source(), g.target(), g.matrix() * f.matrix());
}

bool maps_equal(const ModuleMap& f, const ModuleMap& g) {
  return f.matrix().rows() == g.matrix().rows() && f.matrix().cols() == g.matrix().cols() &&
         f.target().columns_vanish(f.matrix() - g.matrix());
}

bool is_zero_map(const ModuleMap& f) { return f.target().columns_vanish(f.matrix()); }

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b) {
  if (!same_group(a.group(), b.group())) throw Error(ErrorCode::kMismatchedGroup, "direct sum over different groups");
  std::vector<IntMatrix> action;
  for (std::size_t g = 0; g < a.group().order(); ++g) action.push_back(IntMatrix::block_diagonal(a.action(g), b.action(g)));
  return PresentedModule(a.group_ptr(), a.gens() + b.gens(), IntMatrix::block_diagonal(a.relations(), b.relations()),
                         std::move(action));
}

PresentedModule direct_sum(std::span<const PresentedModule> parts, const GroupPtr& group) {
  PresentedModule out = PresentedModule::zero(group);
  for (const auto& p : parts) out = direct_sum(out, p);
  return out;
}

ModuleMap direct_sum(const ModuleMap& f, const ModuleMap& g) {
  return ModuleMap(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()),
                   IntMatrix::block_diagonal(f.matrix(), g.matrix()));
}

ModuleMap summand_inclusion(const PresentedModule& a, const PresentedModule& b, int index) {
  IntMatrix m(a.gens() + b.gens(), index == 0 ? a.gens() : b.gens());
  m.set_block(index == 0 ? 0 : a.gens(), 0, IntMatrix::identity(index == 0 ? a.gens() : b.gens()));
  return ModuleMap(index == 0 ? a : b, direct_sum(a, b), std::move(m));
}

ModuleMap summand_projection(const PresentedModule& a, const PresentedModule& b, int index) {
  IntMatrix m(index == 0 ? a.gens() : b.gens(), a.gens() + b.gens());
  m.set_block(0, index == 0 ? 0 : a.gens(), IntMatrix::identity(index == 0 ? a.gens() : b.gens()));
  return ModuleMap(direct_sum(a, b), index == 0 ? a : b, std::move(m));
}

PresentedModule cokernel_module(const ModuleMap& f) {
  const auto& t = f.target();
  return PresentedModule(t.group_ptr(), t.gens(), IntMatrix::hcat(t.relations(), f.matrix()), t.actions());
}

ModuleMap cokernel_projection(const ModuleMap& f) {
  PresentedModule c = cokernel_module(f);
  return ModuleMap(f.target(), c, IntMatrix::identity(f.target().gens()));
}

Subquotient fixed_points(const PresentedModule& m) {
  const auto& gens = m.group().generators();
  const std::size_t n = m.gens();
  IntMatrix stack(n * gens.size(), n);
  for (std::size_t i = 0; i < gens.size(); ++i)
    stack.set_block(i * n, 0, m.action(gens[i]) - IntMatrix::identity(n));
  Subquotient s;
  s.ambient_rank = n;
  s.cycles = gens.empty() ? IntMatrix::identity(n) : preimage_of_relations(stack, m.relations(), gens.size());
  s.boundaries = m.relations();
  return s;
}

Subquotient kernel_subquotient(const ModuleMap& f) {
  Subquotient s;
  s.ambient_rank = f.source().gens();
  s.cycles = preimage_of_relations(f.matrix(), f.target().relations(), 1);
  s.boundaries = f.source().relations();
  return s;
}

bool is_injective(const ModuleMap& f) { return subquotient_invariants(kernel_subquotient(f)).is_trivial(); }

bool is_surjective(const ModuleMap& f) {
  return cokernel_invariants(IntMatrix::hcat(f.target().relations(), f.matrix())).is_trivial();
}

bool is_exact_at(const ModuleMap& f, const ModuleMap& g) {
  if (!is_zero_map(compose(g, f))) return false;
  Subquotient s = kernel_subquotient(g);
  s.boundaries = IntMatrix::hcat(f.matrix(), f.target().relations());
  return subquotient_invariants(s).is_trivial();
}

std::vector<std::size_t> stabilizer(const PresentedModule& m, const IntVector& v) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < m.group().order(); ++g) {
    IntVector diff = m.action(g) * v;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= v[i];
    if (m.is_zero(diff)) out.push_back(g);
  }
  return out;
}

std::vector<std::size_t> coset_representatives(const FiniteGroup& g, std::span<const std::size_t> subgroup) {
  if (!g.is_subgroup(subgroup)) throw Error(ErrorCode::kNotASubgroup, "element list is not a subgroup");
  std::vector<bool> covered(g.order(), false);
  std::vector<std::size_t> reps;
  // Scan by index but start at the identity so the trivial coset comes first.
  std::vector<std::size_t> scan{g.identity()};
  for (std::size_t a = 0; a < g.order(); ++a)
    if (a != g.identity()) scan.push_back(a);
  for (std::size_t a : scan) {
    if (covered[a]) continue;
    reps.push_back(a);
    for (std::size_t h : subgroup) covered[g.multiply(a, h)] = true;
  }
  return reps;
}

PresentedModule induced_module(const GroupPtr& g, std::span<const std::size_t> subgroup) {
  const auto reps = coset_representatives(*g, subgroup);
  const std::size_t k = reps.size();
  std::vector<std::size_t> coset_of(g->order());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t h : subgroup) coset_of[g->multiply(reps[i], h)] = i;
  std::vector<IntMatrix> action;
  for (std::size_t x = 0; x < g->order(); ++x) {
    IntMatrix p(k, k);
    for (std::size_t i = 0; i < k; ++i) p(coset_of[g->multiply(x, reps[i])], i) = 1;
    action.push_back(std::move(p));
  }
  return PresentedModule(g, k, IntMatrix(k, 0), std::move(action));
}

PresentedModule norm_one_lattice(const GroupPtr& g) {
  const std::size_t n = g->order();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "norm-one lattice needs a group of order >= 2");
  const std::size_t last = n - 1;
  std::vector<IntMatrix> action;
  for (std::size_t x = 0; x < n; ++x) {
    IntMatrix a(n - 1, n - 1);
    for (std::size_t i = 0; i < n - 1; ++i) {
      const std::size_t image = g->multiply(x, i);
      if (image == last)
        for (std::size_t r = 0; r < n - 1; ++r) a(r, i) = -1;
      else
        a(image, i) = 1;
    }
    action.push_back(std::move(a));
  }
  return PresentedModule(g, n - 1, IntMatrix(n - 1, 0), std::move(action));
}

PresentedModule norm_one_lattice(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "norm-one lattice needs n >= 2");
  return norm_one_lattice(make_group(FiniteGroup::cyclic(n)));
}

FreeNormalization normalize_torsion_free(const PresentedModule& m) {
  const std::size_t n = m.gens();
  const SmithDecomposition s = smith_normal_form(m.relations(), SmithOptions{true, false, true});
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) throw Error(ErrorCode::kHasTorsion, "module has torsion " + m.invariants().to_string());
  const std::size_t r = s.rank;
  FreeNormalization out{PresentedModule::zero(m.group_ptr()), s.U.select_rows(r, n - r),
                         s.U_inverse.select_columns(r, n - r)};
  std::vector<IntMatrix> action;
  for (const auto& a : m.actions()) action.push_back(out.to_free * a * out.from_free);
  out.module = PresentedModule(m.group_ptr(), n - r, IntMatrix(n - r, 0), std::move(action));
  return out;
}

PresentedModule dual_lattice(const PresentedModule& m) {
  if (m.relations().cols() > 0) {
    if (!m.is_torsion_free()) throw Error(ErrorCode::kHasTorsion, "dual of a module with torsion " + m.invariants().to_string());
    return dual_lattice(normalize_torsion_free(m).module);
  }
  const FiniteGroup& g = m.group();
  std::vector<IntMatrix> action;
  for (std::size_t x = 0; x < g.order(); ++x) action.push_back(m.action(g.inverse(x)).transpose());
  return PresentedModule(m.group_ptr(), m.gens(), IntMatrix(m.gens(), 0), std::move(action));
}

PresentedModule change_basis(const PresentedModule& m, const IntMatrix& p) {
  const IntMatrix pinv = unimodular_inverse(p);
  std::vector<IntMatrix> action;
  for (const auto& a : m.actions()) action.push_back(p * a * pinv);
  return PresentedModule(m.group_ptr(), m.gens(), p * m.relations(), std::move(action));
}

}  // namespace upic
