#pragma once

// Finitely generated abelian groups with an action of a finite group,
// presented as Z^gens / im(relations), and equivariant maps between them.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "group.hpp"
#include "linalg.hpp"

namespace upic {

class PresentedModule {
 public:
  /// Checks shapes only; use validate_module for the algebraic invariants.
  PresentedModule(GroupPtr group, std::size_t gens, IntMatrix relations, std::vector<IntMatrix> action);

  static PresentedModule zero(GroupPtr group);
  /// Z^rank with trivial action.
  static PresentedModule trivial(GroupPtr group, std::size_t rank = 1);
  /// Extends actions given on group.generators() to every element by
  /// breadth-first products. Consistency is left to validate_module.
  static PresentedModule from_generator_action(GroupPtr group, std::size_t gens, IntMatrix relations,
                                               const std::vector<IntMatrix>& generator_action);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t gens() const { return gens_; }
  const IntMatrix& relations() const { return relations_; }
  const IntMatrix& action(std::size_t g) const { return action_[g]; }
  const std::vector<IntMatrix>& actions() const { return action_; }

  /// True if v lies in im(relations).
  bool is_zero(const IntVector& v) const;
  /// True if every column of m lies in im(relations).
  bool columns_vanish(const IntMatrix& m) const;
  AbelianInvariants invariants() const;
  bool is_torsion_free() const;

  friend bool operator==(const PresentedModule& a, const PresentedModule& b);

 private:
  GroupPtr group_;
  std::size_t gens_;
  IntMatrix relations_;
  std::vector<IntMatrix> action_;
  std::shared_ptr<const ColumnEchelon> relation_echelon_;
};

bool same_group(const FiniteGroup& a, const FiniteGroup& b);

/// Every violated module invariant; empty means valid.
std::vector<std::string> validate_module(const PresentedModule& m);
/// Throws ValidationError naming `what` if validate_module reports anything.
void require_valid(const PresentedModule& m, const std::string& what);

class ModuleMap {
 public:
  /// matrix is target.gens x source.gens. Shapes are checked here.
  ModuleMap(PresentedModule source, PresentedModule target, IntMatrix matrix);

  static ModuleMap identity(const PresentedModule& m);
  static ModuleMap zero(const PresentedModule& source, const PresentedModule& target);

  const PresentedModule& source() const { return source_; }
  const PresentedModule& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  friend bool operator==(const ModuleMap&, const ModuleMap&) = default;

 private:
  PresentedModule source_;
  PresentedModule target_;
  IntMatrix matrix_;
};

std::vector<std::string> validate_map(const ModuleMap& f);
void require_valid(const ModuleMap& f, const std::string& what);

/// g after f.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
/// True if the two maps agree modulo the target relations.
bool maps_equal(const ModuleMap& f, const ModuleMap& g);
bool is_zero_map(const ModuleMap& f);

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);
PresentedModule direct_sum(std::span<const PresentedModule> parts, const GroupPtr& group);
ModuleMap direct_sum(const ModuleMap& f, const ModuleMap& g);
/// Inclusion of the `index`-th summand (first or second) into a (+) b.
ModuleMap summand_inclusion(const PresentedModule& a, const PresentedModule& b, int index);
ModuleMap summand_projection(const PresentedModule& a, const PresentedModule& b, int index);

/// coker f = target / im f, presented on the generators of the target.
PresentedModule cokernel_module(const ModuleMap& f);
/// Projection target -> coker f.
ModuleMap cokernel_projection(const ModuleMap& f);

/// {x in M : g x = x for all g}, as an abelian group.
Subquotient fixed_points(const PresentedModule& m);
/// {x : f x = 0} / relations, as a subquotient of the source generators.
Subquotient kernel_subquotient(const ModuleMap& f);

bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
/// True if ker g = im f (with g after f equal to zero).
bool is_exact_at(const ModuleMap& f, const ModuleMap& g);

/// Stabilizer of the class of v in M.
std::vector<std::size_t> stabilizer(const PresentedModule& m, const IntVector& v);

/// Left coset representatives g_0 = e, g_1, ... of H in G, in order of
/// first appearance when the elements are scanned by index.
std::vector<std::size_t> coset_representatives(const FiniteGroup& g, std::span<const std::size_t> subgroup);
/// The permutation module Z[G/H]; basis vector k is the coset g_k H.
PresentedModule induced_module(const GroupPtr& g, std::span<const std::size_t> subgroup);

/// Z[G] / Z * norm, written on the basis e_g for all g except the last element.
PresentedModule norm_one_lattice(const GroupPtr& g);
/// The norm-one lattice of C_n (cyclic group with element k = sigma^k).
PresentedModule norm_one_lattice(std::size_t n);

/// A torsion-free module rewritten as a free lattice.
struct FreeNormalization {
  PresentedModule module;
  IntMatrix to_free;    // free_rank x gens
  IntMatrix from_free;  // gens x free_rank
};
/// Throws HasTorsion if M has torsion.
FreeNormalization normalize_torsion_free(const PresentedModule& m);

/// Hom(M, Z) with the contragredient action; M must be torsion-free.
/// Modules with relations are normalized to a free lattice first.
PresentedModule dual_lattice(const PresentedModule& m);

/// Change of generators: returns the module with action P A P^{-1} and
/// relations P R, for unimodular P.
PresentedModule change_basis(const PresentedModule& m, const IntMatrix& p);

}  // namespace upic
