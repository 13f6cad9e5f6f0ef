#pragma once

// Bounded cochain complexes of presented modules, maps between them, cones,
// cohomology, quasi-isomorphism tests, the collapse construction for
// two-term complexes and torsion-free resolutions.
//
// Sign conventions:
//   cone(f: X -> Y)^i  = X^{i+1} (+) Y^i,  d(x, y) = (-d x, d y - f x)
//   fibre(f: X -> Y)^i = X^i (+) Y^{i-1},  d(x, y) = (d x, f x - d y)
// so that fibre(f) = cone(f)[-1], where C[k]^i = C^{i+k} with d multiplied
// by (-1)^k. For modules, [P -> Q> is P (+f)-> Q with P in degree 0 and
// <P -> Q] is P (-f)-> Q with Q in degree 0.

#include <string>
#include <vector>

#include "module.hpp"

namespace upic {

class BoundedComplex {
 public:
  /// terms[k] sits in degree lowest + k; differentials[k] maps terms[k] to
  /// terms[k + 1]. Checks shapes and d o d = 0 modulo relations.
  BoundedComplex(GroupPtr group, int lowest, std::vector<PresentedModule> terms, std::vector<IntMatrix> differentials);

  static BoundedComplex zero(GroupPtr group);
  static BoundedComplex concentrated(const PresentedModule& m, int degree);

  const GroupPtr& group_ptr() const { return group_; }
  const FiniteGroup& group() const { return *group_; }
  int lowest() const { return lowest_; }
  /// lowest() - 1 when the complex has no terms.
  int highest() const { return lowest_ + static_cast<int>(terms_.size()) - 1; }
  bool empty() const { return terms_.empty(); }

  /// Zero module outside [lowest, highest].
  const PresentedModule& term(int degree) const;
  /// term(degree) -> term(degree + 1); a zero matrix outside the stored range.
  IntMatrix differential(int degree) const;
  ModuleMap differential_map(int degree) const;

  /// C[k]: term i is C^{i + k}, differentials multiplied by (-1)^k.
  BoundedComplex shift(int k) const;
  /// Drops zero-rank terms at both ends.
  BoundedComplex trimmed() const;

  friend bool operator==(const BoundedComplex& a, const BoundedComplex& b);

 private:
  GroupPtr group_;
  int lowest_;
  std::vector<PresentedModule> terms_;
  std::vector<IntMatrix> differentials_;
  PresentedModule zero_;
};

/// Module and map validity of every term and differential.
std::vector<std::string> validate_complex(const BoundedComplex& c);
void require_valid(const BoundedComplex& c, const std::string& what);

/// [A -> B> with A in degree 0 (differential +f), or, when
/// `source_in_degree0` is false, <A -> B] with B in degree 0 (differential -f).
BoundedComplex two_term(const ModuleMap& f, bool source_in_degree0 = true);

class ComplexMap {
 public:
  /// components[k] is the matrix in degree lowest + k; missing degrees are
  /// zero. Checks shapes and commutation with the differentials.
  ComplexMap(BoundedComplex source, BoundedComplex target, int lowest, std::vector<IntMatrix> components);

  static ComplexMap identity(const BoundedComplex& c);
  static ComplexMap zero(const BoundedComplex& source, const BoundedComplex& target);

  const BoundedComplex& source() const { return source_; }
  const BoundedComplex& target() const { return target_; }
  IntMatrix component(int degree) const;
  ModuleMap component_map(int degree) const;
  /// Degree range covering both complexes.
  int lowest() const;
  int highest() const;

 private:
  BoundedComplex source_;
  BoundedComplex target_;
  int lowest_;
  std::vector<IntMatrix> components_;
};

std::vector<std::string> validate_complex_map(const ComplexMap& f);
ComplexMap compose(const ComplexMap& g, const ComplexMap& f);

BoundedComplex cone(const ComplexMap& f);
BoundedComplex fibre(const ComplexMap& f);
/// Termwise equality of two complexes over the same degrees (zero terms
/// at the ends are ignored).
bool same_complex(const BoundedComplex& a, const BoundedComplex& b);

struct CohomologyGroup {
  Subquotient group;  // in the generators of term(degree)
  AbelianInvariants invariants;
};

CohomologyGroup cohomology(const BoundedComplex& c, int degree);
bool is_acyclic(const BoundedComplex& c);

struct QuasiIsoReport {
  struct Degree {
    int degree;
    AbelianInvariants source;
    AbelianInvariants target;
    AbelianInvariants cone;
  };
  bool quasi_iso = true;
  std::vector<Degree> degrees;

  std::string to_string() const;
};

/// Decided by acyclicity of the cone; the report lists H^i of source,
/// target and cone in every degree where any of them has a term.
QuasiIsoReport is_quasi_iso(const ComplexMap& f);

/// A short exact sequence 0 -> A^1[-1] -mu-> B -nu-> C -> 0 with B two-term
/// in degrees 0 and 1.
struct ShortExactSequence {
  ComplexMap mu;
  ComplexMap nu;
};

/// Degreewise exactness of a sequence of complex maps.
bool is_degreewise_exact(const ShortExactSequence& s);

struct CollapseResult {
  /// [A^1 -sigma-> H^1(B)>, sigma(a) = -mu^1(a) + im d_B.
  BoundedComplex collapsed;
  /// <A -> B], the cone of mu.
  BoundedComplex cone;
  /// cone -> collapsed: (a, b) -> a in degree 0, b -> b + im d_B in degree 1.
  ComplexMap epsilon;
  /// cone -> C: (a, b) -> nu(b).
  ComplexMap lambda;
  QuasiIsoReport epsilon_report;
  QuasiIsoReport lambda_report;
};

/// Throws PreconditionH0 if H^0(B) != 0 and NotExact if the sequence is
/// not exact in some degree.
CollapseResult collapse(const ShortExactSequence& s);

/// H^1 of a two-term complex in degrees 0, 1 as a presented module.
PresentedModule top_cohomology_module(const BoundedComplex& b);

struct Resolution {
  /// psi: M -> Y with every term of M a free lattice.
  ComplexMap psi;
  /// Number of cones taken, including the final kernel step.
  std::size_t iterations = 0;
  QuasiIsoReport report;

  const BoundedComplex& complex() const { return psi.source(); }
};

/// Torsion-free resolution: kills cohomology from the top degree down by
/// permutation modules on orbits of canonical generators, then closes with
/// the kernel of the lowest step.
Resolution resolve_torsion_free(const BoundedComplex& y);

/// Invariant-level comparison of two resolutions of the same complex.
bool resolutions_agree(const Resolution& a, const Resolution& b);

/// Hom(-, Z) termwise: term -i is the dual lattice of term i and the
/// differential from degree -i-1 to -i is the transpose of d_i. Terms with
/// relations are first rewritten as free lattices. Throws HasTorsion.
BoundedComplex dual_complex(const BoundedComplex& m);

}  // namespace upic
