#pragma once

// Group cohomology and hypercohomology of a finite group with coefficients
// in presented modules and bounded complexes, via normalized inhomogeneous
// cochains, plus two independent oracles (cyclic groups, finite modules).
//
// A normalized p-cochain is a function of p non-identity elements. The
// coordinates of C^p(M) are indexed by (tuple, generator) with the tuple
// read as a base-(|G| - 1) number, first argument most significant.
//
//   (d phi)(g1..g_{p+1}) = g1 phi(g2..g_{p+1})
//                          + sum_j (-1)^j phi(.., g_j g_{j+1}, ..)
//                          + (-1)^{p+1} phi(g1..g_p)
//
// Terms whose merged argument is the identity vanish. The total complex of
// K is Tot^n = (+)_q C^{n-q}(K^q) with
//   D(alpha)_q = (-1)^q d alpha_q + f_{q-1} o alpha_{q-1},
// which for K = [A -f-> B> reads D(a, b) = (d a, f o a - d b).

#include <cstdint>
#include <string>

#include "complexes.hpp"

namespace upic {

inline constexpr int kDefaultDegreeBound = 3;
inline constexpr std::uint64_t kDefaultBruteForceBudget = std::uint64_t{1} << 22;

std::size_t cochain_rank(const PresentedModule& m, int p);
/// C^p(M) -> C^{p+1}(M).
IntMatrix cochain_differential(const PresentedModule& m, int p);
/// Relations of C^p(M): one copy of the module relations per tuple.
IntMatrix cochain_relations(const PresentedModule& m, int p);
/// f applied pointwise: C^p(A) -> C^p(B).
IntMatrix cochain_map(const ModuleMap& f, int p);

/// Tot^n for n in [first, last] as a complex of abelian groups (over the
/// trivial group). D o D = 0 is checked on construction.
struct HyperTotal {
  BoundedComplex total;
  /// offsets[n - first][k] is the first coordinate of the summand of
  /// term lowest + k in Tot^n (terms with negative cochain degree absent).
  std::vector<std::vector<std::size_t>> offsets;
};
HyperTotal hyper_total(const BoundedComplex& k, int first, int last);

/// H^i(G, M); throws DegreeTooLarge if i > bound.
AbelianInvariants group_cohomology(const PresentedModule& m, int degree, int bound = kDefaultDegreeBound);
/// The cochain subquotient whose invariants are H^i(G, M).
Subquotient group_cohomology_subquotient(const PresentedModule& m, int degree, int bound = kDefaultDegreeBound);

/// H^i(G, K); throws DegreeTooLarge if cochains beyond degree bound + 1
/// would be needed.
AbelianInvariants hypercohomology(const BoundedComplex& k, int degree, int bound = kDefaultDegreeBound);

/// Period-two formulas for a cyclic group with generator s and norm N:
/// H^odd = ker N / (s - 1)M, H^even = M^G / N M. Throws NotCyclic; degree >= 1.
AbelianInvariants cyclic_oracle(const PresentedModule& m, int degree);

/// Exhaustive enumeration of normalized cochains for a finite module,
/// degree <= 2. Throws BudgetExceeded when more than `budget` cochains
/// would be enumerated.
AbelianInvariants finite_coeff_bruteforce(const PresentedModule& m, int degree,
                                          std::uint64_t budget = kDefaultBruteForceBudget);

/// Exactness bookkeeping for K = [A -f-> B> at degree i, from the sequence
/// H^{i-1}(A) -> H^{i-1}(B) -> H^i(K) -> H^i(A) -> H^i(B).
struct LesCheck {
  int degree = 0;
  AbelianInvariants hk;
  AbelianInvariants coker;  // of H^{i-1}(A) -> H^{i-1}(B)
  AbelianInvariants ker;    // of H^i(A) -> H^i(B)
  bool ok = false;

  std::string to_string() const;
};
LesCheck hyper_les_check(const ModuleMap& f, int degree, int bound = kDefaultDegreeBound);

}  // namespace upic
