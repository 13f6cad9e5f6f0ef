#pragma once

// Invariants of a homogeneous space X = G/H computed from the character
// data [X(G) -res-> X(H)>: Picard and algebraic Brauer groups through
// hypercohomology, the derived dual with its topological reading, and the
// maximal torus comparison for an m-extension G' -> G with kernel M.

#include <string>
#include <vector>

#include "cohomology.hpp"
#include "complexes.hpp"

namespace upic {

inline constexpr const char* kPicCaveat = "injection; exact if X(k) nonempty or Br(k) = 0";
inline constexpr const char* kBrauerCaveat = "injection; exact if X(k) nonempty or H^3(k, G_m) = 0";

struct HomSpaceData {
  GroupPtr group;
  PresentedModule xg;  // torsion-free
  PresentedModule xh;
  ModuleMap res;
  /// Declared by the caller; cannot be checked on lattices.
  bool pic_gbar_trivial = true;
};

std::vector<std::string> validate_homspace(const HomSpaceData& d);
void require_valid(const HomSpaceData& d);

/// [X(G) -> X(H)> with X(G) in degree 0.
BoundedComplex upic_complex(const HomSpaceData& d);

struct ArithmeticInvariant {
  AbelianInvariants value;
  std::string caveat;
  bool assumes_pic_gbar_trivial = true;
  /// X(H) has torsion, so the value at the finite level may differ from
  /// the value for the full Galois group.
  bool level_sensitive = false;
};

ArithmeticInvariant pic(const HomSpaceData& d, int bound = kDefaultDegreeBound);
ArithmeticInvariant brauer_a(const HomSpaceData& d, int bound = kDefaultDegreeBound);

/// The closed-form side of
///   0 -> H^-1 -> Hom(X(H), Z) -> Hom(X(G), Z) -> H^0 -> Hom(X(H)_tors, Q/Z) -> 0.
struct DualSequence {
  AbelianInvariants kernel;      // of Hom(X(H), Z) -> Hom(X(G), Z)
  AbelianInvariants cokernel;    // of the same map
  AbelianInvariants ext;         // Hom(X(H)_tors, Q/Z)
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

struct DualResult {
  AbelianInvariants h0;
  AbelianInvariants hminus1;
  DualSequence sequence;
  std::size_t resolution_iterations = 0;
};

DualSequence dual_sequence(const HomSpaceData& d);
/// Checks (h0, hminus1) against the sequence; fills violations.
void check_dual_sequence(DualSequence& s, const AbelianInvariants& h0, const AbelianInvariants& hminus1);

/// H^0 and H^-1 of RHom(UPic, Z) via a torsion-free resolution. Throws
/// ExactnessViolation when the five-term sequence disagrees.
DualResult upic_dual(const HomSpaceData& d);

struct TopologicalReport {
  AbelianInvariants h0;
  AbelianInvariants hminus1;
  bool pi1_labeled = false;
  bool pi2_labeled = false;
  bool assumes_pic_gbar_trivial = true;

  std::string to_string() const;
};

TopologicalReport topological_report(const HomSpaceData& d, bool stabilizer_connected, bool condition_h1);

struct TorusComparisonData {
  GroupPtr group;
  PresentedModule xg_prime;
  PresentedModule xm;
  PresentedModule xt;
  PresentedModule xt_prime;
  PresentedModule xtsc;
  IntMatrix res;               // X(G') -> X(M)
  IntMatrix gprime_to_tprime;  // X(G') -> X(T')
  IntMatrix tprime_to_m;       // X(T') -> X(M)
  IntMatrix tprime_to_tsc;     // X(T') -> X(Tsc)
  IntMatrix t_to_tprime;       // X(T) -> X(T')
  IntMatrix rho;               // X(T) -> X(Tsc)
};

struct TorusComparisonReport {
  bool ok = false;
  /// H^0, H^1 of [X(G') -> X(M)>, [X(T') -> X(M) + X(Tsc)>, [X(T) -> X(Tsc)>.
  AbelianInvariants upper[2];
  AbelianInvariants middle[2];
  AbelianInvariants lower[2];
  bool upper_quasi_iso = false;
  bool lower_quasi_iso = false;
  std::vector<std::string> problems;

  std::string to_string() const;
};

/// Throws ValidationError on invalid modules or non-equivariant maps; a
/// square that fails to commute gives ok = false with the reason.
TorusComparisonReport verify_torus_comparison(const TorusComparisonData& t);

}  // namespace upic
