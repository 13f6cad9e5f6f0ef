#pragma once

// Exact integer linear algebra: dense matrices over Z, column echelon and
// Hermite forms, Smith normal form, integer solving, and canonical
// invariants of finitely generated abelian groups and their subquotients.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace upic {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  /// Row-major literal, e.g. IntMatrix::from_rows({{1, 2}, {3, 4}}).
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const Integer> d);
  static IntMatrix column_vector(const IntVector& v);
  static IntMatrix scalar(std::size_t n, const Integer& c);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<Integer>& entries() const { return data_; }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;
  IntMatrix transpose() const;
  IntMatrix select_columns(std::size_t first, std::size_t count) const;
  IntMatrix select_rows(std::size_t first, std::size_t count) const;
  bool is_zero() const;
  bool is_identity() const;

  /// [a | b]; row counts must match.
  static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);
  /// [a ; b]; column counts must match.
  static IntMatrix vcat(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
  /// Writes `block` into this matrix with its top-left corner at (r, c).
  void set_block(std::size_t r, std::size_t c, const IntMatrix& block);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);
  friend IntMatrix operator*(const Integer& c, const IntMatrix& a);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// U * A * V = D with U, V unimodular and D diagonal with d1 | d2 | ... >= 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  /// Inverses of U and V; filled only when requested.
  IntMatrix U_inverse;
  IntMatrix V_inverse;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};

struct SmithOptions {
  bool track_u = true;
  bool track_v = true;
  bool track_inverses = false;
};

SmithDecomposition smith_normal_form(const IntMatrix& a, SmithOptions options = {});
/// Only the nonzero diagonal entries of the Smith form, in divisibility order.
std::vector<Integer> smith_diagonal(const IntMatrix& a);

/// A * T = F where F is in column echelon form: the first `rank` columns are
/// nonzero with strictly increasing pivot rows and positive pivots, the rest
/// are zero. T is unimodular; when `transform_rows` is set only the leading
/// rows of T are kept (enough to project kernel vectors).
struct ColumnEchelon {
  IntMatrix form;
  IntMatrix transform;
  std::vector<std::size_t> pivot_rows;
  std::size_t rank = 0;

  /// Columns of T beyond the rank: a basis of ker A (projected when T is truncated).
  IntMatrix kernel() const;
  /// Nonzero columns of F: a basis of im A.
  IntMatrix image() const;
  /// Solves F * y = b; returns y (length rank) or nothing.
  std::optional<IntVector> solve_form(const IntVector& b) const;
};

ColumnEchelon column_echelon(const IntMatrix& a, bool track_transform = true,
                             std::optional<std::size_t> transform_rows = std::nullopt);

/// Column Hermite form: echelon form with entries left of each pivot reduced to [0, pivot).
ColumnEchelon hermite_normal_form(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);
IntMatrix kernel_basis(const IntMatrix& a);
/// A basis (full column rank) of the lattice spanned by the columns of a.
IntMatrix lattice_basis(const IntMatrix& a);
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);
/// Solves A X = B column by column; nothing if any column fails.
std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b);
/// Inverse of a unimodular matrix; throws if not unimodular.
IntMatrix unimodular_inverse(const IntMatrix& a);
Integer determinant(const IntMatrix& a);

/// Canonical form of a finitely generated abelian group.
class AbelianInvariants {
 public:
  AbelianInvariants() = default;
  /// Accepts any list of cyclic orders (0 means Z, 1 is dropped) and
  /// canonicalizes it into a divisibility chain.
  static AbelianInvariants from_cyclic_orders(std::size_t free_rank,
                                              const std::vector<Integer>& orders);
  static AbelianInvariants trivial() { return {}; }
  static AbelianInvariants free(std::size_t rank);
  static AbelianInvariants cyclic(const Integer& n);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_torsion_free() const { return torsion_.empty(); }
  /// Product of the torsion coefficients.
  Integer torsion_order() const;

  /// "0", "Z", "Z^2 x Z/2 x Z/6", ...
  std::string to_string() const;
  /// Inverse of to_string; nothing on malformed input.
  static std::optional<AbelianInvariants> parse(const std::string& text);

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Invariants of Z^rows / im A.
AbelianInvariants cokernel_invariants(const IntMatrix& a);

/// Z / B with B <= Z <= Z^n, both given by spanning columns.
struct Subquotient {
  std::size_t ambient_rank = 0;
  IntMatrix cycles;
  IntMatrix boundaries;
};

/// The subquotient rewritten in coordinates of a basis of Z:
/// Z / B  ==  Z^k / im(relations), where basis is n x k of full column rank.
struct SubquotientPresentation {
  IntMatrix basis;
  IntMatrix relations;
};

SubquotientPresentation present_subquotient(const Subquotient& s);
AbelianInvariants subquotient_invariants(const Subquotient& s);

/// Lifts (in Z^n) of the canonical generators of Z/B, one per nontrivial
/// Smith coefficient of the presentation, with their orders (0 for infinite).
struct CanonicalGenerators {
  IntMatrix lifts;
  std::vector<Integer> orders;
};
CanonicalGenerators canonical_generators(const Subquotient& s);

/// Kernel / cokernel of the map Z1/B1 -> Z2/B2 induced by `map` (which must
/// send Z1 into Z2 and B1 into B2).
struct InducedMapInvariants {
  AbelianInvariants kernel;
  AbelianInvariants cokernel;
};
InducedMapInvariants induced_map_invariants(const Subquotient& source, const Subquotient& target,
                                            const IntMatrix& map);

}  // namespace upic
