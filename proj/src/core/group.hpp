#pragma once

// Finite groups given by a multiplication table over element indices.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace upic {

class FiniteGroup {
 public:
  using Table = std::vector<std::vector<std::size_t>>;

  /// Validates closure, associativity, identity and inverses; throws
  /// ValidationError listing every violation found.
  static FiniteGroup from_table(Table table, std::vector<std::size_t> generators = {});
  /// Closure of permutations of {0..degree-1}; elements are numbered in
  /// breadth-first order from the identity, the product is composition
  /// (p * q)(x) = p(q(x)). Throws if the closure exceeds `order_cap`.
  static FiniteGroup from_permutations(std::size_t degree,
                                       const std::vector<std::vector<std::size_t>>& generators,
                                       std::size_t order_cap = 48);
  /// C_n with element k = sigma^k.
  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup trivial() { return cyclic(1); }
  /// Element (a, b) has index a * |H| + b.
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
  static FiniteGroup symmetric(std::size_t n);

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t power(std::size_t a, long k) const;
  std::size_t element_order(std::size_t a) const;
  const Table& table() const { return table_; }
  /// A generating set; derived greedily when none was supplied.
  const std::vector<std::size_t>& generators() const { return generators_; }

  bool is_subgroup(std::span<const std::size_t> elements) const;
  std::vector<std::size_t> subgroup_generated(std::span<const std::size_t> elements) const;
  /// Smallest-index element of order |G|, if the group is cyclic.
  std::optional<std::size_t> cyclic_generator() const;
  /// Elements other than the identity, in index order.
  std::vector<std::size_t> non_identity() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  FiniteGroup() = default;
  Table table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> generators_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr make_group(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

}  // namespace upic
