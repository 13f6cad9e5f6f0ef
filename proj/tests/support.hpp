#pragma once

#include <random>

#include "complexes.hpp"
#include "homspace.hpp"
#include "linalg.hpp"
#include "module.hpp"

namespace upic::testing {

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

/// Product of random elementary operations; determinant +-1.
inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int steps = 0) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  if (steps == 0) steps = static_cast<int>(3 * n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const long c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
  }
  return u;
}

inline GroupPtr cyclic(std::size_t n) { return make_group(FiniteGroup::cyclic(n)); }
inline GroupPtr s3() { return make_group(FiniteGroup::symmetric(3)); }
inline GroupPtr klein() { return make_group(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))); }

inline std::vector<std::size_t> random_subgroup(std::mt19937& rng, const FiniteGroup& g) {
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  std::vector<std::size_t> gens{pick(rng)};
  if (rng() % 3 == 0) gens.push_back(pick(rng));
  return g.subgroup_generated(gens);
}

/// Z[G/H] or Z[G/H] / (norm) for a random subgroup H, of rank at most max_rank.
inline PresentedModule random_block(std::mt19937& rng, const GroupPtr& g, std::size_t max_rank) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    const auto h = random_subgroup(rng, *g);
    const std::size_t index = g->order() / h.size();
    PresentedModule perm = induced_module(g, h);
    const bool quotient = index >= 2 && rng() % 2 == 0;
    if (quotient && index - 1 <= max_rank) {
      IntMatrix norm(index, 1);
      for (std::size_t i = 0; i < index; ++i) norm(i, 0) = 1;
      return PresentedModule(g, index, norm, perm.actions());
    }
    if (index <= max_rank) return perm;
  }
  return PresentedModule::trivial(g);
}

/// Sum of random blocks of total rank in [1, max_rank]; with `torsion`, some
/// blocks are reduced modulo a small integer. Generators are then mixed by a
/// random unimodular change of basis.
inline PresentedModule random_module(std::mt19937& rng, const GroupPtr& g, std::size_t max_rank, bool torsion) {
  std::vector<PresentedModule> blocks;
  std::size_t rank = 0;
  const std::size_t target = 1 + rng() % max_rank;
  while (rank < target) {
    PresentedModule b = random_block(rng, g, target - rank);
    const std::size_t r = b.relations().cols() > 0 ? b.gens() - 1 : b.gens();
    if (torsion && rng() % 2 == 0) {
      const long m = 2 + static_cast<long>(rng() % 3);
      b = PresentedModule(g, b.gens(), IntMatrix::hcat(b.relations(), Integer(m) * IntMatrix::identity(b.gens())),
                          b.actions());
    }
    rank += std::max<std::size_t>(r, 1);
    blocks.push_back(std::move(b));
  }
  PresentedModule m = direct_sum(std::span<const PresentedModule>(blocks), g);
  return change_basis(m, random_unimodular(rng, m.gens()));
}

/// sum over g of target(g) F source(g^-1).
inline IntMatrix average(const PresentedModule& source, const PresentedModule& target, const IntMatrix& f) {
  const FiniteGroup& g = source.group();
  IntMatrix out(target.gens(), source.gens());
  for (std::size_t x = 0; x < g.order(); ++x) out = out + target.action(x) * f * source.action(g.inverse(x));
  return out;
}

/// A random equivariant map; the source must have no relations.
inline ModuleMap random_map(std::mt19937& rng, const PresentedModule& source, const PresentedModule& target,
                            long bound = 2) {
  const IntMatrix f = random_matrix(rng, target.gens(), source.gens(), bound);
  return ModuleMap(source, target, average(source, target, f));
}

inline PresentedModule free_version(const PresentedModule& m) { return normalize_torsion_free(m).module; }

/// A random complex with at most three terms: Y0 -> Y1 -> coker, with Y0 free.
inline BoundedComplex random_complex(std::mt19937& rng, const GroupPtr& g, std::size_t max_rank, bool torsion) {
  const PresentedModule y0 = free_version(random_module(rng, g, max_rank, false));
  const PresentedModule y1 = random_module(rng, g, max_rank, torsion);
  const ModuleMap d0 = random_map(rng, y0, y1);
  const int shape = static_cast<int>(rng() % 3);
  if (shape == 0) return two_term(d0);
  if (shape == 1) return BoundedComplex(g, 0, {y1}, {});
  const PresentedModule c = cokernel_module(d0);
  const IntMatrix p = random_unimodular(rng, c.gens());
  return BoundedComplex(g, 0, {y0, y1, change_basis(c, p)}, {d0.matrix(), p});
}

/// Random character data: XG a lattice, XH possibly with torsion.
inline HomSpaceData random_homspace(std::mt19937& rng, const GroupPtr& g, std::size_t max_rank = 3) {
  const PresentedModule xg = free_version(random_module(rng, g, max_rank, false));
  const PresentedModule xh = random_module(rng, g, max_rank, true);
  return HomSpaceData{g, xg, xh, random_map(rng, xg, xh), true};
}

}  // namespace upic::testing
