#include "group.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>

#include "error.hpp"

namespace upic {

FiniteGroup FiniteGroup::from_table(Table table, std::vector<std::size_t> generators) {
  const std::size_t n = table.size();
  std::vector<std::string> violations;
  if (n == 0) violations.push_back("group has no elements");
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) {
      violations.push_back("row " + std::to_string(a) + " has " + std::to_string(table[a].size()) +
                           " entries, expected " + std::to_string(n));
      continue;
    }
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] >= n)
        violations.push_back("entry (" + std::to_string(a) + ", " + std::to_string(b) + ") out of range");
  }
  if (!violations.empty()) throw ValidationError("group table", violations);

  for (std::size_t a = 0; a < n && violations.size() < 8; ++a)
    for (std::size_t b = 0; b < n && violations.size() < 8; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          violations.push_back("not associative at (" + std::to_string(a) + ", " + std::to_string(b) +
                               ", " + std::to_string(c) + ")");
          break;
        }

  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) identity = e;
  }
  if (!identity) violations.push_back("no two-sided identity");

  std::vector<std::size_t> inverse(n, n);
  if (identity) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b)
        if (table[a][b] == *identity && table[b][a] == *identity) {
          inverse[a] = b;
          break;
        }
      if (inverse[a] == n) violations.push_back("element " + std::to_string(a) + " has no inverse");
    }
  }
  for (std::size_t g : generators)
    if (g >= n) violations.push_back("generator index " + std::to_string(g) + " out of range");
  if (!violations.empty()) throw ValidationError("group table", violations);

  FiniteGroup g;
  g.table_ = std::move(table);
  g.inverse_ = std::move(inverse);
  g.identity_ = *identity;
  if (generators.empty()) {
    std::vector<std::size_t> span{g.identity_};
    for (std::size_t a = 0; a < n; ++a) {
      if (std::find(span.begin(), span.end(), a) != span.end()) continue;
      generators.push_back(a);
      span = g.subgroup_generated(generators);
    }
  } else if (g.subgroup_generated(generators).size() != n) {
    throw ValidationError("group table", {"listed generators do not generate the group"});
  }
  g.generators_ = std::move(generators);
  return g;
}

FiniteGroup FiniteGroup::from_permutations(std::size_t degree,
                                           const std::vector<std::vector<std::size_t>>& generators,
                                           std::size_t order_cap) {
  using Perm = std::vector<std::size_t>;
  std::vector<std::string> violations;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Perm& p = generators[i];
    Perm sorted = p;
    std::sort(sorted.begin(), sorted.end());
    bool ok = p.size() == degree;
    for (std::size_t k = 0; ok && k < degree; ++k) ok = sorted[k] == k;
    if (!ok) violations.push_back("generator " + std::to_string(i) + " is not a permutation of 0.." +
                                  std::to_string(degree == 0 ? 0 : degree - 1));
  }
  if (!violations.empty()) throw ValidationError("permutation group", violations);

  auto compose = [degree](const Perm& p, const Perm& q) {
    Perm r(degree);
    for (std::size_t x = 0; x < degree; ++x) r[x] = p[q[x]];
    return r;
  };
  Perm id(degree);
  for (std::size_t x = 0; x < degree; ++x) id[x] = x;

  std::vector<Perm> elements{id};
  std::map<Perm, std::size_t> index{{id, 0}};
  std::queue<std::size_t> pending;
  pending.push(0);
  while (!pending.empty()) {
    const std::size_t x = pending.front();
    pending.pop();
    for (const Perm& s : generators) {
      Perm y = compose(s, elements[x]);
      if (index.count(y)) continue;
      if (elements.size() >= order_cap) {
        throw ValidationError("permutation group",
                              {"group order exceeds the cap of " + std::to_string(order_cap)});
      }
      index.emplace(y, elements.size());
      elements.push_back(std::move(y));
      pending.push(elements.size() - 1);
    }
  }
  const std::size_t n = elements.size();
  Table table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(compose(elements[a], elements[b]));
  std::vector<std::size_t> gens;
  for (const Perm& s : generators) {
    const std::size_t g = index.at(s);
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  }
  return from_table(std::move(table), std::move(gens));
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "cyclic group of order 0");
  Table table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return from_table(std::move(table), n == 1 ? std::vector<std::size_t>{} : std::vector<std::size_t>{1});
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order(), m = h.order();
  Table table(n * m, std::vector<std::size_t>(n * m));
  for (std::size_t a = 0; a < n * m; ++a)
    for (std::size_t b = 0; b < n * m; ++b)
      table[a][b] = g.multiply(a / m, b / m) * m + h.multiply(a % m, b % m);
  std::vector<std::size_t> gens;
  for (std::size_t x : g.generators()) gens.push_back(x * m + h.identity());
  for (std::size_t y : h.generators()) gens.push_back(g.identity() * m + y);
  return from_table(std::move(table), std::move(gens));
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
  if (n < 2) return trivial();
  std::vector<std::size_t> transposition(n), cycle(n);
  for (std::size_t x = 0; x < n; ++x) {
    transposition[x] = x;
    cycle[x] = (x + 1) % n;
  }
  std::swap(transposition[0], transposition[1]);
  std::size_t cap = 1;
  for (std::size_t k = 2; k <= n; ++k) cap *= k;
  return from_permutations(n, {transposition, cycle}, cap);
}

std::size_t FiniteGroup::power(std::size_t a, long k) const {
  std::size_t base = k < 0 ? inverse_[a] : a;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  std::size_t r = identity_;
  while (e--) r = table_[r][base];
  return r;
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t x = a; x != identity_; x = table_[x][a]) ++k;
  return k;
}

bool FiniteGroup::is_subgroup(std::span<const std::size_t> elements) const {
  std::vector<bool> in(order(), false);
  for (std::size_t x : elements) {
    if (x >= order()) return false;
    in[x] = true;
  }
  if (!in[identity_]) return false;
  for (std::size_t a = 0; a < order(); ++a) {
    if (!in[a]) continue;
    if (!in[inverse_[a]]) return false;
    for (std::size_t b = 0; b < order(); ++b)
      if (in[b] && !in[table_[a][b]]) return false;
  }
  return true;
}

std::vector<std::size_t> FiniteGroup::subgroup_generated(std::span<const std::size_t> elements) const {
  std::vector<bool> in(order(), false);
  std::vector<std::size_t> out{identity_};
  in[identity_] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t s : elements) {
      const std::size_t y = table_[s][out[i]];
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> FiniteGroup::cyclic_generator() const {
  for (std::size_t a = 0; a < order(); ++a)
    if (element_order(a) == order()) return a;
  return std::nullopt;
}

std::vector<std::size_t> FiniteGroup::non_identity() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < order(); ++a)
    if (a != identity_) out.push_back(a);
  return out;
}

}  // namespace upic
