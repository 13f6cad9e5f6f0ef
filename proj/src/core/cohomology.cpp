#include "cohomology.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "error.hpp"

namespace upic {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Positions of non-identity elements; the identity maps to npos.
struct TupleIndex {
  std::vector<std::size_t> elements;  // non-identity elements
  std::vector<std::size_t> position;  // element -> digit
  std::size_t base;

  explicit TupleIndex(const FiniteGroup& g) : elements(g.non_identity()), position(g.order(), SIZE_MAX) {
    for (std::size_t k = 0; k < elements.size(); ++k) position[elements[k]] = k;
    base = elements.size();
  }

  std::vector<std::size_t> decode(std::size_t index, int p) const {
    std::vector<std::size_t> t(static_cast<std::size_t>(p));
    for (int k = p - 1; k >= 0; --k) {
      t[static_cast<std::size_t>(k)] = elements[index % base];
      index /= base;
    }
    return t;
  }

  std::size_t encode(const std::vector<std::size_t>& t) const {
    std::size_t index = 0;
    for (std::size_t g : t) index = index * base + position[g];
    return index;
  }
};

void require_degree(int degree, int bound) {
  if (degree < 0) throw Error(ErrorCode::kInvalidArgument, "negative cohomological degree " + std::to_string(degree));
  if (degree > bound)
    throw Error(ErrorCode::kDegreeTooLarge,
                "degree " + std::to_string(degree) + " exceeds the configured bound " + std::to_string(bound));
}

GroupPtr trivial_group() {
  static const GroupPtr g = make_group(FiniteGroup::trivial());
  return g;
}

PresentedModule abelian_group(std::size_t gens, IntMatrix relations) {
  return PresentedModule(trivial_group(), gens, std::move(relations), {IntMatrix::identity(gens)});
}

}  // namespace

std::size_t cochain_rank(const PresentedModule& m, int p) {
  return m.gens() * ipow(m.group().order() - 1, p);
}

IntMatrix cochain_differential(const PresentedModule& m, int p) {
  const FiniteGroup& g = m.group();
  const TupleIndex idx(g);
  const std::size_t n = m.gens();
  const std::size_t rows = ipow(idx.base, p + 1), cols = ipow(idx.base, p);
  IntMatrix d(rows * n, cols * n);
  auto add_identity = [&](std::size_t row, std::size_t col, long sign) {
    for (std::size_t r = 0; r < n; ++r) d(row * n + r, col * n + r) += sign;
  };
  for (std::size_t t = 0; t < rows; ++t) {
    const auto tuple = idx.decode(t, p + 1);
    const std::vector<std::size_t> rest(tuple.begin() + 1, tuple.end());
    const IntMatrix& a = m.action(tuple[0]);
    const std::size_t col = idx.encode(rest);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) d(t * n + r, col * n + c) += a(r, c);
    for (int j = 1; j <= p; ++j) {
      const std::size_t h = g.multiply(tuple[static_cast<std::size_t>(j - 1)], tuple[static_cast<std::size_t>(j)]);
      if (h == g.identity()) continue;
      std::vector<std::size_t> merged;
      for (int k = 0; k < p + 1; ++k) {
        if (k == j - 1) merged.push_back(h);
        else if (k != j) merged.push_back(tuple[static_cast<std::size_t>(k)]);
      }
      add_identity(t, idx.encode(merged), j % 2 == 0 ? 1 : -1);
    }
    const std::vector<std::size_t> init(tuple.begin(), tuple.end() - 1);
    add_identity(t, idx.encode(init), (p + 1) % 2 == 0 ? 1 : -1);
  }
  return d;
}

IntMatrix cochain_relations(const PresentedModule& m, int p) {
  const std::size_t copies = ipow(m.group().order() - 1, p);
  const IntMatrix& r = m.relations();
  IntMatrix out(copies * r.rows(), copies * r.cols());
  for (std::size_t k = 0; k < copies; ++k) out.set_block(k * r.rows(), k * r.cols(), r);
  return out;
}

IntMatrix cochain_map(const ModuleMap& f, int p) {
  const std::size_t copies = ipow(f.source().group().order() - 1, p);
  const IntMatrix& a = f.matrix();
  IntMatrix out(copies * a.rows(), copies * a.cols());
  for (std::size_t k = 0; k < copies; ++k) out.set_block(k * a.rows(), k * a.cols(), a);
  return out;
}

HyperTotal hyper_total(const BoundedComplex& k, int first, int last) {
  HyperTotal out{BoundedComplex::zero(trivial_group()), {}};
  const int lo = k.lowest(), hi = k.highest();
  std::vector<PresentedModule> terms;
  for (int n = first; n <= last; ++n) {
    std::vector<std::size_t> offsets;
    std::size_t gens = 0;
    for (int q = lo; q <= hi; ++q) {
      offsets.push_back(gens);
      if (n - q < 0) continue;
      gens += cochain_rank(k.term(q), n - q);
    }
    IntMatrix relations(gens, 0);
    for (int q = lo; q <= hi; ++q) {
      if (n - q < 0) continue;
      const IntMatrix r = cochain_relations(k.term(q), n - q);
      IntMatrix placed(gens, r.cols());
      placed.set_block(offsets[static_cast<std::size_t>(q - lo)], 0, r);
      relations = IntMatrix::hcat(relations, placed);
    }
    terms.push_back(abelian_group(gens, std::move(relations)));
    out.offsets.push_back(std::move(offsets));
  }
  std::vector<IntMatrix> diffs;
  for (int n = first; n < last; ++n) {
    const auto& src = out.offsets[static_cast<std::size_t>(n - first)];
    const auto& tgt = out.offsets[static_cast<std::size_t>(n + 1 - first)];
    IntMatrix d(terms[static_cast<std::size_t>(n + 1 - first)].gens(), terms[static_cast<std::size_t>(n - first)].gens());
    for (int q = lo; q <= hi; ++q) {
      const std::size_t qi = static_cast<std::size_t>(q - lo);
      const int p = n - q;
      if (p < 0) continue;
      IntMatrix dq = cochain_differential(k.term(q), p);
      if (q % 2 != 0) dq = -dq;
      d.set_block(tgt[qi], src[qi], dq);
      if (q < hi) d.set_block(tgt[qi + 1], src[qi], cochain_map(k.differential_map(q), p));
    }
    diffs.push_back(std::move(d));
  }
  out.total = BoundedComplex(trivial_group(), first, std::move(terms), std::move(diffs));
  return out;
}

Subquotient group_cohomology_subquotient(const PresentedModule& m, int degree, int bound) {
  require_degree(degree, bound);
  const BoundedComplex k = BoundedComplex::concentrated(m, 0);
  return cohomology(hyper_total(k, std::max(degree - 1, 0), degree + 1).total, degree).group;
}

AbelianInvariants group_cohomology(const PresentedModule& m, int degree, int bound) {
  return subquotient_invariants(group_cohomology_subquotient(m, degree, bound));
}

AbelianInvariants hypercohomology(const BoundedComplex& k_in, int degree, int bound) {
  const BoundedComplex k = k_in.trimmed();
  if (k.empty()) return AbelianInvariants::trivial();
  if (degree < k.lowest()) return AbelianInvariants::trivial();
  if (degree + 1 - k.lowest() > bound + 1) {
    throw Error(ErrorCode::kDegreeTooLarge, "hypercohomology in degree " + std::to_string(degree) +
                                                " needs cochains beyond the configured bound " + std::to_string(bound));
  }
  const HyperTotal t = hyper_total(k, degree - 1, degree + 1);
  return cohomology(t.total, degree).invariants;
}

AbelianInvariants cyclic_oracle(const PresentedModule& m, int degree) {
  const FiniteGroup& g = m.group();
  const auto sigma = g.cyclic_generator();
  if (!sigma) throw Error(ErrorCode::kNotCyclic, "cyclic oracle needs a cyclic group");
  if (degree < 1) throw Error(ErrorCode::kInvalidArgument, "cyclic oracle is defined for degree >= 1");
  const std::size_t n = m.gens();
  IntMatrix norm(n, n);
  for (std::size_t k = 0; k < g.order(); ++k) norm = norm + m.action(g.power(*sigma, static_cast<long>(k)));
  const IntMatrix t = m.action(*sigma) - IntMatrix::identity(n);
  const IntMatrix& kill = degree % 2 == 1 ? norm : t;
  const IntMatrix& image = degree % 2 == 1 ? t : norm;
  Subquotient s;
  s.ambient_rank = n;
  s.cycles = column_echelon(IntMatrix::hcat(kill, m.relations()), true, n).kernel();
  s.boundaries = IntMatrix::hcat(image, m.relations());
  return subquotient_invariants(s);
}

// ---------------------------------------------------------------------------
// Brute force

namespace {

// M as a product of cyclic groups Z/orders[k] in Smith coordinates.
struct FiniteModel {
  std::vector<long> orders;
  std::vector<std::vector<std::vector<long>>> action;  // action[g][row][col] mod orders[row]
  std::uint64_t size = 1;

  explicit FiniteModel(const PresentedModule& m) {
    const SmithDecomposition s = smith_normal_form(m.relations(), SmithOptions{true, false, true});
    const std::size_t n = m.gens();
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < n; ++i) {
      const Integer d = i < s.rank ? Integer(s.D(i, i)) : Integer(0);
      if (d == 0) throw Error(ErrorCode::kInvalidArgument, "brute force needs a finite module, got " + m.invariants().to_string());
      if (d == 1) continue;
      if (!d.fits_slong_p() || d > 1 << 20) throw Error(ErrorCode::kBudgetExceeded, "module too large to enumerate");
      coords.push_back(i);
      orders.push_back(d.get_si());
    }
    for (long o : orders) {
      if (size > (std::uint64_t{1} << 40) / static_cast<std::uint64_t>(o))
        throw Error(ErrorCode::kBudgetExceeded, "module too large to enumerate");
      size *= static_cast<std::uint64_t>(o);
    }
    const IntMatrix u = s.U, uinv = s.U_inverse;
    for (std::size_t g = 0; g < m.group().order(); ++g) {
      const IntMatrix a = u * m.action(g) * uinv;
      std::vector<std::vector<long>> rows;
      for (std::size_t r = 0; r < coords.size(); ++r) {
        std::vector<long> row;
        for (std::size_t c = 0; c < coords.size(); ++c) {
          Integer x = a(coords[r], coords[c]) % orders[r];
          if (x < 0) x += orders[r];
          row.push_back(x.get_si());
        }
        rows.push_back(std::move(row));
      }
      action.push_back(std::move(rows));
    }
  }

  std::size_t dim() const { return orders.size(); }
};

class BruteForce {
 public:
  BruteForce(const PresentedModule& m, int degree) : g_(m.group()), model_(m), idx_(g_), degree_(degree) {}

  AbelianInvariants run(std::uint64_t budget) {
    const std::uint64_t c_prev = cochain_count(degree_ - 1), c_here = cochain_count(degree_);
    if (c_prev > budget || c_here > budget || c_prev + c_here > budget) {
      throw Error(ErrorCode::kBudgetExceeded, "brute force would enumerate more than " + std::to_string(budget) +
                                                  " cochains");
    }
    std::unordered_set<std::string> boundaries;
    if (degree_ == 0) {
      boundaries.insert(key(std::vector<long>(model_.dim(), 0)));
    } else {
      enumerate(degree_ - 1, [&](const std::vector<long>& phi) { boundaries.insert(key(differential(phi, degree_ - 1))); });
    }
    std::vector<std::vector<long>> cocycles;
    enumerate(degree_, [&](const std::vector<long>& phi) {
      const auto d = differential(phi, degree_);
      if (std::all_of(d.begin(), d.end(), [](long x) { return x == 0; })) cocycles.push_back(phi);
    });
    const std::uint64_t order = cocycles.size() / boundaries.size();
    // |H[p^k]| = #{z : p^k z in B} / |B| determines the group.
    std::vector<Integer> cyclic_orders;
    std::uint64_t rest = order;
    for (std::uint64_t p = 2; rest > 1; ++p) {
      if (rest % p != 0) continue;
      while (rest % p == 0) rest /= p;
      std::vector<std::uint64_t> torsion_sizes{1};
      for (std::uint64_t pk = p;; pk *= p) {
        std::uint64_t count = 0;
        for (const auto& z : cocycles)
          if (boundaries.count(key(scaled(z, static_cast<long>(pk))))) ++count;
        torsion_sizes.push_back(count / boundaries.size());
        if (torsion_sizes.back() == torsion_sizes[torsion_sizes.size() - 2]) break;
      }
      // r_k = number of cyclic factors of order >= p^k.
      std::vector<int> r;
      for (std::size_t k = 1; k < torsion_sizes.size(); ++k) {
        std::uint64_t ratio = torsion_sizes[k] / torsion_sizes[k - 1];
        int e = 0;
        while (ratio > 1) {
          ratio /= p;
          ++e;
        }
        r.push_back(e);
      }
      r.push_back(0);
      for (std::size_t k = 0; k + 1 < r.size(); ++k) {
        Integer pk = 1;
        for (std::size_t j = 0; j <= k; ++j) pk *= static_cast<unsigned long>(p);
        for (int c = 0; c < r[k] - r[k + 1]; ++c) cyclic_orders.push_back(pk);
      }
    }
    return AbelianInvariants::from_cyclic_orders(0, cyclic_orders);
  }

 private:
  std::uint64_t cochain_count(int p) const {
    if (p < 0) return 1;
    std::uint64_t count = 1;
    const std::size_t tuples = ipow(idx_.base, p);
    for (std::size_t t = 0; t < tuples; ++t) {
      if (count > (std::uint64_t{1} << 62) / std::max<std::uint64_t>(model_.size, 1)) return UINT64_MAX;
      count *= model_.size;
    }
    return count;
  }

  template <typename F>
  void enumerate(int p, F&& visit) const {
    const std::size_t len = ipow(idx_.base, p) * model_.dim();
    std::vector<long> phi(len, 0);
    while (true) {
      visit(phi);
      std::size_t k = 0;
      for (; k < len; ++k) {
        const long order = model_.orders[k % model_.dim()];
        if (++phi[k] < order) break;
        phi[k] = 0;
      }
      if (k == len) return;
    }
  }

  std::vector<long> differential(const std::vector<long>& phi, int p) const {
    const std::size_t n = model_.dim();
    const std::size_t rows = ipow(idx_.base, p + 1);
    std::vector<long> out(rows * n, 0);
    auto value = [&](const std::vector<std::size_t>& t) { return &phi[idx_.encode(t) * n]; };
    for (std::size_t t = 0; t < rows; ++t) {
      const auto tuple = idx_.decode(t, p + 1);
      long* dst = &out[t * n];
      const std::vector<std::size_t> rest(tuple.begin() + 1, tuple.end());
      const long* v = value(rest);
      const auto& a = model_.action[tuple[0]];
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) dst[r] += a[r][c] * v[c];
      for (int j = 1; j <= p; ++j) {
        const std::size_t h = g_.multiply(tuple[static_cast<std::size_t>(j - 1)], tuple[static_cast<std::size_t>(j)]);
        if (h == g_.identity()) continue;
        std::vector<std::size_t> merged;
        for (int k = 0; k < p + 1; ++k) {
          if (k == j - 1) merged.push_back(h);
          else if (k != j) merged.push_back(tuple[static_cast<std::size_t>(k)]);
        }
        const long* w = value(merged);
        for (std::size_t r = 0; r < n; ++r) dst[r] += (j % 2 == 0 ? 1 : -1) * w[r];
      }
      const std::vector<std::size_t> init(tuple.begin(), tuple.end() - 1);
      const long* w = value(init);
      for (std::size_t r = 0; r < n; ++r) dst[r] += ((p + 1) % 2 == 0 ? 1 : -1) * w[r];
      for (std::size_t r = 0; r < n; ++r) {
        dst[r] %= model_.orders[r];
        if (dst[r] < 0) dst[r] += model_.orders[r];
      }
    }
    return out;
  }

  std::vector<long> scaled(const std::vector<long>& z, long c) const {
    std::vector<long> out(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
      const long order = model_.orders[k % model_.dim()];
      out[k] = (z[k] * (c % order)) % order;
    }
    return out;
  }

  static std::string key(const std::vector<long>& v) {
    std::string s;
    for (long x : v) s.append(std::to_string(x)).push_back(',');
    return s;
  }

  const FiniteGroup& g_;
  FiniteModel model_;
  TupleIndex idx_;
  int degree_;
};

}  // namespace

AbelianInvariants finite_coeff_bruteforce(const PresentedModule& m, int degree, std::uint64_t budget) {
  if (degree < 0) throw Error(ErrorCode::kInvalidArgument, "negative degree");
  if (degree > 2) throw Error(ErrorCode::kDegreeTooLarge, "brute force is limited to degree <= 2");
  BruteForce bf(m, degree);
  return bf.run(budget);
}

// ---------------------------------------------------------------------------
// Long exact sequence

std::string LesCheck::to_string() const {
  std::ostringstream os;
  os << "H^" << degree << "(K) = " << hk.to_string() << "; coker = " << coker.to_string()
     << ", ker = " << ker.to_string() << (ok ? " (consistent)" : " (INCONSISTENT)");
  return os.str();
}

LesCheck hyper_les_check(const ModuleMap& f, int degree, int bound) {
  LesCheck out;
  out.degree = degree;
  out.hk = hypercohomology(two_term(f), degree, bound);
  const auto induced = [&](int p) {
    return induced_map_invariants(group_cohomology_subquotient(f.source(), p, bound),
                                  group_cohomology_subquotient(f.target(), p, bound), cochain_map(f, p));
  };
  out.ker = induced(degree).kernel;
  out.coker = degree >= 1 ? induced(degree - 1).cokernel : AbelianInvariants::trivial();
  const bool ranks = out.hk.free_rank() == out.ker.free_rank() + out.coker.free_rank();
  const Integer tc = out.coker.torsion_order(), th = out.hk.torsion_order(), tk = out.ker.torsion_order();
  if (out.hk.is_finite() && out.ker.is_finite() && out.coker.is_finite()) {
    out.ok = ranks && th == tc * tk;
  } else {
    // 0 -> tors(coker) -> tors(H) -> tors(ker) is exact.
    out.ok = ranks && th % tc == 0 && (tc * tk) % th == 0;
  }
  return out;
}

}  // namespace upic
