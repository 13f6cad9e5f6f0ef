#include "linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "error.hpp"

namespace upic {

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

}  // namespace

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kInvalidArgument, "matrix entry count does not match its shape");
  }
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::kInvalidArgument, "ragged matrix literal");
    std::size_t j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::kInvalidArgument, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::column_vector(const IntVector& v) { return IntMatrix(v.size(), 1, v); }

IntMatrix IntMatrix::scalar(std::size_t n, const Integer& c) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::select_columns(std::size_t first, std::size_t count) const {
  IntMatrix m(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) m(r, c) = (*this)(r, first + c);
  return m;
}

IntMatrix IntMatrix::select_rows(std::size_t first, std::size_t count) const {
  IntMatrix m(count, cols_);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(first + r, c);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

IntMatrix IntMatrix::hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw Error(ErrorCode::kInvalidArgument, "hcat: row count mismatch");
  IntMatrix m(a.rows_, a.cols_ + b.cols_);
  m.set_block(0, 0, a);
  m.set_block(0, a.cols_, b);
  return m;
}

IntMatrix IntMatrix::vcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.cols_) throw Error(ErrorCode::kInvalidArgument, "vcat: column count mismatch");
  IntMatrix m(a.rows_ + b.rows_, a.cols_);
  m.set_block(0, 0, a);
  m.set_block(a.rows_, 0, b);
  return m;
}

IntMatrix IntMatrix::block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
  m.set_block(0, 0, a);
  m.set_block(a.rows_, a.cols_, b);
  return m;
}

void IntMatrix::set_block(std::size_t r, std::size_t c, const IntMatrix& block) {
  if (r + block.rows_ > rows_ || c + block.cols_ > cols_) {
    throw Error(ErrorCode::kInvalidArgument, "set_block: block out of range");
  }
  for (std::size_t i = 0; i < block.rows_; ++i)
    for (std::size_t j = 0; j < block.cols_; ++j) (*this)(r + i, c + j) = block(i, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::kInvalidArgument, "matrix product shape mismatch");
  IntMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Integer& y = b(k, j);
        if (sgn(y) != 0) mpz_addmul(m(i, j).get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      }
    }
  }
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorCode::kInvalidArgument, "matrix sum shape mismatch");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorCode::kInvalidArgument, "matrix difference shape mismatch");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix m = a;
  for (auto& x : m.data_) x = -x;
  return m;
}

IntMatrix operator*(const Integer& c, const IntMatrix& a) {
  IntMatrix m = a;
  for (auto& x : m.data_) x *= c;
  return m;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != v.size()) throw Error(ErrorCode::kInvalidArgument, "matrix-vector shape mismatch");
  IntVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (sgn(v[k]) != 0 && sgn(a(i, k)) != 0)
        mpz_addmul(out[i].get_mpz_t(), a(i, k).get_mpz_t(), v[k].get_mpz_t());
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Elimination helpers

namespace {

// Quotient rounded to the nearest integer, so |a - q b| <= |b| / 2.
Integer nearest_quotient(const Integer& a, const Integer& b) {
  Integer q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Integer twice = 2 * abs(r);
  if (twice > abs(b)) {
    if ((sgn(r) > 0) == (sgn(b) > 0)) q += 1;
    else q -= 1;
  }
  return q;
}

// dst -= q * src over [from, size).
void axpy_neg(IntVector& dst, const Integer& q, const IntVector& src, std::size_t from = 0) {
  for (std::size_t k = from; k < src.size(); ++k)
    if (sgn(src[k]) != 0) mpz_submul(dst[k].get_mpz_t(), q.get_mpz_t(), src[k].get_mpz_t());
}

void negate(IntVector& v) {
  for (auto& x : v) mpz_neg(x.get_mpz_t(), x.get_mpz_t());
}

// Row-major working matrix with row/column operations mirrored onto the
// optional transforms of a Smith decomposition.
class SmithWork {
 public:
  SmithWork(const IntMatrix& a, const SmithOptions& opt)
      : m_(a.rows()), n_(a.cols()), opt_(opt), d_(m_) {
    for (std::size_t i = 0; i < m_; ++i) d_[i] = a.row(i);
    if (opt_.track_u) {
      u_ = identity_rows(m_);
      if (opt_.track_inverses) ui_ = identity_rows(m_);
    }
    if (opt_.track_v) {
      v_ = identity_rows(n_);
      if (opt_.track_inverses) vi_ = identity_rows(n_);
    }
  }

  void run() {
    const std::size_t limit = std::min(m_, n_);
    for (std::size_t s = 0; s < limit; ++s) {
      std::size_t pr = 0, pc = 0;
      if (!min_entry(s, pr, pc)) break;
      swap_rows(s, pr);
      swap_cols(s, pc);
      reduce_pivot(s);
      if (sgn(d_[s][s]) < 0) negate_row(s);
      ++rank_;
    }
  }

  SmithDecomposition result() const {
    SmithDecomposition out;
    out.D = IntMatrix(m_, n_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out.D(i, j) = d_[i][j];
    if (opt_.track_u) {
      out.U = to_matrix(u_, m_);
      if (opt_.track_inverses) out.U_inverse = to_matrix(ui_, m_);
    }
    if (opt_.track_v) {
      out.V = from_columns(v_, n_);
      if (opt_.track_inverses) out.V_inverse = to_matrix(vi_, n_);
    }
    out.rank = rank_;
    return out;
  }

  std::vector<Integer> diagonal() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < rank_; ++i) out.push_back(d_[i][i]);
    return out;
  }

 private:
  static std::vector<IntVector> identity_rows(std::size_t n) {
    std::vector<IntVector> rows(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
    return rows;
  }
  static IntMatrix to_matrix(const std::vector<IntVector>& rows, std::size_t n) {
    IntMatrix m(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    return m;
  }
  // v_ / vi_ hold V by columns and V^{-1} by rows respectively; both are
  // stored as vectors of length n so column operations stay contiguous.
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t n) {
    IntMatrix m(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    return m;
  }

  // Minimal |entry| in the trailing block, ties broken by (row, col).
  bool min_entry(std::size_t s, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    const Integer* best = nullptr;
    for (std::size_t i = s; i < m_; ++i) {
      for (std::size_t j = s; j < n_; ++j) {
        const Integer& x = d_[i][j];
        if (sgn(x) == 0) continue;
        if (!found || cmpabs(x, *best) < 0) {
          found = true;
          best = &x;
          pr = i;
          pc = j;
        }
      }
    }
    return found;
  }

  void reduce_pivot(std::size_t s) {
    while (true) {
      const Integer pivot = d_[s][s];
      for (std::size_t i = s + 1; i < m_; ++i) {
        if (sgn(d_[i][s]) == 0) continue;
        add_row(i, s, -nearest_quotient(d_[i][s], pivot));
      }
      for (std::size_t j = s + 1; j < n_; ++j) {
        if (sgn(d_[s][j]) == 0) continue;
        add_col(j, s, -nearest_quotient(d_[s][j], pivot));
      }
      // Any remainder is smaller than the pivot and becomes the new pivot.
      const Integer* best = nullptr;
      std::size_t best_i = s, best_j = s;
      for (std::size_t i = s + 1; i < m_; ++i)
        if (sgn(d_[i][s]) != 0 && (!best || cmpabs(d_[i][s], *best) < 0)) {
          best = &d_[i][s];
          best_i = i;
          best_j = s;
        }
      for (std::size_t j = s + 1; j < n_; ++j)
        if (sgn(d_[s][j]) != 0 && (!best || cmpabs(d_[s][j], *best) < 0)) {
          best = &d_[s][j];
          best_i = s;
          best_j = j;
        }
      if (best) {
        if (best_i != s) swap_rows(s, best_i);
        else swap_cols(s, best_j);
        continue;
      }
      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad_row = m_;
      for (std::size_t i = s + 1; i < m_ && bad_row == m_; ++i)
        for (std::size_t j = s + 1; j < n_; ++j)
          if (!mpz_divisible_p(d_[i][j].get_mpz_t(), d_[s][s].get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == m_) return;
      add_row(s, bad_row, Integer(1));
    }
  }

  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    if (sgn(c) == 0) return;
    const Integer neg = -c;
    axpy_neg(d_[i], neg, d_[j]);
    if (opt_.track_u) {
      axpy_neg(u_[i], neg, u_[j]);
      if (opt_.track_inverses) {
        // U^{-1}: col_j -= c * col_i
        for (auto& row : ui_)
          if (sgn(row[i]) != 0) mpz_submul(row[j].get_mpz_t(), c.get_mpz_t(), row[i].get_mpz_t());
      }
    }
  }

  // col_i += c * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& c) {
    if (sgn(c) == 0) return;
    for (auto& row : d_)
      if (sgn(row[j]) != 0) mpz_addmul(row[i].get_mpz_t(), c.get_mpz_t(), row[j].get_mpz_t());
    if (opt_.track_v) {
      const Integer neg = -c;
      axpy_neg(v_[i], neg, v_[j]);
      // V^{-1}: row_j -= c * row_i
      if (opt_.track_inverses) axpy_neg(vi_[j], c, vi_[i]);
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(d_[a], d_[b]);
    if (opt_.track_u) {
      std::swap(u_[a], u_[b]);
      if (opt_.track_inverses)
        for (auto& row : ui_) std::swap(row[a], row[b]);
    }
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : d_) std::swap(row[a], row[b]);
    if (opt_.track_v) {
      std::swap(v_[a], v_[b]);
      if (opt_.track_inverses) std::swap(vi_[a], vi_[b]);
    }
  }

  void negate_row(std::size_t i) {
    negate(d_[i]);
    if (opt_.track_u) {
      negate(u_[i]);
      if (opt_.track_inverses)
        for (auto& row : ui_) mpz_neg(row[i].get_mpz_t(), row[i].get_mpz_t());
    }
  }

  std::size_t m_, n_;
  SmithOptions opt_;
  std::vector<IntVector> d_;
  std::vector<IntVector> u_, ui_;  // rows
  std::vector<IntVector> v_;       // columns of V
  std::vector<IntVector> vi_;      // rows of V^{-1}
  std::size_t rank_ = 0;
};

}  // namespace

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& a, SmithOptions options) {
  if (!options.track_u && !options.track_v) options.track_inverses = false;
  SmithWork work(a, options);
  work.run();
  return work.result();
}

std::vector<Integer> smith_diagonal(const IntMatrix& a) {
  SmithWork work(a, SmithOptions{false, false, false});
  work.run();
  return work.diagonal();
}

// ---------------------------------------------------------------------------
// Column echelon / Hermite

namespace {

struct EchelonWork {
  std::vector<IntVector> cols;   // working columns of A
  std::vector<IntVector> tcols;  // columns of T (possibly truncated)
  bool track = false;
  std::vector<std::size_t> pivots;

  void swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(cols[a], cols[b]);
    if (track) std::swap(tcols[a], tcols[b]);
  }
  // col_j -= q * col_r, using that both vanish above row `from`.
  void sub(std::size_t j, std::size_t r, const Integer& q, std::size_t from) {
    axpy_neg(cols[j], q, cols[r], from);
    if (track) axpy_neg(tcols[j], q, tcols[r]);
  }
  void neg(std::size_t j) {
    negate(cols[j]);
    if (track) negate(tcols[j]);
  }

  void run(std::size_t m) {
    const std::size_t n = cols.size();
    std::size_t r = 0;
    for (std::size_t i = 0; i < m && r < n; ++i) {
      while (true) {
        std::size_t jmin = n;
        for (std::size_t j = r; j < n; ++j) {
          if (sgn(cols[j][i]) == 0) continue;
          if (jmin == n || cmpabs(cols[j][i], cols[jmin][i]) < 0) jmin = j;
        }
        if (jmin == n) break;
        swap(r, jmin);
        bool residue = false;
        for (std::size_t j = r + 1; j < n; ++j) {
          if (sgn(cols[j][i]) == 0) continue;
          sub(j, r, nearest_quotient(cols[j][i], cols[r][i]), i);
          if (sgn(cols[j][i]) != 0) residue = true;
        }
        if (residue) continue;
        if (sgn(cols[r][i]) < 0) neg(r);
        pivots.push_back(i);
        ++r;
        break;
      }
    }
  }
};

ColumnEchelon finish(EchelonWork& w, std::size_t m, std::size_t trows) {
  ColumnEchelon out;
  const std::size_t n = w.cols.size();
  out.form = IntMatrix(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) out.form(i, j) = w.cols[j][i];
  if (w.track) {
    out.transform = IntMatrix(trows, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < trows; ++i) out.transform(i, j) = w.tcols[j][i];
  }
  out.pivot_rows = w.pivots;
  out.rank = w.pivots.size();
  return out;
}

EchelonWork start(const IntMatrix& a, bool track, std::size_t trows) {
  EchelonWork w;
  const std::size_t n = a.cols();
  w.cols.resize(n);
  for (std::size_t j = 0; j < n; ++j) w.cols[j] = a.column(j);
  w.track = track;
  if (track) {
    w.tcols.assign(n, IntVector(trows));
    for (std::size_t j = 0; j < n && j < trows; ++j) w.tcols[j][j] = 1;
  }
  return w;
}

}  // namespace

ColumnEchelon column_echelon(const IntMatrix& a, bool track_transform,
                             std::optional<std::size_t> transform_rows) {
  const std::size_t trows = transform_rows.value_or(a.cols());
  if (trows > a.cols()) throw Error(ErrorCode::kInvalidArgument, "transform_rows exceeds column count");
  EchelonWork w = start(a, track_transform, trows);
  w.run(a.rows());
  return finish(w, a.rows(), trows);
}

ColumnEchelon hermite_normal_form(const IntMatrix& a) {
  EchelonWork w = start(a, true, a.cols());
  w.run(a.rows());
  for (std::size_t k = 0; k < w.pivots.size(); ++k) {
    const std::size_t p = w.pivots[k];
    for (std::size_t l = 0; l < k; ++l) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), w.cols[l][p].get_mpz_t(), w.cols[k][p].get_mpz_t());
      if (sgn(q) != 0) w.sub(l, k, q, p);
    }
  }
  return finish(w, a.rows(), a.cols());
}

IntMatrix ColumnEchelon::kernel() const {
  return transform.select_columns(rank, transform.cols() - rank);
}

IntMatrix ColumnEchelon::image() const { return form.select_columns(0, rank); }

std::optional<IntVector> ColumnEchelon::solve_form(const IntVector& b) const {
  if (b.size() != form.rows()) throw Error(ErrorCode::kInvalidArgument, "solve: length mismatch");
  IntVector residual = b;
  IntVector y(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const std::size_t p = pivot_rows[k];
    // Rows strictly between pivots are untouched by later columns.
    for (std::size_t i = (k == 0 ? 0 : pivot_rows[k - 1] + 1); i < p; ++i)
      if (sgn(residual[i]) != 0) return std::nullopt;
    if (!mpz_divisible_p(residual[p].get_mpz_t(), form(p, k).get_mpz_t())) return std::nullopt;
    mpz_divexact(y[k].get_mpz_t(), residual[p].get_mpz_t(), form(p, k).get_mpz_t());
    if (sgn(y[k]) == 0) continue;
    for (std::size_t i = p; i < form.rows(); ++i)
      if (sgn(form(i, k)) != 0) mpz_submul(residual[i].get_mpz_t(), y[k].get_mpz_t(), form(i, k).get_mpz_t());
  }
  for (const auto& x : residual)
    if (sgn(x) != 0) return std::nullopt;
  return y;
}

std::size_t rank(const IntMatrix& a) { return column_echelon(a, false).rank; }

IntMatrix kernel_basis(const IntMatrix& a) { return column_echelon(a, true).kernel(); }

IntMatrix lattice_basis(const IntMatrix& a) { return column_echelon(a, false).image(); }

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::kInvalidArgument, "solve_integer: length mismatch");
  const ColumnEchelon e = column_echelon(a, true);
  auto y = e.solve_form(b);
  if (!y) return std::nullopt;
  IntVector x(a.cols());
  for (std::size_t k = 0; k < e.rank; ++k)
    for (std::size_t i = 0; i < a.cols(); ++i)
      if (sgn(e.transform(i, k)) != 0) mpz_addmul(x[i].get_mpz_t(), e.transform(i, k).get_mpz_t(), (*y)[k].get_mpz_t());
  return x;
}

std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b) {
  if (b.rows() != a.rows()) throw Error(ErrorCode::kInvalidArgument, "solve_integer: row mismatch");
  const ColumnEchelon e = column_echelon(a, true);
  IntMatrix x(a.cols(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    auto y = e.solve_form(b.column(c));
    if (!y) return std::nullopt;
    for (std::size_t k = 0; k < e.rank; ++k)
      for (std::size_t i = 0; i < a.cols(); ++i)
        if (sgn(e.transform(i, k)) != 0) x(i, c) += e.transform(i, k) * (*y)[k];
  }
  return x;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::kInvalidArgument, "inverse of non-square matrix");
  const SmithDecomposition s = smith_normal_form(a);
  if (!s.D.is_identity()) throw Error(ErrorCode::kInvalidArgument, "matrix is not unimodular");
  return s.V * s.U;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::kInvalidArgument, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(m(r, k)) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(r, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// AbelianInvariants

AbelianInvariants AbelianInvariants::from_cyclic_orders(std::size_t free_rank,
                                                        const std::vector<Integer>& orders) {
  std::vector<Integer> finite;
  for (const auto& o : orders) {
    if (sgn(o) == 0) ++free_rank;
    else if (abs(o) > 1) finite.push_back(abs(o));
  }
  AbelianInvariants out;
  out.free_rank_ = free_rank;
  for (auto& d : smith_diagonal(IntMatrix::diagonal(finite)))
    if (d > 1) out.torsion_.push_back(d);
  return out;
}

AbelianInvariants AbelianInvariants::free(std::size_t rank) {
  AbelianInvariants out;
  out.free_rank_ = rank;
  return out;
}

AbelianInvariants AbelianInvariants::cyclic(const Integer& n) { return from_cyclic_orders(0, {n}); }

Integer AbelianInvariants::torsion_order() const {
  Integer p = 1;
  for (const auto& d : torsion_) p *= d;
  return p;
}

std::string AbelianInvariants::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  if (free_rank_ == 1) out = "Z";
  else if (free_rank_ > 1) out = "Z^" + std::to_string(free_rank_);
  for (const auto& d : torsion_) {
    if (!out.empty()) out += " x ";
    out += "Z/" + d.get_str();
  }
  return out;
}

std::optional<AbelianInvariants> AbelianInvariants::parse(const std::string& text) {
  if (text == "0") return trivial();
  std::size_t free = 0;
  std::vector<Integer> orders;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(" x ", pos);
    const std::string part = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (part == "Z") {
      ++free;
    } else if (part.rfind("Z^", 0) == 0 && part.size() > 2) {
      const std::string digits = part.substr(2);
      if (digits.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
      free += std::stoul(digits);
    } else if (part.rfind("Z/", 0) == 0 && part.size() > 2) {
      const std::string digits = part.substr(2);
      if (digits.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
      orders.emplace_back(digits);
    } else {
      return std::nullopt;
    }
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return from_cyclic_orders(free, orders);
}

AbelianInvariants cokernel_invariants(const IntMatrix& a) {
  const auto diag = smith_diagonal(a);
  std::vector<Integer> torsion;
  for (const auto& d : diag)
    if (d > 1) torsion.push_back(d);
  return AbelianInvariants::from_cyclic_orders(a.rows() - diag.size(), torsion);
}

// ---------------------------------------------------------------------------
// Subquotients

SubquotientPresentation present_subquotient(const Subquotient& s) {
  if (s.cycles.rows() != s.ambient_rank || s.boundaries.rows() != s.ambient_rank) {
    throw Error(ErrorCode::kInvalidArgument, "subquotient: ambient rank mismatch");
  }
  SubquotientPresentation p;
  p.basis = lattice_basis(s.cycles);
  const std::size_t k = p.basis.cols();
  const ColumnEchelon e = column_echelon(p.basis, true);
  p.relations = IntMatrix(k, s.boundaries.cols());
  for (std::size_t c = 0; c < s.boundaries.cols(); ++c) {
    auto y = e.solve_form(s.boundaries.column(c));
    if (!y) {
      throw Error(ErrorCode::kBoundaryNotInCycles,
                  "boundary column " + std::to_string(c) + " is not in the cycle lattice");
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t t = 0; t < k; ++t)
        if (sgn(e.transform(i, t)) != 0) p.relations(i, c) += e.transform(i, t) * (*y)[t];
  }
  return p;
}

AbelianInvariants subquotient_invariants(const Subquotient& s) {
  return cokernel_invariants(present_subquotient(s).relations);
}

CanonicalGenerators canonical_generators(const Subquotient& s) {
  const SubquotientPresentation p = present_subquotient(s);
  const std::size_t k = p.basis.cols();
  const SmithDecomposition snf = smith_normal_form(p.relations, SmithOptions{true, false, true});
  CanonicalGenerators out;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < k; ++i) {
    Integer order = i < snf.rank ? snf.D(i, i) : Integer(0);
    if (order == 1) continue;
    chosen.push_back(i);
    out.orders.push_back(order);
  }
  out.lifts = IntMatrix(s.ambient_rank, chosen.size());
  for (std::size_t c = 0; c < chosen.size(); ++c) {
    IntVector coords = snf.U_inverse.column(chosen[c]);
    IntVector lift = p.basis * coords;
    for (std::size_t r = 0; r < s.ambient_rank; ++r) out.lifts(r, c) = lift[r];
  }
  return out;
}

InducedMapInvariants induced_map_invariants(const Subquotient& source, const Subquotient& target,
                                            const IntMatrix& map) {
  if (map.cols() != source.ambient_rank || map.rows() != target.ambient_rank) {
    throw Error(ErrorCode::kInvalidArgument, "induced map: shape mismatch");
  }
  const SubquotientPresentation p1 = present_subquotient(source);
  const SubquotientPresentation p2 = present_subquotient(target);
  auto phi = solve_integer(p2.basis, map * p1.basis);
  if (!phi) throw Error(ErrorCode::kInvalidArgument, "induced map does not send cycles to cycles");
  InducedMapInvariants out;
  out.cokernel = cokernel_invariants(IntMatrix::hcat(p2.relations, *phi));
  const std::size_t k1 = p1.basis.cols();
  const ColumnEchelon e = column_echelon(IntMatrix::hcat(*phi, p2.relations), true, k1);
  Subquotient ker;
  ker.ambient_rank = k1;
  ker.cycles = e.kernel();
  ker.boundaries = p1.relations;
  out.kernel = subquotient_invariants(ker);
  return out;
}

}  // namespace upic
