#pragma once

// Exact linear algebra over a field policy (see field.hpp). Matrices are
// stored as sparse rows; rank() picks fraction-free dense elimination or
// sparse elimination by density. Pivoting is always "first nonzero", so all
// outputs are reproducible bit for bit.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "localh/field.hpp"

namespace localh {

template <class E>
using SparseVec = std::vector<std::pair<std::size_t, E>>;

/// Below this fraction of nonzero entries a matrix is treated as sparse.
inline constexpr double kSparseDensityThreshold = 1.0 / 8.0;

class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

template <class F>
SparseVec<typename F::Element> to_sparse(const F& field,
                                         const std::vector<typename F::Element>& dense) {
  SparseVec<typename F::Element> out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!field.is_zero(dense[i])) out.emplace_back(i, dense[i]);
  return out;
}

template <class F>
std::vector<typename F::Element> to_dense(const F& field,
                                          const SparseVec<typename F::Element>& v,
                                          std::size_t n) {
  std::vector<typename F::Element> out(n, field.zero());
  for (const auto& [i, x] : v) out.at(i) = x;
  return out;
}

/// a + c*b for sorted sparse vectors.
template <class F>
SparseVec<typename F::Element> axpy(const F& field, const SparseVec<typename F::Element>& a,
                                    const typename F::Element& c,
                                    const SparseVec<typename F::Element>& b) {
  SparseVec<typename F::Element> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      auto v = field.mul(c, b[j].second);
      if (!field.is_zero(v)) out.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      auto v = field.add(a[i].second, field.mul(c, b[j].second));
      if (!field.is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class F>
SparseVec<typename F::Element> scale(const F& field, const SparseVec<typename F::Element>& a,
                                     const typename F::Element& c) {
  SparseVec<typename F::Element> out;
  if (field.is_zero(c)) return out;
  out.reserve(a.size());
  for (const auto& [i, x] : a) out.emplace_back(i, field.mul(c, x));
  return out;
}

template <class F>
bool sparse_equal(const F& field, const SparseVec<typename F::Element>& a,
                  const SparseVec<typename F::Element>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !field.equal(a[i].second, b[i].second)) return false;
  return true;
}

template <class F>
class Matrix {
public:
  using Element = typename F::Element;
  using Row = SparseVec<Element>;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), cols_(cols), rows_(rows) {}

  static Matrix from_rows(F field, std::size_t cols, std::vector<Row> rows) {
    Matrix m(std::move(field), rows.size(), cols);
    for (const auto& r : rows)
      for (const auto& e : r)
        if (e.first >= cols) throw DimensionMismatch("row entry outside column range");
    m.rows_ = std::move(rows);
    return m;
  }

  static Matrix from_ints(F field, const std::vector<std::vector<std::int64_t>>& entries) {
    const std::size_t cols = entries.empty() ? 0 : entries.front().size();
    Matrix m(field, entries.size(), cols);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].size() != cols) throw DimensionMismatch("ragged integer matrix");
      for (std::size_t j = 0; j < cols; ++j)
        if (entries[i][j] != 0) m.rows_[i].emplace_back(j, field.from_int(entries[i][j]));
    }
    return m;
  }

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(i, field.one());
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const Row& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<Row>& row_data() const { return rows_; }

  Element at(std::size_t i, std::size_t j) const {
    const auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) return it->second;
    return field_.zero();
  }

  void set(std::size_t i, std::size_t j, Element v) {
    if (j >= cols_) throw DimensionMismatch("column index out of range");
    auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) {
      if (field_.is_zero(v))
        r.erase(it);
      else
        it->second = std::move(v);
    } else if (!field_.is_zero(v)) {
      r.insert(it, {j, std::move(v)});
    }
  }

  void append_row(Row r) {
    for (const auto& e : r)
      if (e.first >= cols_) throw DimensionMismatch("row entry outside column range");
    rows_.push_back(std::move(r));
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  double density() const {
    if (rows() == 0 || cols_ == 0) return 0.0;
    return static_cast<double>(nonzeros()) / (static_cast<double>(rows()) * static_cast<double>(cols_));
  }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, x] : rows_[i]) t.rows_[j].emplace_back(i, x);
    return t;
  }

  std::vector<Element> apply(const std::vector<Element>& x) const {
    if (x.size() != cols_) throw DimensionMismatch("apply: vector length != column count");
    std::vector<Element> y(rows(), field_.zero());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, a] : rows_[i]) y[i] = field_.add(y[i], field_.mul(a, x[j]));
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
    const F& f = a.field_;
    Matrix c(f, a.rows(), b.cols_);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Row acc;
      for (const auto& [k, x] : a.rows_[i]) acc = axpy(f, acc, x, b.rows_[k]);
      c.rows_[i] = std::move(acc);
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (!sparse_equal(a.field_, a.rows_[i], b.rows_[i])) return false;
    return true;
  }

private:
  F field_;
  std::size_t cols_;
  std::vector<Row> rows_;
};

/// Incremental row-echelon basis of a subspace of k^n.
///
/// Each stored row has leading coefficient 1 at its pivot and is zero at
/// every pivot inserted before it; reducing left to right by pivot therefore
/// yields the canonical remainder (zero at all pivot columns) of a vector
/// modulo the subspace. With tracking on, every row remembers which linear
/// combination of inserted vectors produced it.
template <class F>
class RowEchelon {
public:
  using Element = typename F::Element;
  using Vec = SparseVec<Element>;

  RowEchelon(F field, std::size_t ambient, bool track = false)
      : field_(std::move(field)), n_(ambient), track_(track) {}

  std::size_t ambient_dim() const { return n_; }
  std::size_t rank() const { return rows_.size(); }
  const F& field() const { return field_; }

  /// Canonical remainder of v modulo the span. When tracking, `combo`
  /// receives coefficients c with v - remainder = sum c_k inserted_k.
  Vec reduce(const Vec& v, Vec* combo = nullptr) const {
    std::vector<Element> work = to_dense(field_, v, n_);
    Vec c;
    for (const auto& [p, entry] : rows_) {
      if (field_.is_zero(work[p])) continue;
      const Element coef = work[p];
      for (const auto& [j, x] : entry.row) work[j] = field_.sub(work[j], field_.mul(coef, x));
      if (track_ && combo != nullptr) c = axpy(field_, c, coef, entry.combo);
    }
    if (combo != nullptr) *combo = std::move(c);
    return to_sparse(field_, work);
  }

  bool contains(const Vec& v) const { return reduce(v).empty(); }

  /// Adds v; returns true when v was independent of the current span.
  bool insert(const Vec& v) {
    Vec combo;
    Vec r = reduce(v, track_ ? &combo : nullptr);
    const std::size_t id = inserted_++;
    if (r.empty()) return false;
    const Element lead_inv = field_.inv(r.front().second);
    Entry e;
    e.row = scale(field_, r, lead_inv);
    if (track_) {
      // row = (v - sum combo_k inserted_k) / lead
      Vec own{{id, field_.one()}};
      own = axpy(field_, own, field_.neg(field_.one()), combo);
      e.combo = scale(field_, own, lead_inv);
    }
    rows_.emplace(r.front().first, std::move(e));
    return true;
  }

  std::size_t inserted() const { return inserted_; }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    out.reserve(rows_.size());
    for (const auto& kv : rows_) out.push_back(kv.first);
    return out;
  }

  std::vector<Vec> basis() const {
    std::vector<Vec> out;
    out.reserve(rows_.size());
    for (const auto& kv : rows_) out.push_back(kv.second.row);
    return out;
  }

private:
  struct Entry {
    Vec row;
    Vec combo;
  };

  F field_;
  std::size_t n_;
  bool track_;
  std::size_t inserted_ = 0;
  std::map<std::size_t, Entry> rows_;
};

namespace detail {

// Rank-revealing fraction-free elimination. Every intermediate entry is a
// minor of the input, so the division by the previous pivot is exact.
inline std::size_t bareiss_rank(std::vector<std::vector<BigInt>> a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const BigInt& p = a[rank][col];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = p * a[i][j] - a[i][col] * a[rank][j];
        a[i][j] /= prev;
      }
      a[i][col] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

template <class F>
std::size_t dense_plain_rank(const Matrix<F>& m) {
  const F& f = m.field();
  std::vector<std::vector<typename F::Element>> a;
  a.reserve(m.rows());
  for (const auto& r : m.row_data()) a.push_back(to_dense(f, r, m.cols()));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < a.size(); ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && f.is_zero(a[piv][col])) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const auto inv = f.inv(a[rank][col]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (f.is_zero(a[i][col])) continue;
      const auto c = f.mul(a[i][col], inv);
      for (std::size_t j = col; j < m.cols(); ++j) a[i][j] = f.sub(a[i][j], f.mul(c, a[rank][j]));
    }
    ++rank;
  }
  return rank;
}

/// Reduced row echelon form, in place; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, std::vector<std::vector<typename F::Element>>& a,
                              std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < a.size(); ++col) {
    std::size_t piv = r;
    while (piv < a.size() && f.is_zero(a[piv][col])) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    const auto inv = f.inv(a[r][col]);
    for (std::size_t j = col; j < cols; ++j) a[r][j] = f.mul(a[r][j], inv);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || f.is_zero(a[i][col])) continue;
      const auto c = a[i][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] = f.sub(a[i][j], f.mul(c, a[r][j]));
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

template <class F>
std::vector<std::vector<typename F::Element>> dense_rows(const Matrix<F>& m) {
  std::vector<std::vector<typename F::Element>> a;
  a.reserve(m.rows());
  for (const auto& r : m.row_data()) a.push_back(to_dense(m.field(), r, m.cols()));
  return a;
}

}  // namespace detail

/// Rank via sparse elimination (row echelon). Valid over any field.
template <class F>
std::size_t sparse_rank(const Matrix<F>& m) {
  RowEchelon<F> ech(m.field(), m.cols());
  for (const auto& r : m.row_data()) ech.insert(r);
  return ech.rank();
}

/// Rank via fraction-free elimination (rationals) or plain dense
/// elimination (prime fields), ignoring the density heuristic.
template <class F>
std::size_t dense_rank(const Matrix<F>& m) {
  if constexpr (F::is_rational) {
    std::vector<std::vector<BigInt>> a;
    a.reserve(m.rows());
    for (const auto& r : m.row_data()) {
      BigInt l = 1;
      for (const auto& e : r) l = boost::multiprecision::lcm(l, BigInt(denominator(e.second)));
      std::vector<BigInt> row(m.cols(), BigInt(0));
      for (const auto& [j, x] : r) row[j] = BigInt(numerator(x)) * (l / BigInt(denominator(x)));
      a.push_back(std::move(row));
    }
    return detail::bareiss_rank(std::move(a), m.cols());
  } else {
    return detail::dense_plain_rank(m);
  }
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  if (m.density() < kSparseDensityThreshold) return sparse_rank(m);
  return dense_rank(m);
}

/// Basis of {x : M x = 0}, one vector per row of the result.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  const F& f = m.field();
  auto a = detail::dense_rows(m);
  const auto pivots = detail::rref(f, a, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix<F> out(f, 0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::Element> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(a[r][free]);
    out.append_row(to_sparse(f, v));
  }
  return out;
}

/// Basis of the column space of M, one vector per row of the result.
template <class F>
Matrix<F> image_basis(const Matrix<F>& m) {
  RowEchelon<F> ech(m.field(), m.rows());
  const Matrix<F> t = m.transpose();
  for (const auto& r : t.row_data()) ech.insert(r);
  return Matrix<F>::from_rows(m.field(), m.rows(), ech.basis());
}

/// Some x with M x = b, or nullopt when the system is inconsistent.
template <class F>
std::optional<std::vector<typename F::Element>> solve(const Matrix<F>& m,
                                                      const std::vector<typename F::Element>& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve: rhs length != row count");
  const F& f = m.field();
  auto a = detail::dense_rows(m);
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  const auto pivots = detail::rref(f, a, m.cols() + 1);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<typename F::Element> x(m.cols(), f.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][m.cols()];
  return x;
}

/// Basis (as rows) of rowspace(A) ∩ rowspace(B).
template <class F>
Matrix<F> intersect_rowspaces(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("intersect_rowspaces: column counts differ");
  const F& f = a.field();
  // (x, y) with x A = y B  <=>  [A^T | -B^T] (x, y)^T = 0
  Matrix<F> stacked(f, a.cols(), a.rows() + b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& [j, v] : a.row(i)) stacked.set(j, i, v);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (const auto& [j, v] : b.row(i)) stacked.set(j, a.rows() + i, f.neg(v));
  const Matrix<F> ker = kernel_basis(stacked);
  RowEchelon<F> ech(f, a.cols());
  for (const auto& k : ker.row_data()) {
    SparseVec<typename F::Element> v;
    for (const auto& [idx, c] : k)
      if (idx < a.rows()) v = axpy(f, v, c, a.row(idx));
    ech.insert(v);
  }
  return Matrix<F>::from_rows(f, a.cols(), ech.basis());
}

/// A quotient W' / W presented by representatives: relations span W, and
/// representatives are kept only while independent modulo W and each other.
/// coordinates() expresses a vector of span(reps) + W in the representative
/// basis.
template <class F>
class QuotientSpace {
public:
  using Element = typename F::Element;
  using Vec = SparseVec<Element>;

  QuotientSpace(F field, std::size_t ambient)
      : field_(field), relations_(field, ambient), reps_(field, ambient, true) {}

  void add_relation(const Vec& v) {
    if (reps_.inserted() != 0)
      throw std::logic_error("QuotientSpace: relations must precede representatives");
    relations_.insert(v);
  }

  bool add_representative(const Vec& v) {
    if (!reps_.insert(relations_.reduce(v))) {
      rejected_.push_back(reps_.inserted() - 1);
      return false;
    }
    accepted_.push_back(reps_.inserted() - 1);
    return true;
  }

  std::size_t relation_dim() const { return relations_.rank(); }
  std::size_t dim() const { return reps_.rank(); }
  bool is_relation(const Vec& v) const { return relations_.contains(v); }

  std::optional<std::vector<Element>> coordinates(const Vec& v) const {
    Vec combo;
    const Vec rem = reps_.reduce(relations_.reduce(v), &combo);
    if (!rem.empty()) return std::nullopt;
    // combo is indexed by insertion id; accepted ids map to coordinates
    std::vector<Element> out(accepted_.size(), field_.zero());
    for (const auto& [id, c] : combo) {
      auto it = std::lower_bound(accepted_.begin(), accepted_.end(), id);
      if (it == accepted_.end() || *it != id)
        throw std::logic_error("QuotientSpace: rejected representative in combination");
      out[static_cast<std::size_t>(it - accepted_.begin())] = c;
    }
    return out;
  }

private:
  F field_;
  RowEchelon<F> relations_;
  RowEchelon<F> reps_;
  std::vector<std::size_t> accepted_;
  std::vector<std::size_t> rejected_;
};

}  // namespace localh
