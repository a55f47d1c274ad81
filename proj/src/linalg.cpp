#include "nestquot/linalg.hpp"

#include <limits>

#include "nestquot/errors.hpp"

namespace nestquot {

Echelon row_reduce(QMatrix m) {
  Echelon out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t next = 0;
  std::vector<std::size_t> support;
  Rational factor;
  Rational t;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t best = rows;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = next; i < rows; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const std::size_t s = bit_size(m(i, c));
      if (s < best_size) {
        best = i;
        best_size = s;
      }
    }
    if (best == rows) continue;
    if (best != next) {
      for (std::size_t j = c; j < cols; ++j) swap(m(best, j), m(next, j));
    }
    const Rational inv = 1 / m(next, c);
    support.clear();
    for (std::size_t j = c; j < cols; ++j) {
      if (sgn(m(next, j)) == 0) continue;
      m(next, j) *= inv;
      support.push_back(j);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == next || sgn(m(i, c)) == 0) continue;
      factor = m(i, c);
      for (std::size_t j : support) {
        t = factor * m(next, j);
        m(i, j) -= t;
      }
    }
    out.pivots.push_back(c);
    ++next;
  }
  out.rref = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m) {
  if (m.rows() > m.cols()) return row_reduce(m.transpose()).pivots.size();
  return row_reduce(m).pivots.size();
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    QVector e(ambient_dim);
    e[i] = 1;
    s.basis_.push_back(std::move(e));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::span(std::size_t ambient_dim, std::span<const QVector> vectors) {
  QMatrix m(vectors.size(), ambient_dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim) throw DimensionMismatch("vector not in ambient space");
    for (std::size_t j = 0; j < ambient_dim; ++j) m(i, j) = vectors[i][j];
  }
  Echelon e = row_reduce(std::move(m));
  Subspace s(ambient_dim);
  s.pivots_ = e.pivots;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    const auto r = e.rref.row(i);
    s.basis_.emplace_back(r.begin(), r.end());
  }
  return s;
}

Subspace Subspace::column_span(const QMatrix& m) {
  std::vector<QVector> cols;
  cols.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return span(m.rows(), cols);
}

bool Subspace::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_dim_) throw DimensionMismatch("vector not in ambient space");
  QVector w(v.begin(), v.end());
  Rational t;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const std::size_t p = pivots_[k];
    if (sgn(w[p]) == 0) continue;
    const Rational f = w[p];
    for (std::size_t j = p; j < ambient_dim_; ++j) {
      if (sgn(basis_[k][j]) == 0) continue;
      t = f * basis_[k][j];
      w[j] -= t;
    }
  }
  return is_zero(w);
}

QMatrix Subspace::as_matrix() const { return QMatrix::from_columns(ambient_dim_, basis_); }

QMatrix kernel_matrix(const QMatrix& m) {
  const Echelon e = row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  QMatrix k(cols, cols - e.pivots.size());
  std::size_t out = 0;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    k(f, out) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], out) = -e.rref(r, f);
    ++out;
  }
  return k;
}

Subspace kernel_basis(const QMatrix& m) { return Subspace::column_span(kernel_matrix(m)); }

std::optional<QVector> solve(const QMatrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length");
  QMatrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  auto x = solve_matrix(m, rhs);
  if (!x) return std::nullopt;
  return x->column(0);
}

std::optional<QMatrix> solve_matrix(const QMatrix& m, const QMatrix& rhs) {
  if (rhs.rows() != m.rows()) throw DimensionMismatch("right-hand side rows");
  const Echelon e = row_reduce(hconcat(m, rhs));
  const std::size_t n = m.cols();
  QMatrix x(n, rhs.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const std::size_t p = e.pivots[r];
    if (p >= n) return std::nullopt;
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(p, j) = e.rref(r, n + j);
  }
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  const Echelon e = row_reduce(hconcat(m, QMatrix::identity(n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  return e.rref.block(0, n, n, n);
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspace ambient mismatch");
  const QMatrix ma = a.as_matrix();
  const QMatrix mb = b.as_matrix();
  const QMatrix k = kernel_matrix(hconcat(ma, Rational(-1) * mb));
  const QMatrix inter = ma * k.block(0, 0, a.dim(), k.cols());
  return Subspace::column_span(inter);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspace ambient mismatch");
  std::vector<QVector> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient_dim(), all);
}

QMatrix restrict_map(const QMatrix& m, const Subspace& a) {
  if (m.cols() != a.ambient_dim()) throw DimensionMismatch("map source vs subspace ambient");
  return m * a.as_matrix();
}

void IncrementalEchelon::reduce(QVector& v) const {
  if (v.size() != width_) throw DimensionMismatch("echelon width");
  Rational t;
  for (const auto& [p, idx] : by_pivot_) {
    if (sgn(v[p]) == 0) continue;
    const Rational f = v[p];
    const QVector& row = rows_[idx];
    for (std::size_t j = p; j < width_; ++j) {
      if (sgn(row[j]) == 0) continue;
      t = f * row[j];
      v[j] -= t;
    }
  }
}

bool IncrementalEchelon::add(QVector v) {
  reduce(v);
  std::size_t p = 0;
  while (p < width_ && sgn(v[p]) == 0) ++p;
  if (p == width_) return false;
  const Rational inv = 1 / v[p];
  for (std::size_t j = p; j < width_; ++j) {
    if (sgn(v[j]) != 0) v[j] *= inv;
  }
  by_pivot_.emplace(p, rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

QMatrix IncrementalEchelon::matrix() const {
  QMatrix m(rows_.size(), width_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < width_; ++j) m(i, j) = rows_[i][j];
  return m;
}

}  // namespace nestquot
