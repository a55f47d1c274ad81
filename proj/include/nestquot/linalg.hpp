#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "nestquot/qmatrix.hpp"

namespace nestquot {

/// Reduced row echelon form of a matrix together with its pivot columns.
struct Echelon {
  QMatrix rref;                      // only the first pivots.size() rows are nonzero
  std::vector<std::size_t> pivots;   // strictly increasing
};

/// Gauss-Jordan elimination over Q. The pivot in each column is the
/// candidate entry with the smallest bit size.
Echelon row_reduce(QMatrix m);

std::size_t rank(const QMatrix& m);

/// Linear subspace of Q^ambient_dim, stored by a basis in reduced echelon
/// form (so equal subspaces have identical bases).
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

  static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim); }
  static Subspace full(std::size_t ambient_dim);
  /// Span of arbitrary (possibly dependent) vectors.
  static Subspace span(std::size_t ambient_dim, std::span<const QVector> vectors);
  /// Span of the columns of m.
  static Subspace column_span(const QMatrix& m);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<QVector>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const Rational> v) const;
  /// Columns are the basis vectors: ambient_dim x dim.
  QMatrix as_matrix() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<QVector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Basis of {v : M v = 0}; dimension cols - rank.
Subspace kernel_basis(const QMatrix& m);

/// The standard null-space basis (one vector per free column), as the
/// columns of a cols x (cols - rank) matrix.
QMatrix kernel_matrix(const QMatrix& m);

/// Some x with M x = b, or nullopt if the system is inconsistent.
std::optional<QVector> solve(const QMatrix& m, std::span<const Rational> b);

/// Solves M X = R column by column; nullopt if any column is inconsistent.
std::optional<QMatrix> solve_matrix(const QMatrix& m, const QMatrix& rhs);

std::optional<QMatrix> inverse(const QMatrix& m);

Subspace subspace_intersection(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);

/// Matrix of M on the basis of A; the target stays in ambient coordinates.
QMatrix restrict_map(const QMatrix& m, const Subspace& a);

/// Row space accumulated one vector at a time. Rows are kept in
/// semi-echelon form (leading entry 1 at a distinct pivot).
class IncrementalEchelon {
 public:
  explicit IncrementalEchelon(std::size_t width) : width_(width) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  bool full() const noexcept { return rows_.size() == width_; }

  /// Reduces v against the stored rows in place.
  void reduce(QVector& v) const;
  /// Adds v; returns true when it was independent of the stored rows.
  bool add(QVector v);

  /// Stored rows, stacked into a rank x width matrix.
  QMatrix matrix() const;

 private:
  std::size_t width_;
  std::vector<QVector> rows_;
  std::map<std::size_t, std::size_t> by_pivot_;  // pivot column -> row index
};

}  // namespace nestquot
