#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "nestquot/rational.hpp"

namespace nestquot {

/// Dense row-major matrix of exact rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static QMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static QMatrix from_columns(std::size_t rows, std::span<const QVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<Rational> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
  std::span<const Rational> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  QVector column(std::size_t j) const;
  const std::vector<Rational>& entries() const noexcept { return entries_; }

  QMatrix transpose() const;
  bool is_zero() const;
  bool is_square() const noexcept { return rows_ == cols_; }

  /// Copy of rows [r0, r0+nr) and columns [c0, c0+nc).
  QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const QMatrix& b);

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const Rational& s);

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator*(const Rational& s, QMatrix a);
QVector operator*(const QMatrix& a, std::span<const Rational> v);

/// a*b - b*a for square matrices of equal size.
QMatrix commutator(const QMatrix& a, const QMatrix& b);

/// Horizontal / vertical concatenation.
QMatrix hconcat(const QMatrix& a, const QMatrix& b);
QMatrix vconcat(const QMatrix& a, const QMatrix& b);

/// Block diagonal matrix diag(a, b).
QMatrix block_diagonal(const QMatrix& a, const QMatrix& b);

bool is_zero(std::span<const Rational> v);

std::ostream& operator<<(std::ostream& os, const QMatrix& m);

}  // namespace nestquot
