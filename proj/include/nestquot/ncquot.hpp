#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nestquot/qmatrix.hpp"
#include "nestquot/quot_point.hpp"

namespace nestquot {

/// Matrix-and-vector data (A_1..A_m, v_1..v_r) on Q^n without commutation.
/// framing holds v_j as columns (n x r).
struct NCQuotPoint {
  std::size_t n = 0;
  std::vector<QMatrix> actions;
  QMatrix framing;

  int num_vars() const noexcept { return static_cast<int>(actions.size()); }
  std::size_t rank() const noexcept { return framing.cols(); }
};

/// Throws DimensionMismatch on inconsistent shapes.
void check_shapes(const NCQuotPoint& p);

/// Words in the A_i applied to the v_j span Q^n.
bool nc_is_stable(const NCQuotPoint& p);

/// rank [A_i, A_j] for i < j, in lexicographic order of (i, j).
std::vector<std::size_t> commutator_defect(const NCQuotPoint& p);

/// Throws NotCommuting or NotStable.
QuotPoint to_quot_point(const NCQuotPoint& p);
NCQuotPoint from_quot_point(const QuotPoint& p);

/// (m - 1) n^2 + r n
std::size_t ncquot_dim(int num_vars, std::size_t n, std::size_t rank);

/// g A_i g^-1 and g v_j.
NCQuotPoint gauge(const NCQuotPoint& p, const QMatrix& g);

/// Dimension of {(g, t) : g A_i = A'_i g, g v_j = t v'_j}. For stable p it
/// is at most 1.
std::size_t intertwiner_space_dim(const NCQuotPoint& p, const NCQuotPoint& q);

/// The invertible g with g A_i = A'_i g and g v_j = v'_j, if any. Both
/// points must be stable with the same (m, n, r); otherwise the result is
/// empty.
std::optional<QMatrix> framed_isomorphic(const NCQuotPoint& p, const NCQuotPoint& q);

}  // namespace nestquot
