#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "nestquot/quot_point.hpp"

namespace nestquot {

enum class CaseLabel {
  Curve,            // m = 1
  ProjBundle,       // n = (1)
  Fogarty,          // r = 1, m = 2, d = 1
  SurfaceNested,    // r = 1, m = 2, n = (n, n+1)
  HigherDim3,       // r = 1, m >= 3, d = 1, n <= 3
  HigherDimNested,  // r = 1, m >= 3, n in {(1,2), (2,3)}
  SingularA,        // r >= 2, d = 1, n >= 2
  SingularB,        // r >= 2, n = (n, n+1)
  SingularCheah1,   // d >= 3
  SingularCheah2,   // m = 2, d = 2, gap >= 2
  SingularCheah3,   // m >= 3, d = 1, n >= 4
  SingularCheah4,   // m >= 3, d = 2, n not in {(1,2), (2,3)}
};

std::string_view to_string(CaseLabel label);
bool is_smooth_case(CaseLabel label);

struct ClassificationVerdict {
  bool smooth = false;
  CaseLabel case_label = CaseLabel::Curve;
  std::vector<std::size_t> normalized_n;
};

/// Drops zeros and repeated entries of a non-decreasing tuple.
std::vector<std::size_t> canonicalize_lengths(std::span<const std::size_t> lengths);

/// Smoothness of the nested punctual Quot scheme of O^r on A^m with
/// lengths n. When a singular tuple satisfies both a rank-one criterion and
/// one of the higher-rank cases A/B, the rank-one label wins.
ClassificationVerdict classify(int num_vars, int rank, std::span<const std::size_t> lengths);

/// Support locations used by the witnesses: p_i = (i, 0, ..., 0).
QVector witness_location(int num_vars, std::size_t i);

/// [O^r ->> O_p] with the first generator mapping to 1.
QuotPoint simple_point(int num_vars, std::size_t rank, std::span<const Rational> location);
/// [O^r ->> O_0^2] with e_1, e_2 mapping to the two basis vectors.
QuotPoint fat_point(int num_vars, std::size_t rank);

/// A point whose tangent space exceeds the expected dimension, for the
/// singular cases with an explicit construction:
///   r >= 2, d = 1, n >= 2: O_0^2 plus n-2 simple points;
///   r >= 2, n = (k, k+1): [O^r ->> O_0^2 ->> O_0] plus k-1 constant chains;
///   r = 1, m >= 3, n = (4): O / ((x1,x2,x3)^2 + (x4..xm)).
/// Throws Unsupported for other singular cases and std::invalid_argument
/// for smooth ones.
NestedQuotPoint witness_singular(int num_vars, int rank, std::span<const std::size_t> lengths);

}  // namespace nestquot
