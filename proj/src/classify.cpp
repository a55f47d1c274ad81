#include "nestquot/classify.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "nestquot/errors.hpp"
#include "nestquot/tangent.hpp"

namespace nestquot {

std::string_view to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::Curve: return "Curve";
    case CaseLabel::ProjBundle: return "ProjBundle";
    case CaseLabel::Fogarty: return "Fogarty";
    case CaseLabel::SurfaceNested: return "SurfaceNested";
    case CaseLabel::HigherDim3: return "HigherDim3";
    case CaseLabel::HigherDimNested: return "HigherDimNested";
    case CaseLabel::SingularA: return "Singular-A";
    case CaseLabel::SingularB: return "Singular-B";
    case CaseLabel::SingularCheah1: return "Singular-Cheah-i";
    case CaseLabel::SingularCheah2: return "Singular-Cheah-ii";
    case CaseLabel::SingularCheah3: return "Singular-Cheah-iii";
    case CaseLabel::SingularCheah4: return "Singular-Cheah-iv";
  }
  return "?";
}

bool is_smooth_case(CaseLabel label) {
  switch (label) {
    case CaseLabel::Curve:
    case CaseLabel::ProjBundle:
    case CaseLabel::Fogarty:
    case CaseLabel::SurfaceNested:
    case CaseLabel::HigherDim3:
    case CaseLabel::HigherDimNested:
      return true;
    default:
      return false;
  }
}

std::vector<std::size_t> canonicalize_lengths(std::span<const std::size_t> lengths) {
  if (!std::is_sorted(lengths.begin(), lengths.end())) {
    throw std::invalid_argument("lengths must be non-decreasing");
  }
  std::vector<std::size_t> out;
  for (std::size_t n : lengths) {
    if (n == 0 || (!out.empty() && out.back() == n)) continue;
    out.push_back(n);
  }
  return out;
}

namespace {

bool is_one_two_or_two_three(const std::vector<std::size_t>& n) {
  return n.size() == 2 && ((n[0] == 1 && n[1] == 2) || (n[0] == 2 && n[1] == 3));
}

CaseLabel decide(int m, int r, const std::vector<std::size_t>& n) {
  const std::size_t d = n.size();
  if (m == 1) return CaseLabel::Curve;
  if (n.back() == 1) return CaseLabel::ProjBundle;
  if (r == 1) {
    if (m == 2 && d == 1) return CaseLabel::Fogarty;
    if (m == 2 && d == 2 && n[1] == n[0] + 1) return CaseLabel::SurfaceNested;
    if (m >= 3 && d == 1 && n[0] <= 3) return CaseLabel::HigherDim3;
    if (m >= 3 && is_one_two_or_two_three(n)) return CaseLabel::HigherDimNested;
  }
  // Singular from here on; m >= 2 and n_d >= 2.
  if (d >= 3) return CaseLabel::SingularCheah1;
  if (m == 2 && d == 2 && n[1] >= n[0] + 2) return CaseLabel::SingularCheah2;
  if (m >= 3 && d == 1 && n[0] >= 4) return CaseLabel::SingularCheah3;
  if (m >= 3 && d == 2 && !is_one_two_or_two_three(n)) return CaseLabel::SingularCheah4;
  // r >= 2 with a smooth rank-one counterpart.
  if (d == 1) return CaseLabel::SingularA;
  return CaseLabel::SingularB;
}

}  // namespace

ClassificationVerdict classify(int num_vars, int rank, std::span<const std::size_t> lengths) {
  if (num_vars < 1 || rank < 1) throw std::invalid_argument("m and r must be positive");
  ClassificationVerdict v;
  v.normalized_n = canonicalize_lengths(lengths);
  if (v.normalized_n.empty()) throw std::invalid_argument("lengths are all zero");
  v.case_label = decide(num_vars, rank, v.normalized_n);
  v.smooth = is_smooth_case(v.case_label);
  return v;
}

QVector witness_location(int num_vars, std::size_t i) {
  QVector p(static_cast<std::size_t>(num_vars));
  p[0] = static_cast<unsigned long>(i);
  return p;
}

QuotPoint simple_point(int num_vars, std::size_t rank, std::span<const Rational> location) {
  std::vector<QMatrix> actions;
  for (int v = 0; v < num_vars; ++v) actions.push_back(QMatrix{{location[v]}});
  QMatrix framing(1, rank);
  framing(0, 0) = 1;
  return {FiniteModule(num_vars, 1, std::move(actions)), std::move(framing)};
}

QuotPoint fat_point(int num_vars, std::size_t rank) {
  if (rank < 2) throw std::invalid_argument("O_0^2 needs two generators");
  QMatrix framing(2, rank);
  framing(0, 0) = 1;
  framing(1, 1) = 1;
  return {FiniteModule(num_vars, 2), std::move(framing)};
}

namespace {

NestedQuotPoint constant_chain(const QuotPoint& p) {
  NestedQuotPoint z;
  z.levels = {p, p};
  z.maps = {QMatrix::identity(p.length())};
  return z;
}

// O / ((x1,x2,x3)^2 + (x4, ..., xm)) with basis 1, x1, x2, x3.
QuotPoint square_of_maximal_ideal(int num_vars) {
  std::vector<QMatrix> actions;
  for (int v = 0; v < num_vars; ++v) {
    QMatrix a(4, 4);
    if (v < 3) a(static_cast<std::size_t>(v) + 1, 0) = 1;
    actions.push_back(std::move(a));
  }
  QMatrix framing(4, 1);
  framing(0, 0) = 1;
  return {FiniteModule(num_vars, 4, std::move(actions)), std::move(framing)};
}

}  // namespace

NestedQuotPoint witness_singular(int num_vars, int rank, std::span<const std::size_t> lengths) {
  const ClassificationVerdict v = classify(num_vars, rank, lengths);
  if (v.smooth) {
    throw std::invalid_argument("no singular witness: the scheme is smooth (" +
                                std::string(to_string(v.case_label)) + ")");
  }
  const auto& n = v.normalized_n;
  const std::size_t r = static_cast<std::size_t>(rank);
  if (rank >= 2 && n.size() == 1) {
    std::vector<NestedQuotPoint> parts{as_nested(fat_point(num_vars, r))};
    for (std::size_t i = 1; i + 2 <= n[0]; ++i) {
      parts.push_back(as_nested(simple_point(num_vars, r, witness_location(num_vars, i))));
    }
    return direct_sum_points(parts);
  }
  if (rank >= 2 && n.size() == 2 && n[1] == n[0] + 1) {
    NestedQuotPoint base;
    base.levels = {simple_point(num_vars, r, witness_location(num_vars, 0)), fat_point(num_vars, r)};
    base.maps = {QMatrix{{1, 0}}};
    std::vector<NestedQuotPoint> parts{base};
    for (std::size_t i = 1; i < n[0]; ++i) {
      parts.push_back(constant_chain(simple_point(num_vars, r, witness_location(num_vars, i))));
    }
    return direct_sum_points(parts);
  }
  if (rank == 1 && num_vars >= 3 && n.size() == 1 && n[0] == 4) {
    return as_nested(square_of_maximal_ideal(num_vars));
  }
  throw Unsupported("no explicit singular witness for m=" + std::to_string(num_vars) +
                    ", r=" + std::to_string(rank) + " (" + std::string(to_string(v.case_label)) +
                    ")");
}

}  // namespace nestquot
