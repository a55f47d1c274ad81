#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nestquot/bounds.hpp"
#include "nestquot/jet_algebra.hpp"
#include "nestquot/quot_point.hpp"

namespace nestquot {

/// A finite order ideal in N^m, cells sorted by deglex_less.
using Staircase = std::vector<Exponent>;

bool is_order_ideal(const Staircase& cells);

/// All order ideals of size n in N^m, in a deterministic order.
std::vector<Staircase> enumerate_staircases(int num_vars, std::size_t n);

/// A torus-fixed nested point: slots[j][i] is the staircase of the j-th
/// summand at level i, with slots[j][0] inside slots[j][1] inside ...
struct MonomialIdealChainPoint {
  int num_vars = 0;
  std::vector<std::vector<Staircase>> slots;

  std::size_t rank() const noexcept { return slots.size(); }
  std::size_t depth() const noexcept { return slots.empty() ? 0 : slots.front().size(); }
  std::vector<std::size_t> lengths() const;
  /// Compact label such as "[0,1|0][00]" (levels per slot, cells joined).
  std::string id() const;
};

/// All fixed points with level lengths n (non-decreasing). Throws
/// ResourceBoundExceeded once more than bounds.max_fixed_points are found.
std::vector<MonomialIdealChainPoint> enumerate_fixed_points(int num_vars, int rank,
                                                            std::span<const std::size_t> lengths,
                                                            const Bounds& bounds = {});

/// Monomial-basis module O/I for each slot, framing by the unit of each
/// slot, chain maps the projections.
NestedQuotPoint to_nested_point(const MonomialIdealChainPoint& p);

struct FixedPointRecord {
  std::string id;
  std::size_t tangent_dim = 0;
  std::size_t expected_dim = 0;
  std::string verdict;  // SmoothHere / SingularHere / Inconclusive
};

enum class SweepVerdict { SmoothConsistent, SingularConfirmed, Inconclusive };
std::string_view to_string(SweepVerdict v);

struct SweepReport {
  int num_vars = 0;
  int rank = 0;
  std::vector<std::size_t> lengths;  // canonicalized
  std::size_t expected_dim = 0;
  std::size_t max_tangent_dim = 0;
  std::vector<FixedPointRecord> records;
  SweepVerdict verdict = SweepVerdict::Inconclusive;
};

/// Tangent dimension at every fixed point. SMOOTH-CONSISTENT when all of
/// them equal expdim, SINGULAR-CONFIRMED when one exceeds it.
SweepReport verify_smoothness(int num_vars, int rank, std::span<const std::size_t> lengths,
                              const Bounds& bounds = {});

}  // namespace nestquot
