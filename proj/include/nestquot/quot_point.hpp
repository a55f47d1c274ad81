#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nestquot/finite_module.hpp"
#include "nestquot/linalg.hpp"

namespace nestquot {

/// A framed module [O^r ->> T]: the module T together with the images of
/// the r standard generators (columns of `framing`, a dim T x r matrix).
struct QuotPoint {
  FiniteModule module;
  QMatrix framing;

  int num_vars() const noexcept { return module.num_vars(); }
  std::size_t length() const noexcept { return module.dim(); }
  std::size_t rank() const noexcept { return framing.cols(); }
};

/// Smallest subspace containing the columns of `framing` and stable under
/// every matrix in `actions`.
Subspace krylov_closure(std::span<const QMatrix> actions, const QMatrix& framing);

/// Whether the framing generates T under the actions.
bool is_stable(const QuotPoint& p);

/// A chain of surjections O^r ->> T_d ->> ... ->> T_1. levels[0] is T_1;
/// maps[i] : T_{i+2} -> T_{i+1} (zero-based: levels[i+1] -> levels[i]).
struct NestedQuotPoint {
  std::vector<QuotPoint> levels;
  std::vector<QMatrix> maps;

  std::size_t depth() const noexcept { return levels.size(); }
  int num_vars() const { return levels.front().num_vars(); }
  std::size_t rank() const { return levels.front().rank(); }
  std::vector<std::size_t> lengths() const;
};

NestedQuotPoint as_nested(QuotPoint p);

/// Throws InvalidPoint (or NotCommuting / NotStable) naming the first
/// violated invariant.
void validate(const QuotPoint& p);
void validate(const NestedQuotPoint& z);

/// Drops length-0 levels and collapses equal-length neighbours (whose chain
/// map is then an isomorphism), composing the chain maps.
NestedQuotPoint canonicalize(const NestedQuotPoint& z);

/// Applies g_i to each level: actions g X g^-1, framing g F, maps
/// g_i pi_i g_{i+1}^-1.
NestedQuotPoint change_basis(const NestedQuotPoint& z, std::span<const QMatrix> gauges);

/// Moves every support point by `shift`.
NestedQuotPoint translate(const NestedQuotPoint& z, std::span<const Rational> shift);

}  // namespace nestquot
