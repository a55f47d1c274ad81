#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "nestquot/bounds.hpp"
#include "nestquot/finite_module.hpp"
#include "nestquot/jet_algebra.hpp"
#include "nestquot/quot_point.hpp"

namespace nestquot {

/// The truncated kernel K = ker(B^r ->> T) of an origin-supported point.
struct KernelModule {
  Subspace subspace;    // inside free_module(B, r): coordinates slot * dim B + monomial
  QMatrix basis;        // the basis b_t = t - NF(t), one column per nonstandard term
  FiniteModule module;  // multiplication operators in that basis
};

KernelModule kernel_module(const QuotPoint& p, const JetAlgebra& jet);

/// Basis of Hom_B(K, T') for the truncated kernel K of an origin-supported
/// point. Each map is T'.dim() x dim K in the basis of kernel_module().
/// Requires jet.order() >= Loewy(T) + Loewy(T'); at that order the result
/// equals Hom_O(ker(O^r ->> T), T').
std::vector<QMatrix> hom_from_kernel(const QuotPoint& p, const FiniteModule& target,
                                     const JetAlgebra& jet);

struct TangentOptions {
  /// Added to the minimal truncation order of every local computation.
  int extra_order = 0;
  Bounds bounds{};
};

/// dim Hom_O(ker(O^r ->> T), T') for points and targets with arbitrary
/// rational supports (decomposed into local pieces).
std::size_t hom_from_kernel_dim(const QuotPoint& p, const FiniteModule& target,
                                const TangentOptions& options = {});

enum class Verdict { SmoothHere, SingularHere, Inconclusive };
std::string_view to_string(Verdict v);

struct TangentReport {
  std::size_t tangent_dim = 0;
  std::size_t expected_dim = 0;
  Verdict verdict = Verdict::Inconclusive;
};

Verdict verdict_for(std::size_t tangent_dim, std::size_t expected_dim);

/// n_d (m + r - 1) for a non-decreasing tuple with n_d >= 1.
std::size_t expdim(int num_vars, int rank, std::span<const std::size_t> lengths);

/// Matrix of the flag-compatibility map
///   (phi_i) -> (phi_i restricted to K_{i+1} - pi_i o phi_{i+1})_i
/// from (+)_i Hom(K_i, T_i) to (+)_i Hom(K_{i+1}, T_i), in bases of those
/// Hom spaces. Origin-supported points only; jet.order() >= 2 Loewy(T_d).
QMatrix delta_matrix(const NestedQuotPoint& z, const JetAlgebra& jet);

/// Tangent contribution of one support point of T_d.
struct LocalTangent {
  QVector point;
  std::size_t domain_dim = 0;  // sum of dim Hom(K_i, T_i)
  std::size_t target_dim = 0;  // sum of dim Hom(K_{i+1}, T_i); only filled on request
  std::size_t delta_rank = 0;
  std::size_t tangent_dim = 0;
};

std::vector<LocalTangent> nested_tangent_breakdown(const NestedQuotPoint& z,
                                                   const TangentOptions& options = {},
                                                   bool with_target_dims = false);

/// dim ker(Delta_z), summed over the support points of T_d.
TangentReport nested_tangent_dim(const NestedQuotPoint& z, const TangentOptions& options = {});

TangentReport tangent_dim(const QuotPoint& p, const TangentOptions& options = {});

/// Levelwise direct sum of points whose top levels have pairwise disjoint
/// supports. Throws OverlappingSupports otherwise.
NestedQuotPoint direct_sum_points(std::span<const NestedQuotPoint> points);

/// The part of a nested point living over one support point, translated to
/// the origin. Levels not supported there become zero modules.
NestedQuotPoint localize_nested(const NestedQuotPoint& z, std::span<const Rational> point);

}  // namespace nestquot
