#pragma once

// Random instance generators and brute-force oracles shared by the tests.

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "nestquot/finite_module.hpp"
#include "nestquot/quot_point.hpp"

namespace testsupport {

using nestquot::FiniteModule;
using nestquot::NestedQuotPoint;
using nestquot::QMatrix;
using nestquot::QuotPoint;
using nestquot::QVector;
using nestquot::Rational;
using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);
/// Small integers and halves in [-range, range].
Rational random_rational(Rng& rng, int range = 3);
QMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int range = 3,
                      int zero_percent = 30);
/// Product of random unipotent lower and upper triangular matrices with a
/// diagonal of +-1, 2.
QMatrix random_invertible(Rng& rng, std::size_t n);
QVector random_location(Rng& rng, int num_vars);

/// Origin-supported point of length n: a random monomial fixed point with a
/// random linear coordinate change, framing mix and basis change.
QuotPoint random_monomial_point(Rng& rng, int num_vars, std::size_t rank, std::size_t n);
/// Origin-supported point whose actions are polynomials in one nilpotent
/// Jordan block (a curvilinear module).
QuotPoint random_curvilinear_point(Rng& rng, int num_vars, std::size_t rank, std::size_t n);
QuotPoint random_local_point(Rng& rng, int num_vars, std::size_t rank, std::size_t n);

/// Direct sum of local points of total length n at distinct rational
/// locations drawn from a small pool (so independent draws overlap).
QuotPoint random_point(Rng& rng, int num_vars, std::size_t rank, std::size_t n);

/// Origin-supported nested point with the given lengths: a random fixed
/// point chain, coordinate change and levelwise basis changes.
NestedQuotPoint random_nested_local_point(Rng& rng, int num_vars, std::size_t rank,
                                          std::span<const std::size_t> lengths);

/// Random invertible change of basis on every level.
NestedQuotPoint random_gauge(Rng& rng, const NestedQuotPoint& z);

/// x_i -> sum_j L_ij x_j applied to every level.
NestedQuotPoint change_coordinates(const NestedQuotPoint& z, const QMatrix& l);

// ---- oracles ---------------------------------------------------------------

/// X^a applied through the actions of t.
QMatrix monomial_action(const FiniteModule& t, const std::vector<int>& exponent);

/// Hom_B(ker(B^r -> T), T') by a dense intertwiner solve on the whole
/// truncated kernel. Origin-supported inputs only.
std::size_t brute_hom_from_kernel_dim(const QuotPoint& p, const FiniteModule& target, int order);

/// dim ker Delta via dense Hom spaces of the truncated kernels and
/// restriction through explicit subspace inclusions.
std::size_t brute_nested_tangent_dim(const NestedQuotPoint& z, int order);

/// Number of partitions of n.
std::size_t partition_count(std::size_t n);

/// Order ideals of size n in N^m by testing every n-subset of the cells of
/// total degree < n.
std::size_t brute_order_ideal_count(int num_vars, std::size_t n);

}  // namespace testsupport
