#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "nestquot/bounds.hpp"
#include "nestquot/linalg.hpp"
#include "nestquot/qmatrix.hpp"

namespace nestquot {

class FiniteModule;

/// Exponent vector of a monomial x_1^a_1 ... x_m^a_m.
using Exponent = std::vector<int>;

int total_degree(const Exponent& e);

/// Degree first, then lexicographically larger exponent first
/// (so x precedes y precedes z within a degree).
bool deglex_less(const Exponent& a, const Exponent& b);

/// The truncated polynomial ring O/m0^N in m variables, with its monomial
/// basis of all exponents of total degree < N.
class JetAlgebra {
 public:
  JetAlgebra(int num_vars, int order, std::size_t max_dim = Bounds{}.max_jet_dim);

  int num_vars() const noexcept { return num_vars_; }
  int order() const noexcept { return order_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Exponent>& basis() const noexcept { return basis_; }

  std::optional<std::size_t> index_of(const Exponent& e) const;
  /// Index of x_var * basis[idx], or nullopt if its degree reaches the order.
  std::optional<std::size_t> multiply(std::size_t idx, int var) const {
    const long v = mult_table_[idx * num_vars_ + var];
    if (v < 0) return std::nullopt;
    return static_cast<std::size_t>(v);
  }

  /// Multiplication by x_var in the monomial basis.
  QMatrix mult_op(int var) const;
  std::vector<QMatrix> mult_ops() const;

 private:
  int num_vars_;
  int order_;
  std::vector<Exponent> basis_;
  std::map<Exponent, std::size_t> index_;
  std::vector<long> mult_table_;
};

/// binomial(N - 1 + m, m), saturating at SIZE_MAX.
std::size_t jet_dimension(int num_vars, int order);

/// Span of the basis monomials of degree >= k.
Subspace maximal_ideal_power(const JetAlgebra& jet, int k);

/// B^r with block diagonal multiplication operators.
FiniteModule free_module(const JetAlgebra& jet, int rank);

}  // namespace nestquot
