#pragma once

// Internal machinery shared by the kernel and tangent computations.
//
// For an origin-supported framed point [B^r ->> T] the terms x^a e_j of B^r
// are processed in increasing term order (degree-lex on monomials, then
// slot). A term is standard when its image in T is independent of the images
// of all smaller terms. Standard terms form a basis of T and the remaining
// terms index a basis b_t = t - NF(t) of the truncated kernel K = ker(B^r -> T).
// Every vector of K is determined by its coefficients on nonstandard terms.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "nestquot/finite_module.hpp"
#include "nestquot/jet_algebra.hpp"
#include "nestquot/quot_point.hpp"

namespace nestquot::detail {

using SparseTerms = std::vector<std::pair<std::size_t, Rational>>;

class StandardTerms {
 public:
  /// Requires the point to be supported at the origin with Loewy length at
  /// most jet.order().
  StandardTerms(const JetAlgebra& jet, const QuotPoint& point);

  const JetAlgebra& jet() const noexcept { return *jet_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t length() const noexcept { return standard_.size(); }
  std::size_t loewy() const noexcept { return loewy_; }
  std::size_t num_terms() const noexcept { return jet_->dim() * rank_; }

  std::size_t term(std::size_t monomial, std::size_t slot) const { return monomial * rank_ + slot; }
  std::size_t monomial_of(std::size_t term) const { return term / rank_; }
  std::size_t slot_of(std::size_t term) const { return term % rank_; }

  /// x_var * term, or nullopt when it leaves the truncation.
  std::optional<std::size_t> shift(std::size_t term, int var) const {
    auto m = jet_->multiply(monomial_of(term), var);
    if (!m) return std::nullopt;
    return this->term(*m, slot_of(term));
  }
  /// term / x_var, or nullopt when x_var does not divide it.
  std::optional<std::size_t> unshift(std::size_t term, int var) const;

  bool is_standard(std::size_t term) const { return standard_flag_[term] != 0; }
  const std::vector<std::size_t>& standard() const noexcept { return standard_; }
  const std::vector<std::size_t>& nonstandard() const noexcept { return nonstandard_; }
  /// Position of a nonstandard term in nonstandard().
  std::size_t kernel_coordinate(std::size_t term) const { return kernel_pos_[term]; }
  /// Nonstandard terms that are not a variable times another nonstandard term.
  const std::vector<std::size_t>& corners() const noexcept { return corners_; }
  std::size_t corner_index(std::size_t term) const { return corner_pos_[term]; }

  /// NF(t): coefficients on standard terms of the image of a nonstandard term.
  const SparseTerms& normal_form(std::size_t term) const { return normal_forms_[term]; }

  /// The kernel element b_t = t - NF(t) as a sparse term vector.
  SparseTerms kernel_element(std::size_t term) const;

 private:
  const JetAlgebra* jet_;
  std::size_t rank_;
  std::size_t loewy_;
  std::vector<char> standard_flag_;
  std::vector<std::size_t> standard_;
  std::vector<std::size_t> nonstandard_;
  std::vector<std::size_t> kernel_pos_;
  std::vector<std::size_t> corners_;
  std::vector<std::size_t> corner_pos_;
  std::vector<SparseTerms> normal_forms_;
  std::vector<long> divide_table_;
};

/// Hom_B(K, T') for the truncated kernel K of `source` and an
/// origin-supported target T'. Unknowns are the values w_c in T' of the
/// corner generators (n' per corner); every other w_t is expressed linearly
/// in them through the module relations, and the unused relations become
/// linear constraints.
class KernelHom {
 public:
  KernelHom(const StandardTerms& source, const FiniteModule& target);

  std::size_t num_params() const noexcept { return num_params_; }
  std::size_t dim() const noexcept { return basis_.cols(); }
  /// Columns span the admissible parameter vectors: num_params x dim.
  const QMatrix& basis() const noexcept { return basis_; }
  /// w_t as a (target.dim() x num_params) matrix, for nonstandard t.
  const QMatrix& expression(std::size_t term) const {
    return expressions_[source_->kernel_coordinate(term)];
  }
  /// phi(v) as a matrix in the parameters, for v in K given by its terms.
  QMatrix evaluate(const SparseTerms& v) const;

  const StandardTerms& source() const noexcept { return *source_; }
  const FiniteModule& target() const noexcept { return *target_; }

 private:
  const StandardTerms* source_;
  const FiniteModule* target_;
  std::size_t num_params_;
  std::vector<QMatrix> expressions_;
  QMatrix basis_;
};

/// Accumulates c * m into acc.
void add_scaled(QMatrix& acc, const Rational& c, const QMatrix& m);

}  // namespace nestquot::detail
