#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nestquot/qmatrix.hpp"

namespace nestquot {

/// A finite-length module over C[x_1..x_m], given by the m matrices through
/// which the variables act on a dim-dimensional space.
class FiniteModule {
 public:
  FiniteModule() = default;
  /// The module with all actions zero.
  FiniteModule(int num_vars, std::size_t dim);
  FiniteModule(int num_vars, std::size_t dim, std::vector<QMatrix> actions);

  int num_vars() const noexcept { return num_vars_; }
  std::size_t dim() const noexcept { return dim_; }
  const QMatrix& action(int i) const { return actions_.at(static_cast<std::size_t>(i)); }
  const std::vector<QMatrix>& actions() const noexcept { return actions_; }

  friend bool operator==(const FiniteModule&, const FiniteModule&) = default;

 private:
  int num_vars_ = 0;
  std::size_t dim_ = 0;
  std::vector<QMatrix> actions_;
};

/// A linear map between modules, stored without re-checking intertwining.
struct ModuleMap {
  FiniteModule source;
  FiniteModule target;
  QMatrix matrix;  // target.dim() x source.dim()
};

bool check_commuting(const FiniteModule& t);

/// Whether matrix * X_i(source) == X_i(target) * matrix for every i.
bool intertwines(const QMatrix& matrix, const FiniteModule& source, const FiniteModule& target);

/// Basis of Hom_O(T, T'), the solutions of phi X_i = X'_i phi.
std::vector<ModuleMap> hom_space(const FiniteModule& t, const FiniteModule& t2);
std::size_t hom_dim(const FiniteModule& t, const FiniteModule& t2);

/// dim Ext^1_O(T, T') as H^1 of the Koszul-type complex
/// Hom(T,T') -> Hom(T,T')^m -> Hom(T,T')^(m choose 2).
std::size_t ext1_dim(const FiniteModule& t, const FiniteModule& t2);

FiniteModule direct_sum(const FiniteModule& t, const FiniteModule& t2);

/// g X_i g^-1 for each action.
FiniteModule conjugate(const FiniteModule& t, const QMatrix& g);

/// Actions X_i + shift_i * Id (moves the support by `shift`).
FiniteModule translate(const FiniteModule& t, std::span<const Rational> shift);

/// Smallest l with every product of l actions zero; nullopt-like value
/// SIZE_MAX when the actions are not jointly nilpotent.
std::size_t loewy_length(const FiniteModule& t);
bool is_supported_at_origin(const FiniteModule& t);

struct SupportPoint {
  QVector point;
  std::size_t local_length = 0;
};

/// Joint spectrum of the actions with multiplicities, sorted by point.
/// Throws IrrationalSupport when some characteristic polynomial does not
/// split over Q.
std::vector<SupportPoint> support(const FiniteModule& t);

/// The generalized joint eigenspace at p, translated to the origin.
FiniteModule localize_at(const FiniteModule& t, std::span<const Rational> p);

/// One summand of the support decomposition T = (+)_p T_p.
struct LocalComponent {
  QVector point;
  QMatrix inclusion;   // dim T x dim T_p
  QMatrix projection;  // dim T_p x dim T; projection * inclusion = Id
  FiniteModule local;  // translated so that it is supported at the origin
};

std::vector<LocalComponent> decompose_support(const FiniteModule& t);

/// Characteristic polynomial det(x Id - A), coefficients from degree 0 up.
QVector characteristic_polynomial(const QMatrix& a);

/// Distinct rational roots of a polynomial (coefficients from degree 0 up).
std::vector<Rational> rational_roots(std::span<const Rational> poly);

}  // namespace nestquot
