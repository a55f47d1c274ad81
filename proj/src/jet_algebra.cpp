#include "nestquot/jet_algebra.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "nestquot/errors.hpp"
#include "nestquot/finite_module.hpp"

namespace nestquot {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool deglex_less(const Exponent& a, const Exponent& b) {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return b < a;
}

std::size_t jet_dimension(int num_vars, int order) {
  if (order <= 0) return 0;
  // binomial(order - 1 + m, m), computed incrementally; each prefix is exact.
  const std::size_t n = static_cast<std::size_t>(order - 1 + num_vars);
  std::size_t result = 1;
  for (std::size_t k = 1; k <= static_cast<std::size_t>(num_vars); ++k) {
    const std::size_t num = n - static_cast<std::size_t>(num_vars) + k;
    if (result > std::numeric_limits<std::size_t>::max() / num) {
      return std::numeric_limits<std::size_t>::max();
    }
    result = result * num / k;
  }
  return result;
}

namespace {

void exponents_of_degree(int num_vars, int degree, int var, Exponent& cur,
                         std::vector<Exponent>& out) {
  if (var == num_vars - 1) {
    cur[var] = degree;
    out.push_back(cur);
    return;
  }
  for (int a = degree; a >= 0; --a) {
    cur[var] = a;
    exponents_of_degree(num_vars, degree - a, var + 1, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

JetAlgebra::JetAlgebra(int num_vars, int order, std::size_t max_dim)
    : num_vars_(num_vars), order_(order) {
  if (num_vars < 1) throw std::invalid_argument("jet algebra needs at least one variable");
  if (order < 1) throw std::invalid_argument("jet algebra order must be positive");
  const std::size_t expected = jet_dimension(num_vars, order);
  if (expected > max_dim) {
    throw ResourceBoundExceeded("jet algebra dimension " + std::to_string(expected) +
                                " exceeds bound " + std::to_string(max_dim));
  }
  basis_.reserve(expected);
  Exponent cur(static_cast<std::size_t>(num_vars), 0);
  for (int deg = 0; deg < order; ++deg) exponents_of_degree(num_vars, deg, 0, cur, basis_);
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  mult_table_.assign(basis_.size() * static_cast<std::size_t>(num_vars), -1);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (int v = 0; v < num_vars; ++v) {
      Exponent e = basis_[i];
      ++e[v];
      if (auto j = index_of(e)) mult_table_[i * num_vars + v] = static_cast<long>(*j);
    }
  }
}

std::optional<std::size_t> JetAlgebra::index_of(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

QMatrix JetAlgebra::mult_op(int var) const {
  if (var < 0 || var >= num_vars_) throw std::out_of_range("variable index");
  QMatrix m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (auto j = multiply(i, var)) m(*j, i) = 1;
  }
  return m;
}

std::vector<QMatrix> JetAlgebra::mult_ops() const {
  std::vector<QMatrix> ops;
  for (int v = 0; v < num_vars_; ++v) ops.push_back(mult_op(v));
  return ops;
}

Subspace maximal_ideal_power(const JetAlgebra& jet, int k) {
  if (k < 0 || k > jet.order()) {
    throw std::invalid_argument("maximal ideal power " + std::to_string(k) +
                                " beyond truncation order " + std::to_string(jet.order()));
  }
  std::vector<QVector> gens;
  for (std::size_t i = 0; i < jet.dim(); ++i) {
    if (total_degree(jet.basis()[i]) < k) continue;
    QVector e(jet.dim());
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return Subspace::span(jet.dim(), gens);
}

FiniteModule free_module(const JetAlgebra& jet, int rank) {
  if (rank < 1) throw std::invalid_argument("free module rank must be positive");
  std::vector<QMatrix> actions;
  for (int v = 0; v < jet.num_vars(); ++v) {
    const QMatrix op = jet.mult_op(v);
    QMatrix big(op.rows() * rank, op.cols() * rank);
    for (int b = 0; b < rank; ++b) big.set_block(b * op.rows(), b * op.cols(), op);
    actions.push_back(std::move(big));
  }
  return FiniteModule(jet.num_vars(), jet.dim() * rank, std::move(actions));
}

}  // namespace nestquot
