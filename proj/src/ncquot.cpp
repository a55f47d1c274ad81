#include "nestquot/ncquot.hpp"

#include <stdexcept>

#include "nestquot/errors.hpp"
#include "nestquot/linalg.hpp"

namespace nestquot {

void check_shapes(const NCQuotPoint& p) {
  for (const auto& a : p.actions) {
    if (a.rows() != p.n || a.cols() != p.n) throw DimensionMismatch("action is not n x n");
  }
  if (p.framing.rows() != p.n) throw DimensionMismatch("framing must have n rows");
}

bool nc_is_stable(const NCQuotPoint& p) {
  check_shapes(p);
  return krylov_closure(p.actions, p.framing).dim() == p.n;
}

std::vector<std::size_t> commutator_defect(const NCQuotPoint& p) {
  check_shapes(p);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.actions.size(); ++i)
    for (std::size_t j = i + 1; j < p.actions.size(); ++j)
      out.push_back(rank(commutator(p.actions[i], p.actions[j])));
  return out;
}

QuotPoint to_quot_point(const NCQuotPoint& p) {
  check_shapes(p);
  if (p.actions.empty()) throw DimensionMismatch("need at least one variable");
  for (std::size_t k : commutator_defect(p)) {
    if (k != 0) throw NotCommuting("actions do not commute");
  }
  if (!nc_is_stable(p)) throw NotStable("framing does not generate Q^n");
  return QuotPoint{FiniteModule(p.num_vars(), p.n, p.actions), p.framing};
}

NCQuotPoint from_quot_point(const QuotPoint& p) {
  NCQuotPoint out;
  out.n = p.length();
  out.actions = p.module.actions();
  out.framing = p.framing;
  return out;
}

std::size_t ncquot_dim(int num_vars, std::size_t n, std::size_t rank) {
  if (num_vars < 1) throw std::invalid_argument("m must be positive");
  return static_cast<std::size_t>(num_vars - 1) * n * n + rank * n;
}

NCQuotPoint gauge(const NCQuotPoint& p, const QMatrix& g) {
  check_shapes(p);
  const auto g_inv = inverse(g);
  if (!g_inv) throw std::invalid_argument("gauge matrix is singular");
  NCQuotPoint out{p.n, {}, g * p.framing};
  for (const auto& a : p.actions) out.actions.push_back(g * a * *g_inv);
  return out;
}

namespace {

// Rows: g A_i - A'_i g = 0 and g v_j - t v'_j = 0. Unknowns: g row-major, then t.
QMatrix intertwiner_system(const NCQuotPoint& p, const NCQuotPoint& q) {
  const std::size_t n = p.n;
  const std::size_t unknowns = n * n + 1;
  const std::size_t m = p.actions.size();
  const std::size_t r = p.rank();
  QMatrix sys(m * n * n + r * n, unknowns);
  std::size_t row = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const QMatrix& a = p.actions[i];
    const QMatrix& a2 = q.actions[i];
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y, ++row) {
        for (std::size_t c = 0; c < n; ++c) {
          sys(row, x * n + c) += a(c, y);
          sys(row, c * n + y) -= a2(x, c);
        }
      }
    }
  }
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t x = 0; x < n; ++x, ++row) {
      for (std::size_t c = 0; c < n; ++c) sys(row, x * n + c) = p.framing(c, j);
      sys(row, n * n) = -q.framing(x, j);
    }
  }
  return sys;
}

bool same_shape(const NCQuotPoint& p, const NCQuotPoint& q) {
  return p.n == q.n && p.actions.size() == q.actions.size() && p.rank() == q.rank();
}

}  // namespace

std::size_t intertwiner_space_dim(const NCQuotPoint& p, const NCQuotPoint& q) {
  check_shapes(p);
  check_shapes(q);
  if (!same_shape(p, q)) throw DimensionMismatch("points differ in (m, n, r)");
  const QMatrix sys = intertwiner_system(p, q);
  return sys.cols() - rank(sys);
}

std::optional<QMatrix> framed_isomorphic(const NCQuotPoint& p, const NCQuotPoint& q) {
  check_shapes(p);
  check_shapes(q);
  if (!same_shape(p, q) || !nc_is_stable(p) || !nc_is_stable(q)) return std::nullopt;
  const QMatrix kernel = kernel_matrix(intertwiner_system(p, q));
  if (kernel.cols() == 0) return std::nullopt;
  // A solution with t = 0 kills every v_j, hence the whole Krylov span.
  if (kernel.cols() != 1) throw std::logic_error("intertwiner space of a stable point exceeds 1");
  const std::size_t n = p.n;
  const Rational t = kernel(n * n, 0);
  if (sgn(t) == 0) return std::nullopt;
  QMatrix g(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) g(x, y) = kernel(x * n + y, 0) / t;
  if (!inverse(g)) return std::nullopt;
  return g;
}

}  // namespace nestquot
