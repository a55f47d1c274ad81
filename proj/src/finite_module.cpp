#include "nestquot/finite_module.hpp"

#include <algorithm>
#include <limits>

#include "nestquot/errors.hpp"
#include "nestquot/linalg.hpp"

namespace nestquot {

FiniteModule::FiniteModule(int num_vars, std::size_t dim)
    : num_vars_(num_vars), dim_(dim), actions_(static_cast<std::size_t>(num_vars), QMatrix(dim, dim)) {
  if (num_vars < 1) throw std::invalid_argument("module needs at least one variable");
}

FiniteModule::FiniteModule(int num_vars, std::size_t dim, std::vector<QMatrix> actions)
    : num_vars_(num_vars), dim_(dim), actions_(std::move(actions)) {
  if (num_vars < 1) throw std::invalid_argument("module needs at least one variable");
  if (actions_.size() != static_cast<std::size_t>(num_vars)) {
    throw DimensionMismatch("expected " + std::to_string(num_vars) + " action matrices, got " +
                            std::to_string(actions_.size()));
  }
  for (const auto& a : actions_) {
    if (a.rows() != dim || a.cols() != dim) {
      throw DimensionMismatch("action matrix is not " + std::to_string(dim) + "x" +
                              std::to_string(dim));
    }
  }
}

bool check_commuting(const FiniteModule& t) {
  for (int i = 0; i < t.num_vars(); ++i)
    for (int j = i + 1; j < t.num_vars(); ++j)
      if (!commutator(t.action(i), t.action(j)).is_zero()) return false;
  return true;
}

bool intertwines(const QMatrix& matrix, const FiniteModule& source, const FiniteModule& target) {
  if (source.num_vars() != target.num_vars()) return false;
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) return false;
  for (int i = 0; i < source.num_vars(); ++i) {
    if (!(matrix * source.action(i) == target.action(i) * matrix)) return false;
  }
  return true;
}

namespace {

void require_same_vars(const FiniteModule& a, const FiniteModule& b) {
  if (a.num_vars() != b.num_vars()) {
    throw DimensionMismatch("modules over different numbers of variables (" +
                            std::to_string(a.num_vars()) + " vs " +
                            std::to_string(b.num_vars()) + ")");
  }
}

// Matrices of phi -> A phi and phi -> phi B on row-major vec(phi).
// phi is p x q in both cases.
QMatrix left_mul_op(const QMatrix& a, std::size_t q) {
  const std::size_t p = a.cols();
  QMatrix op(a.rows() * q, p * q);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t b = 0; b < p; ++b) {
      if (sgn(a(r, b)) == 0) continue;
      for (std::size_t c = 0; c < q; ++c) op(r * q + c, b * q + c) = a(r, b);
    }
  return op;
}

QMatrix right_mul_op(const QMatrix& b, std::size_t p) {
  const std::size_t q = b.rows();
  const std::size_t n = b.cols();
  QMatrix op(p * n, p * q);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t k = 0; k < q; ++k)
      for (std::size_t c = 0; c < n; ++c) {
        if (sgn(b(k, c)) == 0) continue;
        op(a * n + c, a * q + k) = b(k, c);
      }
  return op;
}

// phi -> X'_i phi - phi X_i, as a matrix on vec(phi) for phi: T -> T'.
QMatrix intertwining_defect(const FiniteModule& t, const FiniteModule& t2, int i) {
  return left_mul_op(t2.action(i), t.dim()) - right_mul_op(t.action(i), t2.dim());
}

}  // namespace

std::vector<ModuleMap> hom_space(const FiniteModule& t, const FiniteModule& t2) {
  require_same_vars(t, t2);
  const std::size_t unknowns = t2.dim() * t.dim();
  QMatrix system(0, unknowns);
  for (int i = 0; i < t.num_vars(); ++i) system = vconcat(system, intertwining_defect(t, t2, i));
  const QMatrix k = kernel_matrix(system);
  std::vector<ModuleMap> out;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    QMatrix phi(t2.dim(), t.dim());
    for (std::size_t a = 0; a < t2.dim(); ++a)
      for (std::size_t b = 0; b < t.dim(); ++b) phi(a, b) = k(a * t.dim() + b, c);
    out.push_back(ModuleMap{t, t2, std::move(phi)});
  }
  return out;
}

std::size_t hom_dim(const FiniteModule& t, const FiniteModule& t2) {
  require_same_vars(t, t2);
  const std::size_t unknowns = t2.dim() * t.dim();
  QMatrix system(0, unknowns);
  for (int i = 0; i < t.num_vars(); ++i) system = vconcat(system, intertwining_defect(t, t2, i));
  return unknowns - rank(system);
}

std::size_t ext1_dim(const FiniteModule& t, const FiniteModule& t2) {
  require_same_vars(t, t2);
  const std::size_t m = static_cast<std::size_t>(t.num_vars());
  const std::size_t block = t2.dim() * t.dim();
  std::vector<QMatrix> defects;
  for (int i = 0; i < t.num_vars(); ++i) defects.push_back(intertwining_defect(t, t2, i));

  QMatrix d0(m * block, block);
  for (std::size_t i = 0; i < m; ++i) d0.set_block(i * block, 0, defects[i]);

  const std::size_t pairs = m * (m - 1) / 2;
  QMatrix d1(pairs * block, m * block);
  std::size_t row = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      // (X'_i psi_j - psi_j X_i) - (X'_j psi_i - psi_i X_j)
      d1.set_block(row * block, j * block, defects[i]);
      d1.set_block(row * block, i * block, Rational(-1) * defects[j]);
      ++row;
    }
  }
  const std::size_t ker_d1 = m * block - rank(d1);
  return ker_d1 - rank(d0);
}

FiniteModule direct_sum(const FiniteModule& t, const FiniteModule& t2) {
  require_same_vars(t, t2);
  std::vector<QMatrix> actions;
  for (int i = 0; i < t.num_vars(); ++i) actions.push_back(block_diagonal(t.action(i), t2.action(i)));
  return FiniteModule(t.num_vars(), t.dim() + t2.dim(), std::move(actions));
}

FiniteModule conjugate(const FiniteModule& t, const QMatrix& g) {
  auto g_inv = inverse(g);
  if (!g_inv) throw std::invalid_argument("conjugating matrix is singular");
  std::vector<QMatrix> actions;
  for (const auto& a : t.actions()) actions.push_back(g * a * *g_inv);
  return FiniteModule(t.num_vars(), t.dim(), std::move(actions));
}

FiniteModule translate(const FiniteModule& t, std::span<const Rational> shift) {
  if (shift.size() != static_cast<std::size_t>(t.num_vars())) {
    throw DimensionMismatch("translation vector length");
  }
  std::vector<QMatrix> actions = t.actions();
  for (std::size_t i = 0; i < actions.size(); ++i)
    for (std::size_t k = 0; k < t.dim(); ++k) actions[i](k, k) += shift[i];
  return FiniteModule(t.num_vars(), t.dim(), std::move(actions));
}

std::size_t loewy_length(const FiniteModule& t) {
  Subspace current = Subspace::full(t.dim());
  for (std::size_t len = 0; len <= t.dim(); ++len) {
    if (current.dim() == 0) return len;
    std::vector<QVector> images;
    for (const auto& v : current.basis())
      for (const auto& a : t.actions()) images.push_back(a * v);
    current = Subspace::span(t.dim(), images);
  }
  return std::numeric_limits<std::size_t>::max();
}

bool is_supported_at_origin(const FiniteModule& t) {
  return loewy_length(t) != std::numeric_limits<std::size_t>::max();
}

QVector characteristic_polynomial(const QMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  QVector c(n + 1);
  c[n] = 1;
  QMatrix m(n, n);
  for (std::size_t j = 1; j <= n; ++j) {
    m = a * m;
    for (std::size_t k = 0; k < n; ++k) m(k, k) += c[n - j + 1];
    const QMatrix am = a * m;
    Rational trace;
    for (std::size_t k = 0; k < n; ++k) trace += am(k, k);
    c[n - j] = -trace / static_cast<long>(j);
  }
  return c;
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class v) {
  if (v < 0) v = -v;
  std::vector<mpz_class> small;
  std::vector<mpz_class> large;
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (v % d != 0) continue;
    small.push_back(d);
    if (d * d != v) large.push_back(v / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Rational evaluate(std::span<const Rational> poly, const Rational& x) {
  Rational acc;
  for (std::size_t k = poly.size(); k-- > 0;) acc = acc * x + poly[k];
  return acc;
}

}  // namespace

std::vector<Rational> rational_roots(std::span<const Rational> poly) {
  std::size_t hi = poly.size();
  while (hi > 0 && sgn(poly[hi - 1]) == 0) --hi;
  if (hi <= 1) return {};
  std::size_t lo = 0;
  while (sgn(poly[lo]) == 0) ++lo;

  std::vector<Rational> roots;
  if (lo > 0) roots.push_back(Rational(0));

  mpz_class den_lcm = 1;
  for (std::size_t k = lo; k < hi; ++k) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), poly[k].get_den_mpz_t());
  }
  const mpz_class lead = poly[hi - 1].get_num() * (den_lcm / poly[hi - 1].get_den());
  const mpz_class constant = poly[lo].get_num() * (den_lcm / poly[lo].get_den());
  if (hi - lo == 1) return roots;

  const auto ps = positive_divisors(constant);
  const auto qs = positive_divisors(lead);
  std::vector<Rational> candidates;
  for (const auto& p : ps)
    for (const auto& q : qs) {
      Rational c(p, q);
      c.canonicalize();
      candidates.push_back(c);
      candidates.push_back(-c);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& c : candidates) {
    if (sgn(evaluate(poly, c)) == 0) roots.push_back(c);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

QMatrix matrix_power(const QMatrix& a, std::size_t e) {
  QMatrix result = QMatrix::identity(a.rows());
  QMatrix base = a;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

struct PartialComponent {
  QVector point;
  QMatrix basis;  // n x k, columns span an invariant subspace
};

}  // namespace

std::vector<LocalComponent> decompose_support(const FiniteModule& t) {
  const std::size_t n = t.dim();
  if (n == 0) return {};
  std::vector<PartialComponent> parts{{{}, QMatrix::identity(n)}};
  for (int var = 0; var < t.num_vars(); ++var) {
    std::vector<PartialComponent> next;
    for (const auto& part : parts) {
      const std::size_t k = part.basis.cols();
      const auto restricted = solve_matrix(part.basis, t.action(var) * part.basis);
      if (!restricted) throw InvalidPoint("actions do not commute: eigenspace not invariant");
      std::size_t found = 0;
      for (const auto& lambda : rational_roots(characteristic_polynomial(*restricted))) {
        QMatrix shifted = *restricted;
        for (std::size_t i = 0; i < k; ++i) shifted(i, i) -= lambda;
        const QMatrix gen = kernel_matrix(matrix_power(shifted, k));
        found += gen.cols();
        QVector point = part.point;
        point.push_back(lambda);
        next.push_back({std::move(point), part.basis * gen});
      }
      if (found != k) {
        throw IrrationalSupport("characteristic polynomial of action " + std::to_string(var + 1) +
                                " does not split over Q");
      }
    }
    parts = std::move(next);
  }
  std::sort(parts.begin(), parts.end(),
            [](const PartialComponent& a, const PartialComponent& b) { return a.point < b.point; });

  QMatrix all(n, 0);
  for (const auto& p : parts) all = hconcat(all, p.basis);
  const auto all_inv = inverse(all);
  if (!all_inv) throw InvalidPoint("generalized eigenspaces are not independent");

  std::vector<LocalComponent> out;
  std::size_t offset = 0;
  for (auto& p : parts) {
    const std::size_t k = p.basis.cols();
    LocalComponent c;
    c.projection = all_inv->block(offset, 0, k, n);
    std::vector<QMatrix> actions;
    for (int var = 0; var < t.num_vars(); ++var) {
      QMatrix a = c.projection * t.action(var) * p.basis;
      for (std::size_t i = 0; i < k; ++i) a(i, i) -= p.point[static_cast<std::size_t>(var)];
      actions.push_back(std::move(a));
    }
    c.local = FiniteModule(t.num_vars(), k, std::move(actions));
    c.inclusion = std::move(p.basis);
    c.point = std::move(p.point);
    out.push_back(std::move(c));
    offset += k;
  }
  return out;
}

std::vector<SupportPoint> support(const FiniteModule& t) {
  std::vector<SupportPoint> out;
  for (auto& c : decompose_support(t)) out.push_back({std::move(c.point), c.local.dim()});
  return out;
}

FiniteModule localize_at(const FiniteModule& t, std::span<const Rational> p) {
  if (p.size() != static_cast<std::size_t>(t.num_vars())) {
    throw DimensionMismatch("point has the wrong number of coordinates");
  }
  for (auto& c : decompose_support(t)) {
    if (std::equal(c.point.begin(), c.point.end(), p.begin(), p.end())) return std::move(c.local);
  }
  throw std::invalid_argument("point is not in the support of the module");
}

}  // namespace nestquot
