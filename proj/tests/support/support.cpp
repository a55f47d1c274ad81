#include "support.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "nestquot/fixed_points.hpp"
#include "nestquot/jet_algebra.hpp"
#include "nestquot/linalg.hpp"

namespace testsupport {

using namespace nestquot;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational random_rational(Rng& rng, int range) {
  Rational q(uniform(rng, -2 * range, 2 * range), uniform(rng, 0, 3) == 0 ? 2 : 1);
  q.canonicalize();
  return q;
}

QMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int range, int zero_percent) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (uniform(rng, 0, 99) >= zero_percent) m(i, j) = random_rational(rng, range);
  return m;
}

QMatrix random_invertible(Rng& rng, std::size_t n) {
  QMatrix lower = QMatrix::identity(n);
  QMatrix upper = QMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    static const int diag[] = {1, -1, 2};
    upper(i, i) = diag[uniform(rng, 0, 2)];
    for (std::size_t j = 0; j < i; ++j) {
      lower(i, j) = uniform(rng, -2, 2);
      upper(j, i) = random_rational(rng, 1);
    }
  }
  return lower * upper;
}

QVector random_location(Rng& rng, int num_vars) {
  QVector p;
  for (int v = 0; v < num_vars; ++v) p.push_back(random_rational(rng, 2));
  return p;
}

NestedQuotPoint change_coordinates(const NestedQuotPoint& z, const QMatrix& l) {
  NestedQuotPoint out = z;
  for (auto& level : out.levels) {
    const int m = level.num_vars();
    std::vector<QMatrix> actions;
    for (int i = 0; i < m; ++i) {
      QMatrix a(level.length(), level.length());
      for (int j = 0; j < m; ++j) {
        const Rational& c = l(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (sgn(c) != 0) a += c * level.module.action(j);
      }
      actions.push_back(std::move(a));
    }
    level.module = FiniteModule(m, level.length(), std::move(actions));
  }
  return out;
}

NestedQuotPoint random_gauge(Rng& rng, const NestedQuotPoint& z) {
  std::vector<QMatrix> gauges;
  for (const auto& level : z.levels) gauges.push_back(random_invertible(rng, level.length()));
  return change_basis(z, gauges);
}

namespace {

QuotPoint mix_framing(Rng& rng, QuotPoint p) {
  p.framing = p.framing * random_invertible(rng, p.rank());
  return p;
}

}  // namespace

QuotPoint random_monomial_point(Rng& rng, int num_vars, std::size_t rank, std::size_t n) {
  const std::vector<std::size_t> lengths{n};
  const auto points = enumerate_fixed_points(num_vars, static_cast<int>(rank), lengths);
  const auto& pick = points[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(points.size()) - 1))];
  NestedQuotPoint z = to_nested_point(pick);
  z = change_coordinates(z, random_invertible(rng, static_cast<std::size_t>(num_vars)));
  z = random_gauge(rng, z);
  return mix_framing(rng, z.levels.front());
}

QuotPoint random_curvilinear_point(Rng& rng, int num_vars, std::size_t rank, std::size_t n) {
  QMatrix j(n, n);
  for (std::size_t k = 0; k + 1 < n; ++k) j(k + 1, k) = 1;
  std::vector<QMatrix> powers{QMatrix::identity(n)};
  for (std::size_t k = 1; k < n; ++k) powers.push_back(powers.back() * j);
  std::vector<QMatrix> actions;
  for (int v = 0; v < num_vars; ++v) {
    QMatrix a(n, n);
    for (std::size_t k = 1; k < n; ++k) {
      Rational c = (v == 0 && k == 1) ? Rational(1) : Rational(uniform(rng, -2, 2));
      if (sgn(c) != 0) a += c * powers[k];
    }
    actions.push_back(std::move(a));
  }
  QMatrix framing = random_matrix(rng, n, rank, 2, 50);
  if (n > 0) {
    for (std::size_t i = 0; i < n; ++i) framing(i, 0) = i == 0 ? 1 : 0;
  }
  NestedQuotPoint z = as_nested({FiniteModule(num_vars, n, std::move(actions)), std::move(framing)});
  z = change_coordinates(z, random_invertible(rng, static_cast<std::size_t>(num_vars)));
  z = random_gauge(rng, z);
  return mix_framing(rng, z.levels.front());
}

QuotPoint random_local_point(Rng& rng, int num_vars, std::size_t rank, std::size_t n) {
  if (n >= 2 && uniform(rng, 0, 2) == 0) return random_curvilinear_point(rng, num_vars, rank, n);
  return random_monomial_point(rng, num_vars, rank, n);
}

namespace {

QVector pool_location(int num_vars, int k) {
  static const int pattern[4][3] = {{0, 0, 0}, {1, 0, 0}, {1, -1, 2}, {-2, 1, 0}};
  QVector p;
  for (int v = 0; v < num_vars; ++v) p.push_back(Rational(pattern[k][v % 3] * (v >= 3 ? 0 : 1)));
  if (k == 2 && num_vars >= 1) p[0] = Rational(1, 2);
  return p;
}

}  // namespace

QuotPoint random_point(Rng& rng, int num_vars, std::size_t rank, std::size_t n) {
  std::vector<std::size_t> parts;
  for (std::size_t left = n; left > 0;) {
    const std::size_t part = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(left)));
    parts.push_back(part);
    left -= part;
  }
  std::vector<int> slots{0, 1, 2, 3};
  std::shuffle(slots.begin(), slots.end(), rng);
  QuotPoint out{FiniteModule(num_vars, 0), QMatrix(0, rank)};
  for (std::size_t k = 0; k < parts.size(); ++k) {
    QuotPoint piece = random_local_point(rng, num_vars, rank, parts[k]);
    const QVector where = pool_location(num_vars, slots[k]);
    out.module = direct_sum(out.module, translate(piece.module, where));
    out.framing = vconcat(out.framing, piece.framing);
  }
  return out;
}

NestedQuotPoint random_nested_local_point(Rng& rng, int num_vars, std::size_t rank,
                                          std::span<const std::size_t> lengths) {
  const auto points = enumerate_fixed_points(num_vars, static_cast<int>(rank), lengths);
  const auto& pick = points[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(points.size()) - 1))];
  NestedQuotPoint z = to_nested_point(pick);
  z = change_coordinates(z, random_invertible(rng, static_cast<std::size_t>(num_vars)));
  return random_gauge(rng, z);
}

QMatrix monomial_action(const FiniteModule& t, const std::vector<int>& exponent) {
  QMatrix out = QMatrix::identity(t.dim());
  for (std::size_t v = 0; v < exponent.size(); ++v)
    for (int k = 0; k < exponent[v]; ++k) out = t.action(static_cast<int>(v)) * out;
  return out;
}

namespace {

struct TruncatedKernel {
  QMatrix basis;  // columns in free-module coordinates slot * dim B + monomial
  FiniteModule module;
};

TruncatedKernel truncated_kernel(const QuotPoint& p, const JetAlgebra& jet) {
  const std::size_t dim_b = jet.dim();
  const std::size_t r = p.rank();
  QMatrix surjection(p.length(), r * dim_b);
  for (std::size_t a = 0; a < dim_b; ++a) {
    const QMatrix xa = monomial_action(p.module, jet.basis()[a]);
    for (std::size_t j = 0; j < r; ++j) {
      const QVector image = xa * p.framing.column(j);
      for (std::size_t i = 0; i < p.length(); ++i) surjection(i, j * dim_b + a) = image[i];
    }
  }
  TruncatedKernel out;
  out.basis = kernel_matrix(surjection);
  const FiniteModule free = free_module(jet, static_cast<int>(r));
  std::vector<QMatrix> actions;
  for (int v = 0; v < jet.num_vars(); ++v) {
    auto a = solve_matrix(out.basis, free.action(v) * out.basis);
    if (!a) throw std::logic_error("truncated kernel is not a submodule");
    actions.push_back(std::move(*a));
  }
  out.module = FiniteModule(jet.num_vars(), out.basis.cols(), std::move(actions));
  return out;
}

QVector flatten(const QMatrix& m) { return QVector(m.entries().begin(), m.entries().end()); }

}  // namespace

std::size_t brute_hom_from_kernel_dim(const QuotPoint& p, const FiniteModule& target, int order) {
  const JetAlgebra jet(p.num_vars(), order, 100000);
  return hom_dim(truncated_kernel(p, jet).module, target);
}

std::size_t brute_nested_tangent_dim(const NestedQuotPoint& z, int order) {
  const JetAlgebra jet(z.num_vars(), order, 100000);
  const std::size_t d = z.depth();
  std::vector<TruncatedKernel> kernels;
  std::vector<std::vector<ModuleMap>> homs;
  for (const auto& level : z.levels) {
    kernels.push_back(truncated_kernel(level, jet));
    homs.push_back(hom_space(kernels.back().module, level.module));
  }
  std::vector<QMatrix> inclusions;  // K_{i+1} in the basis of K_i
  std::vector<std::size_t> row_offset{0};
  for (std::size_t i = 0; i + 1 < d; ++i) {
    auto c = solve_matrix(kernels[i].basis, kernels[i + 1].basis);
    if (!c) throw std::logic_error("kernels are not nested");
    inclusions.push_back(std::move(*c));
    row_offset.push_back(row_offset.back() + z.levels[i].length() * kernels[i + 1].basis.cols());
  }
  std::size_t domain = 0;
  for (const auto& h : homs) domain += h.size();
  QMatrix delta(row_offset.back(), domain);
  std::size_t col = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (const auto& phi : homs[i]) {
      if (i + 1 < d) {
        const QVector v = flatten(phi.matrix * inclusions[i]);
        for (std::size_t k = 0; k < v.size(); ++k) delta(row_offset[i] + k, col) += v[k];
      }
      if (i > 0) {
        const QVector v = flatten(z.maps[i - 1] * phi.matrix);
        for (std::size_t k = 0; k < v.size(); ++k) delta(row_offset[i - 1] + k, col) -= v[k];
      }
      ++col;
    }
  }
  return domain - rank(delta);
}

std::size_t partition_count(std::size_t n) {
  std::vector<std::size_t> p(n + 1, 0);
  p[0] = 1;
  for (std::size_t part = 1; part <= n; ++part)
    for (std::size_t k = part; k <= n; ++k) p[k] += p[k - part];
  return p[n];
}

std::size_t brute_order_ideal_count(int num_vars, std::size_t n) {
  if (n == 0) return 1;
  std::vector<std::vector<int>> cells;
  std::vector<int> e(static_cast<std::size_t>(num_vars), 0);
  // All exponents with total degree < n, by odometer.
  const auto degree = [](const std::vector<int>& x) {
    int s = 0;
    for (int v : x) s += v;
    return s;
  };
  while (true) {
    if (degree(e) < static_cast<int>(n)) cells.push_back(e);
    std::size_t v = 0;
    while (v < e.size() && ++e[v] >= static_cast<int>(n)) e[v++] = 0;
    if (v == e.size()) break;
  }
  std::vector<int> choose(cells.size(), 0);
  std::fill(choose.end() - static_cast<long>(n), choose.end(), 1);
  std::size_t count = 0;
  do {
    std::set<std::vector<int>> chosen;
    for (std::size_t k = 0; k < cells.size(); ++k)
      if (choose[k]) chosen.insert(cells[k]);
    bool ideal = true;
    for (auto c : chosen) {
      for (std::size_t v = 0; v < c.size() && ideal; ++v) {
        if (c[v] == 0) continue;
        --c[v];
        ideal = chosen.count(c) > 0;
        ++c[v];
      }
      if (!ideal) break;
    }
    if (ideal) ++count;
  } while (std::next_permutation(choose.begin(), choose.end()));
  return count;
}

}  // namespace testsupport
