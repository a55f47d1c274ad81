#include "nestquot/tangent.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "nestquot/errors.hpp"
#include "standard_terms.hpp"

namespace nestquot {

using detail::KernelHom;
using detail::StandardTerms;

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::SmoothHere: return "SmoothHere";
    case Verdict::SingularHere: return "SingularHere";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict verdict_for(std::size_t tangent_dim, std::size_t expected_dim) {
  if (tangent_dim > expected_dim) return Verdict::SingularHere;
  if (tangent_dim == expected_dim) return Verdict::SmoothHere;
  return Verdict::Inconclusive;
}

std::size_t expdim(int num_vars, int rank, std::span<const std::size_t> lengths) {
  if (num_vars < 1 || rank < 1) throw std::invalid_argument("m and r must be positive");
  if (!std::is_sorted(lengths.begin(), lengths.end())) {
    throw std::invalid_argument("lengths must be non-decreasing");
  }
  if (lengths.empty() || lengths.back() == 0) throw std::invalid_argument("n_d must be positive");
  return lengths.back() * static_cast<std::size_t>(num_vars + rank - 1);
}

namespace {

QuotPoint zero_level(int num_vars, std::size_t rank) {
  return QuotPoint{FiniteModule(num_vars, 0), QMatrix(0, rank)};
}

const LocalComponent* find_component(const std::vector<LocalComponent>& comps,
                                     std::span<const Rational> point) {
  for (const auto& c : comps) {
    if (std::equal(c.point.begin(), c.point.end(), point.begin(), point.end())) return &c;
  }
  return nullptr;
}

QuotPoint local_level(const QuotPoint& level, const LocalComponent* c) {
  if (c == nullptr) return zero_level(level.num_vars(), level.rank());
  return QuotPoint{c->local, c->projection * level.framing};
}

struct LocalPiece {
  QVector point;
  NestedQuotPoint local;
};

std::vector<LocalPiece> localize_all(const NestedQuotPoint& z) {
  std::vector<std::vector<LocalComponent>> comps;
  for (const auto& l : z.levels) comps.push_back(decompose_support(l.module));
  std::vector<LocalPiece> out;
  for (const auto& top : comps.back()) {
    LocalPiece piece{top.point, {}};
    std::vector<const LocalComponent*> at;
    for (std::size_t i = 0; i < z.levels.size(); ++i) {
      at.push_back(find_component(comps[i], top.point));
      piece.local.levels.push_back(local_level(z.levels[i], at.back()));
    }
    for (std::size_t i = 0; i < z.maps.size(); ++i) {
      const std::size_t rows = at[i] ? at[i]->local.dim() : 0;
      const std::size_t cols = at[i + 1] ? at[i + 1]->local.dim() : 0;
      if (rows == 0 || cols == 0) {
        piece.local.maps.emplace_back(rows, cols);
      } else {
        piece.local.maps.push_back(at[i]->projection * z.maps[i] * at[i + 1]->inclusion);
      }
    }
    out.push_back(std::move(piece));
  }
  return out;
}

struct LocalDelta {
  std::size_t domain_dim = 0;
  std::size_t target_dim = 0;
  std::size_t rank = 0;
  QMatrix matrix;  // only when requested
};

LocalDelta compute_local_delta(const NestedQuotPoint& z, const JetAlgebra& jet, bool with_target,
                               bool want_matrix) {
  const std::size_t d = z.levels.size();
  std::vector<StandardTerms> terms;
  terms.reserve(d);
  for (const auto& l : z.levels) terms.emplace_back(jet, l);
  std::vector<KernelHom> homs;
  homs.reserve(d);
  for (std::size_t i = 0; i < d; ++i) homs.emplace_back(terms[i], z.levels[i].module);

  LocalDelta out;
  std::vector<std::size_t> col_offset;
  for (const auto& h : homs) {
    col_offset.push_back(out.domain_dim);
    out.domain_dim += h.dim();
  }

  // Delta applied to the domain basis, in corner-value coordinates of
  // Hom(K_{i+1}, T_i).
  std::vector<QMatrix> blocks;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const std::size_t n_low = z.levels[i].length();
    const std::size_t n_up = z.levels[i + 1].length();
    const auto& upper_corners = terms[i + 1].corners();
    QMatrix block(upper_corners.size() * n_low, out.domain_dim);
    const QMatrix& y_low = homs[i].basis();
    const QMatrix& y_up = homs[i + 1].basis();
    for (std::size_t k = 0; k < upper_corners.size(); ++k) {
      const QMatrix restricted =
          homs[i].evaluate(terms[i + 1].kernel_element(upper_corners[k])) * y_low;
      block.set_block(k * n_low, col_offset[i], restricted);
      if (n_low == 0 || n_up == 0) continue;
      QMatrix pushed = z.maps[i] * y_up.block(k * n_up, 0, n_up, y_up.cols());
      pushed *= Rational(-1);
      block.set_block(k * n_low, col_offset[i + 1], pushed);
    }
    blocks.push_back(std::move(block));
  }

  QMatrix image(0, out.domain_dim);
  for (const auto& b : blocks) image = vconcat(image, b);
  out.rank = rank(image);

  if (with_target || want_matrix) {
    out.matrix = QMatrix(0, out.domain_dim);
    for (std::size_t i = 0; i + 1 < d; ++i) {
      const KernelHom target(terms[i + 1], z.levels[i].module);
      out.target_dim += target.dim();
      if (!want_matrix) continue;
      auto coords = solve_matrix(target.basis(), blocks[i]);
      if (!coords) throw std::logic_error("flag map leaves Hom(K_{i+1}, T_i)");
      out.matrix = vconcat(out.matrix, *coords);
    }
  }
  return out;
}

int local_order(const NestedQuotPoint& local, const TangentOptions& options) {
  const std::size_t top = loewy_length(local.levels.back().module);
  return static_cast<int>(2 * top) + options.extra_order;
}

}  // namespace

NestedQuotPoint localize_nested(const NestedQuotPoint& z, std::span<const Rational> point) {
  for (auto& piece : localize_all(z)) {
    if (std::equal(piece.point.begin(), piece.point.end(), point.begin(), point.end())) {
      return std::move(piece.local);
    }
  }
  throw std::invalid_argument("point is not in the support of the top level");
}

KernelModule kernel_module(const QuotPoint& p, const JetAlgebra& jet) {
  const StandardTerms terms(jet, p);
  const std::size_t dim_b = jet.dim();
  const std::size_t r = p.rank();
  const auto& nonstd = terms.nonstandard();
  const auto coordinate = [&](std::size_t t) {
    return terms.slot_of(t) * dim_b + terms.monomial_of(t);
  };

  KernelModule out;
  out.basis = QMatrix(dim_b * r, nonstd.size());
  for (std::size_t k = 0; k < nonstd.size(); ++k) {
    for (const auto& [t, c] : terms.kernel_element(nonstd[k])) out.basis(coordinate(t), k) = c;
  }
  std::vector<QMatrix> actions;
  for (int v = 0; v < jet.num_vars(); ++v) {
    QMatrix a(nonstd.size(), nonstd.size());
    for (std::size_t k = 0; k < nonstd.size(); ++k) {
      for (const auto& [t, c] : terms.kernel_element(nonstd[k])) {
        auto up = terms.shift(t, v);
        if (!up || terms.is_standard(*up)) continue;
        a(terms.kernel_coordinate(*up), k) += c;
      }
    }
    actions.push_back(std::move(a));
  }
  out.module = FiniteModule(jet.num_vars(), nonstd.size(), std::move(actions));
  out.subspace = Subspace::column_span(out.basis);
  return out;
}

std::vector<QMatrix> hom_from_kernel(const QuotPoint& p, const FiniteModule& target,
                                     const JetAlgebra& jet) {
  const StandardTerms terms(jet, p);
  const KernelHom hom(terms, target);
  const auto& nonstd = terms.nonstandard();
  std::vector<QMatrix> out;
  for (std::size_t b = 0; b < hom.dim(); ++b) {
    const QMatrix theta = hom.basis().block(0, b, hom.num_params(), 1);
    QMatrix map(target.dim(), nonstd.size());
    for (std::size_t k = 0; k < nonstd.size(); ++k) {
      map.set_block(0, k, hom.expression(nonstd[k]) * theta);
    }
    out.push_back(std::move(map));
  }
  return out;
}

std::size_t hom_from_kernel_dim(const QuotPoint& p, const FiniteModule& target,
                                const TangentOptions& options) {
  if (p.num_vars() != target.num_vars()) {
    throw DimensionMismatch("point and target use different numbers of variables");
  }
  validate(p);
  const auto source_comps = decompose_support(p.module);
  std::size_t total = 0;
  for (const auto& tc : decompose_support(target)) {
    const QuotPoint local = local_level(p, find_component(source_comps, tc.point));
    const std::size_t order = loewy_length(local.module) + loewy_length(tc.local) +
                              static_cast<std::size_t>(options.extra_order);
    const JetAlgebra jet(p.num_vars(), static_cast<int>(order), options.bounds.max_jet_dim);
    const StandardTerms terms(jet, local);
    total += KernelHom(terms, tc.local).dim();
  }
  return total;
}

QMatrix delta_matrix(const NestedQuotPoint& z, const JetAlgebra& jet) {
  validate(z);
  return compute_local_delta(z, jet, true, true).matrix;
}

std::vector<LocalTangent> nested_tangent_breakdown(const NestedQuotPoint& z,
                                                   const TangentOptions& options,
                                                   bool with_target_dims) {
  validate(z);
  std::vector<LocalTangent> out;
  for (auto& piece : localize_all(z)) {
    const JetAlgebra jet(z.num_vars(), local_order(piece.local, options),
                         options.bounds.max_jet_dim);
    const LocalDelta delta = compute_local_delta(piece.local, jet, with_target_dims, false);
    out.push_back({std::move(piece.point), delta.domain_dim, delta.target_dim, delta.rank,
                   delta.domain_dim - delta.rank});
  }
  return out;
}

TangentReport nested_tangent_dim(const NestedQuotPoint& z, const TangentOptions& options) {
  TangentReport report;
  for (const auto& local : nested_tangent_breakdown(z, options)) report.tangent_dim += local.tangent_dim;
  const auto lengths = z.lengths();
  report.expected_dim = expdim(z.num_vars(), static_cast<int>(z.rank()), lengths);
  report.verdict = verdict_for(report.tangent_dim, report.expected_dim);
  return report;
}

TangentReport tangent_dim(const QuotPoint& p, const TangentOptions& options) {
  return nested_tangent_dim(as_nested(p), options);
}

NestedQuotPoint direct_sum_points(std::span<const NestedQuotPoint> points) {
  if (points.empty()) throw std::invalid_argument("direct sum of no points");
  const NestedQuotPoint& first = points.front();
  for (const auto& z : points) {
    validate(z);
    if (z.num_vars() != first.num_vars() || z.rank() != first.rank() ||
        z.depth() != first.depth()) {
      throw DimensionMismatch("summands differ in m, r or d");
    }
  }
  std::vector<QVector> seen;
  for (const auto& z : points) {
    for (auto& sp : support(z.levels.back().module)) {
      if (std::find(seen.begin(), seen.end(), sp.point) != seen.end()) {
        throw OverlappingSupports("summands share a support point");
      }
      seen.push_back(std::move(sp.point));
    }
  }
  NestedQuotPoint out = first;
  for (std::size_t k = 1; k < points.size(); ++k) {
    const auto& z = points[k];
    for (std::size_t i = 0; i < z.depth(); ++i) {
      auto& level = out.levels[i];
      level.module = direct_sum(level.module, z.levels[i].module);
      level.framing = vconcat(level.framing, z.levels[i].framing);
    }
    for (std::size_t i = 0; i < z.maps.size(); ++i) {
      out.maps[i] = block_diagonal(out.maps[i], z.maps[i]);
    }
  }
  return out;
}

}  // namespace nestquot
