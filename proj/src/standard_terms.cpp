#include "standard_terms.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "nestquot/errors.hpp"
#include "nestquot/linalg.hpp"

namespace nestquot::detail {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

StandardTerms::StandardTerms(const JetAlgebra& jet, const QuotPoint& point)
    : jet_(&jet), rank_(point.rank()) {
  const FiniteModule& t = point.module;
  const int m = jet.num_vars();
  if (t.num_vars() != m) throw DimensionMismatch("point and jet algebra use different variables");
  if (rank_ == 0) throw InvalidPoint("framing rank must be positive");
  loewy_ = loewy_length(t);
  if (loewy_ == kNone) throw InvalidPoint("module is not supported at the origin");
  if (loewy_ > static_cast<std::size_t>(jet.order())) {
    throw TruncationTooSmall("truncation order " + std::to_string(jet.order()) +
                             " is below the Loewy length " + std::to_string(loewy_));
  }

  const std::size_t dim_b = jet.dim();
  divide_table_.assign(dim_b * static_cast<std::size_t>(m), -1);
  for (std::size_t a = 0; a < dim_b; ++a)
    for (int v = 0; v < m; ++v)
      if (auto b = jet.multiply(a, v)) divide_table_[*b * m + v] = static_cast<long>(a);

  const std::size_t terms = num_terms();
  const std::size_t n = t.dim();
  standard_flag_.assign(terms, 0);
  kernel_pos_.assign(terms, kNone);
  corner_pos_.assign(terms, kNone);
  normal_forms_.resize(terms);

  // Images X^a v_j of all terms of degree < loewy; higher terms map to 0.
  std::vector<QVector> images(terms);
  IncrementalEchelon echelon(n);
  std::vector<QVector> standard_columns;
  for (std::size_t mono = 0; mono < dim_b; ++mono) {
    const std::size_t deg = static_cast<std::size_t>(total_degree(jet.basis()[mono]));
    for (std::size_t j = 0; j < rank_; ++j) {
      const std::size_t id = term(mono, j);
      if (deg >= loewy_) {
        nonstandard_.push_back(id);
        continue;
      }
      if (mono == 0) {
        images[id] = point.framing.column(j);
      } else {
        int var = 0;
        while (divide_table_[mono * m + var] < 0) ++var;
        const std::size_t prev = term(static_cast<std::size_t>(divide_table_[mono * m + var]), j);
        images[id] = t.action(var) * images[prev];
      }
      if (echelon.add(images[id])) {
        standard_flag_[id] = 1;
        standard_.push_back(id);
        standard_columns.push_back(images[id]);
      } else {
        nonstandard_.push_back(id);
      }
    }
  }
  if (standard_.size() != n) throw NotStable("framing vectors do not generate the module");

  // Standard terms appear in increasing order, so nonstandard_ needs a sort.
  std::sort(nonstandard_.begin(), nonstandard_.end());
  for (std::size_t k = 0; k < nonstandard_.size(); ++k) kernel_pos_[nonstandard_[k]] = k;

  if (n > 0) {
    const auto s_inv = inverse(QMatrix::from_columns(n, standard_columns));
    for (std::size_t id : nonstandard_) {
      if (images[id].empty() || is_zero(images[id])) continue;
      const QVector coeffs = *s_inv * images[id];
      for (std::size_t k = 0; k < n; ++k) {
        if (sgn(coeffs[k]) != 0) normal_forms_[id].emplace_back(standard_[k], coeffs[k]);
      }
    }
  }

  for (std::size_t id : nonstandard_) {
    bool corner = true;
    for (int v = 0; v < m && corner; ++v) {
      auto below = unshift(id, v);
      if (below && !is_standard(*below)) corner = false;
    }
    if (corner) {
      corner_pos_[id] = corners_.size();
      corners_.push_back(id);
    }
  }
}

std::optional<std::size_t> StandardTerms::unshift(std::size_t t, int var) const {
  const long below = divide_table_[monomial_of(t) * jet_->num_vars() + var];
  if (below < 0) return std::nullopt;
  return term(static_cast<std::size_t>(below), slot_of(t));
}

SparseTerms StandardTerms::kernel_element(std::size_t t) const {
  SparseTerms out;
  out.emplace_back(t, Rational(1));
  for (const auto& [s, c] : normal_forms_[t]) out.emplace_back(s, -c);
  return out;
}

void add_scaled(QMatrix& acc, const Rational& c, const QMatrix& m) {
  Rational tmp;
  const auto& src = m.entries();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = acc.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& e = src[i * m.cols() + j];
      if (sgn(e) == 0) continue;
      tmp = c * e;
      row[j] += tmp;
    }
  }
}

KernelHom::KernelHom(const StandardTerms& source, const FiniteModule& target)
    : source_(&source), target_(&target) {
  const JetAlgebra& jet = source.jet();
  const int m = jet.num_vars();
  if (target.num_vars() != m) throw DimensionMismatch("target uses a different number of variables");
  const std::size_t target_loewy = loewy_length(target);
  if (target_loewy == kNone) throw InvalidPoint("target module is not supported at the origin");
  if (source.loewy() + target_loewy > static_cast<std::size_t>(jet.order())) {
    throw TruncationTooSmall("truncation order " + std::to_string(jet.order()) +
                             " is below the required " +
                             std::to_string(source.loewy() + target_loewy));
  }

  const std::size_t np = target.dim();
  num_params_ = source.corners().size() * np;
  const auto& nonstd = source.nonstandard();
  expressions_.assign(nonstd.size(), QMatrix(np, num_params_));
  std::vector<char> used(source.num_terms() * static_cast<std::size_t>(m), 0);

  // Definitions: w_t = X'_v w_{t/x_v} + sum_s c_s w_{x_v s} from the
  // relation x_v b_{t/x_v} = t - sum_s c_s x_v s, with all right-hand terms
  // smaller than t.
  for (std::size_t k = 0; k < nonstd.size(); ++k) {
    const std::size_t t = nonstd[k];
    QMatrix& expr = expressions_[k];
    const std::size_t corner = source.corner_index(t);
    if (corner != kNone) {
      for (std::size_t a = 0; a < np; ++a) expr(a, corner * np + a) = 1;
      continue;
    }
    int var = 0;
    std::optional<std::size_t> below;
    for (; var < m; ++var) {
      below = source.unshift(t, var);
      if (below && !source.is_standard(*below)) break;
    }
    used[*below * m + var] = 1;
    expr = target.action(var) * expressions_[source.kernel_coordinate(*below)];
    for (const auto& [s, c] : source.normal_form(*below)) {
      auto up = source.shift(s, var);
      if (!up || source.is_standard(*up)) continue;
      add_scaled(expr, c, expressions_[source.kernel_coordinate(*up)]);
    }
  }

  // Remaining relations constrain the corner values.
  IncrementalEchelon constraints(num_params_);
  for (std::size_t k = 0; k < nonstd.size() && !constraints.full(); ++k) {
    const std::size_t t = nonstd[k];
    for (int var = 0; var < m && !constraints.full(); ++var) {
      if (used[t * m + var]) continue;
      QMatrix residual = target.action(var) * expressions_[k];
      residual *= Rational(-1);
      if (auto up = source.shift(t, var)) residual += expressions_[source.kernel_coordinate(*up)];
      for (const auto& [s, c] : source.normal_form(t)) {
        auto up = source.shift(s, var);
        if (!up || source.is_standard(*up)) continue;
        add_scaled(residual, -c, expressions_[source.kernel_coordinate(*up)]);
      }
      for (std::size_t a = 0; a < np; ++a) {
        const auto row = residual.row(a);
        if (is_zero(row)) continue;
        constraints.add(QVector(row.begin(), row.end()));
      }
    }
  }
  basis_ = kernel_matrix(constraints.matrix());
}

QMatrix KernelHom::evaluate(const SparseTerms& v) const {
  QMatrix out(target_->dim(), num_params_);
  for (const auto& [t, c] : v) {
    if (source_->is_standard(t)) continue;
    add_scaled(out, c, expression(t));
  }
  return out;
}

}  // namespace nestquot::detail
