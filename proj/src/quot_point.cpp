#include "nestquot/quot_point.hpp"

#include <optional>

#include "nestquot/errors.hpp"

namespace nestquot {

Subspace krylov_closure(std::span<const QMatrix> actions, const QMatrix& framing) {
  const std::size_t n = framing.rows();
  IncrementalEchelon echelon(n);
  std::vector<QVector> frontier;
  for (std::size_t j = 0; j < framing.cols(); ++j) {
    QVector v = framing.column(j);
    if (echelon.add(v)) frontier.push_back(std::move(v));
  }
  while (!frontier.empty() && !echelon.full()) {
    std::vector<QVector> next;
    for (const auto& v : frontier) {
      for (const auto& a : actions) {
        QVector w = a * v;
        if (echelon.add(w)) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  const QMatrix rows = echelon.matrix();
  std::vector<QVector> basis;
  for (std::size_t i = 0; i < rows.rows(); ++i) basis.emplace_back(rows.row(i).begin(), rows.row(i).end());
  return Subspace::span(n, basis);
}

bool is_stable(const QuotPoint& p) {
  return krylov_closure(p.module.actions(), p.framing).dim() == p.length();
}

std::vector<std::size_t> NestedQuotPoint::lengths() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels) out.push_back(l.length());
  return out;
}

NestedQuotPoint as_nested(QuotPoint p) {
  NestedQuotPoint z;
  z.levels.push_back(std::move(p));
  return z;
}

void validate(const QuotPoint& p) {
  if (p.framing.rows() != p.length()) {
    throw InvalidPoint("framing has " + std::to_string(p.framing.rows()) +
                       " rows but the module has dimension " + std::to_string(p.length()));
  }
  if (p.rank() == 0) throw InvalidPoint("framing rank must be positive");
  if (!check_commuting(p.module)) throw NotCommuting("action matrices do not commute");
  if (!is_stable(p)) throw NotStable("framing vectors do not generate the module");
}

void validate(const NestedQuotPoint& z) {
  if (z.levels.empty()) throw InvalidPoint("nested point has no levels");
  if (z.maps.size() + 1 != z.levels.size()) {
    throw InvalidPoint("expected " + std::to_string(z.levels.size() - 1) + " chain maps, got " +
                       std::to_string(z.maps.size()));
  }
  for (std::size_t i = 0; i < z.levels.size(); ++i) {
    const auto& l = z.levels[i];
    if (l.num_vars() != z.num_vars()) throw InvalidPoint("levels use different numbers of variables");
    if (l.rank() != z.rank()) throw InvalidPoint("levels use different framing ranks");
    try {
      validate(l);
    } catch (const NotCommuting& e) {
      throw NotCommuting("level " + std::to_string(i + 1) + ": " + e.what());
    } catch (const NotStable& e) {
      throw NotStable("level " + std::to_string(i + 1) + ": " + e.what());
    } catch (const InvalidPoint& e) {
      throw InvalidPoint("level " + std::to_string(i + 1) + ": " + e.what());
    }
    if (i > 0 && z.levels[i - 1].length() > l.length()) {
      throw InvalidPoint("lengths must be non-decreasing");
    }
  }
  for (std::size_t i = 0; i < z.maps.size(); ++i) {
    const auto& pi = z.maps[i];
    const auto& lower = z.levels[i];
    const auto& upper = z.levels[i + 1];
    const std::string tag = "map " + std::to_string(i + 1) + ": ";
    if (pi.rows() != lower.length() || pi.cols() != upper.length()) {
      throw InvalidPoint(tag + "has shape " + std::to_string(pi.rows()) + "x" +
                         std::to_string(pi.cols()) + ", expected " +
                         std::to_string(lower.length()) + "x" + std::to_string(upper.length()));
    }
    if (!intertwines(pi, upper.module, lower.module)) {
      throw InvalidPoint(tag + "is not a module homomorphism");
    }
    if (!(pi * upper.framing == lower.framing)) {
      throw InvalidPoint(tag + "does not carry the framing of level " + std::to_string(i + 2) +
                         " to the framing of level " + std::to_string(i + 1));
    }
    if (rank(pi) != lower.length()) throw InvalidPoint(tag + "is not surjective");
  }
}

NestedQuotPoint canonicalize(const NestedQuotPoint& z) {
  NestedQuotPoint out;
  std::optional<std::size_t> last_kept;
  for (std::size_t i = 0; i < z.levels.size(); ++i) {
    const auto& level = z.levels[i];
    const bool last = i + 1 == z.levels.size();
    if (level.length() == 0 || (!last && z.levels[i + 1].length() == level.length())) continue;
    if (last_kept) {
      QMatrix m = z.maps[*last_kept];
      for (std::size_t j = *last_kept + 1; j < i; ++j) m = m * z.maps[j];
      out.maps.push_back(std::move(m));
    }
    last_kept = i;
    out.levels.push_back(level);
  }
  return out;
}

NestedQuotPoint change_basis(const NestedQuotPoint& z, std::span<const QMatrix> gauges) {
  if (gauges.size() != z.levels.size()) throw DimensionMismatch("one gauge matrix per level");
  std::vector<QMatrix> inverses;
  for (const auto& g : gauges) {
    auto inv = inverse(g);
    if (!inv) throw std::invalid_argument("gauge matrix is singular");
    inverses.push_back(std::move(*inv));
  }
  NestedQuotPoint out;
  for (std::size_t i = 0; i < z.levels.size(); ++i) {
    out.levels.push_back({conjugate(z.levels[i].module, gauges[i]), gauges[i] * z.levels[i].framing});
  }
  for (std::size_t i = 0; i < z.maps.size(); ++i) {
    out.maps.push_back(gauges[i] * z.maps[i] * inverses[i + 1]);
  }
  return out;
}

NestedQuotPoint translate(const NestedQuotPoint& z, std::span<const Rational> shift) {
  NestedQuotPoint out = z;
  for (auto& l : out.levels) l.module = translate(l.module, shift);
  return out;
}

}  // namespace nestquot
