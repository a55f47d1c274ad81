#include "nestquot/fixed_points.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "nestquot/classify.hpp"
#include "nestquot/errors.hpp"
#include "nestquot/tangent.hpp"

namespace nestquot {

namespace {

bool contains(const Staircase& s, const Exponent& cell) {
  return std::binary_search(s.begin(), s.end(), cell, deglex_less);
}

bool addable(const Staircase& s, Exponent cell) {
  if (contains(s, cell)) return false;
  for (std::size_t v = 0; v < cell.size(); ++v) {
    if (cell[v] == 0) continue;
    --cell[v];
    const bool ok = contains(s, cell);
    ++cell[v];
    if (!ok) return false;
  }
  return true;
}

bool is_subset(const Staircase& small, const Staircase& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end(), deglex_less);
}

// staircases_by_size[k] lists every order ideal of size k, k <= n.
std::vector<std::vector<Staircase>> staircases_up_to(int num_vars, std::size_t n) {
  if (num_vars < 1) throw std::invalid_argument("m must be positive");
  std::vector<std::vector<Staircase>> out{{Staircase{}}};
  for (std::size_t k = 1; k <= n; ++k) {
    std::set<Staircase> next;
    for (const auto& s : out.back()) {
      std::vector<Exponent> candidates;
      if (s.empty()) candidates.emplace_back(static_cast<std::size_t>(num_vars), 0);
      for (const auto& c : s) {
        for (int v = 0; v < num_vars; ++v) {
          Exponent up = c;
          ++up[static_cast<std::size_t>(v)];
          candidates.push_back(std::move(up));
        }
      }
      for (const auto& c : candidates) {
        if (!addable(s, c)) continue;
        Staircase grown = s;
        grown.insert(std::upper_bound(grown.begin(), grown.end(), c, deglex_less), c);
        next.insert(std::move(grown));
      }
    }
    out.emplace_back(next.begin(), next.end());
  }
  return out;
}

using Chain = std::vector<Staircase>;

void extend_chains(const std::vector<std::vector<Staircase>>& by_size,
                   std::span<const std::size_t> lengths, Chain& current,
                   std::map<std::vector<std::size_t>, std::vector<Chain>>& out) {
  const std::size_t level = current.size();
  if (level == lengths.size()) {
    std::vector<std::size_t> sizes;
    for (const auto& s : current) sizes.push_back(s.size());
    out[sizes].push_back(current);
    return;
  }
  const std::size_t low = level == 0 ? 0 : current.back().size();
  for (std::size_t size = low; size <= lengths[level]; ++size) {
    for (const auto& s : by_size[size]) {
      if (level > 0 && !is_subset(current.back(), s)) continue;
      current.push_back(s);
      extend_chains(by_size, lengths, current, out);
      current.pop_back();
    }
  }
}

std::size_t cell_index(const Staircase& s, const Exponent& cell) {
  return static_cast<std::size_t>(
      std::lower_bound(s.begin(), s.end(), cell, deglex_less) - s.begin());
}

std::string cell_label(const Exponent& cell) {
  const bool small = std::all_of(cell.begin(), cell.end(), [](int e) { return e < 10; });
  std::string out;
  for (std::size_t v = 0; v < cell.size(); ++v) {
    if (!small && v > 0) out += '.';
    out += std::to_string(cell[v]);
  }
  return out;
}

}  // namespace

bool is_order_ideal(const Staircase& cells) {
  if (!std::is_sorted(cells.begin(), cells.end(), deglex_less)) return false;
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) return false;
  for (auto cell : cells) {
    for (std::size_t v = 0; v < cell.size(); ++v) {
      if (cell[v] < 0) return false;
      if (cell[v] == 0) continue;
      --cell[v];
      if (!contains(cells, cell)) return false;
      ++cell[v];
    }
  }
  return true;
}

std::vector<Staircase> enumerate_staircases(int num_vars, std::size_t n) {
  return staircases_up_to(num_vars, n).back();
}

std::vector<std::size_t> MonomialIdealChainPoint::lengths() const {
  std::vector<std::size_t> out(depth(), 0);
  for (const auto& chain : slots)
    for (std::size_t i = 0; i < chain.size(); ++i) out[i] += chain[i].size();
  return out;
}

std::string MonomialIdealChainPoint::id() const {
  std::string out;
  for (const auto& chain : slots) {
    out += '[';
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (i > 0) out += '|';
      for (std::size_t k = 0; k < chain[i].size(); ++k) {
        if (k > 0) out += ',';
        out += cell_label(chain[i][k]);
      }
    }
    out += ']';
  }
  return out;
}

std::vector<MonomialIdealChainPoint> enumerate_fixed_points(int num_vars, int rank,
                                                            std::span<const std::size_t> lengths,
                                                            const Bounds& bounds) {
  if (num_vars < 1 || rank < 1) throw std::invalid_argument("m and r must be positive");
  if (lengths.empty()) throw std::invalid_argument("no levels");
  if (!std::is_sorted(lengths.begin(), lengths.end())) {
    throw std::invalid_argument("lengths must be non-decreasing");
  }
  const auto by_size = staircases_up_to(num_vars, lengths.back());
  std::map<std::vector<std::size_t>, std::vector<Chain>> chains;
  Chain scratch;
  extend_chains(by_size, lengths, scratch, chains);

  std::vector<MonomialIdealChainPoint> out;
  std::vector<const Chain*> picked;
  std::vector<std::size_t> used(lengths.size(), 0);
  const auto fits = [&](const std::vector<std::size_t>& sizes) {
    for (std::size_t i = 0; i < sizes.size(); ++i)
      if (used[i] + sizes[i] > lengths[i]) return false;
    return true;
  };
  const auto recurse = [&](auto&& self, int slot) -> void {
    if (slot == rank) {
      if (!std::equal(used.begin(), used.end(), lengths.begin())) return;
      if (out.size() >= bounds.max_fixed_points) {
        throw ResourceBoundExceeded("more than " + std::to_string(bounds.max_fixed_points) +
                                    " fixed points");
      }
      MonomialIdealChainPoint p;
      p.num_vars = num_vars;
      for (const Chain* c : picked) p.slots.push_back(*c);
      out.push_back(std::move(p));
      return;
    }
    for (const auto& [sizes, list] : chains) {
      if (!fits(sizes)) continue;
      for (std::size_t i = 0; i < sizes.size(); ++i) used[i] += sizes[i];
      for (const auto& c : list) {
        picked.push_back(&c);
        self(self, slot + 1);
        picked.pop_back();
      }
      for (std::size_t i = 0; i < sizes.size(); ++i) used[i] -= sizes[i];
    }
  };
  recurse(recurse, 0);
  return out;
}

NestedQuotPoint to_nested_point(const MonomialIdealChainPoint& p) {
  const std::size_t r = p.rank();
  const std::size_t d = p.depth();
  if (r == 0 || d == 0) throw std::invalid_argument("empty fixed point");
  NestedQuotPoint z;
  std::vector<std::vector<std::size_t>> offsets(d, std::vector<std::size_t>(r, 0));
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t n = 0;
    for (std::size_t j = 0; j < r; ++j) {
      const Staircase& s = p.slots[j][i];
      if (!is_order_ideal(s)) throw InvalidPoint("slot is not an order ideal: " + p.id());
      offsets[i][j] = n;
      n += s.size();
    }
    std::vector<QMatrix> actions(static_cast<std::size_t>(p.num_vars), QMatrix(n, n));
    QMatrix framing(n, r);
    for (std::size_t j = 0; j < r; ++j) {
      const Staircase& s = p.slots[j][i];
      if (!s.empty()) framing(offsets[i][j], j) = 1;
      for (std::size_t k = 0; k < s.size(); ++k) {
        for (int v = 0; v < p.num_vars; ++v) {
          Exponent up = s[k];
          ++up[static_cast<std::size_t>(v)];
          if (contains(s, up)) {
            actions[static_cast<std::size_t>(v)](offsets[i][j] + cell_index(s, up),
                                                 offsets[i][j] + k) = 1;
          }
        }
      }
    }
    z.levels.push_back({FiniteModule(p.num_vars, n, std::move(actions)), std::move(framing)});
  }
  for (std::size_t i = 0; i + 1 < d; ++i) {
    QMatrix map(z.levels[i].length(), z.levels[i + 1].length());
    for (std::size_t j = 0; j < r; ++j) {
      const Staircase& low = p.slots[j][i];
      const Staircase& up = p.slots[j][i + 1];
      if (!is_subset(low, up)) throw InvalidPoint("chain is not nested: " + p.id());
      for (std::size_t k = 0; k < up.size(); ++k) {
        if (contains(low, up[k])) map(offsets[i][j] + cell_index(low, up[k]), offsets[i + 1][j] + k) = 1;
      }
    }
    z.maps.push_back(std::move(map));
  }
  return z;
}

std::string_view to_string(SweepVerdict v) {
  switch (v) {
    case SweepVerdict::SmoothConsistent: return "SMOOTH-CONSISTENT";
    case SweepVerdict::SingularConfirmed: return "SINGULAR-CONFIRMED";
    case SweepVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

SweepReport verify_smoothness(int num_vars, int rank, std::span<const std::size_t> lengths,
                              const Bounds& bounds) {
  SweepReport report;
  report.num_vars = num_vars;
  report.rank = rank;
  report.lengths = canonicalize_lengths(lengths);
  if (report.lengths.empty()) throw std::invalid_argument("lengths are all zero");
  report.expected_dim = expdim(num_vars, rank, report.lengths);

  TangentOptions options;
  options.bounds = bounds;
  bool all_equal = true;
  bool any_above = false;
  for (const auto& p : enumerate_fixed_points(num_vars, rank, report.lengths, bounds)) {
    const TangentReport t = nested_tangent_dim(to_nested_point(p), options);
    report.records.push_back(
        {p.id(), t.tangent_dim, t.expected_dim, std::string(to_string(t.verdict))});
    report.max_tangent_dim = std::max(report.max_tangent_dim, t.tangent_dim);
    all_equal = all_equal && t.tangent_dim == t.expected_dim;
    any_above = any_above || t.tangent_dim > t.expected_dim;
  }
  if (any_above) {
    report.verdict = SweepVerdict::SingularConfirmed;
  } else if (all_equal) {
    report.verdict = SweepVerdict::SmoothConsistent;
  }
  return report;
}

}  // namespace nestquot
