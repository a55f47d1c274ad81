// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "nestquot/classify.hpp"
#include "nestquot/errors.hpp"
#include "nestquot/fixed_points.hpp"
#include "nestquot/ncquot.hpp"
#include "nestquot/point_file.hpp"
#include "nestquot/tangent.hpp"
#include "support/support.hpp"

using namespace nestquot;
using Lengths = std::vector<std::size_t>;
namespace fs = std::filesystem;

namespace {

// Collects failures of one criterion.
struct Check {
  std::vector<std::string> failures;
  std::size_t count = 0;

  void expect(bool ok, const std::string& what) {
    ++count;
    if (!ok) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string str(std::size_t v) { return std::to_string(v); }

QVector origin(int m) { return QVector(static_cast<std::size_t>(m)); }

NestedQuotPoint flag_fat_point(int m, std::size_t r) {
  NestedQuotPoint z;
  z.levels = {simple_point(m, r, origin(m)), fat_point(m, r)};
  z.maps = {QMatrix{{1, 0}}};
  return z;
}

void hom_counts(Check& c) {
  for (int m = 2; m <= 3; ++m) {
    for (std::size_t r = 2; r <= 3; ++r) {
      const auto mm = static_cast<std::size_t>(m);
      const std::string tag = " (m=" + str(mm) + ",r=" + str(r) + ")";
      auto timed = [&](const QuotPoint& p, const FiniteModule& t, std::size_t want,
                       const std::string& name) {
        const auto start = Clock::now();
        const std::size_t got = hom_from_kernel_dim(p, t);
        const double secs = seconds_since(start);
        c.expect(got == want, name + tag + ": got " + str(got) + ", want " + str(want));
        c.expect(secs < 1.0, name + tag + " took " + std::to_string(secs) + " s");
      };
      timed(simple_point(m, r, origin(m)), FiniteModule(m, 1), mm + r - 1, "Hom(m0+O^{r-1},O0)");
      timed(fat_point(m, r), FiniteModule(m, 2), 4 * mm + 2 * (r - 2), "Hom(m0^2+O^{r-2},O0^2)");
      timed(fat_point(m, r), FiniteModule(m, 1), 2 * mm + r - 2, "Hom(m0^2+O^{r-2},O0)");
    }
  }
}

void fat_point_singularity(Check& c) {
  for (int m = 2; m <= 3; ++m) {
    for (int r = 2; r <= 3; ++r) {
      const std::string tag = " (m=" + std::to_string(m) + ",r=" + std::to_string(r) + ")";
      const TangentReport t = tangent_dim(fat_point(m, static_cast<std::size_t>(r)));
      c.expect(t.expected_dim == static_cast<std::size_t>(2 * (m + r - 1)), "expdim" + tag);
      c.expect(t.tangent_dim > t.expected_dim, "fat point not singular" + tag);
      for (std::size_t n = 3; n <= 4; ++n) {
        const NestedQuotPoint w = witness_singular(m, r, Lengths{n});
        const std::size_t want = n * static_cast<std::size_t>(m + r - 1) + 2 * m - 2;
        const std::size_t got = nested_tangent_dim(w).tangent_dim;
        c.expect(got == want, "n=" + str(n) + tag + ": got " + str(got) + ", want " + str(want));
      }
    }
  }
}

void flag_singularity(Check& c) {
  for (int m = 2; m <= 3; ++m) {
    for (std::size_t r = 2; r <= 3; ++r) {
      const auto mm = static_cast<std::size_t>(m);
      const std::string tag = " (m=" + str(mm) + ",r=" + str(r) + ")";
      const TangentReport t = nested_tangent_dim(flag_fat_point(m, r));
      c.expect(t.tangent_dim >= 3 * mm + 2 * r - 3, "below bound" + tag);
      c.expect(3 * mm + 2 * r - 3 > 2 * (mm + r - 1), "bound not above expdim" + tag);
      c.expect(t.tangent_dim > t.expected_dim, "flag not singular" + tag);
      // Adding n-1 constant simple chains elsewhere adds (n-1)(m+r-1).
      for (std::size_t n = 2; n <= 3; ++n) {
        const NestedQuotPoint w = witness_singular(m, static_cast<int>(r), Lengths{n, n + 1});
        const TangentReport tw = nested_tangent_dim(w);
        c.expect(tw.tangent_dim == t.tangent_dim + (n - 1) * (mm + r - 1),
                 "additivity (n,n+1)=(" + str(n) + "," + str(n + 1) + ")" + tag);
        c.expect(tw.tangent_dim > tw.expected_dim, "(n,n+1) not singular" + tag);
      }
    }
  }
}

void golden_grid(Check& c) {
  std::ifstream in(NESTQUOT_GOLDEN_DIR "/classification_grid.tsv");
  c.expect(static_cast<bool>(in), "golden grid missing");
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    int m = 0, r = 0, smooth = 0;
    std::string n_text, label;
    fields >> m >> r >> n_text >> smooth >> label;
    Lengths n;
    std::istringstream items(n_text);
    for (std::string item; std::getline(items, item, ',');) n.push_back(std::stoul(item));
    const auto v = classify(m, r, n);
    c.expect(v.smooth == (smooth == 1) && to_string(v.case_label) == label,
             "m=" + std::to_string(m) + " r=" + std::to_string(r) + " n=" + n_text);
    ++rows;
  }
  c.expect(rows == 168, "golden grid has " + str(rows) + " rows");
}

void sweep_cases(Check& c, const std::vector<std::tuple<int, int, Lengths>>& cases,
                 SweepVerdict want) {
  for (const auto& [m, r, n] : cases) {
    std::string tag = "m=" + std::to_string(m) + " r=" + std::to_string(r) + " n=";
    for (std::size_t k : n) tag += str(k) + ",";
    const SweepReport rep = verify_smoothness(m, r, n);
    c.expect(rep.verdict == want, tag + " gave " + std::string(to_string(rep.verdict)));
  }
}

void smooth_sweeps(Check& c) {
  std::vector<std::tuple<int, int, Lengths>> cases;
  for (std::size_t n = 1; n <= 5; ++n) cases.push_back({2, 1, {n}});
  for (std::size_t n = 1; n <= 3; ++n) cases.push_back({2, 1, {n, n + 1}});
  for (std::size_t n = 1; n <= 3; ++n) cases.push_back({3, 1, {n}});
  cases.push_back({3, 1, {1, 2}});
  cases.push_back({3, 1, {2, 3}});
  for (int m = 1; m <= 4; ++m)
    for (int r = 1; r <= 3; ++r) cases.push_back({m, r, {1}});
  for (int r = 1; r <= 3; ++r) {
    for (unsigned mask = 1; mask < 8; ++mask) {
      Lengths n;
      for (std::size_t k = 1; k <= 3; ++k)
        if (mask & (1u << (k - 1))) n.push_back(k);
      cases.push_back({1, r, n});
    }
  }
  const auto start = Clock::now();
  sweep_cases(c, cases, SweepVerdict::SmoothConsistent);
  const double secs = seconds_since(start);
  c.expect(secs < 300.0, "smooth sweeps took " + std::to_string(secs) + " s");
}

void singular_sweeps(Check& c) {
  sweep_cases(c,
              {{2, 2, {2}}, {2, 2, {1, 2}}, {3, 1, {4}}, {2, 1, {1, 3}}, {2, 1, {1, 2, 3}}},
              SweepVerdict::SingularConfirmed);
}

void oracle_equivalence(Check& c) {
  testsupport::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = testsupport::uniform(rng, 1, 3);
    const auto r = static_cast<std::size_t>(testsupport::uniform(rng, 1, 3));
    const QuotPoint p = testsupport::random_point(rng, m, r, static_cast<std::size_t>(testsupport::uniform(rng, 1, 4)));
    const FiniteModule t2 = testsupport::random_point(rng, m, 1, static_cast<std::size_t>(testsupport::uniform(rng, 1, 4))).module;
    const std::string tag = "trial " + std::to_string(trial);
    const std::size_t jet = hom_from_kernel_dim(p, t2);
    const std::size_t euler = r * t2.dim() - hom_dim(p.module, t2) + ext1_dim(p.module, t2);
    c.expect(jet == euler, tag + ": jet " + str(jet) + " vs Euler " + str(euler));
    TangentOptions deeper;
    deeper.extra_order = 2;
    c.expect(hom_from_kernel_dim(p, t2, deeper) == jet, tag + ": truncation order dependence");
    const NestedQuotPoint g = testsupport::random_gauge(rng, as_nested(p));
    c.expect(hom_from_kernel_dim(g.levels[0], t2) == jet, tag + ": gauge dependence");
  }
}

void etale_additivity(Check& c) {
  testsupport::Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = testsupport::uniform(rng, 1, 3);
    const auto r = static_cast<std::size_t>(testsupport::uniform(rng, 1, 2));
    const int parts = testsupport::uniform(rng, 2, 3);
    const int depth = testsupport::uniform(rng, 1, 2);
    std::vector<NestedQuotPoint> pieces;
    std::size_t sum = 0;
    for (int k = 0; k < parts; ++k) {
      Lengths lengths;
      std::size_t prev = 0;
      for (int i = 0; i < depth; ++i) {
        prev += static_cast<std::size_t>(testsupport::uniform(rng, i == 0 ? 1 : 0, 1));
        lengths.push_back(prev);
      }
      NestedQuotPoint piece = testsupport::random_nested_local_point(rng, m, r, lengths);
      QVector shift(static_cast<std::size_t>(m));
      shift[0] = k;
      Rational half(k, 2);
      half.canonicalize();
      shift[static_cast<std::size_t>(m) - 1] += half;
      piece = translate(piece, shift);
      sum += nested_tangent_dim(piece).tangent_dim;
      pieces.push_back(std::move(piece));
    }
    const std::size_t whole = nested_tangent_dim(direct_sum_points(pieces)).tangent_dim;
    c.expect(whole == sum, "trial " + std::to_string(trial) + ": " + str(whole) + " vs " + str(sum));
  }
}

void ncquot_identities(Check& c) {
  for (int m = 1; m <= 10; ++m)
    for (std::size_t r = 1; r <= 10; ++r)
      c.expect(ncquot_dim(m, 1, r) == static_cast<std::size_t>(m) + r - 1,
               "ncquot_dim(" + std::to_string(m) + ",1," + str(r) + ")");
  testsupport::Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<std::size_t>(testsupport::uniform(rng, 1, 4));
    const int m = testsupport::uniform(rng, 1, 3);
    const auto r = static_cast<std::size_t>(testsupport::uniform(rng, 1, 2));
    NCQuotPoint p{n, {}, testsupport::random_matrix(rng, n, r, 2, 40)};
    for (std::size_t i = 0; i < n; ++i) p.framing(i, 0) = i == 0 ? 1 : 0;
    for (int v = 0; v < m; ++v) {
      QMatrix a = testsupport::random_matrix(rng, n, n, 2, 60);
      if (v == 0)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < i; ++j) a(i, j) = i == j + 1 ? 1 : 0;
      p.actions.push_back(std::move(a));
    }
    const QMatrix g = testsupport::random_invertible(rng, n);
    const NCQuotPoint q = gauge(p, g);
    const std::string tag = "pair " + std::to_string(trial);
    c.expect(intertwiner_space_dim(p, q) == 1, tag + ": intertwiners not unique");
    const auto found = framed_isomorphic(p, q);
    c.expect(found && *found == g, tag + ": gauge not recovered");
  }
}

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

void cli_contract(Check& c) {
  const fs::path dir = NESTQUOT_FIXTURE_DIR;
  const std::map<std::string, int> tangent_codes{
      {"corrupted.pt", cli::kParse},
      {"noncommuting_m2.pt", cli::kInvalidPoint},
      {"gauged_noncommuting_m2.pt", cli::kInvalidPoint},
      {"unstable_m2.pt", cli::kInvalidPoint}};
  std::size_t fixtures = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".pt") continue;
    ++fixtures;
    const std::string name = entry.path().filename().string();
    const auto it = tangent_codes.find(name);
    const int want = it == tangent_codes.end() ? cli::kOk : it->second;
    const Run r = run_cli({"--json", "tangent", entry.path().string()});
    c.expect(r.code == want, name + ": exit " + std::to_string(r.code));
    if (name == "corrupted.pt") continue;
    const NestedQuotPoint z = read_point_file(entry.path());
    const std::string text = format_point(z);
    c.expect(format_point(parse_point(text)) == text, name + ": round trip");
  }
  c.expect(fixtures >= 12, "only " + str(fixtures) + " fixtures");

  const fs::path out = fs::temp_directory_path() / "nestquot-acceptance-witness.pt";
  c.expect(run_cli({"witness", "-m", "2", "-r", "2", "-n", "2", "-o", out.string()}).code == 0,
           "witness");
  const Run t = run_cli({"tangent", out.string()});
  c.expect(t.code == 0 && t.out.find("SingularHere") != std::string::npos, "witness round trip");
  c.expect(run_cli({"classify", "-m", "2", "-r", "1", "-n", "3,1"}).code == cli::kUsage, "usage");
  c.expect(run_cli({"witness", "-m", "2", "-r", "1", "-n", "1,3", "-o", out.string()}).code ==
               cli::kUnsupported,
           "unsupported");
  c.expect(run_cli({"verify", "-m", "2", "-r", "1", "-n", "5", "--max-fixed-points", "3"}).code ==
               cli::kResourceBound,
           "resource bound");
  c.expect(run_cli({"ncquot", "dim", "-m", "2", "-n", "3", "-r", "2"}).out == "15\n", "ncquot dim");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"Hom dimension counts", hom_counts},
      {"fat point singularity and appended simple points", fat_point_singularity},
      {"nested flag singularity and (n,n+1) additivity", flag_singularity},
      {"classification grid", golden_grid},
      {"smooth-side fixed point sweeps", smooth_sweeps},
      {"singular-side fixed point sweeps", singular_sweeps},
      {"jet Hom oracle equivalence on 200 random points", oracle_equivalence},
      {"etale additivity on 50 configurations", etale_additivity},
      {"ncquot identities", ncquot_identities},
      {"CLI round trip and exit codes", cli_contract},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    const auto start = Clock::now();
    try {
      criteria[k].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    if (!ok) ++failed;
    std::cout << "AC" << k + 1 << ' ' << (ok ? "PASS" : "FAIL") << ' ' << criteria[k].first
              << " (" << c.count << " checks, " << seconds_since(start) << " s)\n";
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i)
      std::cout << "    " << c.failures[i] << '\n';
  }
  return failed == 0 ? 0 : 1;
}
