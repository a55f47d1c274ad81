#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "nestquot/bounds.hpp"
#include "nestquot/classify.hpp"
#include "nestquot/errors.hpp"
#include "nestquot/fixed_points.hpp"
#include "nestquot/ncquot.hpp"
#include "nestquot/point_file.hpp"
#include "nestquot/tangent.hpp"

namespace nestquot::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::size_t> parse_lengths(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view item(text.data() + start, comma - start);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError("malformed length list '" + text + "' (expected e.g. 2,5)");
    }
    out.push_back(value);
    start = comma + 1;
  }
  if (!std::is_sorted(out.begin(), out.end())) {
    throw UsageError("length list '" + text + "' must be non-decreasing");
  }
  if (std::all_of(out.begin(), out.end(), [](std::size_t n) { return n == 0; })) {
    throw UsageError("length list '" + text + "' has no positive entry");
  }
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

json rationals(std::span<const Rational> v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

std::string point_label(std::span<const Rational> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

struct Context {
  std::ostream& out;
  bool json_mode = false;
  Bounds bounds;

  void header() const {
    if (json_mode) out << json{{"format", "nestquot-report"}, {"version", 1}}.dump() << '\n';
  }
  void record(const json& j) const { out << j.dump() << '\n'; }
};

NestedQuotPoint load_valid(const std::string& path) {
  NestedQuotPoint z = read_point_file(path);
  validate(z);
  return z;
}

int cmd_classify(const Context& ctx, int m, int r, const std::string& n_text) {
  const auto n = parse_lengths(n_text);
  const auto v = classify(m, r, n);
  const std::size_t e = expdim(m, r, v.normalized_n);
  if (ctx.json_mode) {
    ctx.header();
    ctx.record({{"record", "classify"}, {"m", m}, {"r", r}, {"n", n},
                {"normalized_n", v.normalized_n}, {"smooth", v.smooth},
                {"case", to_string(v.case_label)}, {"expdim", e}});
  } else {
    ctx.out << (v.smooth ? "smooth" : "singular") << " (" << to_string(v.case_label) << ")\n"
            << "normalized n: " << join(v.normalized_n) << "\n"
            << "expdim: " << e << "\n";
  }
  return kOk;
}

int cmd_tangent(const Context& ctx, const std::string& path, bool show_delta, int extra_order) {
  const NestedQuotPoint z = load_valid(path);
  TangentOptions options{extra_order, ctx.bounds};
  const auto locals = nested_tangent_breakdown(z, options, show_delta);
  std::size_t tangent = 0;
  for (const auto& l : locals) tangent += l.tangent_dim;
  const auto lengths = z.lengths();
  const std::size_t e = expdim(z.num_vars(), static_cast<int>(z.rank()), lengths);
  const Verdict verdict = verdict_for(tangent, e);
  if (ctx.json_mode) {
    ctx.header();
    if (show_delta) {
      for (const auto& l : locals) {
        ctx.record({{"record", "local"}, {"point", rationals(l.point)},
                    {"domain_dim", l.domain_dim}, {"target_dim", l.target_dim},
                    {"delta_rank", l.delta_rank}, {"tangent_dim", l.tangent_dim}});
      }
    }
    ctx.record({{"record", "tangent"}, {"file", path}, {"m", z.num_vars()}, {"r", z.rank()},
                {"lengths", lengths}, {"tangent_dim", tangent}, {"expected_dim", e},
                {"verdict", to_string(verdict)}});
  } else {
    if (show_delta) {
      for (const auto& l : locals) {
        ctx.out << "support " << point_label(l.point) << ": Delta " << l.target_dim << " x "
                << l.domain_dim << ", rank " << l.delta_rank << ", kernel " << l.tangent_dim
                << "\n";
      }
    }
    ctx.out << "tangent: " << tangent << "\nexpdim: " << e << "\nverdict: " << to_string(verdict)
            << "\n";
  }
  return kOk;
}

int cmd_witness(const Context& ctx, int m, int r, const std::string& n_text,
                const std::string& path) {
  const auto n = parse_lengths(n_text);
  const NestedQuotPoint z = witness_singular(m, r, n);
  TangentOptions options;
  options.bounds = ctx.bounds;
  const TangentReport t = nested_tangent_dim(z, options);
  write_point_file(path, z);
  if (ctx.json_mode) {
    ctx.header();
    ctx.record({{"record", "witness"}, {"m", m}, {"r", r}, {"n", z.lengths()}, {"path", path},
                {"tangent_dim", t.tangent_dim}, {"expected_dim", t.expected_dim},
                {"verdict", to_string(t.verdict)}});
  } else {
    ctx.out << "wrote " << path << "\ntangent: " << t.tangent_dim << "\nexpdim: " << t.expected_dim
            << "\nverdict: " << to_string(t.verdict) << "\n";
  }
  return kOk;
}

int cmd_verify(const Context& ctx, int m, int r, const std::string& n_text) {
  const auto n = parse_lengths(n_text);
  const ClassificationVerdict cls = classify(m, r, n);
  const SweepReport rep = verify_smoothness(m, r, n, ctx.bounds);
  // Only the smooth direction can be contradicted: fixed points of a
  // singular scheme need not expose the singularity.
  const bool contradiction = cls.smooth && rep.verdict != SweepVerdict::SmoothConsistent;
  if (ctx.json_mode) {
    ctx.header();
    for (const auto& rec : rep.records) {
      ctx.record({{"record", "fixed_point"}, {"id", rec.id}, {"tangent_dim", rec.tangent_dim},
                  {"expected_dim", rec.expected_dim}, {"verdict", rec.verdict}});
    }
    ctx.record({{"record", "sweep"}, {"m", m}, {"r", r}, {"n", rep.lengths},
                {"fixed_points", rep.records.size()}, {"max_tangent_dim", rep.max_tangent_dim},
                {"expected_dim", rep.expected_dim}, {"verdict", to_string(rep.verdict)},
                {"classification", to_string(cls.case_label)}, {"consistent", !contradiction}});
  } else {
    std::size_t width = 10;
    for (const auto& rec : rep.records) width = std::max(width, rec.id.size());
    ctx.out << std::left << std::setw(static_cast<int>(width)) << "fixed point"
            << "  tangent  expdim  verdict\n";
    for (const auto& rec : rep.records) {
      ctx.out << std::left << std::setw(static_cast<int>(width)) << rec.id << "  " << std::right
              << std::setw(7) << rec.tangent_dim << "  " << std::setw(6) << rec.expected_dim << "  "
              << rec.verdict << "\n";
    }
    ctx.out << std::left << "fixed points: " << rep.records.size()
            << "\nmax tangent: " << rep.max_tangent_dim << "\nexpdim: " << rep.expected_dim
            << "\nverdict: " << to_string(rep.verdict) << "\nclassification: "
            << (cls.smooth ? "smooth" : "singular") << " (" << to_string(cls.case_label) << ")"
            << (contradiction ? " CONTRADICTS SWEEP" : "") << "\n";
  }
  return contradiction ? kInternal : kOk;
}

int cmd_ncquot_dim(const Context& ctx, int m, std::size_t n, std::size_t r) {
  const std::size_t d = ncquot_dim(m, n, r);
  if (ctx.json_mode) {
    ctx.header();
    ctx.record({{"record", "ncquot_dim"}, {"m", m}, {"n", n}, {"r", r}, {"dim", d}});
  } else {
    ctx.out << d << "\n";
  }
  return kOk;
}

NCQuotPoint load_nc(const std::string& path) {
  NCQuotPoint p = to_ncquot_point(read_point_file(path));
  check_shapes(p);
  return p;
}

int cmd_ncquot_stable(const Context& ctx, const std::string& path) {
  const bool stable = nc_is_stable(load_nc(path));
  if (ctx.json_mode) {
    ctx.header();
    ctx.record({{"record", "ncquot_stable"}, {"file", path}, {"stable", stable}});
  } else {
    ctx.out << (stable ? "stable" : "not stable") << "\n";
  }
  return kOk;
}

int cmd_ncquot_defect(const Context& ctx, const std::string& path) {
  const auto ranks = commutator_defect(load_nc(path));
  if (ctx.json_mode) {
    ctx.header();
    ctx.record({{"record", "ncquot_defect"}, {"file", path}, {"ranks", ranks}});
  } else {
    ctx.out << "commutator ranks: " << (ranks.empty() ? "(none)" : join(ranks)) << "\n";
  }
  return kOk;
}

int cmd_ncquot_iso(const Context& ctx, const std::string& a, const std::string& b) {
  const NCQuotPoint p = load_nc(a);
  const NCQuotPoint q = load_nc(b);
  if (!nc_is_stable(p) || !nc_is_stable(q)) throw NotStable("framed isomorphism needs stable points");
  const auto g = framed_isomorphic(p, q);
  if (ctx.json_mode) {
    ctx.header();
    json j{{"record", "ncquot_iso"}, {"isomorphic", g.has_value()}};
    if (g) {
      json rows = json::array();
      for (std::size_t i = 0; i < g->rows(); ++i) rows.push_back(rationals(g->row(i)));
      j["g"] = rows;
    }
    ctx.record(j);
  } else if (g) {
    ctx.out << "isomorphic\n" << *g;
  } else {
    ctx.out << "not isomorphic\n";
  }
  return kOk;
}

int report(std::ostream& err, int code, const std::string& kind, const std::string& message) {
  err << "error (" << kind << "): " << message << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tangent spaces and smoothness of nested punctual Quot schemes", "nestquot"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_mode = false;
  std::size_t max_jet_dim = 0;
  std::size_t max_fixed_points = 0;
  app.add_flag("--json", json_mode, "Emit JSON Lines instead of text");
  app.add_option("--max-jet-dim", max_jet_dim, "Bound on jet algebra dimension");
  app.add_option("--max-fixed-points", max_fixed_points, "Bound on fixed points per sweep");

  int m = 0, r = 0, extra_order = 0;
  std::size_t nc_n = 0;
  std::string n_text, path, path2;
  bool show_delta = false;

  auto* c_classify = app.add_subcommand("classify", "Smoothness classification");
  c_classify->add_option("-m", m, "Number of variables")->required();
  c_classify->add_option("-r", r, "Rank of the free module")->required();
  c_classify->add_option("-n", n_text, "Comma-separated lengths, e.g. 2,5")->required();

  auto* c_tangent = app.add_subcommand("tangent", "Tangent dimension at a point file");
  c_tangent->add_option("file", path, "Point file")->required()->check(CLI::ExistingFile);
  c_tangent->add_flag("--delta", show_delta, "Show the Delta map per support point");
  c_tangent->add_option("--extra-order", extra_order, "Increase the truncation order")
      ->check(CLI::Range(0, 16));

  auto* c_witness = app.add_subcommand("witness", "Write a singular witness point");
  c_witness->add_option("-m", m, "Number of variables")->required();
  c_witness->add_option("-r", r, "Rank of the free module")->required();
  c_witness->add_option("-n", n_text, "Comma-separated lengths")->required();
  c_witness->add_option("-o,--output", path, "Output point file")->required();

  auto* c_verify = app.add_subcommand("verify", "Torus fixed-point sweep");
  c_verify->add_option("-m", m, "Number of variables")->required();
  c_verify->add_option("-r", r, "Rank of the free module")->required();
  c_verify->add_option("-n", n_text, "Comma-separated lengths")->required();

  auto* c_nc = app.add_subcommand("ncquot", "Non-commutative Quot utilities");
  c_nc->require_subcommand(1);
  auto* nc_dim = c_nc->add_subcommand("dim", "(m-1) n^2 + r n");
  nc_dim->add_option("-m", m, "Number of matrices")->required();
  nc_dim->add_option("-n", nc_n, "Size")->required();
  nc_dim->add_option("-r", r, "Number of framing vectors")->required();
  auto* nc_stable = c_nc->add_subcommand("stable", "Stability of a single-level point file");
  nc_stable->add_option("file", path, "Point file")->required()->check(CLI::ExistingFile);
  auto* nc_defect = c_nc->add_subcommand("defect", "Ranks of pairwise commutators");
  nc_defect->add_option("file", path, "Point file")->required()->check(CLI::ExistingFile);
  auto* nc_iso = c_nc->add_subcommand("iso", "Framed isomorphism between two point files");
  nc_iso->add_option("first", path, "Point file")->required()->check(CLI::ExistingFile);
  nc_iso->add_option("second", path2, "Point file")->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kOk : kUsage;
  }

  Context ctx{out, json_mode, Bounds::from_environment()};
  if (max_jet_dim > 0) ctx.bounds.max_jet_dim = max_jet_dim;
  if (max_fixed_points > 0) ctx.bounds.max_fixed_points = max_fixed_points;

  try {
    if (*c_classify) return cmd_classify(ctx, m, r, n_text);
    if (*c_tangent) return cmd_tangent(ctx, path, show_delta, extra_order);
    if (*c_witness) return cmd_witness(ctx, m, r, n_text, path);
    if (*c_verify) return cmd_verify(ctx, m, r, n_text);
    if (*nc_dim) {
      if (r < 0) throw UsageError("r must be non-negative");
      return cmd_ncquot_dim(ctx, m, nc_n, static_cast<std::size_t>(r));
    }
    if (*nc_stable) return cmd_ncquot_stable(ctx, path);
    if (*nc_defect) return cmd_ncquot_defect(ctx, path);
    if (*nc_iso) return cmd_ncquot_iso(ctx, path, path2);
    return report(err, kUsage, "usage", "no command given");
  } catch (const UsageError& e) {
    return report(err, kUsage, "usage", e.what());
  } catch (const ParseError& e) {
    return report(err, kParse, "parse", e.what());
  } catch (const NotCommuting& e) {
    return report(err, kInvalidPoint, "not commuting", e.what());
  } catch (const NotStable& e) {
    return report(err, kInvalidPoint, "not stable", e.what());
  } catch (const InvalidPoint& e) {
    return report(err, kInvalidPoint, "invalid point", e.what());
  } catch (const DimensionMismatch& e) {
    return report(err, kInvalidPoint, "invalid point", e.what());
  } catch (const OverlappingSupports& e) {
    return report(err, kInvalidPoint, "invalid point", e.what());
  } catch (const IrrationalSupport& e) {
    return report(err, kUnsupported, "unsupported", e.what());
  } catch (const Unsupported& e) {
    return report(err, kUnsupported, "unsupported", e.what());
  } catch (const ResourceBoundExceeded& e) {
    return report(err, kResourceBound, "resource bound exceeded", e.what());
  } catch (const std::invalid_argument& e) {
    return report(err, kUsage, "usage", e.what());
  } catch (const std::exception& e) {
    return report(err, kInternal, "internal", e.what());
  }
}

}  // namespace nestquot::cli
