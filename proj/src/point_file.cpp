#include "nestquot/point_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nestquot/errors.hpp"

namespace nestquot {

namespace {

constexpr std::string_view kMagic = "nestquot-point";
constexpr int kVersion = 1;

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-empty line split into tokens, comments removed.
  std::vector<std::string> next(std::string_view expecting) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream words(line);
      std::vector<std::string> tokens;
      for (std::string w; words >> w;) tokens.push_back(std::move(w));
      if (!tokens.empty()) return tokens;
    }
    throw ParseError(line_no_ + 1, "unexpected end of file, expected " + std::string(expecting));
  }

  bool at_end() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) return false;
    }
    return true;
  }

  std::size_t line() const noexcept { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

std::size_t parse_count(const LineReader& r, const std::string& token) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError(r.line(), "not a non-negative integer: " + token);
  return value;
}

std::size_t keyword_with_count(LineReader& r, std::string_view keyword) {
  const auto tokens = r.next(keyword);
  if (tokens.size() != 2 || tokens[0] != keyword) {
    throw ParseError(r.line(), "expected '" + std::string(keyword) + " <count>'");
  }
  return parse_count(r, tokens[1]);
}

void expect_indexed(LineReader& r, std::string_view keyword, std::size_t index) {
  if (keyword_with_count(r, keyword) != index) {
    throw ParseError(r.line(), "expected '" + std::string(keyword) + " " + std::to_string(index) + "'");
  }
}

QMatrix read_matrix(LineReader& r, std::size_t rows, std::size_t cols, std::string_view what) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto tokens = r.next(std::string(what) + " row");
    if (tokens.size() != cols) {
      throw ParseError(r.line(), std::string(what) + " row has " + std::to_string(tokens.size()) +
                                     " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      try {
        m(i, j) = parse_rational(tokens[j]);
      } catch (const std::invalid_argument&) {
        throw ParseError(r.line(), "malformed rational: " + tokens[j]);
      }
    }
  }
  return m;
}

void write_matrix(std::ostream& out, const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << to_string(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace

NestedQuotPoint parse_point(std::istream& in) {
  LineReader r(in);
  const auto head = r.next("header");
  if (head.size() != 2 || head[0] != kMagic) {
    throw ParseError(r.line(), "expected '" + std::string(kMagic) + " " + std::to_string(kVersion) + "'");
  }
  if (parse_count(r, head[1]) != static_cast<std::size_t>(kVersion)) {
    throw ParseError(r.line(), "unsupported format version " + head[1]);
  }
  const std::size_t m = keyword_with_count(r, "vars");
  if (m == 0 || m > 64) throw ParseError(r.line(), "vars must be between 1 and 64");
  const std::size_t rank = keyword_with_count(r, "rank");
  if (rank == 0) throw ParseError(r.line(), "rank must be positive");

  const auto len_tokens = r.next("lengths");
  if (len_tokens.size() < 2 || len_tokens[0] != "lengths") {
    throw ParseError(r.line(), "expected 'lengths <n_1> ... <n_d>'");
  }
  std::vector<std::size_t> lengths;
  for (std::size_t k = 1; k < len_tokens.size(); ++k) lengths.push_back(parse_count(r, len_tokens[k]));

  NestedQuotPoint z;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    expect_indexed(r, "level", i + 1);
    const std::size_t n = lengths[i];
    std::vector<QMatrix> actions;
    for (std::size_t k = 0; k < m; ++k) {
      expect_indexed(r, "action", k + 1);
      actions.push_back(read_matrix(r, n, n, "action"));
    }
    const auto tokens = r.next("framing");
    if (tokens.size() != 1 || tokens[0] != "framing") throw ParseError(r.line(), "expected 'framing'");
    QMatrix framing = read_matrix(r, n, rank, "framing");
    z.levels.push_back({FiniteModule(static_cast<int>(m), n, std::move(actions)), std::move(framing)});
  }
  for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
    expect_indexed(r, "map", i + 1);
    z.maps.push_back(read_matrix(r, lengths[i], lengths[i + 1], "map"));
  }
  const auto tail = r.next("end");
  if (tail.size() != 1 || tail[0] != "end") throw ParseError(r.line(), "expected 'end'");
  if (!r.at_end()) throw ParseError(r.line(), "trailing content after 'end'");
  return z;
}

NestedQuotPoint parse_point(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_point(in);
}

NestedQuotPoint read_point_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_point(in);
}

void write_point(std::ostream& out, const NestedQuotPoint& z) {
  if (z.levels.empty()) throw std::invalid_argument("point has no levels");
  out << kMagic << ' ' << kVersion << '\n';
  out << "vars " << z.num_vars() << '\n';
  out << "rank " << z.rank() << '\n';
  out << "lengths";
  for (std::size_t n : z.lengths()) out << ' ' << n;
  out << '\n';
  for (std::size_t i = 0; i < z.levels.size(); ++i) {
    const auto& level = z.levels[i];
    out << "level " << i + 1 << '\n';
    for (int k = 0; k < level.num_vars(); ++k) {
      out << "action " << k + 1 << '\n';
      write_matrix(out, level.module.action(k));
    }
    out << "framing\n";
    write_matrix(out, level.framing);
  }
  for (std::size_t i = 0; i < z.maps.size(); ++i) {
    out << "map " << i + 1 << '\n';
    write_matrix(out, z.maps[i]);
  }
  out << "end\n";
}

std::string format_point(const NestedQuotPoint& z) {
  std::ostringstream out;
  write_point(out, z);
  return out.str();
}

void write_point_file(const std::filesystem::path& path, const NestedQuotPoint& z) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_point(out, z);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

NCQuotPoint to_ncquot_point(const NestedQuotPoint& z) {
  if (z.depth() != 1) throw InvalidPoint("expected a single-level point");
  return from_quot_point(z.levels.front());
}

NestedQuotPoint from_ncquot_point(const NCQuotPoint& p) {
  check_shapes(p);
  return as_nested(QuotPoint{FiniteModule(p.num_vars(), p.n, p.actions), p.framing});
}

}  // namespace nestquot
