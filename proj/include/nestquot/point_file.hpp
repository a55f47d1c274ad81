#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "nestquot/ncquot.hpp"
#include "nestquot/quot_point.hpp"

namespace nestquot {

/// Text format for nested points (see docs/point-format.md):
///
///   nestquot-point 1
///   vars <m>
///   rank <r>
///   lengths <n_1> ... <n_d>
///   level <i>            (for i = 1..d)
///   action <k>           (for k = 1..m, then n_i rows of n_i rationals)
///   framing              (n_i rows of r rationals)
///   map <i>              (for i = 1..d-1, n_i rows of n_{i+1} rationals)
///   end
///
/// '#' starts a comment. Only the syntax and the shapes are checked here;
/// use validate() for the module-theoretic invariants.
NestedQuotPoint parse_point(std::istream& in);
NestedQuotPoint parse_point(std::string_view text);
NestedQuotPoint read_point_file(const std::filesystem::path& path);

void write_point(std::ostream& out, const NestedQuotPoint& z);
std::string format_point(const NestedQuotPoint& z);
void write_point_file(const std::filesystem::path& path, const NestedQuotPoint& z);

/// Single-level files as raw matrix data (no commutation check).
NCQuotPoint to_ncquot_point(const NestedQuotPoint& z);
NestedQuotPoint from_ncquot_point(const NCQuotPoint& p);

}  // namespace nestquot
