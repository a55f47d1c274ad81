#include "nestquot/bounds.hpp"

#include <cstdlib>
#include <string>

namespace nestquot {

namespace {

void override_from(const char* name, std::size_t& value) {
  const char* raw = std::getenv(name);
  if (raw == nullptr) return;
  try {
    std::size_t used = 0;
    const unsigned long long parsed = std::stoull(raw, &used);
    if (used == std::string(raw).size() && parsed > 0) value = parsed;
  } catch (const std::exception&) {
    // ignored: malformed overrides leave the default in place
  }
}

}  // namespace

Bounds Bounds::from_environment() {
  Bounds b;
  override_from("NESTQUOT_MAX_JET_DIM", b.max_jet_dim);
  override_from("NESTQUOT_MAX_FIXED_POINTS", b.max_fixed_points);
  return b;
}

}  // namespace nestquot
