#include "recurshift/config.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace recurshift {

namespace {

std::atomic<std::int64_t> g_override{0};

std::int64_t cap_from_environment() {
  const char* raw = std::getenv("RECURSHIFT_MAX_MATERIALIZE");
  if (raw == nullptr || *raw == '\0') return kDefaultMaterializeCap;
  try {
    std::size_t used = 0;
    const long long value = std::stoll(raw, &used);
    if (used == std::string(raw).size() && value > 0) return value;
  } catch (const std::exception&) {
  }
  return kDefaultMaterializeCap;
}

}  // namespace

std::int64_t materialize_cap() {
  const std::int64_t forced = g_override.load(std::memory_order_relaxed);
  if (forced > 0) return forced;
  static const std::int64_t from_env = cap_from_environment();
  return from_env;
}

void set_materialize_cap(std::int64_t cap) { g_override.store(cap > 0 ? cap : 0, std::memory_order_relaxed); }

}  // namespace recurshift
