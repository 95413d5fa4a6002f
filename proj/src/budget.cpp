#include "cuntz/budget.hpp"

#include <cstdlib>
#include <cstdint>

namespace cuntz {

std::uint64_t max_table_bytes() {
  static const std::uint64_t value = [] {
    if (const char* env = std::getenv("CUNTZ_MAX_TABLE_BYTES")) {
      const auto v = std::strtoull(env, nullptr, 10);
      if (v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{512} << 20;
  }();
  return value;
}

int max_level_for(int n) {
  // the stabilization loop holds about six tables of the current level
  const std::uint64_t budget = max_table_bytes() / (sizeof(std::uint32_t) * 6);
  std::uint64_t size = 1;
  int level = 0;
  while (size <= budget / static_cast<std::uint64_t>(n)) {
    size *= static_cast<std::uint64_t>(n);
    ++level;
  }
  return level;
}

}  // namespace cuntz
