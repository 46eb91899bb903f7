#include "hgk/error.hpp"

#include <atomic>

namespace hgk {

namespace {
std::atomic<std::size_t> g_limit{0};
}

std::size_t enumeration_limit() noexcept { return g_limit.load(std::memory_order_relaxed); }

void set_enumeration_limit(std::size_t limit) noexcept {
  g_limit.store(limit, std::memory_order_relaxed);
}

void check_enumeration(double count) {
  const std::size_t limit = enumeration_limit();
  if (limit != 0 && count > static_cast<double>(limit)) throw EnumerationLimitExceeded(limit, count);
}

}  // namespace hgk
