// Budget control for the enumeration-backed oracles.  A refused computation is
// not a failed check: callers distinguish BudgetExceeded from check failures
// (the CLI maps it to its own exit code).
#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sympcount {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t needed, std::uint64_t budget)
      : std::runtime_error(what + " (needs ~" + std::to_string(needed) +
                           " units, budget " + std::to_string(budget) + ")"),
        needed_(needed),
        budget_(budget) {}
  std::uint64_t needed() const { return needed_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t needed_;
  std::uint64_t budget_;
};

// Default cap on enumeration work (polynomial scans, symbol generation).
// SYMPCOUNT_BUDGET overrides it process-wide.
inline std::uint64_t default_budget() {
  if (const char* env = std::getenv("SYMPCOUNT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
  }
  return 64'000'000ULL;
}

}  // namespace sympcount
