#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "atmine/traces.hpp"

namespace atmine {

/// An event log reduced to its trace variants. Empty cases are counted
/// separately and never stored as a variant.
struct LogVariants {
  std::map<Trace, std::uint64_t> variants;
  std::uint64_t empty_trace_count = 0;

  void add(const Trace& t, std::uint64_t count = 1) {
    if (count == 0) return;
    if (t.empty()) empty_trace_count += count;
    else variants[t] += count;
  }

  [[nodiscard]] std::set<std::string> alphabet() const {
    std::set<std::string> out;
    for (const auto& [t, n] : variants) out.insert(t.begin(), t.end());
    return out;
  }

  [[nodiscard]] std::uint64_t total_cases() const {
    std::uint64_t n = empty_trace_count;
    for (const auto& [t, c] : variants) n += c;
    return n;
  }

  [[nodiscard]] bool empty() const { return total_cases() == 0; }

  friend bool operator==(const LogVariants&, const LogVariants&) = default;
};

}  // namespace atmine
