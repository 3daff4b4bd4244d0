#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atmine/log_variants.hpp"
#include "atmine/process_tree.hpp"

namespace atmine {

/// Directly-follows graph with edge, start and end frequencies.
struct Dfg {
  std::set<std::string> nodes;
  std::map<std::pair<std::string, std::string>, std::uint64_t> edges;
  std::map<std::string, std::uint64_t> start_activities;
  std::map<std::string, std::uint64_t> end_activities;

  [[nodiscard]] bool has_edge(const std::string& a, const std::string& b) const {
    return edges.count({a, b}) != 0;
  }

  friend bool operator==(const Dfg&, const Dfg&) = default;
};

enum class CutKind { Xor, Sequence, Parallel, Loop };

/// A partition of the activities plus the operator it induces. For loops the
/// first part is the do-part; the remaining parts are redo parts.
struct Cut {
  CutKind kind = CutKind::Xor;
  std::vector<std::set<std::string>> partition;

  friend bool operator==(const Cut&, const Cut&) = default;
};

Dfg build_dfg(const LogVariants& log);

/// Drops every edge whose frequency is strictly below noise times the largest
/// outgoing frequency of its source; start and end activities are filtered
/// against the largest start (end) frequency the same way.
/// Throws InputError unless 0 <= noise <= 1.
Dfg filter_dfg(const Dfg& dfg, double noise);

/// Tries exclusive-choice, sequence, parallel and loop cuts in that order.
std::optional<Cut> find_cut(const Dfg& dfg);

/// Splits the log into one sublog per part of the cut.
std::vector<LogVariants> split_log(const LogVariants& log, const Cut& cut);

/// Inductive-miner discovery with the given noise threshold in [0, 1].
/// Throws InputError for a log without cases or an out-of-range threshold.
ProcessTree discover(const LogVariants& log, double noise = 0.0);

std::string_view to_string(CutKind kind);

}  // namespace atmine
