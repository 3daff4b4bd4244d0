#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "atmine/attack_tree.hpp"
#include "atmine/log_variants.hpp"
#include "atmine/traces.hpp"

namespace atmine {

struct ReplayFailure {
  Trace trace;
  std::uint64_t count = 1;
  /// Length of the longest prefix the tree could consume; equal to the
  /// trace length when the whole trace was consumed but the goal was not
  /// reached.
  std::size_t blocking_position = 0;
};

struct FitnessReport {
  std::uint64_t total_traces = 0;
  std::uint64_t replayed = 0;
  std::vector<ReplayFailure> failures;

  [[nodiscard]] double fitness() const {
    return total_traces == 0 ? 0.0 : static_cast<double>(replayed) / static_cast<double>(total_traces);
  }
  [[nodiscard]] bool perfect() const { return failures.empty(); }
};

/// Outcome of replaying one trace.
struct ReplayResult {
  bool accepted = false;
  std::size_t furthest = 0;  ///< longest consumable prefix
};

/// Compiled form of an attack tree for repeated replay.
class Replayer {
 public:
  explicit Replayer(const AttackTree& tree);
  ~Replayer();
  Replayer(Replayer&&) noexcept;
  Replayer& operator=(Replayer&&) noexcept;

  /// Membership in the tree's language with every repetition allowed
  /// max(bounds.max_loop, |trace|) iterations.
  [[nodiscard]] ReplayResult run(const Trace& trace, const Bounds& bounds) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool replays(const AttackTree& tree, const Trace& trace, const Bounds& bounds);

/// Replays every variant once and weighs the outcome by its count.
/// Throws InputError for a log without cases.
FitnessReport fitness(const AttackTree& tree, const LogVariants& log, const Bounds& bounds);

/// Line-oriented rendering: one `key value` line per field, then one
/// `failure <count> <blocking_position> <trace>` line per failure.
std::string fitness_to_text(const FitnessReport& report);

/// JSON object with fields total_traces, replayed, fitness and failures
/// (each {trace, count, blocking_position}).
std::string fitness_to_json(const FitnessReport& report);

}  // namespace atmine
