#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "atmine/attack_tree.hpp"
#include "atmine/log_variants.hpp"
#include "atmine/process_tree.hpp"

namespace atmine {

/// Random process-tree generation parameters. The activity count is drawn
/// from a triangular distribution over [min, max] peaking at mode.
struct GenConfig {
  std::size_t n_models = 1;
  std::size_t mode_activities = 10;
  std::size_t min_activities = 10;
  std::size_t max_activities = 10;
  double p_seq = 0.25;
  double p_xor = 0.25;
  double p_par = 0.25;
  double p_or = 0.25;
  bool loops_enabled = false;
  std::uint64_t seed = 0;

  /// Throws InputError when min <= mode <= max or the probabilities are violated.
  void validate() const;
};

/// "conf1", "conf2" or "conf3"; nullopt for any other name.
std::optional<GenConfig> preset(std::string_view name);

/// Derives the seed of the i-th task from a base seed (splitmix64 of base + i).
std::uint64_t split_seed(std::uint64_t base, std::uint64_t index);

/// Generates one tree. Leaves carry distinct activity names a, b, ..., z,
/// aa, ab, ...; each operator node gets 2 to 4 children.
ProcessTree gen_tree(const GenConfig& config);

/// n random play-outs of the tree; loops repeat with probability 1/2 per
/// extra iteration, at most max_loop times.
LogVariants sample_traces(const ProcessTree& tree, std::size_t n, std::uint64_t seed,
                          std::size_t max_loop);

/// Same play-out rules for attack trees; observable gate labels are
/// emitted after their children.
LogVariants sample_attack_traces(const AttackTree& tree, std::size_t n, std::uint64_t seed,
                                 std::size_t max_loop);

struct NoiseSpec {
  double probability = 0.0;  ///< per gap, including before the first and after the last event
  std::set<std::string> alphabet;
  std::uint64_t seed = 0;
};

/// Inserts random actions between events; every case is perturbed
/// independently. The original trace stays a subsequence of the result.
LogVariants inject_noise(const LogVariants& log, const NoiseSpec& spec);

/// The Bypassing 802.1x attack tree (goal A; hijack branch B, MiM branch E).
AttackTree bypassing_fixture();

enum class AttackerProfile { Best, BestB, Average, Worst };

/// Successful-attack logs on the Bypassing fixture. Best and BestB replay
/// the hijack and MiM branch respectively without noise; Average and Worst
/// sample the whole tree and inject noise at rates 0.25 and 0.5.
LogVariants attacker_log(AttackerProfile profile, std::size_t n, std::uint64_t seed);

}  // namespace atmine
