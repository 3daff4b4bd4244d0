#pragma once

#include <cstddef>
#include <string>

#include "atmine/attack_tree.hpp"
#include "atmine/process_tree.hpp"

namespace atmine {

/// Source of fresh silent labels tau0, tau1, ... for one translation.
class TauSupply {
 public:
  Action next() { return Action::tau("tau" + std::to_string(counter_++)); }
  [[nodiscard]] std::size_t issued() const { return counter_; }

 private:
  std::size_t counter_ = 0;
};

/// Translates a process tree into an attack tree with the same trace
/// language. Operators map to silent-labelled gates (-> SAND, + AND, O OR,
/// X XOR), rep to rep, and a redo loop *(P1, ..., Pn) to
/// SAND(t; P1', rep(SAND(t; XOR(t; P2', ..., Pn'), P1'))). Fresh labels are
/// numbered in preorder. Throws ValidationError for invalid input.
AttackTree p2t(const ProcessTree& tree);

/// Rewrites every redo loop *(P1, ..., Pn) into ->(P1, rep(->(X(P2, ..., Pn), P1))),
/// innermost loops first.
ProcessTree redo_to_rep(const ProcessTree& tree);

}  // namespace atmine
